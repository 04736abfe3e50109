#include "seqcast/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace seqcast {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

enum Column { kYear, kMonth, kTemperature, kRainfall, kColumnCount };
constexpr std::array<const char*, kColumnCount> kColumnNames = {"year", "month", "temperature",
                                                                "rainfall"};

std::optional<Column> classify_header(std::string_view name) {
  const std::string n = lower(name);
  if (n == "year") return kYear;
  if (n == "month") return kMonth;
  if (n == "tem" || n == "temperature") return kTemperature;
  if (n == "rain" || n == "rainfall") return kRainfall;
  return std::nullopt;
}

}  // namespace

std::string YearMonth::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

std::string_view to_string(Variable v) {
  return v == Variable::temperature ? "temperature" : "rainfall";
}

Variable parse_variable(std::string_view name) {
  const std::string n = lower(trim(name));
  if (n == "temperature" || n == "tem") return Variable::temperature;
  if (n == "rainfall" || n == "rain") return Variable::rainfall;
  throw PreconditionError("unknown variable '" + std::string(name) +
                          "' (expected temperature or rainfall)");
}

std::string_view units(Variable v) { return v == Variable::temperature ? "degC" : "mm"; }

std::vector<WeatherRecord> parse_csv(std::string_view text, std::string_view source_name) {
  const std::string source(source_name);
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::array<std::optional<std::size_t>, kColumnCount> position;
  bool have_header = false;
  std::size_t header_width = 0;
  std::vector<WeatherRecord> records;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || trim(line).front() == '#') {
      if (end == text.size()) break;
      continue;
    }

    const auto fields = split_fields(line);
    if (!have_header) {
      for (std::size_t k = 0; k < fields.size(); ++k) {
        if (auto col = classify_header(fields[k]); col && !position[*col]) position[*col] = k;
      }
      for (int c = 0; c < kColumnCount; ++c) {
        if (!position[c]) {
          throw DataError(source + ": missing required column '" + kColumnNames[c] + "'");
        }
      }
      have_header = true;
      header_width = fields.size();
      if (end == text.size()) break;
      continue;
    }

    if (fields.size() < header_width) {
      throw DataError(source + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(header_width) + " fields, found " +
                      std::to_string(fields.size()));
    }
    std::array<double, kColumnCount> v{};
    for (int c = 0; c < kColumnCount; ++c) {
      const std::string_view cell = fields[*position[c]];
      const auto parsed = parse_number(cell);
      if (!parsed) {
        throw DataError(source + ":" + std::to_string(line_no) + ": column '" + kColumnNames[c] +
                        "': cannot parse '" + std::string(cell) + "' as a number");
      }
      v[c] = *parsed;
    }
    for (int c : {kYear, kMonth}) {
      if (v[c] != std::floor(v[c])) {
        throw DataError(source + ":" + std::to_string(line_no) + ": column '" + kColumnNames[c] +
                        "' must be an integer");
      }
    }
    WeatherRecord rec{static_cast<int>(v[kYear]), static_cast<int>(v[kMonth]), v[kTemperature],
                      v[kRainfall]};
    if (rec.month < 1 || rec.month > 12) {
      throw DataError(source + ":" + std::to_string(line_no) + ": month " +
                      std::to_string(rec.month) + " outside 1-12");
    }
    if (rec.rainfall < 0.0) {
      throw DataError(source + ":" + std::to_string(line_no) + ": negative rainfall");
    }
    records.push_back(rec);
    if (end == text.size()) break;
  }

  if (!have_header) throw DataError(source + ": no header row");

  std::stable_sort(records.begin(), records.end(),
                   [](const WeatherRecord& a, const WeatherRecord& b) { return a.when() < b.when(); });
  for (std::size_t k = 1; k < records.size(); ++k) {
    if (records[k].when() == records[k - 1].when()) {
      throw DataError(source + ": duplicate month " + records[k].when().to_string());
    }
  }
  return records;
}

std::vector<WeatherRecord> load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open data file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), path.string());
}

SeriesDataset::SeriesDataset(std::vector<WeatherRecord> records, Variable variable)
    : records_(std::move(records)), variable_(variable) {
  for (std::size_t k = 1; k < records_.size(); ++k) {
    if (records_[k].when() != records_[k - 1].when().next()) {
      throw DataError("series is not consecutive: " + records_[k - 1].when().to_string() +
                      " is followed by " + records_[k].when().to_string());
    }
  }
  for (const auto& r : records_) {
    if (!std::isfinite(r.temperature) || !std::isfinite(r.rainfall) || r.rainfall < 0.0) {
      throw DataError("invalid observation at " + r.when().to_string());
    }
  }
}

double SeriesDataset::value(std::size_t k) const {
  const auto& r = records_.at(k);
  return variable_ == Variable::temperature ? r.temperature : r.rainfall;
}

std::vector<double> SeriesDataset::values() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (std::size_t k = 0; k < records_.size(); ++k) out.push_back(value(k));
  return out;
}

std::size_t SeriesDataset::index_of(YearMonth ym) const {
  if (records_.empty() || ym < first_month() || ym > last_month()) {
    throw DataError("month " + ym.to_string() + " is outside the series");
  }
  // Gap-free, so the offset is arithmetic.
  const auto first = first_month();
  return static_cast<std::size_t>((ym.year - first.year) * 12 + (ym.month - first.month));
}

std::pair<SeriesDataset, SeriesDataset> split(const SeriesDataset& data, int cutoff_year) {
  if (data.empty()) throw DataError("split: empty dataset");
  if (cutoff_year < data.first_month().year || cutoff_year > data.last_month().year) {
    throw DataError("split: cutoff year " + std::to_string(cutoff_year) + " outside data range " +
                    std::to_string(data.first_month().year) + "-" +
                    std::to_string(data.last_month().year));
  }
  std::vector<WeatherRecord> train, test;
  for (const auto& r : data.records()) (r.year <= cutoff_year ? train : test).push_back(r);
  if (test.empty()) {
    throw DataError("split: cutoff year " + std::to_string(cutoff_year) + " leaves no test data");
  }
  return {SeriesDataset(std::move(train), data.variable()),
          SeriesDataset(std::move(test), data.variable())};
}

NormalizationSpec fit_normalization(const SeriesDataset& train, double lo, double hi) {
  if (train.empty()) throw DataError("fit_normalization: empty training set");
  const auto v = train.values();
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  if (!(*mx > *mn)) throw DataError("fit_normalization: constant series cannot be normalized");
  NormalizationSpec spec{*mn, *mx, lo, hi};
  spec.validate();
  return spec;
}

std::vector<WindowedSample> make_windows(const SeriesDataset& data, const NormalizationSpec& spec,
                                         std::size_t window) {
  if (window < 1) throw PreconditionError("make_windows: window must be >= 1");
  if (data.size() < window + 1) {
    throw DataError("make_windows: series of length " + std::to_string(data.size()) +
                    " is too short for window " + std::to_string(window));
  }
  return make_target_windows(data, spec, window, data.month_at(window));
}

std::vector<WindowedSample> make_target_windows(const SeriesDataset& history,
                                                const NormalizationSpec& spec, std::size_t window,
                                                YearMonth first_target) {
  if (window < 1) throw PreconditionError("make_target_windows: window must be >= 1");
  const std::size_t first = history.index_of(first_target);
  if (first < window) {
    throw DataError("not enough history before " + first_target.to_string() + ": need " +
                    std::to_string(window) + " months, have " + std::to_string(first));
  }
  std::vector<double> normalized;
  normalized.reserve(history.size());
  for (std::size_t k = 0; k < history.size(); ++k) {
    normalized.push_back(spec.normalize(history.value(k)));
  }

  std::vector<WindowedSample> samples;
  samples.reserve(history.size() - first);
  for (std::size_t t = first; t < history.size(); ++t) {
    WindowedSample s;
    s.inputs.assign(normalized.begin() + static_cast<std::ptrdiff_t>(t - window),
                    normalized.begin() + static_cast<std::ptrdiff_t>(t));
    s.target = normalized[t];
    s.target_month = history.month_at(t);
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace seqcast
