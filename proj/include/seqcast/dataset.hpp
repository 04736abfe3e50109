#pragma once

// Monthly weather series: CSV ingestion, train/test split, min-max
// normalization and sliding windows for one-step-ahead forecasting.

#include <compare>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqcast/normalization.hpp"

namespace seqcast {

struct YearMonth {
  int year = 0;
  int month = 0;  // 1..12

  YearMonth next() const { return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1}; }
  std::string to_string() const;  // "YYYY-MM"

  friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

struct WeatherRecord {
  int year = 0;
  int month = 0;
  double temperature = 0.0;  // degrees Celsius
  double rainfall = 0.0;     // millimetres

  YearMonth when() const { return {year, month}; }
};

enum class Variable { temperature, rainfall };

std::string_view to_string(Variable v);
/// Accepts "temperature"/"tem" and "rainfall"/"rain", case-insensitive.
Variable parse_variable(std::string_view name);
std::string_view units(Variable v);  // "degC" or "mm"

/// Reads the monthly CSV. Columns are matched by header name,
/// case-insensitively: year, month, tem|temperature, rain|rainfall.
/// Blank lines and lines starting with '#' are skipped. Records come back
/// sorted by (year, month).
std::vector<WeatherRecord> load_csv(const std::filesystem::path& path);

/// Same as load_csv, reading from an in-memory document.
std::vector<WeatherRecord> parse_csv(std::string_view text, std::string_view source_name = "<memory>");

/// Chronological, gap-free monthly series with one selected variable.
class SeriesDataset {
 public:
  SeriesDataset(std::vector<WeatherRecord> records, Variable variable);

  const std::vector<WeatherRecord>& records() const { return records_; }
  Variable variable() const { return variable_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  double value(std::size_t k) const;
  std::vector<double> values() const;
  YearMonth month_at(std::size_t k) const { return records_[k].when(); }
  YearMonth first_month() const { return records_.front().when(); }
  YearMonth last_month() const { return records_.back().when(); }

  /// Position of `ym` in the series; throws DataError if absent.
  std::size_t index_of(YearMonth ym) const;

 private:
  std::vector<WeatherRecord> records_;
  Variable variable_;
};

/// Train = records with year <= cutoff_year, test = the rest.
/// Both sides must be non-empty.
std::pair<SeriesDataset, SeriesDataset> split(const SeriesDataset& data, int cutoff_year = 2013);

NormalizationSpec fit_normalization(const SeriesDataset& train, double lo = 0.1, double hi = 0.9);

struct WindowedSample {
  std::vector<double> inputs;  // normalized, chronological
  double target = 0.0;         // normalized value one month after the window
  YearMonth target_month;
};

/// Every window lying entirely inside `data`: sample k takes positions
/// [k, k + window) as inputs and position k + window as target.
std::vector<WindowedSample> make_windows(const SeriesDataset& data, const NormalizationSpec& spec,
                                         std::size_t window = 12);

/// One sample per target month in [first_target, end of `history`], each fed
/// by the `window` actual observations before it (which may lie before
/// first_target). Throws DataError when there is not enough history.
std::vector<WindowedSample> make_target_windows(const SeriesDataset& history,
                                                const NormalizationSpec& spec, std::size_t window,
                                                YearMonth first_target);

}  // namespace seqcast
