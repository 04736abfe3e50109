#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <set>

#include "seqcast/dataset.hpp"

namespace seqcast {
namespace {

const std::filesystem::path kSynthetic =
    std::filesystem::path(SEQCAST_SOURCE_DIR) / "data" / "synthetic_weather_1901_2015.csv";

std::vector<WeatherRecord> monthly(int first_year, int months, double base = 10.0) {
  std::vector<WeatherRecord> out;
  YearMonth ym{first_year, 1};
  for (int k = 0; k < months; ++k) {
    out.push_back({ym.year, ym.month, base + k, static_cast<double>(k % 12)});
    ym = ym.next();
  }
  return out;
}

std::string error_of(const std::string& csv) {
  try {
    parse_csv(csv, "t.csv");
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseCsv, ReadsPublicLayoutExactly) {
  const auto recs = parse_csv(
      "tem,Month,Year,rain\n"
      "17.1088,1,2014,0.1202\n"
      "27.8892,5,1901,267.215\n");
  ASSERT_EQ(recs.size(), 2u);
  // Sorted chronologically.
  EXPECT_EQ(recs[0].year, 1901);
  EXPECT_EQ(recs[0].month, 5);
  EXPECT_EQ(recs[0].temperature, 27.8892);
  EXPECT_EQ(recs[0].rainfall, 267.215);
  EXPECT_EQ(recs[1].temperature, 17.1088);
  EXPECT_EQ(recs[1].rainfall, 0.1202);
}

TEST(ParseCsv, HeaderMatchingIsCaseInsensitiveAndIgnoresExtras) {
  const auto recs = parse_csv(
      "\xEF\xBB\xBF# leading comment\r\n"
      "id, YEAR ,Temperature,\"Month\",RainFall,Station\r\n"
      "\r\n"
      "7,1950,20.5,3,\"12.25\",x\r\n");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].year, 1950);
  EXPECT_EQ(recs[0].month, 3);
  EXPECT_EQ(recs[0].temperature, 20.5);
  EXPECT_EQ(recs[0].rainfall, 12.25);
}

TEST(ParseCsv, MissingColumnIsNamed) {
  EXPECT_NE(error_of("year,month,tem\n1901,1,20\n").find("'rainfall'"), std::string::npos);
  EXPECT_NE(error_of("year,mnth,tem,rain\n").find("'month'"), std::string::npos);
}

TEST(ParseCsv, BadCellsReportRowAndColumn) {
  const auto msg = error_of("year,month,tem,rain\n1901,1,20,1\n1901,2,abc,1\n");
  EXPECT_NE(msg.find("t.csv:3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'temperature'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("abc"), std::string::npos) << msg;
  EXPECT_NE(error_of("year,month,tem,rain\n1901,1.5,20,1\n").find("integer"), std::string::npos);
  EXPECT_NE(error_of("year,month,tem,rain\n1901,1,20\n").find("fields"), std::string::npos);
}

TEST(ParseCsv, RejectsDuplicatesBadMonthsAndNegativeRain) {
  EXPECT_NE(error_of("year,month,tem,rain\n1901,1,20,1\n1901,1,21,2\n").find("duplicate month 1901-01"),
            std::string::npos);
  EXPECT_NE(error_of("year,month,tem,rain\n1901,13,20,1\n").find("outside 1-12"), std::string::npos);
  EXPECT_NE(error_of("year,month,tem,rain\n1901,0,20,1\n").find("outside 1-12"), std::string::npos);
  EXPECT_NE(error_of("year,month,tem,rain\n1901,1,20,-1\n").find("negative"), std::string::npos);
  EXPECT_NE(error_of("").find("no header"), std::string::npos);
}

TEST(LoadCsv, MissingFile) {
  EXPECT_THROW(load_csv("/nonexistent/weather.csv"), DataError);
}

TEST(LoadCsv, SyntheticSampleCoversTheFullPeriod) {
  const auto recs = load_csv(kSynthetic);
  ASSERT_EQ(recs.size(), 1380u);
  EXPECT_EQ(recs.front().when(), (YearMonth{1901, 1}));
  EXPECT_EQ(recs.back().when(), (YearMonth{2015, 12}));
  EXPECT_NO_THROW(SeriesDataset(recs, Variable::rainfall));
}

TEST(SeriesDataset, RejectsGaps) {
  auto recs = monthly(1901, 24);
  recs.erase(recs.begin() + 5);
  EXPECT_THROW(SeriesDataset(recs, Variable::temperature), DataError);
}

TEST(SeriesDataset, SelectsVariableAndIndexes) {
  const SeriesDataset temp(monthly(1901, 24), Variable::temperature);
  const SeriesDataset rain(monthly(1901, 24), Variable::rainfall);
  EXPECT_EQ(temp.value(3), 13.0);
  EXPECT_EQ(rain.value(15), 3.0);
  EXPECT_EQ(temp.index_of({1902, 2}), 13u);
  EXPECT_THROW(temp.index_of({1903, 1}), DataError);
}

TEST(Variables, ParseAndUnits) {
  EXPECT_EQ(parse_variable("Temperature"), Variable::temperature);
  EXPECT_EQ(parse_variable("tem"), Variable::temperature);
  EXPECT_EQ(parse_variable("RAIN"), Variable::rainfall);
  EXPECT_THROW(parse_variable("humidity"), PreconditionError);
  EXPECT_EQ(units(Variable::rainfall), "mm");
}

TEST(Split, FullPeriodCounts) {
  const SeriesDataset data(monthly(1901, 1380), Variable::temperature);
  const auto [train, test] = split(data, 2013);
  EXPECT_EQ(train.size(), 1356u);
  EXPECT_EQ(test.size(), 24u);
  EXPECT_EQ(train.last_month(), (YearMonth{2013, 12}));
  EXPECT_EQ(test.first_month(), (YearMonth{2014, 1}));
}

TEST(Split, DegenerateCutoffs) {
  const SeriesDataset data(monthly(1901, 1380), Variable::temperature);
  EXPECT_THROW(split(data, 2015), DataError);  // empty test side
  EXPECT_THROW(split(data, 1899), DataError);
  EXPECT_THROW(split(data, 2016), DataError);
}

TEST(Normalization, EndpointsMidpointAndInverse) {
  const SeriesDataset train(monthly(1901, 30, -4.0), Variable::temperature);
  const auto spec = fit_normalization(train);
  EXPECT_EQ(spec.min, -4.0);
  EXPECT_EQ(spec.max, 25.0);
  EXPECT_DOUBLE_EQ(spec.normalize(-4.0), 0.1);
  EXPECT_DOUBLE_EQ(spec.normalize(25.0), 0.9);
  EXPECT_DOUBLE_EQ(spec.normalize(10.5), 0.5);

  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  for (int k = 0; k < 1000; ++k) {
    const double v = dist(gen);
    EXPECT_NEAR(spec.denormalize(spec.normalize(v)), v, 1e-12);
  }
}

TEST(Normalization, OutOfRangeValuesAreNotClipped) {
  const NormalizationSpec spec{0.0, 100.0, 0.1, 0.9};
  EXPECT_DOUBLE_EQ(spec.normalize(200.0), 1.7);
  EXPECT_DOUBLE_EQ(spec.normalize(-50.0), -0.3);
}

TEST(Normalization, ConstantSeriesRejected) {
  auto recs = monthly(1901, 12);
  for (auto& r : recs) r.temperature = 3.0;
  EXPECT_THROW(fit_normalization(SeriesDataset(recs, Variable::temperature)), DataError);
  EXPECT_THROW(fit_normalization(SeriesDataset(monthly(1901, 12), Variable::temperature), 0.0, 1.0),
               PreconditionError);
}

TEST(MakeWindows, Counting) {
  const NormalizationSpec spec{0.0, 2000.0, 0.1, 0.9};
  EXPECT_EQ(make_windows(SeriesDataset(monthly(1901, 13), Variable::temperature), spec, 12).size(), 1u);
  EXPECT_THROW(make_windows(SeriesDataset(monthly(1901, 12), Variable::temperature), spec, 12),
               DataError);
  const SeriesDataset train(monthly(1901, 1356), Variable::temperature);
  EXPECT_EQ(make_windows(train, spec, 12).size(), 1344u);
}

TEST(MakeWindows, ChronologyAndContents) {
  const SeriesDataset data(monthly(1901, 60), Variable::temperature);
  const auto spec = fit_normalization(data);
  const auto samples = make_windows(data, spec, 12);
  ASSERT_EQ(samples.size(), 48u);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    EXPECT_EQ(s.target_month, data.month_at(k + 12));
    EXPECT_EQ(s.target, spec.normalize(data.value(k + 12)));
    for (std::size_t j = 0; j < 12; ++j) {
      EXPECT_EQ(s.inputs[j], spec.normalize(data.value(k + j)));
      EXPECT_LT(data.month_at(k + j), s.target_month);
      EXPECT_GE(s.inputs[j], spec.lo);
      EXPECT_LE(s.inputs[j], spec.hi);
    }
    if (k > 0) EXPECT_LT(samples[k - 1].target_month, s.target_month);
  }
}

TEST(MakeTargetWindows, TestYearsUsePrecedingActualHistory) {
  const SeriesDataset data(monthly(1901, 1380), Variable::temperature);
  const auto [train, test] = split(data, 2013);
  const auto spec = fit_normalization(train);
  const auto samples = make_target_windows(data, spec, 12, {2014, 1});
  ASSERT_EQ(samples.size(), 24u);
  EXPECT_EQ(samples.front().target_month, (YearMonth{2014, 1}));
  EXPECT_EQ(samples.back().target_month, (YearMonth{2015, 12}));

  // 2013-01 is position 1344 (113 * 12 - 12). Targets 2014-01..03 read
  // positions [1344, 1356), [1345, 1357), [1346, 1358).
  for (std::size_t t = 0; t < 3; ++t) {
    const auto& s = samples[t];
    EXPECT_EQ(s.target, spec.normalize(data.value(1356 + t)));
    for (std::size_t j = 0; j < 12; ++j) {
      EXPECT_EQ(s.inputs[j], spec.normalize(data.value(1344 + t + j)));
    }
  }
  EXPECT_EQ(data.month_at(1344), (YearMonth{2013, 1}));

  // Test values above the training maximum pass through unclipped.
  EXPECT_GT(samples.back().target, spec.hi);
}

TEST(MakeTargetWindows, InsufficientHistory) {
  const SeriesDataset data(monthly(2013, 36), Variable::temperature);
  const NormalizationSpec spec{0.0, 100.0, 0.1, 0.9};
  EXPECT_THROW(make_target_windows(data, spec, 12, {2013, 6}), DataError);
  EXPECT_NO_THROW(make_target_windows(data, spec, 12, {2014, 1}));
}

TEST(Pipeline, EveryMonthAfterTheFirstWindowIsATargetExactlyOnce) {
  const SeriesDataset data(monthly(1901, 1380), Variable::rainfall);
  const auto [train, test] = split(data, 2013);
  const auto spec = fit_normalization(train);
  std::multiset<YearMonth> targets;
  for (const auto& s : make_windows(train, spec, 12)) targets.insert(s.target_month);
  for (const auto& s : make_target_windows(data, spec, 12, test.first_month())) {
    targets.insert(s.target_month);
  }
  EXPECT_EQ(targets.size(), 1344u + 24u);
  YearMonth ym{1902, 1};
  for (const auto& t : targets) {
    EXPECT_EQ(t, ym);
    ym = ym.next();
  }
  EXPECT_EQ(ym, (YearMonth{2016, 1}));
}

}  // namespace
}  // namespace seqcast
