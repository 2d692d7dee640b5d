#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fixtures.hpp"
#include "regrkit/dataset.hpp"
#include "regrkit/error.hpp"

namespace regrkit {
namespace {

using namespace regrkit::testing;

Dataset numeric_table(const std::vector<std::vector<double>>& cols) {
  std::vector<AttributeSpec> specs;
  for (std::size_t c = 0; c < cols.size(); ++c) specs.push_back({"a" + std::to_string(c), AttributeKind::numeric, c});
  std::vector<Row> rows(cols.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& col : cols) rows[r].emplace_back(col[r]);
  return build_dataset(specs, rows);
}

TEST(BuildDataset, WebTrafficHasFifteenRowsAndSevenAttributes) {
  const auto& d = web_traffic();
  EXPECT_EQ(d.size(), 15u);
  EXPECT_EQ(d.attributes().size(), 7u);
  EXPECT_EQ(d.attribute(kMonth).kind, AttributeKind::label);
  EXPECT_EQ(d.numeric_names().size(), 6u);
  EXPECT_EQ(d.label(0), "Apr-11");
  EXPECT_EQ(d.label(14), "Jun-12");
}

TEST(BuildDataset, EmptyRowsAreValidButStatsFail) {
  auto d = build_dataset({{"x", AttributeKind::numeric, 0}}, {});
  EXPECT_TRUE(d.empty());
  EXPECT_THROW(column_stats(d, "x"), EmptyDatasetError);
}

TEST(BuildDataset, WidthMismatchNamesRow) {
  std::vector<AttributeSpec> specs{{"a", AttributeKind::numeric, 0}, {"b", AttributeKind::numeric, 1}};
  try {
    build_dataset(specs, {Row{1.0, 2.0}, Row{3.0}});
    FAIL() << "expected WidthMismatchError";
  } catch (const WidthMismatchError& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
  }
}

TEST(BuildDataset, RejectsNonFiniteAndDuplicateNames) {
  std::vector<AttributeSpec> one{{"a", AttributeKind::numeric, 0}};
  EXPECT_THROW(build_dataset(one, {Row{std::numeric_limits<double>::infinity()}}), NonFiniteValueError);
  EXPECT_THROW(build_dataset(one, {Row{std::nan("")}}), NonFiniteValueError);
  std::vector<AttributeSpec> dup{{"a", AttributeKind::numeric, 0}, {"a", AttributeKind::numeric, 1}};
  EXPECT_THROW(build_dataset(dup, {}), DuplicateAttributeError);
  EXPECT_THROW(build_dataset({{"", AttributeKind::numeric, 0}}, {}), DataError);
}

TEST(ColumnStats, SubscribersColumn) {
  const auto s = column_stats(web_traffic(), kST);
  EXPECT_EQ(s.min, 1000.0);
  EXPECT_EQ(s.max, 145000.0);
  EXPECT_EQ(s.n, 15u);
  // 700500 / 15, summed by hand from the export.
  EXPECT_DOUBLE_EQ(s.mean, 46700.0);
}

TEST(ColumnStats, ConstantAndSingletonColumns) {
  EXPECT_EQ(column_stats(std::vector<double>{5, 5, 5}).stddev, 0.0);
  const auto one = column_stats(std::vector<double>{7});
  EXPECT_EQ(one.stddev, 0.0);
  EXPECT_EQ(one.mean, 7.0);
}

TEST(ColumnStats, Errors) {
  EXPECT_THROW(column_stats(web_traffic(), "nope"), UnknownAttributeError);
  EXPECT_THROW(column_stats(web_traffic(), kMonth), LabelAttributeError);
}

TEST(ColumnStats, MatchesTwoPassReferenceOnRandomTables) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> scale(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const double mag = std::pow(10.0, scale(rng));
    std::normal_distribution<double> dist(mag * 3.0, mag);
    std::vector<double> v(50);
    for (auto& x : v) x = dist(rng);

    long double mean = 0;
    for (double x : v) mean += x;
    mean /= v.size();
    long double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double ref_sd = static_cast<double>(std::sqrt(ss / (v.size() - 1)));

    const auto s = column_stats(v);
    EXPECT_NEAR(s.mean, static_cast<double>(mean), 1e-9 * std::abs(static_cast<double>(mean)));
    EXPECT_NEAR(s.stddev, ref_sd, 1e-9 * ref_sd);
    EXPECT_LE(s.min, s.mean);
    EXPECT_LE(s.mean, s.max);
  }
}

TEST(Pearson, PublishedCells) {
  EXPECT_NEAR(pearson(web_traffic(), kST, kPV), 0.99, 0.005);
  EXPECT_NEAR(pearson(web_traffic(), kPPC, kREM), 0.74, 0.005);
}

TEST(Pearson, SelfCorrelationIsOne) {
  for (const auto& name : web_traffic().numeric_names()) EXPECT_NEAR(pearson(web_traffic(), name, name), 1.0, 1e-12);
}

TEST(Pearson, ConstantColumnIsAnError) {
  auto d = numeric_table({{1, 2, 3}, {4, 4, 4}});
  EXPECT_THROW(pearson(d, "a0", "a1"), ConstantColumnError);
  EXPECT_THROW(pearson(d, "a0", "zz"), UnknownAttributeError);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{2}), DataError);
}

TEST(Pearson, BoundedSymmetricAndAffineInvariant) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z(0, 1);
  std::uniform_real_distribution<double> pos(0.01, 100), shift(-1e4, 1e4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(50), y(50);
    const double rho = std::uniform_real_distribution<double>(-1, 1)(rng);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = z(rng);
      y[i] = rho * x[i] + std::sqrt(1 - rho * rho) * z(rng);
    }
    const double r = pearson(x, y);
    EXPECT_LE(std::abs(r), 1.0 + 1e-12);
    EXPECT_NEAR(r, pearson(y, x), 1e-12);

    const double a = pos(rng), b = shift(rng);
    std::vector<double> xt(x);
    for (auto& v : xt) v = a * v + b;
    EXPECT_NEAR(pearson(xt, y), r, 1e-9);
  }
}

TEST(CorrelationMatrix, ReproducesPublishedMatrix) {
  const auto m = correlation_matrix(web_traffic());
  ASSERT_EQ(m.size(), 6u);
  const auto& published = published_correlations();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      EXPECT_NEAR(m(i, j), published[i][j], 0.005) << m.names()[i] << " x " << m.names()[j];
}

TEST(CorrelationMatrix, SymmetricWithUnitDiagonal) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> z(0, 1);
  std::vector<std::vector<double>> cols(5, std::vector<double>(30));
  for (auto& c : cols)
    for (auto& v : c) v = z(rng);
  const auto m = correlation_matrix(numeric_table(cols));
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_NEAR(m(i, i), 1.0, 1e-12);
    for (std::size_t j = 0; j < m.size(); ++j) EXPECT_EQ(m(i, j), m(j, i));
  }
}

TEST(CorrelationMatrix, DuplicatedColumnCorrelatesPerfectly) {
  const auto m = correlation_matrix(numeric_table({{1, 5, 2, 8}, {1, 5, 2, 8}}));
  EXPECT_NEAR(m(0, 1), 1.0, 1e-12);
}

TEST(CorrelationMatrix, ConstantColumnNamesThePair) {
  try {
    correlation_matrix(numeric_table({{1, 2, 3}, {9, 9, 9}}));
    FAIL();
  } catch (const ConstantColumnError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("a0"), std::string::npos);
    EXPECT_NE(what.find("a1"), std::string::npos);
  }
}

}  // namespace
}  // namespace regrkit
