#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "error_helpers.hpp"
#include "lexcausal/ci_tests.hpp"
#include "lexcausal/random.hpp"

using namespace lexcausal;
using lexcausal::testing::code_of;

namespace {

const std::vector<double> kX = {1.876501, -3.296385, 0.885346, -0.101739, -0.624512, -0.841844, -1.836663, -2.227047, -0.313113, 3.716095, -1.085299, -0.303548, -1.052567, -0.062269, -2.682485, -1.122397, 1.049609, 0.686567, -0.768645, -0.598234, 0.286676, 1.058448, 1.817618, -1.45821, 0.100787, -0.298199, 3.059858, -0.286941, -0.541359, -0.372234, 0.459, 0.310503, 1.48539, 1.490655, 0.370898, 0.158707, -3.468355, 0.381147, 0.136413, -2.836925, -0.20065, 0.44355, -0.265072, -0.616126, -0.973153, -1.436758, 1.402067, 1.718259, 0.799462, 1.284154};
const std::vector<double> kY = {2.662014, -3.910624, 0.617437, 0.198567, -1.559352, -0.502279, -3.049098, -0.802096, -0.797131, 7.731082, 1.181792, 0.992332, -2.847074, -1.039497, -3.005004, -0.419278, -1.272277, 1.279228, 1.64042, -1.80099, -0.810951, 1.273873, 1.497211, -0.593363, 1.915441, 0.19398, 4.23252, -0.257673, 1.245688, 1.558355, 0.71159, -1.214144, 1.432993, 0.511905, 1.781913, 1.407097, -4.867484, 0.759413, -0.406774, -3.788578, -0.754468, 1.403594, 1.885829, -1.630603, -1.016317, -1.942283, 0.771621, 2.131521, 1.44435, 1.762885};
const std::vector<double> kZ = {2.040919, -2.555665, 0.418099, -0.56777, -0.452649, -0.215597, -2.019986, -0.231932, -0.865213, 3.323, 0.225787, -0.352631, -0.281287, -0.668046, -1.055151, -0.390801, 0.481945, -0.238554, 0.957759, -0.199802, 0.02426, 1.545821, 0.545106, -0.505229, -0.182839, 0.540525, 1.935088, -0.26962, -0.243559, 1.002314, -0.88646, -0.29172, 0.882539, 0.58035, 0.091517, 0.670104, -2.828162, 1.021307, -0.959645, -1.66862, 0.276446, 0.700545, -0.444767, -1.076406, 0.026125, -0.052747, 1.405598, 0.747408, 0.193816, 1.111633};

DiscreteColumn column(std::vector<int> codes) {
  int levels = 0;
  for (int c : codes) levels = std::max(levels, c + 1);
  return DiscreteColumn{std::move(codes), levels};
}

// Expands a contingency table into paired code columns.
void append_table(const std::vector<std::vector<int>>& table, std::vector<int>& x, std::vector<int>& y,
                  std::vector<int>* z = nullptr, int stratum = 0) {
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = 0; j < table[i].size(); ++j)
      for (int c = 0; c < table[i][j]; ++c) {
        x.push_back(static_cast<int>(i));
        y.push_back(static_cast<int>(j));
        if (z) z->push_back(stratum);
      }
}

}  // namespace

// Reference values frozen from numpy/scipy.

TEST(FisherZ, PartialCorrelationMatchesReference) {
  const std::vector<std::span<const double>> z = {kZ};
  EXPECT_NEAR(partial_correlation(kX, kY, z), 0.45088520031663326, 1e-10);
  const auto r = fisher_z_ci_test(kX, kY, z);
  EXPECT_NEAR(r.statistic, 3.2949291738941016, 1e-9);
  EXPECT_NEAR(r.p_value, 0.0009844648893181133, 1e-10);
  EXPECT_FALSE(r.independent_at(0.05));
}

TEST(FisherZ, UnconditionalEqualsPearsonTransform) {
  const auto r = fisher_z_ci_test(kX, kY, {});
  const double rho = partial_correlation(kX, kY, {});
  EXPECT_NEAR(r.statistic, std::sqrt(47.0) * std::atanh(rho), 1e-10);
  EXPECT_NEAR(fisher_z_from_correlation(0.0, 50, 0).p_value, 1.0, 1e-15);
}

TEST(FisherZ, ClampsPerfectCorrelation) {
  const auto r = fisher_z_from_correlation(1.0, 20, 0);
  EXPECT_TRUE(std::isfinite(r.statistic));
  EXPECT_LT(r.p_value, 1e-10);
}

TEST(FisherZ, Errors) {
  const std::vector<double> small = {1, 2, 3};
  EXPECT_EQ(code_of([&] { fisher_z_ci_test(small, small, {}); }), Errc::TooFewSamples);
  EXPECT_EQ(code_of([&] { partial_correlation(kX, std::vector<double>{1, 2}, {}); }), Errc::DimMismatch);
  const std::vector<std::span<const double>> z = {kX};
  EXPECT_EQ(code_of([&] { partial_correlation(kX, kY, z); }), Errc::SingularCovariance);
}

TEST(Chi2MI, UnconditionalMatchesGTest) {
  std::vector<int> x, y;
  append_table({{20, 15, 5}, {10, 25, 25}}, x, y);
  const auto r = chi2_mi_ci_test(column(x), column(y), {});
  EXPECT_NEAR(r.statistic, 16.452751719545674, 1e-10);
  EXPECT_NEAR(r.p_value, 0.00026750404780193836, 1e-12);
  EXPECT_EQ(r.df_or_n, 2.0);
}

TEST(Chi2MI, ConditionalSumsOverStrata) {
  std::vector<int> x, y, z;
  append_table({{12, 3}, {4, 11}}, x, y, &z, 0);
  append_table({{5, 9}, {8, 6}}, x, y, &z, 1);
  const auto zc = column(z);
  const auto r = chi2_mi_ci_test(column(x), column(y), {&zc});
  EXPECT_NEAR(r.statistic, 10.34852330843809, 1e-10);
  EXPECT_NEAR(r.p_value, 0.0056603946999832415, 1e-12);
  EXPECT_EQ(r.df_or_n, 2.0);
}

TEST(Chi2MI, DegenerateMargins) {
  const auto x = column({0, 0, 0, 0});
  const auto y = column({0, 1, 0, 1});
  EXPECT_EQ(code_of([&] { chi2_mi_ci_test(x, y, {}); }), Errc::DegenerateMargins);
}

TEST(Discretize, CategoricalAndQuantile) {
  const std::vector<double> v = {3, 1, 3, 7, 1};
  const auto c = discretize_categorical(v);
  EXPECT_EQ(c.levels, 3);
  EXPECT_EQ(c.codes, (std::vector<int>{1, 0, 1, 2, 0}));

  std::vector<double> u(90);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = static_cast<double>((i * 37) % 90);
  const auto q = discretize_quantile(u, 3);
  EXPECT_EQ(q.levels, 3);
  std::vector<int> counts(3, 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    ++counts[static_cast<std::size_t>(q.codes[i])];
    EXPECT_EQ(q.codes[i], static_cast<int>(u[i]) / 30);
  }
  EXPECT_EQ(counts, (std::vector<int>{30, 30, 30}));

  const std::vector<double> ties = {1, 1, 1, 1, 1, 1, 2, 3};
  const auto t = discretize_quantile(ties, 3);
  EXPECT_LE(t.levels, 3);
  for (std::size_t i = 1; i < 6; ++i) EXPECT_EQ(t.codes[i], t.codes[0]);
}

TEST(MixedCITest, DispatchesOnKinds) {
  Dataset d;
  d.add_column("x", VariableKind::continuous, kX);
  d.add_column("y", VariableKind::continuous, kY);
  d.add_column("z", VariableKind::continuous, kZ);
  std::vector<double> cat(kX.size());
  for (std::size_t i = 0; i < cat.size(); ++i) cat[i] = kX[i] > 0 ? 1 : 0;
  d.add_column("c", VariableKind::categorical, cat);
  d.add_column("k", VariableKind::continuous, std::vector<double>(kX.size(), 2.0));
  const MixedCITest test(d);

  const std::vector<std::size_t> z = {2};
  EXPECT_NEAR(test.test(0, 1, z).p_value, fisher_z_ci_test(kX, kY, {kZ}).p_value, 1e-14);
  const auto mixed = test.test(3, 1, {});
  const auto direct = chi2_mi_ci_test(ColumnView{cat, VariableKind::categorical}, ColumnView{kY, VariableKind::continuous},
                                      {}, kDefaultCIBins);
  EXPECT_EQ(mixed.statistic, direct.statistic);
  EXPECT_EQ(test.test(4, 0, {}).p_value, 1.0);
  EXPECT_EQ(test.test(0, 1, z).p_value, test.test(1, 0, z).p_value);
}

TEST(MixedCITest, IndependentColumnsRarelyRejected) {
  Rng rng(77);
  int rejections = 0;
  for (int sim = 0; sim < 200; ++sim) {
    std::vector<double> a(80), b(80);
    for (std::size_t i = 0; i < 80; ++i) {
      a[i] = standard_normal(rng);
      b[i] = standard_normal(rng);
    }
    if (!fisher_z_ci_test(a, b, {}).independent_at(0.05)) ++rejections;
  }
  EXPECT_LT(rejections, 25);
}
