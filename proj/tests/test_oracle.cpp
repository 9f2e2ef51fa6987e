#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "nlpot/error.hpp"
#include "nlpot/oracle.hpp"
#include "nlpot/spectrum.hpp"
#include "support/oracles.hpp"

namespace nlpot {
namespace {

const PotentialSpec kConstant(1.0, {});

std::vector<std::pair<double, int>> flatten(const std::vector<oracle::Cluster>& cs, double window) {
  std::vector<std::pair<double, int>> out;
  for (const auto& c : cs)
    if (c.value <= window) out.emplace_back(c.value, c.multiplicity);
  return out;
}

TEST(OracleSpectrum, FreeOperator) {
  const auto s = oracle::oracle_spectrum({0.0, PotentialSpec(0.3, {{2, 0.1, 0.2}})}, 10);
  const std::vector<std::pair<double, int>> expected{{0, 1}, {4, 2}, {16, 2}, {36, 2}, {64, 2}};
  EXPECT_EQ(flatten(s, 64.0), expected);
}

TEST(OracleSpectrum, ConstantPotential) {
  const auto s = flatten(oracle::oracle_spectrum({1.0, kConstant}, 32), 16.0);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_NEAR(s[0].first, 1.0, 1e-12);
  EXPECT_EQ(s[0].second, 1);
  EXPECT_EQ(s[1], std::make_pair(4.0, 2));
  EXPECT_EQ(s[2], std::make_pair(16.0, 2));
}

TEST(OracleSpectrum, TripleEigenvalue) {
  const auto s = flatten(oracle::oracle_spectrum({4.0, kConstant}, 32), 4.5);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s[0].first, 4.0, 1e-12);
  EXPECT_EQ(s[0].second, 3);
}

TEST(OracleSpectrum, RequiresHeadroom) {
  try {
    oracle::oracle_spectrum({1.0, PotentialSpec(0.0, {{5, 1.0, 0.0}})}, 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Rejection);
  }
}

TEST(OracleSpectrum, TruncationIsExact) {
  std::mt19937_64 rng(501);
  for (int t = 0; t < 8; ++t) {
    const auto op = testing::random_operator(rng);
    const int n = 16;
    const double window = l0::level(n) / 4.0;
    const auto a = flatten(oracle::oracle_spectrum(op, n), window);
    const auto b = flatten(oracle::oracle_spectrum(op, n + 16), window);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(a[i].first, b[i].first, 1e-10);
      EXPECT_EQ(a[i].second, b[i].second);
    }
  }
}

TEST(Jacobi, TraceAndOrdering) {
  std::mt19937_64 rng(502);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int dim : {1, 2, 5, 17, 40, 65}) {
    oracle::SymmetricMatrix m(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = u(rng);
    const auto eig = oracle::jacobi_eigenvalues(m);
    ASSERT_EQ(eig.size(), std::size_t(dim));
    EXPECT_NEAR(std::accumulate(eig.begin(), eig.end(), 0.0), m.trace(), 1e-10);
    EXPECT_TRUE(std::is_sorted(eig.begin(), eig.end()));
    // Frobenius norm is invariant under rotations.
    double fro = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) fro += m(i, j) * m(i, j);
    const double sq = std::inner_product(eig.begin(), eig.end(), eig.begin(), 0.0);
    EXPECT_NEAR(sq, fro, 1e-9 * fro);
  }
}

TEST(Jacobi, DiagonalIsExact) {
  const auto t = oracle::truncate({0.0, PotentialSpec(0.5, {{3, 0.2, 0.1}})}, 12);
  const auto eig = oracle::jacobi_eigenvalues(t.matrix());
  auto d = t.diagonal;
  std::sort(d.begin(), d.end());
  EXPECT_EQ(eig, d);
}

TEST(Jacobi, NonConvergenceIsReported) {
  oracle::SymmetricMatrix m(3);
  m(0, 1) = m(1, 0) = 1.0;
  m(1, 2) = m(2, 1) = 0.5;
  try {
    oracle::jacobi_eigenvalues(m, {1e-12, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Solver);
  }
}

TEST(Cluster, GroupsCloseValues) {
  const std::vector<double> v{1.0, 1.0 + 5e-7, 2.0, 3.0, 3.0 + 2e-6};
  const auto c = oracle::cluster(v, 1e-6);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0].multiplicity, 2);
  EXPECT_EQ(c[1].multiplicity, 1);
  EXPECT_EQ(c[3].multiplicity, 1);
}

TEST(ScanDeltaZeros, Examples) {
  const auto a = oracle::scan_delta_zeros({1.0, kConstant}, 3.0, 0.01);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_NEAR(a[0], 1.0, 1e-10);
  const auto b = oracle::scan_delta_zeros({0.5, PotentialSpec(0.0, {{1, 1.0, 0.0}})}, 5.0, 0.01);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_NEAR(b[0], 2.1213203436, 1e-10);
  EXPECT_TRUE(oracle::scan_delta_zeros({0.0, kConstant}, 5.0, 0.01).empty());
}

TEST(ScanDeltaZeros, RejectsCoarseGrid) {
  EXPECT_THROW(oracle::scan_delta_zeros({1.0, kConstant}, 3.0, 0.02), Error);
}

TEST(ScanDeltaZeros, AgreesWithSecularRoots) {
  std::mt19937_64 rng(503);
  testing::RandomOptions opt;
  opt.max_order = 5;
  for (int t = 0; t < 6; ++t) {
    const auto op = testing::random_operator(rng, opt);
    const double lmax = 2.0 * opt.max_order + 3.0;
    const auto scanned = oracle::scan_delta_zeros(op, lmax, 0.01);
    std::vector<double> expected;
    for (double mu : classify_spectrum(op, lmax * lmax).secular_values()) {
      if (mu <= 0.0) continue;
      const double l = std::sqrt(mu);
      // Roots near the scan limits or inside the excluded 2Z neighbourhoods are out of reach.
      if (l < 0.02 || l > lmax - 0.01 || std::abs(l - 2.0 * std::round(l / 2.0)) < 0.02) continue;
      expected.push_back(mu);
    }
    std::vector<double> found;
    for (double l : scanned)
      if (std::abs(l - 2.0 * std::round(l / 2.0)) >= 0.02) found.push_back(l * l);
    ASSERT_EQ(found.size(), expected.size()) << "trial " << t;
    for (std::size_t i = 0; i < found.size(); ++i) EXPECT_NEAR(found[i], expected[i], 1e-8);
  }
}

}  // namespace
}  // namespace nlpot
