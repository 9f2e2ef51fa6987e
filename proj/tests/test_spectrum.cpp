#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nlpot/charfn.hpp"
#include "nlpot/error.hpp"
#include "nlpot/oracle.hpp"
#include "nlpot/spectrum.hpp"
#include "support/oracles.hpp"

namespace nlpot {
namespace {

using testing::kPi;

const PotentialSpec kConstant(1.0, {});

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Solver;
}

WeightTable table_of(double alpha, std::map<int, double> norms) {
  WeightTable t;
  t.alpha = alpha;
  for (const auto& [k, n] : norms) {
    t.norms[k] = n;
    t.weights[k] = alpha * n;
  }
  return t;
}

TEST(WeightTable, Examples) {
  const auto a = weight_table({1.0, kConstant});
  EXPECT_EQ(a.weights, (std::map<int, double>{{0, 1.0}}));
  const double r = 1.0 / std::sqrt(2.0);
  const auto b = weight_table({1.0, PotentialSpec(r, {{1, r, 0.0}})});
  EXPECT_NEAR(b.weights.at(0), 0.5, 1e-15);
  EXPECT_NEAR(b.weights.at(1), 0.5, 1e-15);
  EXPECT_TRUE(b.is_active(1));
  EXPECT_FALSE(b.is_active(2));
  const auto c = weight_table({2.0, PotentialSpec(0.0, {{1, 0.6, 0.8}})});
  EXPECT_NEAR(c.weights.at(1), 2.0, 1e-15);
  EXPECT_FALSE(c.is_active(0));
  EXPECT_EQ(c.orientation, 1);
}

TEST(WeightTable, FloorExcludesTinyLevels) {
  const auto t = weight_table({1.0, PotentialSpec(1.0, {{2, 1e-7, 0.0}, {3, 1e-6, 0.0}})});
  EXPECT_FALSE(t.is_active(2));  // 1e-14 <= floor
  EXPECT_TRUE(t.is_active(3));
}

TEST(SecularRoots, Examples) {
  auto one = secular_roots(table_of(1.0, {{0, 1.0}}), 40.0);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one[0], 1.0, 1e-14);

  auto two = secular_roots(table_of(1.0, {{0, 0.5}, {1, 0.5}}), 40.0);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(two[0], (5.0 - std::sqrt(17.0)) / 2.0, 1e-14);
  EXPECT_NEAR(two[1], (5.0 + std::sqrt(17.0)) / 2.0, 1e-13);

  auto neg = secular_roots(table_of(-1.0, {{0, 1.0}}), 40.0);
  ASSERT_EQ(neg.size(), 1u);
  EXPECT_NEAR(neg[0], -1.0, 1e-14);
}

TEST(SecularRoots, Errors) {
  EXPECT_EQ(kind_of([] { secular_roots(WeightTable{}, 40.0); }), ErrorKind::Degenerate);
  WeightTable mixed;
  mixed.weights = {{0, 1.0}, {1, -1.0}};
  EXPECT_EQ(kind_of([&] { all_secular_roots(mixed); }), ErrorKind::Rejection);
  EXPECT_EQ(kind_of([] { secular_roots(table_of(1.0, {{3, 1.0}}), 30.0); }), ErrorKind::Rejection);
}

TEST(SecularRoots, TinyWeightsStayResolved) {
  // Roots within ~1e-12 of their pole are still strictly separated.
  auto roots = all_secular_roots(table_of(1.0, {{1, 1e-12}, {2, 1e-12}}));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_GT(roots[0], 4.0);
  EXPECT_LT(roots[0], 16.0);
  EXPECT_GT(roots[1], 16.0);
  EXPECT_NEAR(roots[1] - 16.0, 1e-12, 4e-15);  // half an ulp at 16
}

TEST(ClassifySpectrum, ConstantPotential) {
  const auto s = classify_spectrum({1.0, kConstant}, 40.0);
  const std::vector<SpectralEntry> expected{{1.0, 1, SpectralTag::Sigma2},
                                            {4.0, 2, SpectralTag::Sigma0},
                                            {16.0, 2, SpectralTag::Sigma0},
                                            {36.0, 2, SpectralTag::Sigma0}};
  ASSERT_EQ(s.entries.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(s.entries[i].z, expected[i].z, 1e-14);
    EXPECT_EQ(s.entries[i].multiplicity, expected[i].multiplicity);
    EXPECT_EQ(s.entries[i].tag, expected[i].tag);
  }
}

TEST(ClassifySpectrum, TripleCoincidence) {
  const auto s = classify_spectrum({4.0, kConstant}, 40.0);
  ASSERT_EQ(s.entries.size(), 3u);
  EXPECT_EQ(s.entries[0], (SpectralEntry{4.0, 3, SpectralTag::Sigma0CapSigma2}));
  EXPECT_EQ(s.entries[1], (SpectralEntry{16.0, 2, SpectralTag::Sigma0}));
  EXPECT_EQ(s.entries[2], (SpectralEntry{36.0, 2, SpectralTag::Sigma0}));
  EXPECT_NO_THROW(validate(s));
}

TEST(ClassifySpectrum, SingleCosineLevel) {
  const auto s = classify_spectrum({0.5, PotentialSpec(0.0, {{1, 1.0, 0.0}})}, 40.0);
  ASSERT_EQ(s.entries.size(), 5u);
  EXPECT_EQ(s.entries[0], (SpectralEntry{0.0, 1, SpectralTag::Sigma0}));
  EXPECT_EQ(s.entries[1], (SpectralEntry{4.0, 1, SpectralTag::Sigma1}));
  EXPECT_NEAR(s.entries[2].z, 4.5, 1e-14);
  EXPECT_EQ(s.entries[2].tag, SpectralTag::Sigma2);
  EXPECT_EQ(s.entries[3], (SpectralEntry{16.0, 2, SpectralTag::Sigma0}));
  EXPECT_EQ(s.entries[4], (SpectralEntry{36.0, 2, SpectralTag::Sigma0}));
}

TEST(ClassifySpectrum, ZeroCouplingIsFree) {
  const auto s = classify_spectrum({0.0, kConstant}, 16.0);
  ASSERT_EQ(s.entries.size(), 3u);
  EXPECT_EQ(s.entries[0], (SpectralEntry{0.0, 1, SpectralTag::Sigma0}));
  EXPECT_EQ(s.total_multiplicity(), 5);
}

TEST(ClassifySpectrum, NegativeCouplingBelowZero) {
  const auto s = classify_spectrum({-1.0, kConstant}, 4.0);
  ASSERT_EQ(s.entries.size(), 2u);
  EXPECT_NEAR(s.entries[0].z, -1.0, 1e-14);
  EXPECT_EQ(s.entries[0].tag, SpectralTag::Sigma2);
}

TEST(ClassifySpectrum, ZeroLevelCoincidence) {
  // alpha < 0 with levels 0 inactive: the lower root can land on z = 0.
  // Q(z) = 1 + X/(4 - z) vanishes at z = 4 + X; X = -4 puts it on 0.
  const auto s = classify_spectrum({-4.0, PotentialSpec(0.0, {{1, 1.0, 0.0}})}, 16.0);
  ASSERT_EQ(s.entries.size(), 3u);
  EXPECT_EQ(s.entries[0], (SpectralEntry{0.0, 2, SpectralTag::Sigma0CapSigma2}));
  EXPECT_EQ(s.entries[1], (SpectralEntry{4.0, 1, SpectralTag::Sigma1}));
  EXPECT_NO_THROW(validate(s));
}

TEST(ClassifySpectrum, RejectsSmallWindow) {
  EXPECT_EQ(kind_of([] { classify_spectrum({1.0, kConstant}, 3.0); }), ErrorKind::Rejection);
}

TEST(Validate, DetectsMalformedEntries) {
  auto bad = [](std::vector<SpectralEntry> entries) {
    return kind_of([&] { validate({40.0, entries}); });
  };
  EXPECT_EQ(bad({{4.0, 1, SpectralTag::Sigma0}}), ErrorKind::MalformedSpectrum);
  EXPECT_EQ(bad({{5.0, 1, SpectralTag::Sigma1}}), ErrorKind::MalformedSpectrum);
  EXPECT_EQ(bad({{4.0, 1, SpectralTag::Sigma2}}), ErrorKind::MalformedSpectrum);
  EXPECT_EQ(bad({{16.0, 2, SpectralTag::Sigma0}, {4.0, 2, SpectralTag::Sigma0}}), ErrorKind::MalformedSpectrum);
  EXPECT_EQ(bad({{50.0, 1, SpectralTag::Sigma2}}), ErrorKind::MalformedSpectrum);
}

TEST(SpectrumProperties, InterlacingAndExteriorRoot) {
  std::mt19937_64 rng(301);
  for (int t = 0; t < 200; ++t) {
    const auto op = testing::random_operator(rng);
    const auto table = weight_table(op);
    const auto roots = all_secular_roots(table);
    std::vector<double> poles;
    for (int k : table.active_levels()) poles.push_back(l0::level(k));
    ASSERT_EQ(roots.size(), poles.size());
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (op.alpha > 0) {
        EXPECT_LT(poles[i], roots[i]);
        if (i + 1 < poles.size()) EXPECT_LT(roots[i], poles[i + 1]);
      } else {
        EXPECT_LT(roots[i], poles[i]);
        if (i > 0) EXPECT_LT(poles[i - 1], roots[i]);
      }
    }
  }
}

TEST(SpectrumProperties, RootsAreZerosOfDelta) {
  std::mt19937_64 rng(302);
  for (int t = 0; t < 20; ++t) {
    const auto op = testing::random_operator(rng);
    const CharfnContext ctx(op);
    const auto table = weight_table(op);
    for (double mu : all_secular_roots(table)) {
      if (l0::level_index(mu, 1e-3) >= 0) continue;  // Delta has a double zero nearby
      // |Delta| <= 1e-8 times the size of the terms it cancels.
      const Complex lambda = std::sqrt(Complex(mu, 0.0));
      const double scale = std::max(1.0, std::abs(op.alpha)) * std::max(1.0, std::abs(charfn::delta0(lambda)));
      EXPECT_LT(std::abs(ctx.delta_at(mu)), 1e-8 * scale) << mu;
    }
  }
}

TEST(SpectrumProperties, CountMatchesUnperturbed) {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 50; ++t) {
    const auto op = testing::random_operator(rng);
    // Window halfway between levels so no root sits on the boundary.
    const double window = 4.0 * 10.5 * 10.5;
    const auto s = classify_spectrum(op, window);
    EXPECT_NO_THROW(validate(s));
    EXPECT_EQ(s.total_multiplicity(), 1 + 2 * l0::max_level(window));
  }
}

TEST(SpectrumProperties, MatchesOracle) {
  std::mt19937_64 rng(304);
  for (int t = 0; t < 15; ++t) {
    const auto op = testing::random_operator(rng);
    const double window = 4.0 * 9.5 * 9.5;
    const auto s = classify_spectrum(op, window);
    std::vector<oracle::Cluster> o;
    for (const auto& c : oracle::oracle_spectrum(op, 2 * 10 + 16))
      if (c.value <= window) o.push_back(c);
    ASSERT_EQ(o.size(), s.entries.size()) << "trial " << t;
    for (std::size_t i = 0; i < o.size(); ++i) {
      EXPECT_NEAR(o[i].value, s.entries[i].z, 1e-8);
      EXPECT_EQ(o[i].multiplicity, s.entries[i].multiplicity);
    }
  }
}

TEST(Tags, RoundTripNames) {
  for (auto tag : {SpectralTag::Sigma0, SpectralTag::Sigma1, SpectralTag::Sigma2, SpectralTag::Sigma0CapSigma2})
    EXPECT_EQ(parse_tag(to_string(tag)), tag);
  EXPECT_FALSE(parse_tag("sigma0").has_value());
}

}  // namespace
}  // namespace nlpot
