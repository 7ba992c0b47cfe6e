#include <gtest/gtest.h>

#include "ghostcheck/error.hpp"
#include "ghostcheck/factory.hpp"

using namespace ghostcheck;

TEST(Dimensions, ModuliExamples) {
  EXPECT_EQ(dim_moduli(3, 4, 12), 48);
  EXPECT_EQ(dim_moduli(3, 1, 2), 8);
  EXPECT_EQ(dim_moduli(3, 1, 1), 4);
  EXPECT_THROW(dim_moduli(3, 4, 6), Error);  // d < 2g - 1
  EXPECT_THROW(dim_moduli(0, 1, 2), Error);
  EXPECT_THROW(dim_moduli(3, 1, 0), Error);
}

TEST(Dimensions, StratumExamples) {
  EXPECT_EQ(dim_stratum(make_stratum(3, 4, std::vector<std::pair<int, int>>(12, {0, 1}))), 48);
  // (N - 3)(1 - g) = (-1)(-1) = 1 and d (N + 1) = 12.
  EXPECT_EQ(dim_stratum(make_stratum(2, 2, std::vector<std::pair<int, int>>(4, {0, 1}))), 13);
  EXPECT_EQ(dim_moduli(2, 2, 4), 13);
  for (int N = 1; N <= 5; ++N) {
    for (int g = 1; g <= 4; ++g) {
      for (int d = 2 * g; d <= 2 * g + 3; ++d) {
        // One attachment point, ghost of genus g carrying all the genus.
        EXPECT_EQ(dim_stratum(make_stratum(N, g, {{0, d}})), dim_moduli(N, g, d) + N * g - 1);
      }
    }
  }
}

TEST(Dimensions, ValidationErrors) {
  StratumSpec s = make_stratum(3, 2, {{1, 2}, {0, 1}});
  EXPECT_NO_THROW(validate(s));
  EXPECT_EQ(s.g, 3);
  EXPECT_EQ(s.d, 3);
  EXPECT_EQ(s.n, 2);
  s.d = 4;
  EXPECT_THROW(validate(s), Error);
  EXPECT_THROW(validate(make_stratum(3, 2, {{1, 1}})), Error);  // d_i < 2 g_i
  EXPECT_THROW(validate(make_stratum(3, 0, {{0, 1}})), Error);  // h = 0
  EXPECT_THROW(validate(make_stratum(3, 1, {})), Error);        // n = 0
  EXPECT_THROW(dim_stratum(make_stratum(3, 1, {{0, 0}})), Error);
}

TEST(DimensionsProperties, StratumIdentity) {
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const StratumSpec s = random_stratum(seed, 6, 5, 8);
    ASSERT_NO_THROW(validate(s));
    std::int64_t explicit_sum = 3 * s.h - 3 + s.n - static_cast<std::int64_t>(s.N) * (s.n - 1);
    for (const auto& [gi, di] : s.parts) explicit_sum += (s.N - 3) * (1 - gi) + di * (s.N + 1) + 1;
    const std::int64_t via_moduli =
        (s.N - 3) * (1 - s.g) + static_cast<std::int64_t>(s.d) * (s.N + 1) + s.N * s.h - s.n;
    ASSERT_EQ(explicit_sum, via_moduli);
    ASSERT_EQ(dim_stratum(s), explicit_sum);
  }
}

TEST(WorkedExample, Examples) {
  const ObstructionProblem p34 = build_worked_example_instance(3, 4, ModelKind::Hyperelliptic);
  EXPECT_EQ(p34.size(), 12u);
  EXPECT_EQ(p34.genus(), 4);
  EXPECT_EQ(p34.ambient_dim(), 3);
  EXPECT_EQ(rank(obstruction_matrix(p34)), 12u);

  const ObstructionProblem p22 = build_worked_example_instance(2, 2, ModelKind::Hyperelliptic);
  EXPECT_EQ(theorem_check(p22).rank, 4u);
  const CorollaryVerdict c22 = corollary_check(p22);
  EXPECT_EQ(c22.verdict, Verdict::Inconclusive);
  EXPECT_EQ(*c22.witness_D, (std::vector<std::size_t>{0, 1, 2, 3}));

  EXPECT_EQ(theorem_check(build_worked_example_instance(2, 3, ModelKind::NodalRational)).rank, 6u);

  EXPECT_THROW(build_worked_example_instance(1, 3, ModelKind::Hyperelliptic), Error);
  EXPECT_THROW(build_worked_example_instance(3, 1, ModelKind::NodalRational), Error);
}

TEST(WorkedExample, GroupStructure) {
  for (ModelKind kind : {ModelKind::Hyperelliptic, ModelKind::NodalRational}) {
    for (int N = 2; N <= 4; ++N) {
      for (int h = 2; h <= 5; ++h) {
        const CurveInstance inst = build_worked_example_curve_instance(N, h, kind);
        ASSERT_EQ(inst.points.size(), static_cast<std::size_t>(N * h));
        const QMatrix ev = ev_matrix(inst.model, inst.points);
        ASSERT_EQ(rank(ev), static_cast<std::size_t>(h));
        for (int i = 0; i < N; ++i) {
          std::vector<std::size_t> group;
          for (int k = 0; k < h; ++k) {
            const std::size_t idx = static_cast<std::size_t>(i * h + k);
            group.push_back(idx);
            QVector expected(static_cast<std::size_t>(N));
            expected[static_cast<std::size_t>(i)] = Rational(1);
            ASSERT_EQ(inst.derivs[idx], expected);
          }
          ASSERT_EQ(rank(ev.select_columns(group)), static_cast<std::size_t>(h));
        }
        const ObstructionProblem p = problem_from_curve(inst.model, inst.points, inst.derivs);
        const QMatrix m = obstruction_matrix(p);
        ASSERT_EQ(m.rows(), m.cols());
        ASSERT_EQ(rank(m), m.cols());
      }
    }
  }
}

TEST(RandomInstances, Deterministic) {
  EXPECT_EQ(random_instance(42, 3, 2, 5, 4), random_instance(42, 3, 2, 5, 4));
  EXPECT_NE(random_instance(42, 3, 2, 5, 4), random_instance(43, 3, 2, 5, 4));
  EXPECT_EQ(random_admissible_ghost(5, 2), random_admissible_ghost(5, 2));
  const ObstructionProblem p = random_instance(7, 2, 3, 4, 2);
  for (const auto& c : p.columns()) {
    for (const auto& x : c.delta) EXPECT_LE(std::abs(std::stoi(x.str())), 2);
    for (const auto& x : c.deriv) EXPECT_LE(std::abs(std::stoi(x.str())), 2);
  }
  EXPECT_THROW(random_instance(1, 0, 1, 1, 1), Error);
}

TEST(RandomInstances, SinglePointForcedNonzeroFires) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ObstructionProblem p = random_instance(seed, 1 + seed % 4, 1 + seed % 3, 1, 3, true);
    EXPECT_EQ(theorem_check(p).verdict, Verdict::NotEventuallySmoothable) << seed;
  }
}

TEST(RandomInstances, TooManyPointsIsInconclusive) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ObstructionProblem p = random_instance(seed, 2, 2, 5 + seed % 3, 9);
    EXPECT_EQ(theorem_check(p).verdict, Verdict::Inconclusive);
  }
}

TEST(RandomInstances, AdmissibleGhostShape) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    for (const auto& g : random_admissible_ghost(seed, 3)) {
      for (const auto& [e, c] : g.terms()) {
        EXPECT_GE(e[0], 1);
        EXPECT_EQ(e[1], 0);
        EXPECT_LE(e[0] + e[2], 4);
      }
    }
  }
}
