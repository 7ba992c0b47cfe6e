#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ghostcheck/error.hpp"
#include "ghostcheck/factory.hpp"
#include "ghostcheck/obstruction.hpp"
#include "test_support.hpp"

using namespace ghostcheck;
using ghostcheck::testing::minor_rank;
using ghostcheck::testing::random_matrix;
using ghostcheck::testing::uniform;

namespace {

QVector Q(std::initializer_list<std::int64_t> xs) {
  QVector v;
  for (auto x : xs) v.push_back(Rational(x));
  return v;
}

std::size_t oracle_rank(const std::vector<QVector>& cols) {
  if (cols.empty()) return 0;
  return minor_rank(QMatrix::from_columns(cols.front().size(), cols));
}

bool oracle_passes(const ObstructionProblem& prob, const std::vector<std::size_t>& D) {
  std::vector<QVector> e, v;
  for (std::size_t i : D) {
    e.push_back(prob.columns()[i].delta);
    v.push_back(prob.columns()[i].deriv);
  }
  return oracle_rank(v) + oracle_rank(e) <= D.size();
}

// Minimal passing subset under (|D|, lex), by brute force.
std::optional<std::vector<std::size_t>> oracle_corollary(const ObstructionProblem& prob) {
  std::optional<std::vector<std::size_t>> best;
  const std::size_t n = prob.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> D;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) D.push_back(i);
    if (!oracle_passes(prob, D)) continue;
    if (!best || D.size() < best->size() || (D.size() == best->size() && D < *best)) best = D;
  }
  return best;
}

ObstructionProblem transformed(const ObstructionProblem& prob, const QMatrix& A, const QMatrix& B,
                               const std::vector<std::pair<Rational, Rational>>& scales) {
  std::vector<ObstructionColumn> cols;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    QVector e = A * prob.columns()[i].delta;
    QVector v = B * prob.columns()[i].deriv;
    for (auto& x : e) x *= scales[i].first;
    for (auto& x : v) x *= scales[i].second;
    cols.push_back({e, v});
  }
  return ObstructionProblem(prob.genus(), prob.ambient_dim(), cols);
}

QMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    QMatrix m = random_matrix(rng, n, n, 4);
    if (rank(m) == n) return m;
  }
}

Rational nonzero(std::mt19937_64& rng) {
  int v = 0;
  while (v == 0) v = uniform(rng, -6, 6);
  return Rational(v, uniform(rng, 1, 5));
}

}  // namespace

TEST(Obstruction, MatrixExamples) {
  const ObstructionProblem one(1, 1, {{Q({1}), Q({1})}});
  EXPECT_EQ(obstruction_matrix(one), QMatrix::from_rows({Q({1})}));

  const ObstructionProblem outer(2, 2, {{Q({1, 0}), Q({0, 1})}});
  EXPECT_EQ(obstruction_matrix(outer).column(0), Q({0, 1, 0, 0}));

  const ObstructionProblem rows(2, 3, {{Q({2, 5}), Q({1, -1, 3})}});
  // Row a*N + b holds e[a] * v[b].
  EXPECT_EQ(obstruction_matrix(rows).column(0), Q({2, -2, 6, 5, -5, 15}));
}

TEST(Obstruction, ConstructionErrors) {
  EXPECT_THROW(ObstructionProblem(2, 2, {{Q({1}), Q({1, 0})}}), Error);
  EXPECT_THROW(ObstructionProblem(2, 2, {{Q({1, 0}), Q({1})}}), Error);
  EXPECT_THROW(ObstructionProblem(0, 2, {{Q({}), Q({1, 0})}}), Error);
  EXPECT_THROW(ObstructionProblem(1, 1, {}), Error);
}

TEST(Obstruction, TheoremExamples) {
  const TheoremVerdict single = theorem_check(ObstructionProblem(1, 1, {{Q({1}), Q({1})}}));
  EXPECT_EQ(single.verdict, Verdict::NotEventuallySmoothable);
  EXPECT_EQ(single.rank, 1u);
  EXPECT_FALSE(single.kernel_witness);

  const ObstructionProblem zero_v(2, 2, {{Q({1, 0}), Q({1, 0})}, {Q({0, 1}), Q({0, 0})}, {Q({1, 1}), Q({0, 1})}});
  const TheoremVerdict tz = theorem_check(zero_v);
  EXPECT_EQ(tz.verdict, Verdict::Inconclusive);
  EXPECT_EQ(*tz.kernel_witness, Q({0, 1, 0}));
  EXPECT_EQ(kernel_to_witness_D(zero_v, *tz.kernel_witness), (std::vector<std::size_t>{1}));

  const ObstructionProblem equal(2, 2, {{Q({1, 2}), Q({3, 1})}, {Q({1, 2}), Q({3, 1})}});
  const TheoremVerdict te = theorem_check(equal);
  EXPECT_EQ(te.verdict, Verdict::Inconclusive);
  EXPECT_EQ(*te.kernel_witness, Q({-1, 1}));
  const auto D = kernel_to_witness_D(equal, *te.kernel_witness);
  EXPECT_EQ(D, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(satisfies_rank_inequality(equal, D));
}

TEST(Obstruction, CorollaryExamples) {
  const ObstructionProblem single(3, 2, {{Q({1, 0, 2}), Q({0, 5})}});
  EXPECT_EQ(corollary_check(single).verdict, Verdict::NotEventuallySmoothable);

  const ObstructionProblem zero_v(2, 2, {{Q({1, 0}), Q({1, 0})}, {Q({0, 1}), Q({0, 0})}});
  const CorollaryVerdict cz = corollary_check(zero_v);
  EXPECT_EQ(cz.verdict, Verdict::Inconclusive);
  EXPECT_EQ(*cz.witness_D, (std::vector<std::size_t>{1}));

  const ObstructionProblem s22 = build_worked_example_instance(3, 4, ModelKind::Hyperelliptic);
  const CorollaryVerdict cs = corollary_check(s22);
  EXPECT_EQ(cs.verdict, Verdict::Inconclusive);
  std::vector<std::size_t> all(12);
  for (std::size_t i = 0; i < 12; ++i) all[i] = i;
  EXPECT_TRUE(satisfies_rank_inequality(s22, all));
  EXPECT_EQ(rank(obstruction_matrix(s22)), 12u);
}

TEST(Obstruction, Errors) {
  const ObstructionProblem p(1, 1, {{Q({1}), Q({1})}, {Q({1}), Q({2})}});
  EXPECT_THROW(kernel_to_witness_D(p, Q({1, 1})), Error);
  EXPECT_THROW(kernel_to_witness_D(p, Q({0, 0})), Error);
  EXPECT_THROW(kernel_to_witness_D(p, Q({1})), Error);
  EXPECT_EQ(kernel_to_witness_D(p, Q({2, -1})), (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(satisfies_rank_inequality(p, {2}), Error);

  const ObstructionProblem big = random_instance(1, 2, 2, 25, 3);
  try {
    corollary_check(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyPoints);
  }
  EXPECT_NO_THROW(theorem_check(big));
}

TEST(Obstruction, SmallRandomKernelInstance) {
  // g = 2, N = 2, n = 5 always has a kernel (rank <= 4).
  const ObstructionProblem p = random_instance(17, 2, 2, 5, 4);
  const TheoremVerdict tv = theorem_check(p);
  ASSERT_EQ(tv.verdict, Verdict::Inconclusive);
  const auto D = kernel_to_witness_D(p, *tv.kernel_witness);
  EXPECT_TRUE(oracle_passes(p, D));
  EXPECT_EQ(corollary_check(p).witness_D, oracle_corollary(p));
}

TEST(ObstructionProperties, SoundnessAndWitnessDerivation) {
  std::mt19937_64 rng(21);
  int kernels = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const int g = uniform(rng, 1, 3), N = uniform(rng, 1, 3), n = uniform(rng, 1, 5);
    const ObstructionProblem p = random_instance(seed, g, N, n, 2, seed % 2 == 0);
    const TheoremVerdict tv = theorem_check(p);
    const CorollaryVerdict cv = corollary_check(p);
    const auto oracle = oracle_corollary(p);
    ASSERT_EQ(cv.witness_D, oracle) << "seed " << seed;
    ASSERT_EQ(cv.verdict == Verdict::NotEventuallySmoothable, !oracle.has_value());
    ASSERT_LE(tv.rank, std::min<std::size_t>(p.size(), static_cast<std::size_t>(g * N)));
    ASSERT_EQ(tv.rank, minor_rank(obstruction_matrix(p)));
    if (cv.verdict == Verdict::NotEventuallySmoothable) ASSERT_EQ(tv.verdict, Verdict::NotEventuallySmoothable);
    if (tv.verdict == Verdict::Inconclusive) {
      ++kernels;
      ASSERT_TRUE(is_zero_vector(obstruction_matrix(p) * *tv.kernel_witness));
      ASSERT_TRUE(oracle_passes(p, kernel_to_witness_D(p, *tv.kernel_witness))) << "seed " << seed;
      ASSERT_EQ(cv.verdict, Verdict::Inconclusive);
    } else {
      ASSERT_EQ(tv.rank, p.size());
    }
  }
  EXPECT_GT(kernels, 100);
}

TEST(ObstructionProperties, ScalingAndBasisInvariance) {
  std::mt19937_64 rng(22);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int g = uniform(rng, 1, 4), N = uniform(rng, 1, 4), n = uniform(rng, 1, 7);
    const ObstructionProblem p = random_instance(seed + 5000, g, N, n, 2, seed % 3 != 0);
    std::vector<std::pair<Rational, Rational>> scales;
    for (int i = 0; i < n; ++i) scales.emplace_back(nonzero(rng), nonzero(rng));
    const QMatrix A = random_invertible(rng, static_cast<std::size_t>(g));
    const QMatrix B = random_invertible(rng, static_cast<std::size_t>(N));

    const ObstructionProblem scaled = transformed(p, QMatrix::identity(g), QMatrix::identity(N), scales);
    const ObstructionProblem based = transformed(p, A, B, std::vector<std::pair<Rational, Rational>>(n, {1, 1}));
    const TheoremVerdict t0 = theorem_check(p);
    const CorollaryVerdict c0 = corollary_check(p);
    for (const auto* q : {&scaled, &based}) {
      const TheoremVerdict t1 = theorem_check(*q);
      ASSERT_EQ(t1.verdict, t0.verdict);
      ASSERT_EQ(t1.rank, t0.rank);
      const CorollaryVerdict c1 = corollary_check(*q);
      ASSERT_EQ(c1.verdict, c0.verdict);
      ASSERT_EQ(c1.witness_D, c0.witness_D);
      if (t0.kernel_witness) {
        ASSERT_EQ(kernel_to_witness_D(*q, *t1.kernel_witness), kernel_to_witness_D(p, *t0.kernel_witness));
      }
    }
    // Kernel witnesses rescale entrywise under column scaling.
    if (t0.kernel_witness) {
      const TheoremVerdict ts = theorem_check(scaled);
      const QVector& w0 = *t0.kernel_witness;
      const QVector& w1 = *ts.kernel_witness;
      std::optional<Rational> ratio;
      for (int i = 0; i < n; ++i) {
        if (w0[i].is_zero()) continue;
        const Rational r = w1[i] * scales[i].first * scales[i].second / w0[i];
        if (!ratio) ratio = r;
        ASSERT_EQ(r, *ratio);
      }
    }
  }
}

TEST(ObstructionProperties, ThreadCountDoesNotChangeWitness) {
  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int g = uniform(rng, 1, 4), N = uniform(rng, 1, 4), n = uniform(rng, 1, 12);
    const ObstructionProblem p = random_instance(seed + 9000, g, N, n, 2, true);
    const CorollaryVerdict one = corollary_check(p, 1);
    for (unsigned threads : {2u, 3u, 8u}) {
      const CorollaryVerdict many = corollary_check(p, threads);
      ASSERT_EQ(one.verdict, many.verdict);
      ASSERT_EQ(one.witness_D, many.witness_D);
    }
  }
}

TEST(ObstructionProperties, ModularFilterDoesNotHideWitnesses) {
  // Entries divisible by the filter prime force the exact fallback.
  const mpz_class p = (mpz_class(1) << 61) - 1;
  const Rational big = Rational::parse(p.get_str());
  const ObstructionProblem prob(1, 2, {{QVector{big}, Q({1, 0})}, {Q({1}), QVector{big, Rational(0)}}});
  const CorollaryVerdict cv = corollary_check(prob);
  EXPECT_EQ(cv.verdict, Verdict::Inconclusive);
  EXPECT_EQ(*cv.witness_D, (std::vector<std::size_t>{0, 1}));

  const ObstructionProblem frac(1, 2, {{QVector{big.inverse()}, Q({1, 0})}, {Q({2}), Q({0, 1})}});
  EXPECT_EQ(corollary_check(frac).verdict, Verdict::NotEventuallySmoothable);
}
