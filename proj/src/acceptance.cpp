#include "ghostcheck/acceptance.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "ghostcheck/error.hpp"
#include "ghostcheck/factory.hpp"
#include "ghostcheck/localmodel.hpp"
#include "ghostcheck/obstruction.hpp"

namespace ghostcheck {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

// Fraction-free (Bareiss) rank of the matrix whose columns are `cols`,
// computed over Z after clearing denominators column by column. Kept apart
// from the library's rational RREF so the two can check each other.
std::size_t oracle_rank(const std::vector<QVector>& cols) {
  if (cols.empty()) return 0;
  const std::size_t rows = cols.front().size();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    mpz_class l = 1;
    for (const auto& x : cols[c]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
    for (std::size_t r = 0; r < rows; ++r) a[r][c] = cols[c][r].num() * (l / cols[c][r].den());
  }
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols.size() && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[rank], a[piv]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols.size(); ++j) {
        a[r][j] = (a[rank][c] * a[r][j] - a[r][c] * a[rank][j]) / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

bool oracle_passes(const ObstructionProblem& prob, const std::vector<std::size_t>& D) {
  std::vector<QVector> e, v;
  for (std::size_t i : D) {
    e.push_back(prob.columns()[i].delta);
    v.push_back(prob.columns()[i].deriv);
  }
  return oracle_rank(v) + oracle_rank(e) <= D.size();
}

// All nonempty subsets passing the inequality, ordered by (|D|, lex).
std::vector<std::vector<std::size_t>> oracle_passing_subsets(const ObstructionProblem& prob) {
  const std::size_t n = prob.size();
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<std::size_t> D;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint32_t{1} << i)) D.push_back(i);
    if (oracle_passes(prob, D)) out.push_back(std::move(D));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

std::vector<QVector> oracle_obstruction_columns(const ObstructionProblem& prob) {
  std::vector<QVector> cols;
  for (const auto& [e, v] : prob.columns()) {
    QVector col;
    for (const auto& ea : e)
      for (const auto& vb : v) col.push_back(ea * vb);
    cols.push_back(std::move(col));
  }
  return cols;
}

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Outcome c1_worked_example(unsigned threads) {
  for (ModelKind kind : {ModelKind::Hyperelliptic, ModelKind::NodalRational}) {
    const char* label = kind == ModelKind::Hyperelliptic ? "hyperelliptic" : "nodal_rational";
    const ObstructionProblem prob = build_worked_example_instance(3, 4, kind);
    const QMatrix m = obstruction_matrix(prob);
    if (m.rows() != 12 || m.cols() != 12) return fail(std::string(label) + ": obstruction matrix is not 12x12");
    const TheoremVerdict tv = theorem_check(prob);
    if (tv.rank != 12 || oracle_rank(oracle_obstruction_columns(prob)) != 12) {
      return fail(std::string(label) + ": rank " + std::to_string(tv.rank) + ", expected 12");
    }
    if (tv.verdict != Verdict::NotEventuallySmoothable) return fail(std::string(label) + ": theorem did not fire");
    const CorollaryVerdict cv = corollary_check(prob, threads);
    if (cv.verdict != Verdict::Inconclusive || !cv.witness_D) {
      return fail(std::string(label) + ": corollary did not return a witness");
    }
    if (!oracle_passes(prob, *cv.witness_D)) {
      return fail(std::string(label) + ": witness " + join(*cv.witness_D) + " fails the inequality");
    }
    std::vector<std::size_t> all(12);
    for (std::size_t i = 0; i < 12; ++i) all[i] = i;
    if (!oracle_passes(prob, all) || !satisfies_rank_inequality(prob, all)) {
      return fail(std::string(label) + ": the full set of 12 points fails the inequality");
    }
  }
  return {true, "rank 12/12, theorem NotEventuallySmoothable, corollary Inconclusive, all 12 points pass 3+4 <= 12 (both models)"};
}

Outcome c2_gap_family(unsigned threads) {
  int cases = 0;
  for (ModelKind kind : {ModelKind::Hyperelliptic, ModelKind::NodalRational}) {
    for (int N = 2; N <= 4; ++N) {
      for (int h = 2; h <= 5; ++h) {
        const std::string at = std::string(kind == ModelKind::Hyperelliptic ? "hyperelliptic" : "nodal_rational") +
                               " N=" + std::to_string(N) + " h=" + std::to_string(h);
        const ObstructionProblem prob = build_worked_example_instance(N, h, kind);
        const TheoremVerdict tv = theorem_check(prob);
        if (tv.verdict != Verdict::NotEventuallySmoothable || tv.rank != static_cast<std::size_t>(N * h)) {
          return fail(at + ": theorem rank " + std::to_string(tv.rank) + "/" + std::to_string(N * h));
        }
        const CorollaryVerdict cv = corollary_check(prob, threads);
        if (cv.verdict != Verdict::Inconclusive || !cv.witness_D || !oracle_passes(prob, *cv.witness_D)) {
          return fail(at + ": corollary should be Inconclusive with a valid witness");
        }
        ++cases;
      }
    }
  }
  return {true, std::to_string(cases) + " instances: theorem fires, corollary inconclusive"};
}

// Random problems with g, N <= 4, n <= 6 and a nontrivial kernel.
std::vector<ObstructionProblem> kernel_corpus() {
  std::vector<ObstructionProblem> out;
  std::mt19937_64 rng(20240601);
  for (std::uint64_t seed = 1; out.size() < 1000; ++seed) {
    const int g = uniform(rng, 1, 4);
    const int N = uniform(rng, 1, 4);
    const int n = uniform(rng, 1, 6);
    ObstructionProblem prob = random_instance(seed, g, N, n, 2, seed % 2 == 0);
    if (theorem_check(prob).verdict == Verdict::Inconclusive) out.push_back(std::move(prob));
  }
  return out;
}

Outcome c3_kernel_witness(unsigned threads) {
  const auto corpus = kernel_corpus();
  std::mt19937_64 rng(77);
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const auto& prob = corpus[idx];
    const auto passing = oracle_passing_subsets(prob);
    const std::set<std::vector<std::size_t>> passing_set(passing.begin(), passing.end());
    const std::string at = "instance " + std::to_string(idx);

    const TheoremVerdict tv = theorem_check(prob);
    const auto D = kernel_to_witness_D(prob, *tv.kernel_witness);
    if (!passing_set.contains(D)) return fail(at + ": witness " + join(D) + " fails the inequality");

    // A random combination of the whole kernel must work as well.
    const auto basis = kernel_basis(obstruction_matrix(prob));
    QVector combo(prob.size());
    for (const auto& b : basis) {
      const Rational c(uniform(rng, -3, 3));
      for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += c * b[i];
    }
    if (!is_zero_vector(combo)) {
      const auto D2 = kernel_to_witness_D(prob, combo);
      if (!passing_set.contains(D2)) return fail(at + ": combined kernel support " + join(D2) + " fails");
    }

    const CorollaryVerdict cv = corollary_check(prob, threads);
    if (cv.verdict != Verdict::Inconclusive || !cv.witness_D || *cv.witness_D != passing.front()) {
      return fail(at + ": corollary witness disagrees with exhaustive enumeration");
    }
  }
  return {true, std::to_string(corpus.size()) + " kernel instances, every support passes (exhaustive check)"};
}

Outcome c4_soundness(unsigned threads) {
  auto corpus = kernel_corpus();
  std::mt19937_64 rng(4242);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int g = uniform(rng, 1, 4);
    const int N = uniform(rng, 1, 4);
    const int n = uniform(rng, 1, 12);
    corpus.push_back(random_instance(1'000'000 + seed, g, N, n, 3, seed % 3 != 0));
  }
  int corollary_fired = 0;
  int theorem_fired = 0;
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const TheoremVerdict tv = theorem_check(corpus[idx]);
    const CorollaryVerdict cv = corollary_check(corpus[idx], threads);
    if (tv.verdict == Verdict::NotEventuallySmoothable) ++theorem_fired;
    if (cv.verdict == Verdict::NotEventuallySmoothable) {
      ++corollary_fired;
      if (tv.verdict != Verdict::NotEventuallySmoothable) {
        return fail("instance " + std::to_string(idx) + ": corollary fires but theorem does not");
      }
    }
  }
  return {true, std::to_string(corpus.size()) + " instances, corollary fired " + std::to_string(corollary_fired) +
                    "x, theorem fired " + std::to_string(theorem_fired) + "x, no violation"};
}

Outcome c5_residue_formula() {
  int levels_checked = 0;
  for (int m = 1; m <= 5; ++m) {
    for (int k = 0; k < 20; ++k) {
      const int N = 1 + k % 3;
      const auto G = random_admissible_ghost(static_cast<std::uint64_t>(1000 * m + k), N);
      const std::string at = "m=" + std::to_string(m) + " sample " + std::to_string(k);

      // Expected residue read directly off the coefficient of x^1 t^0.
      QVector expected(N);
      for (int c = 0; c < N; ++c) expected[c] = G[c].coefficient({1, 0, 0});

      const ResidueReport report = verify_residue_theorem(G, m, N);
      if (!report.passed()) return fail(at + ": " + report.failures.front());
      if (report.trace.expansion.levels.size() != static_cast<std::size_t>(m)) {
        return fail(at + ": expansion stopped early");
      }
      for (const auto& level : report.trace.expansion.levels) {
        bool seen_node = false;
        for (const auto& comp : level.components) {
          if (comp.pole_order > 1) return fail(at + ": pole of order " + std::to_string(comp.pole_order));
          if (comp.index != level.l) {
            if (comp.pole_order != 0 || !is_zero_vector(comp.residue)) {
              return fail(at + ": pole away from p_" + std::to_string(level.l) + " on " + comp.name);
            }
            continue;
          }
          seen_node = true;
          if (comp.residue != expected) {
            return fail(at + " level " + std::to_string(level.l) + ": residue on " + comp.name +
                        " differs from the x-linear coefficient");
          }
        }
        if (!seen_node) return fail(at + ": no component through p_" + std::to_string(level.l));
        ++levels_checked;
      }
    }
  }
  return {true, "100 admissible G, " + std::to_string(levels_checked) +
                    " levels: pole order <= 1 at p_l only, residue = x-linear coefficient"};
}

Outcome c6_charts() {
  std::size_t identities = 0;
  for (int m = 1; m <= 8; ++m) {
    const VerificationReport report = verify_chart_relations(m);
    for (const auto& c : report.checks) {
      if (!c.passed) return fail("m=" + std::to_string(m) + ": " + c.description);
    }
    identities += report.checks.size();
    // Exponent bookkeeping: x y and t^m must be the same monomial in (z, w).
    for (int j = 0; j < m; ++j) {
      const Chart ch = chart(m, j);
      const auto& images = ch.parametrization().images;
      const auto& x = images.at("x").exps;
      const auto& y = images.at("y").exps;
      const auto& t = images.at("t").exps;
      if (x[0] + y[0] != m * t[0] || x[1] + y[1] != m * t[1]) {
        return fail("m=" + std::to_string(m) + " chart " + std::to_string(j) + ": xy != t^m in exponents");
      }
    }
    const PhiConvention phi = phi_convention(m);
    if (!phi.checks.all_passed()) return fail("m=" + std::to_string(m) + ": node coordinate convention fails");
  }
  return {true, std::to_string(identities) + " chart identities for m = 1..8"};
}

struct DimFixture {
  int N, h;
  std::vector<std::pair<int, int>> parts;  // empty: dim_moduli only
  int g, d;
  std::int64_t expected;
};

Outcome c7_dimensions() {
  // Values evaluated by hand.
  const std::vector<DimFixture> fixtures = {
      {3, 0, {}, 4, 12, 48},
      {3, 0, {}, 1, 2, 8},
      {3, 0, {}, 1, 1, 4},
      {4, 0, {}, 2, 5, 24},
      {1, 0, {}, 1, 3, 6},
      {5, 0, {}, 3, 7, 38},
      {3, 4, std::vector<std::pair<int, int>>(12, {0, 1}), 4, 12, 48},
      {2, 2, std::vector<std::pair<int, int>>(4, {0, 1}), 2, 4, 13},
      {4, 1, {{1, 2}, {0, 1}}, 2, 3, 16},
      {2, 3, {{1, 3}, {0, 2}, {0, 2}}, 4, 7, 27},
  };
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto& f = fixtures[i];
    std::int64_t got = 0;
    if (f.parts.empty()) {
      got = dim_moduli(f.N, f.g, f.d);
    } else {
      const StratumSpec spec = make_stratum(f.N, f.h, f.parts);
      if (spec.g != f.g || spec.d != f.d) return fail("fixture " + std::to_string(i) + ": totals differ");
      got = dim_stratum(spec);
    }
    if (got != f.expected) {
      return fail("fixture " + std::to_string(i) + ": got " + std::to_string(got) + ", expected " +
                  std::to_string(f.expected));
    }
  }
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const StratumSpec s = random_stratum(seed, 6, 5, 8);
    std::int64_t explicit_sum = 3 * s.h - 3 + s.n - static_cast<std::int64_t>(s.N) * (s.n - 1);
    for (const auto& [gi, di] : s.parts) explicit_sum += (s.N - 3) * (1 - gi) + di * (s.N + 1) + 1;
    const std::int64_t via_moduli = (s.N - 3) * (1 - s.g) + static_cast<std::int64_t>(s.d) * (s.N + 1) + s.N * s.h - s.n;
    if (explicit_sum != via_moduli || dim_stratum(s) != explicit_sum) {
      return fail("random spec " + std::to_string(seed) + ": stratum identity fails");
    }
  }
  return {true, "10 fixtures match hand values; identity holds on 500 random specs"};
}

QMatrix random_invertible(std::mt19937_64& rng, std::size_t size) {
  for (;;) {
    QMatrix m(size, size);
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c) m(r, c) = Rational(uniform(rng, -3, 3));
    if (rank(m) == size) return m;
  }
}

Rational random_unit(std::mt19937_64& rng) {
  int num = 0;
  while (num == 0) num = uniform(rng, -5, 5);
  return Rational(num, uniform(rng, 1, 4));
}

Outcome c8_invariance(unsigned threads) {
  std::mt19937_64 rng(8080);
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const int g = uniform(rng, 1, 4);
    const int N = uniform(rng, 1, 4);
    const int n = uniform(rng, 1, 8);
    const ObstructionProblem prob = random_instance(500'000 + seed, g, N, n, 2, seed % 4 != 0);
    const QMatrix A = random_invertible(rng, static_cast<std::size_t>(g));
    const QMatrix B = random_invertible(rng, static_cast<std::size_t>(N));
    std::vector<ObstructionColumn> cols;
    for (const auto& [e, v] : prob.columns()) {
      QVector e2 = A * e;
      QVector v2 = B * v;
      const Rational se = random_unit(rng);
      const Rational sv = random_unit(rng);
      for (auto& x : e2) x *= se;
      for (auto& x : v2) x *= sv;
      cols.push_back({std::move(e2), std::move(v2)});
    }
    const ObstructionProblem moved(g, N, std::move(cols));

    const TheoremVerdict t1 = theorem_check(prob);
    const TheoremVerdict t2 = theorem_check(moved);
    const CorollaryVerdict c1 = corollary_check(prob, threads);
    const CorollaryVerdict c2 = corollary_check(moved, threads);
    const std::string at = "instance " + std::to_string(seed);
    if (t1.verdict != t2.verdict || t1.rank != t2.rank) return fail(at + ": theorem verdict changed");
    if (t1.kernel_witness &&
        kernel_to_witness_D(prob, *t1.kernel_witness) != kernel_to_witness_D(moved, *t2.kernel_witness)) {
      return fail(at + ": kernel witness support changed");
    }
    if (c1.verdict != c2.verdict || c1.witness_D != c2.witness_D) return fail(at + ": corollary result changed");
  }
  return {true, "500 instances: verdicts, ranks and witness sets unchanged"};
}

Outcome c9_single_point() {
  std::mt19937_64 rng(99);
  int fired = 0;
  for (int k = 0; k < 100; ++k) {
    const int g = uniform(rng, 1, 4);
    const int N = uniform(rng, 1, 4);
    CurveModel model = RawEvaluationModel(1, QMatrix::identity(1));
    AttachmentPoint point = PointIndex{0};
    if (k % 2 == 0) {
      // y^2 = x^(2g+1) + r^2 through (0, r).
      const int r = uniform(rng, 1, 6);
      QVector f(static_cast<std::size_t>(2 * g + 2));
      f[0] = Rational(r * r);
      f.back() = Rational(1);
      model = HyperellipticModel(g, f);
      point = HyperellipticPoint{Rational(0), Rational(r)};
    } else {
      std::vector<std::pair<Rational, Rational>> nodes;
      for (int j = 1; j <= g; ++j) nodes.emplace_back(Rational(-(2 * j - 1)), Rational(-2 * j));
      model = NodalRationalModel(g, std::move(nodes));
      point = LinePoint{Rational(uniform(rng, 1, 20), uniform(rng, 1, 3))};
    }
    QVector deriv(static_cast<std::size_t>(N));
    if (k % 3 != 0) {
      while (is_zero_vector(deriv))
        for (auto& x : deriv) x = Rational(uniform(rng, -2, 2));
    }
    const ObstructionProblem prob = problem_from_curve(model, {point}, {deriv});
    const std::string at = "case " + std::to_string(k);
    if (is_zero_vector(prob.columns().front().delta)) return fail(at + ": model produced e = 0");
    const bool expect = !is_zero_vector(deriv);
    const TheoremVerdict tv = theorem_check(prob);
    if ((tv.verdict == Verdict::NotEventuallySmoothable) != expect) {
      return fail(at + ": verdict does not match whether the derivative vanishes");
    }
    if (expect) ++fired;
  }
  return {true, "100 cases, obstruction fired exactly for the " + std::to_string(fired) + " nonzero derivatives"};
}

struct Criterion {
  int id;
  const char* name;
  double budget;
  std::function<Outcome(unsigned)> run;
};

}  // namespace

std::vector<CriterionResult> run_acceptance(unsigned threads) {
  const std::vector<Criterion> criteria = {
      {1, "worked example N=3 h=4", 1.0, c1_worked_example},
      {2, "theorem/corollary gap family", 5.0, c2_gap_family},
      {3, "kernel support witness", 10.0, c3_kernel_witness},
      {4, "corollary implies theorem", 30.0, c4_soundness},
      {5, "residue formula", 10.0, [](unsigned) { return c5_residue_formula(); }},
      {6, "resolution charts", 1.0, [](unsigned) { return c6_charts(); }},
      {7, "dimension formulas", 1.0, [](unsigned) { return c7_dimensions(); }},
      {8, "rescaling and basis invariance", 30.0, c8_invariance},
      {9, "single attachment point", 1.0, [](unsigned) { return c9_single_point(); }},
  };
  std::vector<CriterionResult> results;
  for (const auto& c : criteria) {
    CriterionResult r{c.id, c.name, false, "", 0, c.budget};
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run(threads);
    } catch (const Error& e) {
      o = fail(std::string("error ") + std::string(code_name(e.code())) + ": " + e.what());
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    r.passed = o.passed;
    r.detail = std::move(o.detail);
    if (r.passed && r.seconds >= r.budget) {
      r.passed = false;
      std::ostringstream msg;
      msg << "over time budget (" << std::fixed << std::setprecision(2) << r.seconds << " s >= " << r.budget
          << " s)";
      r.detail = msg.str();
    }
    results.push_back(std::move(r));
  }
  return results;
}

void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results, bool with_timing) {
  for (const auto& r : results) {
    os << (r.passed ? "[PASS] " : "[FAIL] ") << "C" << r.id << " " << r.name << ": " << r.detail;
    if (with_timing) {
      os << " (" << std::fixed << std::setprecision(3) << r.seconds << " s, budget " << std::setprecision(0)
         << r.budget << " s)";
      os.unsetf(std::ios::fixed);
    }
    os << "\n";
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  os << passed << "/" << results.size() << " criteria passed\n";
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace ghostcheck
