#include "ghostcheck/factory.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "ghostcheck/error.hpp"

namespace ghostcheck {

namespace {

std::int64_t moduli_formula(std::int64_t N, std::int64_t g, std::int64_t d) {
  return (N - 3) * (1 - g) + d * (N + 1);
}

[[noreturn]] void violated(const std::string& what) {
  throw Error(ErrorCode::PreconditionViolation, "stratum spec: " + what);
}

// y^2 = s(x)^2 + c * prod_{k=1}^{2h+1} (x - k) with s(x) = x^(h+1) + 1.
// Degree 2h+2, and f(k) = s(k)^2 is a nonzero square for k = 1..2h+1.
HyperellipticModel worked_example_hyperelliptic(int h) {
  QVector s(static_cast<std::size_t>(h) + 2);
  s[0] = 1;
  s[static_cast<std::size_t>(h) + 1] = 1;
  QVector s_sq(2 * s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) s_sq[i + j] += s[i] * s[j];

  QVector roots_poly{Rational(1)};
  for (int k = 1; k <= 2 * h + 1; ++k) {
    QVector next(roots_poly.size() + 1);
    for (std::size_t i = 0; i < roots_poly.size(); ++i) {
      next[i + 1] += roots_poly[i];
      next[i] -= roots_poly[i] * Rational(k);
    }
    roots_poly = std::move(next);
  }

  for (int c = 1; c <= 64; ++c) {
    QVector f = s_sq;
    for (std::size_t i = 0; i < roots_poly.size(); ++i) f[i] += Rational(c) * roots_poly[i];
    try {
      return HyperellipticModel(h, std::move(f));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotSquarefree) throw;
    }
  }
  throw Error(ErrorCode::ModelConstructionFailure, "no squarefree hyperelliptic model found for h = " + std::to_string(h));
}

std::vector<AttachmentPoint> hyperelliptic_points(const HyperellipticModel& model, int N, int h) {
  // Points (k, +s(k)) for k = 1..K followed by (k, -s(k)); every window of h
  // consecutive entries has distinct x-values because h <= K.
  const int K = 2 * h + 1;
  if (N * h > 2 * K) {
    throw Error(ErrorCode::ModelConstructionFailure,
                "hyperelliptic construction supplies " + std::to_string(2 * K) + " points, need " +
                    std::to_string(N * h));
  }
  std::vector<AttachmentPoint> pool;
  for (int sign : {1, -1})
    for (int k = 1; k <= K; ++k) {
      const Rational x(k);
      const Rational y = Rational(sign) * (x.pow(h + 1) + Rational(1));
      if (!(y * y == model.eval_f(x))) throw Error(ErrorCode::InternalError, "hyperelliptic point off curve");
      pool.push_back(HyperellipticPoint{x, y});
    }
  pool.resize(static_cast<std::size_t>(N * h));
  return pool;
}

std::vector<AttachmentPoint> nodal_points(const NodalRationalModel& model, int N, int h) {
  // Greedy scan over p = 1, 2, 3, ...: a candidate joins the current group
  // only if it raises the group's evaluation rank.
  std::vector<AttachmentPoint> points;
  std::int64_t next = 1;
  const std::int64_t limit = 64 * static_cast<std::int64_t>(N * h) + 64;
  for (int group = 0; group < N; ++group) {
    std::vector<AttachmentPoint> chosen;
    while (static_cast<int>(chosen.size()) < h) {
      if (next > limit) {
        throw Error(ErrorCode::ModelConstructionFailure,
                    "could not find " + std::to_string(h) + " independent nodal points for group " +
                        std::to_string(group));
      }
      chosen.push_back(LinePoint{Rational(next++)});
      if (rank(ev_matrix(model, chosen)) < chosen.size()) chosen.pop_back();
    }
    points.insert(points.end(), chosen.begin(), chosen.end());
  }
  return points;
}

}  // namespace

StratumSpec make_stratum(int N, int h, std::vector<std::pair<int, int>> parts) {
  StratumSpec spec;
  spec.N = N;
  spec.h = h;
  spec.n = static_cast<int>(parts.size());
  spec.g = h;
  spec.d = 0;
  for (const auto& [gi, di] : parts) {
    spec.g += gi;
    spec.d += di;
  }
  spec.parts = std::move(parts);
  return spec;
}

void validate(const StratumSpec& spec) {
  if (spec.N < 1) violated("N must be >= 1");
  if (spec.h < 1) violated("h must be >= 1");
  if (spec.n < 1) violated("n must be >= 1");
  if (spec.parts.size() != static_cast<std::size_t>(spec.n)) {
    violated("n = " + std::to_string(spec.n) + " but " + std::to_string(spec.parts.size()) + " parts listed");
  }
  int sum_g = 0;
  int sum_d = 0;
  for (std::size_t i = 0; i < spec.parts.size(); ++i) {
    const auto [gi, di] = spec.parts[i];
    const std::string at = "part " + std::to_string(i) + ": ";
    if (gi < 0) violated(at + "g_i must be >= 0");
    if (di < 1) violated(at + "d_i must be >= 1");
    if (di < 2 * gi) violated(at + "d_i >= 2 g_i fails");
    sum_g += gi;
    sum_d += di;
  }
  if (spec.d != sum_d) violated("d = " + std::to_string(spec.d) + " != sum d_i = " + std::to_string(sum_d));
  if (spec.g != spec.h + sum_g) {
    violated("g = " + std::to_string(spec.g) + " != h + sum g_i = " + std::to_string(spec.h + sum_g));
  }
}

std::int64_t dim_moduli(int N, int g, int d) {
  if (N < 1 || d < 1 || g < 0) {
    throw Error(ErrorCode::PreconditionViolation, "dim_moduli needs N, d >= 1 and g >= 0");
  }
  if (d < 2 * g - 1) {
    throw Error(ErrorCode::PreconditionViolation,
                "dim_moduli needs d >= 2g - 1 (g = " + std::to_string(g) + ", d = " + std::to_string(d) + ")");
  }
  return moduli_formula(N, g, d);
}

std::int64_t dim_stratum(const StratumSpec& spec) {
  validate(spec);
  const std::int64_t N = spec.N;
  const std::int64_t n = spec.n;
  std::int64_t dim = 3 * static_cast<std::int64_t>(spec.h) - 3 + n - N * (n - 1);
  for (const auto& [gi, di] : spec.parts) dim += (N - 3) * (1 - gi) + di * (N + 1) + 1;

  const std::int64_t via_moduli = moduli_formula(N, spec.g, spec.d) + N * spec.h - n;
  if (dim != via_moduli) {
    throw Error(ErrorCode::InternalError, "stratum dimension " + std::to_string(dim) +
                                              " disagrees with dim M + Nh - n = " + std::to_string(via_moduli));
  }
  return dim;
}

CurveInstance build_worked_example_curve_instance(int N, int h, ModelKind kind) {
  if (N < 2 || h < 2) throw Error(ErrorCode::PreconditionViolation, "construction needs N >= 2 and h >= 2");

  CurveInstance out = [&]() -> CurveInstance {
    if (kind == ModelKind::Hyperelliptic) {
      HyperellipticModel model = worked_example_hyperelliptic(h);
      auto points = hyperelliptic_points(model, N, h);
      return {std::move(model), std::move(points), {}};
    }
    std::vector<std::pair<Rational, Rational>> nodes;
    for (int j = 1; j <= h; ++j) nodes.emplace_back(Rational(-(2 * j - 1)), Rational(-2 * j));
    NodalRationalModel model(h, std::move(nodes));
    auto points = nodal_points(model, N, h);
    return {std::move(model), std::move(points), {}};
  }();

  for (int group = 0; group < N; ++group) {
    const std::vector<AttachmentPoint> members(out.points.begin() + group * h, out.points.begin() + (group + 1) * h);
    if (rank(ev_matrix(out.model, members)) != static_cast<std::size_t>(h)) {
      throw Error(ErrorCode::ModelConstructionFailure, "group " + std::to_string(group) + " is rank deficient");
    }
    for (int j = 0; j < h; ++j) {
      QVector e(static_cast<std::size_t>(N));
      e[static_cast<std::size_t>(group)] = 1;
      out.derivs.push_back(std::move(e));
    }
  }
  return out;
}

ObstructionProblem build_worked_example_instance(int N, int h, ModelKind kind) {
  const CurveInstance inst = build_worked_example_curve_instance(N, h, kind);
  return problem_from_curve(inst.model, inst.points, inst.derivs);
}

ObstructionProblem random_instance(std::uint64_t seed, int g, int N, int n, int coeff_bound, bool force_nonzero) {
  if (g < 1 || N < 1 || n < 1) throw Error(ErrorCode::PreconditionViolation, "random_instance needs g, N, n >= 1");
  if (coeff_bound < 0) throw Error(ErrorCode::PreconditionViolation, "coeff_bound must be >= 0");
  if (force_nonzero && coeff_bound == 0) {
    throw Error(ErrorCode::PreconditionViolation, "force_nonzero needs coeff_bound >= 1");
  }
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(2 * coeff_bound + 1);
  auto draw = [&](std::size_t len) {
    QVector v(len);
    do {
      for (auto& x : v) x = Rational(static_cast<std::int64_t>(rng() % span) - coeff_bound);
    } while (force_nonzero && is_zero_vector(v));
    return v;
  };
  std::vector<ObstructionColumn> columns;
  for (int i = 0; i < n; ++i) {
    QVector delta = draw(static_cast<std::size_t>(g));
    QVector deriv = draw(static_cast<std::size_t>(N));
    columns.push_back({std::move(delta), std::move(deriv)});
  }
  return ObstructionProblem(g, N, std::move(columns));
}

std::vector<LaurentPoly> random_admissible_ghost(std::uint64_t seed, int N, int max_total_degree, int coeff_bound) {
  if (N < 1 || max_total_degree < 1 || coeff_bound < 1) {
    throw Error(ErrorCode::PreconditionViolation, "random_admissible_ghost needs N, degree, bound >= 1");
  }
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(2 * coeff_bound + 1);
  std::vector<LaurentPoly> G;
  for (int k = 0; k < N; ++k) {
    LaurentPoly g({"x", "y", "t"});
    for (int a = 1; a <= max_total_degree; ++a)
      for (int c = 0; a + c <= max_total_degree; ++c)
        g.add_term({a, 0, c}, Rational(static_cast<std::int64_t>(rng() % span) - coeff_bound));
    G.push_back(std::move(g));
  }
  return G;
}

StratumSpec random_stratum(std::uint64_t seed, int max_N, int max_h, int max_n) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  const int N = uniform(1, max_N);
  const int h = uniform(1, max_h);
  const int n = uniform(1, max_n);
  std::vector<std::pair<int, int>> parts;
  for (int i = 0; i < n; ++i) {
    const int gi = uniform(0, 3);
    parts.emplace_back(gi, std::max(1, 2 * gi) + uniform(0, 4));
  }
  return make_stratum(N, h, std::move(parts));
}

}  // namespace ghostcheck
