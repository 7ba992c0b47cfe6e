#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ghostcheck/curves.hpp"
#include "ghostcheck/laurent.hpp"
#include "ghostcheck/obstruction.hpp"

namespace ghostcheck {

/// A boundary stratum: a genus-h ghost attached at n points to effective
/// components of genus g_i and degree d_i, in P^N.
struct StratumSpec {
  int N = 0;
  int g = 0;  // total genus, h + sum g_i
  int d = 0;  // total degree, sum d_i
  int h = 0;
  int n = 0;
  std::vector<std::pair<int, int>> parts;  // (g_i, d_i)
};

/// Builds a spec from N, h and the parts, deriving g, d and n.
StratumSpec make_stratum(int N, int h, std::vector<std::pair<int, int>> parts);

/// Throws PreconditionViolation naming the first broken identity.
void validate(const StratumSpec& spec);

/// (N - 3)(1 - g) + d(N + 1); requires N, d >= 1, g >= 0 and d >= 2g - 1.
std::int64_t dim_moduli(int N, int g, int d);

/// 3h - 3 + n - N(n - 1) + sum_i ((N - 3)(1 - g_i) + d_i(N + 1) + 1).
/// Also checks internally that this equals dim_moduli(N, g, d) + N h - n.
std::int64_t dim_stratum(const StratumSpec& spec);

enum class ModelKind { Hyperelliptic, NodalRational };

/// Curve model, attachment points and derivative vectors of a built instance.
struct CurveInstance {
  CurveModel model;
  std::vector<AttachmentPoint> points;
  std::vector<QVector> derivs;
};

/// Genus-h ghost with N groups of h points, each group with independent
/// canonical images; group i carries derivative e_i in Q^N.
CurveInstance build_worked_example_curve_instance(int N, int h, ModelKind kind);
ObstructionProblem build_worked_example_instance(int N, int h, ModelKind kind);

/// Seed-deterministic problem with entries in [-coeff_bound, coeff_bound].
/// With force_nonzero every delta and deriv vector is nonzero.
ObstructionProblem random_instance(std::uint64_t seed, int g, int N, int n, int coeff_bound,
                                   bool force_nonzero = false);

/// G = sum c_(a,c) x^a t^c over a >= 1, a + c <= max_total_degree, with
/// coefficients in [-coeff_bound, coeff_bound]; one polynomial per coordinate.
std::vector<LaurentPoly> random_admissible_ghost(std::uint64_t seed, int N, int max_total_degree = 4,
                                                 int coeff_bound = 9);

/// Valid spec with N <= max_N, h <= max_h, n <= max_n.
StratumSpec random_stratum(std::uint64_t seed, int max_N, int max_h, int max_n);

}  // namespace ghostcheck
