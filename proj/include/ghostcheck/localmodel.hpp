#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghostcheck/error.hpp"
#include "ghostcheck/laurent.hpp"
#include "ghostcheck/obstruction.hpp"
#include "ghostcheck/rational.hpp"

namespace ghostcheck {

// Local model of a node smoothed as xy = t^m, and its minimal resolution.
//
// Chart j (0 <= j <= m-1) of the resolved surface has coordinates (z, w):
//   x = z^(j+1) w^j,   y = z^(m-1-j) w^(m-j),   t = z w.
// In chart j the fibre t = 0 is {w = 0} u {z = 0}: {w = 0} is E_j and
// {z = 0} is E_(j+1), where E_0 is the effective branch and E_m is the ghost
// branch C~. The node p_l = E_(l-1) n E_l is the origin of chart l-1.

const std::vector<std::string>& surface_vars();  // {"x", "y", "t"}
const std::vector<std::string>& chart_vars();    // {"z", "w"}

class Chart {
 public:
  Chart(int m, int j);

  int m() const { return m_; }
  int index() const { return j_; }
  const Substitution& parametrization() const { return param_; }
  /// Pulls a Laurent polynomial in (x, y, t) back to (z, w).
  LaurentPoly pullback(const LaurentPoly& p) const { return substitute(p, param_); }

 private:
  int m_;
  int j_;
  Substitution param_;
};

Chart chart(int m, int j);

struct IdentityCheck {
  std::string description;
  bool passed = false;
};

struct VerificationReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
};

/// Checks, for 1 <= m <= 8: xy = t^m in every chart; the transition
/// z' = 1/w, w' = z w^2 carries chart j+1 onto chart j; every defining
/// equation of the resolved surface (with [u_k : v_k] = [t^k : x]) vanishes
/// in every chart and each [u_k : v_k] is defined everywhere on the chart.
VerificationReport verify_chart_relations(int m);

struct NodeCoordinates {
  int l = 0;
  int chart_index = 0;
  LaurentPoly x_l;          // in chart variables: z
  LaurentPoly y_l;          // in chart variables: w
  LaurentPoly x_l_surface;  // x / t^(l-1)
  LaurentPoly y_l_surface;  // t^l / x
  bool product_is_t = false;
};

NodeCoordinates node_coordinates(int m, int l);

struct ComponentRecord {
  std::string name;  // "E_j" or "C_tilde"
  int index = 0;     // j, with m for the ghost branch
  /// Restriction to the component in the coordinate y_j = w of chart j-1,
  /// one Laurent polynomial in {"w"} per target coordinate.
  std::vector<LaurentPoly> restriction;
  int pole_order = 0;  // at p_j
  QVector residue;     // coefficient of w^-1
};

struct LevelRecord {
  int l = 0;
  QVector a;  // the constant a_(l-1) removed before dividing by t
  std::vector<ComponentRecord> components;
};

struct GhostExpansion {
  int m = 0;
  std::vector<QVector> constants;  // a_0 .. a_(m-1)
  std::vector<LevelRecord> levels;
};

struct ExpansionFailure {
  ErrorCode code = ErrorCode::InternalError;
  int level = 0;
  std::string message;
};

/// Expansion ledger up to the first failure, which is reported rather than
/// thrown. Input precondition violations are still thrown.
struct ExpansionTrace {
  GhostExpansion expansion;
  std::optional<ExpansionFailure> failure;
};

ExpansionTrace trace_ghost(const std::vector<LaurentPoly>& G, int m);

/// Like trace_ghost but throws Error on NonConstantLevel / UnexpectedPole.
GhostExpansion expand_ghost(const std::vector<LaurentPoly>& G, int m);
GhostExpansion expand_ghost(const LaurentPoly& G, int m);

/// Restriction of a level function (in x, y, t) to component E_j (j = m is
/// the ghost branch) at level l. Throws UnexpectedPole on a pole along the
/// component, at its far node p_(j+1), of order >= 2 at p_j, or at p_j when
/// j != l.
ComponentRecord restrict_to_component(const std::vector<LaurentPoly>& level_function, int m, int l, int j);

/// Coefficient of x^1 in G(x, 0, 0), per coordinate.
QVector x_linear_coefficient(const std::vector<LaurentPoly>& G);

struct ResidueReport {
  ExpansionTrace trace;
  QVector expected_residue;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Pole orders <= 1, poles only at p_l, and residue at p_l equal to the
/// x-linear coefficient of G(x, 0, 0) at every level.
ResidueReport verify_residue_theorem(const std::vector<LaurentPoly>& G, int m, int N);

/// d_t^(x m) |-> d_x (x) d_y, with the identities that justify it.
struct PhiConvention {
  int m = 0;
  VerificationReport checks;
};

PhiConvention phi_convention(int m);

/// sigma(p_i)(d_t^(x m)) = tangent_coeff * d_(y_i) (x) target.
struct SigmaValue {
  Rational tangent_coeff;
  QVector target;
  friend bool operator==(const SigmaValue&, const SigmaValue&) = default;
};

std::vector<SigmaValue> sigma_values(int m, const std::vector<QVector>& residues, const PhiConvention& phi);

/// (delta, deriv) pair for the obstruction module.
ObstructionColumn to_obstruction_column(const SigmaValue& sigma, const QVector& delta);

}  // namespace ghostcheck
