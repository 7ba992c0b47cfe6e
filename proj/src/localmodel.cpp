#include "ghostcheck/localmodel.hpp"

#include <algorithm>
#include <string>

namespace ghostcheck {

namespace {

std::string vec_str(const QVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out + ")";
}

LaurentPoly surface_monomial(int x, int y, int t, const Rational& c = Rational(1)) {
  return LaurentPoly::monomial(surface_vars(), c, {x, y, t});
}

std::string component_name(int m, int j) { return j == m ? "C_tilde" : "E_" + std::to_string(j); }

// z -> 1/w, w -> z w^2: chart j+1 coordinates written in chart j coordinates.
Substitution transition() {
  Substitution s;
  s.target_vars = chart_vars();
  s.images["z"] = {Rational(1), {0, -1}};
  s.images["w"] = {Rational(1), {1, 2}};
  return s;
}

void require_m(int m, int max_m, const char* what) {
  if (m < 1 || m > max_m) {
    throw Error(ErrorCode::PreconditionViolation,
                std::string(what) + ": m must lie in [1, " + std::to_string(max_m) + "], got " + std::to_string(m));
  }
}

constexpr int kMaxChartM = 8;
// Expansion works for any m; this bound only guards against runaway input.
constexpr int kMaxExpansionM = 64;

void check_ghost_input(const std::vector<LaurentPoly>& G, int m) {
  require_m(m, kMaxExpansionM, "expand_ghost");
  if (G.empty()) throw Error(ErrorCode::LengthMismatch, "G needs at least one coordinate");
  for (std::size_t k = 0; k < G.size(); ++k) {
    const std::string where = "G[" + std::to_string(k) + "]";
    if (G[k].vars() != surface_vars())
      throw Error(ErrorCode::VariableMismatch, where + " must be a polynomial in (x, y, t)");
    for (const auto& [e, c] : G[k].terms()) {
      if (e[0] < 0 || e[1] < 0 || e[2] < 0)
        throw Error(ErrorCode::NegativeExponent, where + " has a negative exponent: " + G[k].str());
      if (e[0] > 0 && e[1] > 0)
        throw Error(ErrorCode::NotNormalForm, where + " contains a mixed x*y monomial; reduce with xy = t^m first");
      if (e[0] == 0 && e[2] == 0)
        throw Error(ErrorCode::GhostVanishingViolated,
                    where + " does not vanish on the ghost branch: G(0, y, 0) != 0");
    }
  }
}

}  // namespace

const std::vector<std::string>& surface_vars() {
  static const std::vector<std::string> vars{"x", "y", "t"};
  return vars;
}

const std::vector<std::string>& chart_vars() {
  static const std::vector<std::string> vars{"z", "w"};
  return vars;
}

Chart::Chart(int m, int j) : m_(m), j_(j) {
  if (m < 1) throw Error(ErrorCode::PreconditionViolation, "chart: m must be >= 1");
  if (j < 0 || j > m - 1) {
    throw Error(ErrorCode::IndexOutOfRange,
                "chart index " + std::to_string(j) + " out of range [0, " + std::to_string(m - 1) + "]");
  }
  param_.target_vars = chart_vars();
  param_.images["x"] = {Rational(1), {j + 1, j}};
  param_.images["y"] = {Rational(1), {m - 1 - j, m - j}};
  param_.images["t"] = {Rational(1), {1, 1}};
}

Chart chart(int m, int j) { return Chart(m, j); }

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

VerificationReport verify_chart_relations(int m) {
  require_m(m, kMaxChartM, "verify_chart_relations");
  VerificationReport report;
  const auto x = surface_monomial(1, 0, 0);
  const auto y = surface_monomial(0, 1, 0);
  const auto t = surface_monomial(0, 0, 1);
  const auto relation = x * y - surface_monomial(0, 0, m);

  for (int j = 0; j < m; ++j) {
    const Chart c(m, j);
    report.checks.push_back({"chart " + std::to_string(j) + ": x*y - t^" + std::to_string(m) + " = 0",
                             c.pullback(relation).is_zero()});
  }

  const Substitution tr = transition();
  for (int j = 0; j + 1 < m; ++j) {
    const Chart lo(m, j);
    const Chart hi(m, j + 1);
    bool ok = true;
    for (const auto* v : {&x, &y, &t}) ok = ok && substitute(hi.pullback(*v), tr) == lo.pullback(*v);
    report.checks.push_back({"transition " + std::to_string(j + 1) + " -> " + std::to_string(j) +
                                 ": (z, w) = (1/w, z*w^2) reproduces chart " + std::to_string(j),
                             ok});
  }

  // [u_k : v_k] = [t^k : x] on the k-th exceptional line, k = 1..m-1.
  const int l = m - 1;
  auto u = [&](int k) { return surface_monomial(0, 0, k); };
  auto v = [&](int) { return x; };
  std::vector<std::pair<std::string, LaurentPoly>> equations;
  if (l >= 1) {
    equations.emplace_back("x*u_1 - t*v_1", x * u(1) - t * v(1));
    for (int k = 2; k <= l; ++k) {
      equations.emplace_back("v_" + std::to_string(k - 1) + "*u_" + std::to_string(k) + " - t*v_" +
                                 std::to_string(k) + "*u_" + std::to_string(k - 1),
                             v(k - 1) * u(k) - t * v(k) * u(k - 1));
    }
    equations.emplace_back("u_" + std::to_string(l) + "*t - v_" + std::to_string(l) + "*y", u(l) * t - v(l) * y);
  }
  for (int j = 0; j < m; ++j) {
    const Chart c(m, j);
    for (const auto& [name, eq] : equations) {
      report.checks.push_back({"chart " + std::to_string(j) + ": " + name + " = 0", c.pullback(eq).is_zero()});
    }
    for (int k = 1; k <= l; ++k) {
      // v_k/u_k = x/t^k must be a monomial that is regular or has regular inverse.
      const LaurentPoly ratio = c.pullback(x * surface_monomial(0, 0, -k));
      const Exponents& e = ratio.terms().begin()->first;
      const bool defined = (e[0] >= 0 && e[1] >= 0) || (e[0] <= 0 && e[1] <= 0);
      report.checks.push_back({"chart " + std::to_string(j) + ": [u_" + std::to_string(k) + " : v_" +
                                   std::to_string(k) + "] has no indeterminacy",
                               defined});
    }
  }
  return report;
}

NodeCoordinates node_coordinates(int m, int l) {
  if (m < 1) throw Error(ErrorCode::PreconditionViolation, "node_coordinates: m must be >= 1");
  if (l < 1 || l > m) {
    throw Error(ErrorCode::IndexOutOfRange,
                "node index " + std::to_string(l) + " out of range [1, " + std::to_string(m) + "]");
  }
  NodeCoordinates out;
  out.l = l;
  out.chart_index = l - 1;
  out.x_l = LaurentPoly::variable(chart_vars(), "z");
  out.y_l = LaurentPoly::variable(chart_vars(), "w");
  out.x_l_surface = surface_monomial(1, 0, 1 - l);
  out.y_l_surface = surface_monomial(-1, 0, l);
  const Chart c(m, l - 1);
  out.product_is_t = out.x_l * out.y_l == c.pullback(surface_monomial(0, 0, 1)) &&
                     c.pullback(out.x_l_surface) == out.x_l && c.pullback(out.y_l_surface) == out.y_l;
  return out;
}

ComponentRecord restrict_to_component(const std::vector<LaurentPoly>& level_function, int m, int l, int j) {
  if (j < 1 || j > m || l < 1 || l > j) {
    throw Error(ErrorCode::IndexOutOfRange, "component E_" + std::to_string(j) + " is not part of level " +
                                                std::to_string(l) + " for m = " + std::to_string(m));
  }
  ComponentRecord rec;
  rec.index = j;
  rec.name = component_name(m, j);
  const std::string where = "level " + std::to_string(l) + ", " + rec.name;

  const Chart near(m, j - 1);
  Substitution flip;  // w -> 1/z, identifies y_j with 1/x_(j+1) on E_j
  flip.target_vars = {"z"};
  flip.images["w"] = {Rational(1), {-1}};

  for (const LaurentPoly& f : level_function) {
    const AxisRestriction r = restrict_to_axis(near.pullback(f), "z");
    if (r.pole_order > 0) {
      throw Error(ErrorCode::UnexpectedPole,
                  where + ": pole of order " + std::to_string(r.pole_order) + " along the whole component");
    }
    for (const auto& [e, c] : r.restricted.terms()) rec.pole_order = std::max(rec.pole_order, -e[0]);

    if (j < m) {
      const AxisRestriction far = restrict_to_axis(Chart(m, j).pullback(f), "w");
      if (far.pole_order > 0) {
        throw Error(ErrorCode::UnexpectedPole,
                    where + ": pole of order " + std::to_string(far.pole_order) + " along the whole component");
      }
      for (const auto& [e, c] : far.restricted.terms()) {
        if (e[0] < 0) {
          throw Error(ErrorCode::UnexpectedPole,
                      where + ": pole of order " + std::to_string(-e[0]) + " at p_" + std::to_string(j + 1));
        }
      }
      if (!(substitute(r.restricted, flip) == far.restricted)) {
        throw Error(ErrorCode::InternalError, where + ": chart restrictions disagree");
      }
    }
    rec.residue.push_back(r.restricted.coefficient({-1}));
    rec.restriction.push_back(r.restricted);
  }

#ifdef GHOSTCHECK_FAULT_RESIDUE_SIGN
  for (auto& r : rec.residue) r = -r;
#endif

  if (rec.pole_order > 1) {
    throw Error(ErrorCode::UnexpectedPole,
                where + ": pole of order " + std::to_string(rec.pole_order) + " at p_" + std::to_string(j));
  }
  if (rec.pole_order == 1 && j != l) {
    throw Error(ErrorCode::UnexpectedPole, where + ": pole at p_" + std::to_string(j) + ", which is not p_" +
                                               std::to_string(l));
  }
  return rec;
}

ExpansionTrace trace_ghost(const std::vector<LaurentPoly>& G, int m) {
  check_ghost_input(G, m);
  const std::size_t n_coords = G.size();
  const LaurentPoly t_inv = surface_monomial(0, 0, -1);

  ExpansionTrace out;
  out.expansion.m = m;

  std::vector<LaurentPoly> current;
  for (const auto& g : G) current.push_back(g * t_inv);
  QVector a(n_coords);

  for (int l = 1; l <= m; ++l) {
    if (l >= 2) {
      // G_(l-1) must be one constant on every component of C~_l.
      const LevelRecord& prev = out.expansion.levels.back();
      std::optional<QVector> value;
      for (const ComponentRecord& comp : prev.components) {
        if (comp.index < l) continue;
        QVector here;
        for (std::size_t k = 0; k < n_coords; ++k) {
          const LaurentPoly& r = comp.restriction[k];
          if (!r.is_constant()) {
            out.failure = ExpansionFailure{ErrorCode::NonConstantLevel, l,
                                           "G_" + std::to_string(l - 1) + " restricted to " + comp.name +
                                               " is " + r.str() + " in coordinate " + std::to_string(k) +
                                               ", not constant"};
            return out;
          }
          here.push_back(r.coefficient({0}));
        }
        if (value && !(*value == here)) {
          out.failure = ExpansionFailure{ErrorCode::NonConstantLevel, l,
                                         "G_" + std::to_string(l - 1) + " takes different constants " +
                                             vec_str(*value) + " and " + vec_str(here) + " on C~_" +
                                             std::to_string(l)};
          return out;
        }
        value = std::move(here);
      }
      a = *value;
      for (std::size_t k = 0; k < n_coords; ++k)
        current[k] = (current[k] - LaurentPoly::constant(surface_vars(), a[k])) * t_inv;
    }
    out.expansion.constants.push_back(a);

    LevelRecord level;
    level.l = l;
    level.a = a;
    try {
      for (int j = l; j <= m; ++j) level.components.push_back(restrict_to_component(current, m, l, j));
    } catch (const Error& e) {
      out.failure = ExpansionFailure{e.code(), l, e.what()};
      return out;
    }
    out.expansion.levels.push_back(std::move(level));
  }
  return out;
}

GhostExpansion expand_ghost(const std::vector<LaurentPoly>& G, int m) {
  ExpansionTrace trace = trace_ghost(G, m);
  if (trace.failure) {
    throw Error(trace.failure->code, "level " + std::to_string(trace.failure->level) + ": " + trace.failure->message);
  }
  return std::move(trace.expansion);
}

GhostExpansion expand_ghost(const LaurentPoly& G, int m) { return expand_ghost(std::vector<LaurentPoly>{G}, m); }

QVector x_linear_coefficient(const std::vector<LaurentPoly>& G) {
  QVector out;
  for (const auto& g : G) out.push_back(g.coefficient({1, 0, 0}));
  return out;
}

ResidueReport verify_residue_theorem(const std::vector<LaurentPoly>& G, int m, int N) {
  if (N < 1 || G.size() != static_cast<std::size_t>(N)) {
    throw Error(ErrorCode::LengthMismatch,
                "G has " + std::to_string(G.size()) + " coordinates, expected N = " + std::to_string(N));
  }
  ResidueReport report;
  report.trace = trace_ghost(G, m);
  report.expected_residue = x_linear_coefficient(G);
  const QVector zero(G.size());

  for (const LevelRecord& level : report.trace.expansion.levels) {
    const std::string at = "level " + std::to_string(level.l);
    for (const ComponentRecord& comp : level.components) {
      if (comp.pole_order > 1) {
        report.failures.push_back(at + ", " + comp.name + ": pole of order " + std::to_string(comp.pole_order));
      }
      if (comp.index == level.l) {
        if (!(comp.residue == report.expected_residue)) {
          report.failures.push_back(at + ", " + comp.name + ": residue at p_" + std::to_string(level.l) + " is " +
                                    vec_str(comp.residue) + ", expected " + vec_str(report.expected_residue));
        }
      } else if (comp.pole_order != 0 || !(comp.residue == zero)) {
        report.failures.push_back(at + ", " + comp.name + ": pole away from p_" + std::to_string(level.l));
      }
    }
  }
  if (report.trace.failure) {
    const auto& f = *report.trace.failure;
    report.failures.push_back("level " + std::to_string(f.level) + ": " + std::string(code_name(f.code)) + ": " +
                              f.message);
  }
  return report;
}

PhiConvention phi_convention(int m) {
  if (m < 1) throw Error(ErrorCode::PreconditionViolation, "phi_convention: m must be >= 1");
  PhiConvention phi;
  phi.m = m;
  auto& checks = phi.checks.checks;

  LaurentPoly product = LaurentPoly::constant(surface_vars(), 1);
  for (int l = 1; l <= m; ++l) {
    const NodeCoordinates nc = node_coordinates(m, l);
    checks.push_back({"p_" + std::to_string(l) + ": x_" + std::to_string(l) + " * y_" + std::to_string(l) +
                          " = t in chart " + std::to_string(l - 1),
                      nc.product_is_t});
    product = product * nc.x_l_surface * nc.y_l_surface;
    if (l < m) {
      // On E_l the coordinates y_l (at p_l) and x_(l+1) (at p_(l+1)) are inverse.
      const NodeCoordinates next = node_coordinates(m, l + 1);
      const Chart c(m, l - 1);
      const bool inverse =
          c.pullback(nc.y_l_surface * next.x_l_surface) == LaurentPoly::constant(chart_vars(), 1);
      checks.push_back({"E_" + std::to_string(l) + ": y_" + std::to_string(l) + " * x_" + std::to_string(l + 1) +
                            " = 1",
                        inverse});
    }
  }
  checks.push_back({"x_1 = x", node_coordinates(m, 1).x_l_surface == surface_monomial(1, 0, 0)});
  {
    // y_m = t^m / x, which is y modulo xy = t^m.
    const Chart last(m, m - 1);
    checks.push_back({"y_" + std::to_string(m) + " = y",
                      last.pullback(node_coordinates(m, m).y_l_surface) == last.pullback(surface_monomial(0, 1, 0))});
  }
  checks.push_back({"product over nodes of x_l * y_l = t^" + std::to_string(m),
                    product == surface_monomial(0, 0, m)});
  return phi;
}

std::vector<SigmaValue> sigma_values(int m, const std::vector<QVector>& residues, const PhiConvention& phi) {
  if (phi.m != m) {
    throw Error(ErrorCode::PreconditionViolation,
                "Phi convention built for m = " + std::to_string(phi.m) + ", used with m = " + std::to_string(m));
  }
  if (!phi.checks.all_passed()) throw Error(ErrorCode::InternalError, "Phi convention identities failed");
  std::vector<SigmaValue> out;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (residues[i].size() != residues.front().size()) {
      throw Error(ErrorCode::LengthMismatch, "residue " + std::to_string(i) + " has length " +
                                                 std::to_string(residues[i].size()) + ", expected " +
                                                 std::to_string(residues.front().size()));
    }
    out.push_back({Rational(1), residues[i]});
  }
  return out;
}

ObstructionColumn to_obstruction_column(const SigmaValue& sigma, const QVector& delta) {
  QVector scaled = delta;
  for (auto& d : scaled) d *= sigma.tangent_coeff;
  return {std::move(scaled), sigma.target};
}

}  // namespace ghostcheck
