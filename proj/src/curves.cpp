#include "ghostcheck/curves.hpp"

#include <string>
#include <type_traits>

#include "ghostcheck/error.hpp"

namespace ghostcheck {

namespace {

// Dense univariate polynomials, ascending coefficients, no trailing zeros.
using UniPoly = QVector;

void trim(UniPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UniPoly derivative(const UniPoly& p) {
  UniPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<std::int64_t>(k)));
  trim(d);
  return d;
}

UniPoly remainder(UniPoly a, const UniPoly& b) {
  trim(a);
  const Rational lead_inv = b.back().inverse();
  while (a.size() >= b.size()) {
    const Rational factor = a.back() * lead_inv;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= factor * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

std::size_t gcd_degree(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UniPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? 0 : a.size() - 1;
}

std::string at_point(const AttachmentPoint& p) {
  if (const auto* h = std::get_if<HyperellipticPoint>(&p)) return "(" + h->x.str() + ", " + h->y.str() + ")";
  if (const auto* l = std::get_if<LinePoint>(&p)) return "p = " + l->p.str();
  return "index " + std::to_string(std::get<PointIndex>(p).index);
}

[[noreturn]] void wrong_kind(const char* model, const char* expected) {
  throw Error(ErrorCode::WrongPointKind,
              std::string(model) + " model expects " + expected + " attachment points");
}

QVector hyperelliptic_ev(const HyperellipticModel& m, const AttachmentPoint& point) {
  const auto* p = std::get_if<HyperellipticPoint>(&point);
  if (p == nullptr) wrong_kind("hyperelliptic", "{x, y}");
  if (!(p->y * p->y == m.eval_f(p->x))) {
    throw Error(ErrorCode::PointNotOnCurve, "point " + at_point(point) + " does not satisfy y^2 = f(x)");
  }
  if (p->y.is_zero()) {
    throw Error(ErrorCode::WeierstrassPoint,
                "point " + at_point(point) + " is a Weierstrass point (y = 0); not supported");
  }
  QVector ev(static_cast<std::size_t>(m.genus()));
  Rational value = p->y.inverse();
  for (auto& entry : ev) {
    entry = value;
    value *= p->x;
  }
  return ev;
}

QVector nodal_ev(const NodalRationalModel& m, const AttachmentPoint& point) {
  const auto* p = std::get_if<LinePoint>(&point);
  if (p == nullptr) wrong_kind("nodal_rational", "{p}");
  QVector ev;
  ev.reserve(m.node_pairs().size());
  for (const auto& [a, b] : m.node_pairs()) {
    if (p->p == a || p->p == b) {
      throw Error(ErrorCode::PointAtNode, "attachment point " + at_point(point) + " lies on a node preimage");
    }
    ev.push_back((p->p - a).inverse() - (p->p - b).inverse());
  }
  return ev;
}

QVector raw_ev(const RawEvaluationModel& m, const AttachmentPoint& point) {
  const auto* p = std::get_if<PointIndex>(&point);
  if (p == nullptr) wrong_kind("raw", "{index}");
  if (p->index >= m.point_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "point index " + std::to_string(p->index) +
                                                " out of range for " +
                                                std::to_string(m.point_count()) + " points");
  }
  return m.ev_matrix().column(p->index);
}

}  // namespace

HyperellipticModel::HyperellipticModel(int genus, QVector f) : genus_(genus), f_(std::move(f)) {
  if (genus_ < 1) throw Error(ErrorCode::PreconditionViolation, "hyperelliptic genus must be >= 1");
  trim(f_);
  const auto degree = static_cast<int>(f_.size()) - 1;
  if (degree != 2 * genus_ + 1 && degree != 2 * genus_ + 2) {
    throw Error(ErrorCode::PreconditionViolation,
                "hyperelliptic f must have degree 2g+1 or 2g+2 (g = " + std::to_string(genus_) +
                    ", degree = " + std::to_string(degree) + ")");
  }
  if (gcd_degree(f_, derivative(f_)) != 0) {
    throw Error(ErrorCode::NotSquarefree, "hyperelliptic f is not squarefree");
  }
}

Rational HyperellipticModel::eval_f(const Rational& x) const {
  Rational acc;
  for (auto it = f_.rbegin(); it != f_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

NodalRationalModel::NodalRationalModel(int genus, std::vector<std::pair<Rational, Rational>> node_pairs)
    : genus_(genus), node_pairs_(std::move(node_pairs)) {
  if (genus_ < 1) throw Error(ErrorCode::PreconditionViolation, "nodal_rational genus must be >= 1");
  if (node_pairs_.size() != static_cast<std::size_t>(genus_)) {
    throw Error(ErrorCode::DimensionMismatch, "nodal_rational model of genus " + std::to_string(genus_) +
                                                  " needs exactly that many node pairs, got " +
                                                  std::to_string(node_pairs_.size()));
  }
  std::vector<Rational> seen;
  for (const auto& [a, b] : node_pairs_) {
    for (const Rational* v : {&a, &b}) {
      for (const Rational& s : seen)
        if (s == *v) throw Error(ErrorCode::PreconditionViolation, "node preimage " + v->str() + " repeated");
      seen.push_back(*v);
    }
  }
}

std::vector<NodalRationalModel::PoleResidue> NodalRationalModel::partial_fractions(std::size_t j) const {
  if (j >= node_pairs_.size()) throw Error(ErrorCode::IndexOutOfRange, "node index out of range");
  return {{node_pairs_[j].first, Rational(1)}, {node_pairs_[j].second, Rational(-1)}};
}

RawEvaluationModel::RawEvaluationModel(int genus, QMatrix ev_matrix) : genus_(genus), ev_(std::move(ev_matrix)) {
  if (genus_ < 1) throw Error(ErrorCode::PreconditionViolation, "raw model genus must be >= 1");
  if (ev_.rows() != static_cast<std::size_t>(genus_)) {
    throw Error(ErrorCode::DimensionMismatch, "raw ev_matrix has " + std::to_string(ev_.rows()) +
                                                  " rows, expected genus " + std::to_string(genus_));
  }
}

int genus(const CurveModel& model) {
  return std::visit([](const auto& m) { return m.genus(); }, model);
}

QVector ev_vector(const CurveModel& model, const AttachmentPoint& p, const Rational& coordinate_scale) {
  if (coordinate_scale.is_zero()) throw Error(ErrorCode::PreconditionViolation, "coordinate scale must be nonzero");
  QVector ev = std::visit(
      [&](const auto& m) -> QVector {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, HyperellipticModel>) return hyperelliptic_ev(m, p);
        else if constexpr (std::is_same_v<M, NodalRationalModel>) return nodal_ev(m, p);
        else return raw_ev(m, p);
      },
      model);
  if (!(coordinate_scale == Rational(1))) {
    const Rational inv = coordinate_scale.inverse();
    for (auto& e : ev) e *= inv;
  }
  return ev;
}

QMatrix ev_matrix(const CurveModel& model, const std::vector<AttachmentPoint>& points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (points[i] == points[j]) {
        throw Error(ErrorCode::DuplicatePoint, "attachment points " + std::to_string(j) + " and " +
                                                   std::to_string(i) + " coincide (" +
                                                   at_point(points[i]) + ")");
      }
  std::vector<QVector> columns;
  columns.reserve(points.size());
  for (const auto& p : points) columns.push_back(ev_vector(model, p));
  return QMatrix::from_columns(static_cast<std::size_t>(genus(model)), columns);
}

}  // namespace ghostcheck
