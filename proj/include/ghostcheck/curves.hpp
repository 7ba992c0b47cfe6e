#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "ghostcheck/qmatrix.hpp"
#include "ghostcheck/rational.hpp"

namespace ghostcheck {

/// y^2 = f(x) with deg f in {2g+1, 2g+2} and f squarefree.
/// Distinguished basis of H^0(omega): x^(a-1) dx / y, a = 1..g.
/// Distinguished local coordinate at a non-Weierstrass point: x - x0.
class HyperellipticModel {
 public:
  /// `f` lists coefficients in ascending degree (f[k] multiplies x^k).
  HyperellipticModel(int genus, QVector f);

  int genus() const { return genus_; }
  const QVector& f() const { return f_; }
  Rational eval_f(const Rational& x) const;

  friend bool operator==(const HyperellipticModel&, const HyperellipticModel&) = default;

 private:
  int genus_;
  QVector f_;
};

/// A rational curve with g nodes, each gluing a_j to b_j on the affine line.
/// Sections of the dualizing sheaf are spanned by
///   eta_j = (1/(x - a_j) - 1/(x - b_j)) dx,
/// with residue +1 at a_j and -1 at b_j.
class NodalRationalModel {
 public:
  NodalRationalModel(int genus, std::vector<std::pair<Rational, Rational>> node_pairs);

  int genus() const { return genus_; }
  const std::vector<std::pair<Rational, Rational>>& node_pairs() const { return node_pairs_; }

  struct PoleResidue {
    Rational pole;
    Rational residue;
  };
  /// Partial-fraction data of eta_j on the normalization.
  std::vector<PoleResidue> partial_fractions(std::size_t j) const;

  friend bool operator==(const NodalRationalModel&, const NodalRationalModel&) = default;

 private:
  int genus_;
  std::vector<std::pair<Rational, Rational>> node_pairs_;
};

/// Evaluation covectors given directly as a g x n matrix.
class RawEvaluationModel {
 public:
  RawEvaluationModel(int genus, QMatrix ev_matrix);

  int genus() const { return genus_; }
  std::size_t point_count() const { return ev_.cols(); }
  const QMatrix& ev_matrix() const { return ev_; }

  friend bool operator==(const RawEvaluationModel&, const RawEvaluationModel&) = default;

 private:
  int genus_;
  QMatrix ev_;
};

using CurveModel = std::variant<HyperellipticModel, NodalRationalModel, RawEvaluationModel>;

struct HyperellipticPoint {
  Rational x;
  Rational y;
  friend bool operator==(const HyperellipticPoint&, const HyperellipticPoint&) = default;
};

struct LinePoint {
  Rational p;
  friend bool operator==(const LinePoint&, const LinePoint&) = default;
};

struct PointIndex {
  std::size_t index = 0;
  friend bool operator==(const PointIndex&, const PointIndex&) = default;
};

using AttachmentPoint = std::variant<HyperellipticPoint, LinePoint, PointIndex>;

int genus(const CurveModel& model);

/// Values of the distinguished basis differentials at p, taken against the
/// local coordinate u = scale * (standard coordinate at p). Rescaling the
/// coordinate by scale divides every entry by scale.
QVector ev_vector(const CurveModel& model, const AttachmentPoint& p,
                  const Rational& coordinate_scale = Rational(1));

/// g x n matrix whose column i is ev_vector(model, points[i]).
QMatrix ev_matrix(const CurveModel& model, const std::vector<AttachmentPoint>& points);

}  // namespace ghostcheck
