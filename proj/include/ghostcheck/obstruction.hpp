#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ghostcheck/curves.hpp"
#include "ghostcheck/qmatrix.hpp"
#include "ghostcheck/rational.hpp"

namespace ghostcheck {

/// Data at one attachment point p_i of the ghost component.
struct ObstructionColumn {
  QVector delta;  // evaluation covector e_i, length g (dual picture of delta_{C,p_i})
  QVector deriv;  // derivative of the effective branch at p_i, length N
  friend bool operator==(const ObstructionColumn&, const ObstructionColumn&) = default;
};

class ObstructionProblem {
 public:
  ObstructionProblem(int genus, int ambient_dim, std::vector<ObstructionColumn> columns);

  int genus() const { return genus_; }
  int ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return columns_.size(); }
  const std::vector<ObstructionColumn>& columns() const { return columns_; }

  friend bool operator==(const ObstructionProblem&, const ObstructionProblem&) = default;

 private:
  int genus_;
  int ambient_dim_;
  std::vector<ObstructionColumn> columns_;
};

/// Resolves delta vectors through a curve model: column i pairs
/// ev_vector(model, points[i]) with derivs[i].
ObstructionProblem problem_from_curve(const CurveModel& model, const std::vector<AttachmentPoint>& points,
                                      const std::vector<QVector>& derivs);

enum class Verdict { NotEventuallySmoothable, Inconclusive };

std::string_view verdict_name(Verdict v);

struct TheoremVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t rank = 0;
  std::optional<QVector> kernel_witness;  // set iff Inconclusive
};

struct CorollaryVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<std::vector<std::size_t>> witness_D;  // 0-based, ascending; set iff Inconclusive
};

inline constexpr std::size_t kMaxCorollaryPoints = 24;

/// (g*N) x n matrix; column i is e_i (x) v_i with row index a*N + b.
QMatrix obstruction_matrix(const ObstructionProblem& prob);

/// Injective obstruction map => NotEventuallySmoothable. Otherwise the
/// witness is the first kernel basis vector.
TheoremVerdict theorem_check(const ObstructionProblem& prob);

/// rank{v_i : i in D} + rank{e_i : i in D} <= |D|.
bool satisfies_rank_inequality(const ObstructionProblem& prob, const std::vector<std::size_t>& D);

/// Exhaustive search over nonempty D, minimal under (|D|, lex). `threads`
/// only affects speed; the result is identical for every thread count.
CorollaryVerdict corollary_check(const ObstructionProblem& prob, unsigned threads = 1);

/// Support of a nonzero kernel vector of the obstruction matrix.
std::vector<std::size_t> kernel_to_witness_D(const ObstructionProblem& prob, const QVector& kernel_vec);

}  // namespace ghostcheck
