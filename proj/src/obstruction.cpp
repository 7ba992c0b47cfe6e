#include "ghostcheck/obstruction.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>

#include "ghostcheck/error.hpp"

namespace ghostcheck {

ObstructionProblem::ObstructionProblem(int genus, int ambient_dim, std::vector<ObstructionColumn> columns)
    : genus_(genus), ambient_dim_(ambient_dim), columns_(std::move(columns)) {
  if (genus_ < 1) throw Error(ErrorCode::PreconditionViolation, "genus must be >= 1");
  if (ambient_dim_ < 1) throw Error(ErrorCode::PreconditionViolation, "ambient_dim must be >= 1");
  if (columns_.empty()) throw Error(ErrorCode::PreconditionViolation, "at least one attachment point is required");
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].delta.size() != static_cast<std::size_t>(genus_)) {
      throw Error(ErrorCode::DimensionMismatch, "points[" + std::to_string(i) + "].delta has length " +
                                                    std::to_string(columns_[i].delta.size()) +
                                                    ", expected genus " + std::to_string(genus_));
    }
    if (columns_[i].deriv.size() != static_cast<std::size_t>(ambient_dim_)) {
      throw Error(ErrorCode::DimensionMismatch, "points[" + std::to_string(i) + "].deriv has length " +
                                                    std::to_string(columns_[i].deriv.size()) +
                                                    ", expected ambient_dim " + std::to_string(ambient_dim_));
    }
  }
}

ObstructionProblem problem_from_curve(const CurveModel& model, const std::vector<AttachmentPoint>& points,
                                      const std::vector<QVector>& derivs) {
  if (points.size() != derivs.size()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(points.size()) + " attachments but " +
                                                  std::to_string(derivs.size()) + " derivative vectors");
  }
  if (derivs.empty()) throw Error(ErrorCode::PreconditionViolation, "at least one attachment point is required");
  const QMatrix ev = ev_matrix(model, points);
  std::vector<ObstructionColumn> columns;
  for (std::size_t i = 0; i < points.size(); ++i) columns.push_back({ev.column(i), derivs[i]});
  return ObstructionProblem(genus(model), static_cast<int>(derivs.front().size()), std::move(columns));
}

std::string_view verdict_name(Verdict v) {
  return v == Verdict::NotEventuallySmoothable ? "NotEventuallySmoothable" : "Inconclusive";
}

QMatrix obstruction_matrix(const ObstructionProblem& prob) {
  const auto g = static_cast<std::size_t>(prob.genus());
  const auto n_amb = static_cast<std::size_t>(prob.ambient_dim());
  QMatrix m(g * n_amb, prob.size());
  for (std::size_t i = 0; i < prob.size(); ++i) {
    const auto& [e, v] = prob.columns()[i];
    for (std::size_t a = 0; a < g; ++a) {
      if (e[a].is_zero()) continue;
      for (std::size_t b = 0; b < n_amb; ++b) m(a * n_amb + b, i) = e[a] * v[b];
    }
  }
  return m;
}

TheoremVerdict theorem_check(const ObstructionProblem& prob) {
  const QMatrix m = obstruction_matrix(prob);
  TheoremVerdict out;
  auto kernel = kernel_basis(m);
  out.rank = prob.size() - kernel.size();
  if (kernel.empty()) {
    out.verdict = Verdict::NotEventuallySmoothable;
  } else {
    out.verdict = Verdict::Inconclusive;
    out.kernel_witness = std::move(kernel.front());
  }
  return out;
}

namespace {

std::size_t column_rank(const std::vector<const QVector*>& cols, std::size_t length) {
  QMatrix m(length, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < length; ++r) m(r, c) = (*cols[c])[r];
  return rank(m);
}

bool passes(const ObstructionProblem& prob, const std::vector<std::size_t>& D) {
  const std::size_t k = D.size();
  const auto g = static_cast<std::size_t>(prob.genus());
  const auto n_amb = static_cast<std::size_t>(prob.ambient_dim());
  if (std::min(n_amb, k) + std::min(g, k) <= k) return true;

  std::vector<const QVector*> derivs, deltas;
  for (std::size_t i : D) {
    derivs.push_back(&prob.columns()[i].deriv);
    deltas.push_back(&prob.columns()[i].delta);
  }
  const std::size_t deriv_rank = column_rank(derivs, n_amb);
  if (deriv_rank + std::min(g, k) <= k) return true;
  return deriv_rank + column_rank(deltas, g) <= k;
}

// Images of all columns modulo the prime 2^61 - 1. Ranks mod p never exceed
// ranks over Q, so a subset failing the inequality mod p fails over Q too;
// only subsets passing mod p are rechecked exactly.
class ModularFilter {
 public:
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  explicit ModularFilter(const ObstructionProblem& prob)
      : g_(static_cast<std::size_t>(prob.genus())), n_amb_(static_cast<std::size_t>(prob.ambient_dim())) {
    const mpz_class p(std::to_string(kPrime));
    auto reduce = [&](const Rational& r, std::uint64_t& out) {
      mpz_class den = r.den() % p;
      if (den == 0) return false;
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
      mpz_class v = (r.num() % p) * inv % p;
      if (v < 0) v += p;
      out = std::stoull(v.get_str());
      return true;
    };
    for (const auto& c : prob.columns()) {
      std::vector<std::uint64_t> e(g_), v(n_amb_);
      for (std::size_t a = 0; a < g_; ++a) usable_ = usable_ && reduce(c.delta[a], e[a]);
      for (std::size_t b = 0; b < n_amb_; ++b) usable_ = usable_ && reduce(c.deriv[b], v[b]);
      deltas_.push_back(std::move(e));
      derivs_.push_back(std::move(v));
    }
  }

  /// False only if D certainly fails the inequality.
  bool may_pass(const std::vector<std::size_t>& D) const {
    if (!usable_) return true;
    const std::size_t k = D.size();
    const std::size_t rv = rank_mod(derivs_, D, n_amb_);
    if (rv + std::min(g_, k) <= k) return true;
    return rv + rank_mod(deltas_, D, g_) <= k;
  }

 private:
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    return static_cast<std::uint64_t>(prod % kPrime);
  }

  static std::uint64_t power(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }

  static std::size_t rank_mod(const std::vector<std::vector<std::uint64_t>>& cols, const std::vector<std::size_t>& D,
                              std::size_t length) {
    std::vector<std::vector<std::uint64_t>> m;
    m.reserve(D.size());
    for (std::size_t i : D) m.push_back(cols[i]);
    std::size_t r = 0;
    for (std::size_t c = 0; c < length && r < m.size(); ++c) {
      std::size_t piv = r;
      while (piv < m.size() && m[piv][c] == 0) ++piv;
      if (piv == m.size()) continue;
      std::swap(m[r], m[piv]);
      const std::uint64_t inv = power(m[r][c], kPrime - 2);
      for (std::size_t q = r + 1; q < m.size(); ++q) {
        if (m[q][c] == 0) continue;
        const std::uint64_t f = mul(m[q][c], inv);
        for (std::size_t cc = c; cc < length; ++cc) m[q][cc] = (m[q][cc] + kPrime - mul(f, m[r][cc])) % kPrime;
      }
      ++r;
    }
    return r;
  }

  std::size_t g_;
  std::size_t n_amb_;
  bool usable_ = true;
  std::vector<std::vector<std::uint64_t>> deltas_;
  std::vector<std::vector<std::uint64_t>> derivs_;
};

// Advances `comb` to the next k-combination of {0..n-1} in lex order,
// keeping comb[0] fixed. Returns false when exhausted.
bool next_with_fixed_head(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t pos = k; pos-- > 1;) {
    if (comb[pos] < n - (k - pos)) {
      ++comb[pos];
      for (std::size_t q = pos + 1; q < k; ++q) comb[q] = comb[q - 1] + 1;
      return true;
    }
  }
  return false;
}

// Lex-first passing k-subset whose smallest element is `head`.
std::optional<std::vector<std::size_t>> first_passing(const ObstructionProblem& prob, const ModularFilter& filter,
                                                      std::size_t k, std::size_t head) {
  const std::size_t n = prob.size();
  if (head + k > n) return std::nullopt;
  std::vector<std::size_t> comb(k);
  for (std::size_t q = 0; q < k; ++q) comb[q] = head + q;
  do {
    if (filter.may_pass(comb) && passes(prob, comb)) return comb;
  } while (next_with_fixed_head(comb, n));
  return std::nullopt;
}

}  // namespace

bool satisfies_rank_inequality(const ObstructionProblem& prob, const std::vector<std::size_t>& D) {
  for (std::size_t i : D)
    if (i >= prob.size()) throw Error(ErrorCode::IndexOutOfRange, "subset index " + std::to_string(i) + " out of range");
  return passes(prob, D);
}

CorollaryVerdict corollary_check(const ObstructionProblem& prob, unsigned threads) {
  const std::size_t n = prob.size();
  if (n > kMaxCorollaryPoints) {
    throw Error(ErrorCode::TooManyPoints, "corollary check supports at most " +
                                              std::to_string(kMaxCorollaryPoints) + " attachment points, got " +
                                              std::to_string(n));
  }
  threads = std::max(1u, threads);
  const ModularFilter filter(prob);

  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t heads = n - k + 1;
    std::vector<std::optional<std::vector<std::size_t>>> found(heads);
    if (threads == 1 || heads == 1) {
      for (std::size_t h = 0; h < heads; ++h) {
        found[h] = first_passing(prob, filter, k, h);
        if (found[h]) break;
      }
    } else {
      std::vector<std::thread> pool;
      const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(heads));
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t h = w; h < heads; h += workers) found[h] = first_passing(prob, filter, k, h);
        });
      }
      for (auto& t : pool) t.join();
    }
    for (auto& f : found)
      if (f) return {Verdict::Inconclusive, std::move(f)};
  }
  return {Verdict::NotEventuallySmoothable, std::nullopt};
}

std::vector<std::size_t> kernel_to_witness_D(const ObstructionProblem& prob, const QVector& kernel_vec) {
  if (kernel_vec.size() != prob.size()) {
    throw Error(ErrorCode::NotAKernelVector, "kernel vector has length " + std::to_string(kernel_vec.size()) +
                                                 ", expected " + std::to_string(prob.size()));
  }
  if (is_zero_vector(kernel_vec)) throw Error(ErrorCode::NotAKernelVector, "kernel vector is zero");
  if (!is_zero_vector(obstruction_matrix(prob) * kernel_vec)) {
    throw Error(ErrorCode::NotAKernelVector, "vector is not in the kernel of the obstruction map");
  }
  std::vector<std::size_t> D;
  for (std::size_t i = 0; i < kernel_vec.size(); ++i)
    if (!kernel_vec[i].is_zero()) D.push_back(i);
  return D;
}

}  // namespace ghostcheck
