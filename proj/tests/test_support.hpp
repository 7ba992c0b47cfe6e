#pragma once

#include <random>
#include <vector>

#include "ghostcheck/laurent.hpp"
#include "ghostcheck/qmatrix.hpp"

namespace ghostcheck::testing {

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline QMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(uniform(rng, -bound, bound));
  return m;
}

// Determinant by Leibniz expansion along the first row. Only for tiny sizes.
inline Rational leibniz_det(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return Rational(1);
  if (n == 1) return a[0][0];
  Rational det;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<Rational>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    const Rational term = a[0][c] * leibniz_det(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

// Largest k with a nonvanishing k x k minor.
inline std::size_t minor_rank(const QMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t k = std::min(rows, cols); k > 0; --k) {
    for (std::uint32_t rmask = 0; rmask < (1u << rows); ++rmask) {
      if (static_cast<std::size_t>(__builtin_popcount(rmask)) != k) continue;
      for (std::uint32_t cmask = 0; cmask < (1u << cols); ++cmask) {
        if (static_cast<std::size_t>(__builtin_popcount(cmask)) != k) continue;
        std::vector<std::vector<Rational>> sub;
        for (std::size_t r = 0; r < rows; ++r) {
          if (!(rmask & (1u << r))) continue;
          std::vector<Rational> row;
          for (std::size_t c = 0; c < cols; ++c)
            if (cmask & (1u << c)) row.push_back(m(r, c));
          sub.push_back(std::move(row));
        }
        if (!leibniz_det(sub).is_zero()) return k;
      }
    }
  }
  return 0;
}

inline LaurentPoly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int terms, int lo_exp,
                               int hi_exp, int bound) {
  LaurentPoly p(vars);
  for (int i = 0; i < terms; ++i) {
    Exponents e(vars.size());
    for (auto& x : e) x = uniform(rng, lo_exp, hi_exp);
    p.add_term(e, Rational(uniform(rng, -bound, bound)));
  }
  return p;
}

}  // namespace ghostcheck::testing
