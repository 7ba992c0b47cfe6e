#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ghostcheck/rational.hpp"

namespace ghostcheck {

using Exponents = std::vector<int>;

// Graded lexicographic order, largest first: higher total degree precedes,
// ties broken by the lexicographically larger exponent vector.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate Laurent polynomial over Q in a fixed ordered list of
/// variables. Zero coefficients are never stored.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::vector<std::string> vars);

  static LaurentPoly constant(std::vector<std::string> vars, const Rational& c);
  static LaurentPoly monomial(std::vector<std::string> vars, const Rational& c, Exponents exps);
  /// The single variable `name` raised to `power`.
  static LaurentPoly variable(std::vector<std::string> vars, std::string_view name, int power = 1);

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the monomial with the given exponents (zero if absent).
  Rational coefficient(const Exponents& exps) const;
  /// Index of a variable, or -1.
  int index_of(std::string_view name) const;

  /// Adds c·monomial in place, dropping the term if it cancels.
  void add_term(const Exponents& exps, const Rational& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const Rational& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Human-readable form such as "3*z^2*w^-1 - 1".
  std::string str() const;

 private:
  void require_same_vars(const LaurentPoly& other, const char* op) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b);

/// Image of one variable under a monomial substitution: coeff · Π target^exps.
struct MonomialImage {
  Rational coeff;
  Exponents exps;
};

/// Ring homomorphism sending each source variable to a Laurent monomial in
/// `target_vars`.
struct Substitution {
  std::vector<std::string> target_vars;
  std::map<std::string, MonomialImage, std::less<>> images;
};

LaurentPoly substitute(const LaurentPoly& p, const Substitution& s);

struct AxisRestriction {
  LaurentPoly restricted;  // in the remaining variables
  int pole_order = 0;
};

/// Leading Laurent coefficient of p along {v = 0}: the terms whose v-exponent
/// equals -pole_order, with v removed. pole_order = max(0, -min v-exponent).
AxisRestriction restrict_to_axis(const LaurentPoly& p, std::string_view v);

/// Normal form in k[x,y,t]/(xy - t^m): every monomial x^a y^b t^c becomes
/// x^(a-k) y^(b-k) t^(c+mk) with k = min(a,b). Requires variables named
/// x, y and t and nonnegative exponents.
LaurentPoly normal_form_xyt(const LaurentPoly& p, int m);

}  // namespace ghostcheck
