#include "ghostcheck/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ghostcheck/error.hpp"

namespace ghostcheck {

namespace {

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

std::string join(const std::vector<std::string>& vars) {
  std::string out = "(";
  for (std::size_t i = 0; i < vars.size(); ++i) out += (i ? "," : "") + vars[i];
  return out + ")";
}

}  // namespace

bool GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da > db;
  return b < a;
}

LaurentPoly::LaurentPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

LaurentPoly LaurentPoly::constant(std::vector<std::string> vars, const Rational& c) {
  const std::size_t n = vars.size();
  return monomial(std::move(vars), c, Exponents(n, 0));
}

LaurentPoly LaurentPoly::monomial(std::vector<std::string> vars, const Rational& c,
                                  Exponents exps) {
  LaurentPoly p(std::move(vars));
  if (exps.size() != p.vars_.size()) {
    throw Error(ErrorCode::VariableMismatch, "exponent vector of length " +
                                                 std::to_string(exps.size()) + " for variables " +
                                                 join(p.vars_));
  }
  p.add_term(exps, c);
  return p;
}

LaurentPoly LaurentPoly::variable(std::vector<std::string> vars, std::string_view name,
                                  int power) {
  LaurentPoly p(std::move(vars));
  const int idx = p.index_of(name);
  if (idx < 0) {
    throw Error(ErrorCode::VariableMismatch,
                "unknown variable " + std::string(name) + " in " + join(p.vars_));
  }
  Exponents e(p.vars_.size(), 0);
  e[static_cast<std::size_t>(idx)] = power;
  p.add_term(e, 1);
  return p;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exponents& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational LaurentPoly::coefficient(const Exponents& exps) const {
  const auto it = terms_.find(exps);
  return it == terms_.end() ? Rational() : it->second;
}

int LaurentPoly::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

void LaurentPoly::add_term(const Exponents& exps, const Rational& c) {
  if (exps.size() != vars_.size()) {
    throw Error(ErrorCode::VariableMismatch, "exponent vector of length " +
                                                 std::to_string(exps.size()) + " for variables " +
                                                 join(vars_));
  }
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void LaurentPoly::require_same_vars(const LaurentPoly& other, const char* op) const {
  if (vars_ != other.vars_) {
    throw Error(ErrorCode::VariableMismatch, std::string(op) + ": variable lists " + join(vars_) +
                                                 " and " + join(other.vars_) + " differ");
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  require_same_vars(rhs, "add");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  require_same_vars(rhs, "subtract");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.require_same_vars(b, "multiply");
  LaurentPoly out(a.vars_);
  Exponents e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c.sign() < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational mag = negative ? -c : c;
    bool wrote = false;
    if (!(mag == Rational(1))) {
      os << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << (wrote ? "*" : "") << vars_[i];
      if (e[i] != 1) os << "^" << e[i];
      wrote = true;
    }
    if (!wrote) os << "1";
  }
  return os.str();
}

LaurentPoly substitute(const LaurentPoly& p, const Substitution& s) {
  const std::size_t target_n = s.target_vars.size();
  std::vector<const MonomialImage*> images;
  images.reserve(p.vars().size());
  for (const std::string& v : p.vars()) {
    const auto it = s.images.find(v);
    if (it == s.images.end())
      throw Error(ErrorCode::MissingVariableImage, "substitution has no image for variable " + v);
    if (it->second.coeff.is_zero())
      throw Error(ErrorCode::InvalidInput, "substitution image of " + v + " has zero coefficient");
    if (it->second.exps.size() != target_n)
      throw Error(ErrorCode::VariableMismatch,
                  "substitution image of " + v + " has wrong exponent length");
    images.push_back(&it->second);
  }

  LaurentPoly out(s.target_vars);
  Exponents e(target_n);
  for (const auto& [src, c] : p.terms()) {
    std::fill(e.begin(), e.end(), 0);
    Rational coeff = c;
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (src[i] == 0) continue;
      coeff *= images[i]->coeff.pow(src[i]);
      for (std::size_t k = 0; k < target_n; ++k) e[k] += src[i] * images[i]->exps[k];
    }
    out.add_term(e, coeff);
  }
  return out;
}

AxisRestriction restrict_to_axis(const LaurentPoly& p, std::string_view v) {
  const int idx = p.index_of(v);
  if (idx < 0) throw Error(ErrorCode::VariableMismatch, "restrict_to_axis: unknown variable " + std::string(v));
  const auto vi = static_cast<std::size_t>(idx);

  std::vector<std::string> rest;
  for (std::size_t i = 0; i < p.vars().size(); ++i)
    if (i != vi) rest.push_back(p.vars()[i]);

  AxisRestriction out{LaurentPoly(rest), 0};
  if (p.is_zero()) return out;

  int min_exp = p.terms().begin()->first[vi];
  for (const auto& [e, c] : p.terms()) min_exp = std::min(min_exp, e[vi]);
  out.pole_order = std::max(0, -min_exp);

  const int leading = -out.pole_order;
  Exponents reduced(rest.size());
  for (const auto& [e, c] : p.terms()) {
    if (e[vi] != leading) continue;
    for (std::size_t i = 0, k = 0; i < e.size(); ++i)
      if (i != vi) reduced[k++] = e[i];
    out.restricted.add_term(reduced, c);
  }
  return out;
}

LaurentPoly normal_form_xyt(const LaurentPoly& p, int m) {
  if (m < 1) throw Error(ErrorCode::PreconditionViolation, "normal_form_xyt: m must be >= 1");
  const int xi = p.index_of("x");
  const int yi = p.index_of("y");
  const int ti = p.index_of("t");
  if (xi < 0 || yi < 0 || ti < 0)
    throw Error(ErrorCode::VariableMismatch, "normal_form_xyt needs variables x, y and t");

  LaurentPoly out(p.vars());
  for (const auto& [e, c] : p.terms()) {
    if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }))
      throw Error(ErrorCode::NegativeExponent, "normal_form_xyt: term with negative exponent in " + p.str());
    Exponents r = e;
    const int k = std::min(r[xi], r[yi]);
    r[xi] -= k;
    r[yi] -= k;
    r[ti] += m * k;
    out.add_term(r, c);
  }
  return out;
}

}  // namespace ghostcheck
