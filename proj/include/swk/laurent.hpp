#pragma once

/// Sparse multivariate Laurent polynomials over an exact coefficient type.
///
/// Terms are kept in a std::map keyed by exponent vectors under the
/// graded-lexicographic order (total degree first, then lex with
/// x1 > x2 > ...). Zero coefficients are never stored, so structural
/// equality is mathematical equality.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "swk/errors.hpp"

namespace swk {

using Integer = mpz_class;
using Exponent = std::vector<int>;

inline bool is_zero(const Integer& x) { return sgn(x) == 0; }

inline std::optional<Integer> exact_quotient(const Integer& a, const Integer& b) {
  if (is_zero(b) || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return std::nullopt;
  Integer out;
  mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline std::string coeff_string(const Integer& x) { return x.get_str(); }

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// Ordered list of variable names shared between polynomials of one space.
class Variables {
 public:
  Variables() = default;
  explicit Variables(std::vector<std::string> names)
      : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {}

  /// stem1, stem2, ..., stemN
  static Variables indexed(std::string_view stem, std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(stem) + std::to_string(i));
    return Variables(std::move(names));
  }

  std::size_t size() const { return names_ ? names_->size() : 0; }
  const std::string& name(std::size_t i) const { return names_->at(i); }
  const std::vector<std::string>& names() const {
    static const std::vector<std::string> kEmpty;
    return names_ ? *names_ : kEmpty;
  }

  friend bool operator==(const Variables& a, const Variables& b) {
    return a.names_ == b.names_ || a.names() == b.names();
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

template <class K>
class LaurentPoly {
 public:
  using Coeff = K;
  using Terms = std::map<Exponent, K, GrlexLess>;

  LaurentPoly() = default;
  explicit LaurentPoly(Variables vars) : vars_(std::move(vars)) {}

  static LaurentPoly constant(const Variables& vars, const K& c) {
    return monomial(vars, Exponent(vars.size(), 0), c);
  }

  static LaurentPoly monomial(const Variables& vars, Exponent e, const K& c) {
    if (e.size() != vars.size()) throw DimensionError("exponent length does not match variable count");
    LaurentPoly p(vars);
    p.add_term(e, c);
    return p;
  }

  /// The i-th variable (0-based) with coefficient `one`.
  static LaurentPoly variable(const Variables& vars, std::size_t i, const K& one) {
    Exponent e(vars.size(), 0);
    e.at(i) = 1;
    return monomial(vars, std::move(e), one);
  }

  const Variables& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Single term with every exponent zero.
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                              [](int x) { return x == 0; }));
  }

  std::optional<K> coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
  }

  void add_term(const Exponent& e, const K& c) {
    if (e.size() != vars_.size()) throw DimensionError("exponent length does not match variable count");
    if (swk_is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (swk_is_zero(it->second)) terms_.erase(it);
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_compatible(b);
    LaurentPoly out(a.vars_);
    Exponent e(a.nvars());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const K& s) const {
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) out.add_term(e, c * s);
    return out;
  }

  /// Multiply by the monomial x^shift.
  LaurentPoly shifted(const Exponent& shift) const {
    if (shift.size() != nvars()) throw DimensionError("shift length does not match variable count");
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += shift[i];
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  /// Exchange variables i and j (0-based).
  LaurentPoly swapped(std::size_t i, std::size_t j) const {
    LaurentPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      std::swap(f.at(i), f.at(j));
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  /// Non-negative powers of any polynomial; negative powers of monomials with
  /// invertible coefficient are left to the caller.
  LaurentPoly pow(unsigned k, const K& one) const {
    LaurentPoly result = constant(vars_, one);
    LaurentPoly base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  /// Coordinatewise minimum / maximum exponents over the support.
  Exponent min_exponents() const { return bound_exponents(false); }
  Exponent max_exponents() const { return bound_exponents(true); }

  /// Exact quotient this / b, or nullopt when b does not divide this.
  ///
  /// Leading-term division in the graded-lex order, which is a total order
  /// on the exponent group. The quotient's support is confined to the box
  /// spanned by the coordinate ranges, which bounds the loop when the
  /// division is not exact.
  std::optional<LaurentPoly> exact_divide(const LaurentPoly& b) const {
    check_compatible(b);
    if (b.is_zero()) throw InputError("division by zero polynomial");
    LaurentPoly quotient(vars_);
    if (is_zero()) return quotient;
    const Exponent amin = min_exponents(), amax = max_exponents();
    const Exponent bmin = b.min_exponents(), bmax = b.max_exponents();
    const auto& [lead_b, lead_bc] = *b.terms_.rbegin();
    LaurentPoly rest = *this;
    while (!rest.is_zero()) {
      const auto& [lead_r, lead_rc] = *rest.terms_.rbegin();
      Exponent e(nvars());
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = lead_r[i] - lead_b[i];
        if (e[i] < amin[i] - bmin[i] || e[i] > amax[i] - bmax[i]) return std::nullopt;
      }
      auto c = exact_quotient(lead_rc, lead_bc);
      if (!c) return std::nullopt;
      LaurentPoly step = monomial(vars_, e, *c);
      quotient.add_term(e, *c);
      rest -= step * b;
    }
    return quotient;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  /// Human-readable form, highest term first, e.g. "3*v^2*c1 - c3^-1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string coeff = coeff_string(it->second);
      std::string mono;
      for (std::size_t i = 0; i < it->first.size(); ++i) {
        const int k = it->first[i];
        if (k == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_.name(i);
        if (k != 1) mono += "^" + std::to_string(k);
      }
      const bool compound = coeff.find(" + ") != std::string::npos || coeff.find(" - ") != std::string::npos;
      if (compound) coeff = "(" + coeff + ")";
      bool negative = !compound && !coeff.empty() && coeff[0] == '-';
      if (negative) coeff.erase(0, 1);
      if (!first) out << (negative ? " - " : " + ");
      else if (negative) out << "-";
      if (mono.empty()) out << coeff;
      else if (coeff == "1") out << mono;
      else out << coeff << "*" << mono;
      first = false;
    }
    return out.str();
  }

 private:
  // Indirection so the unqualified call resolves to the coefficient's
  // is_zero overload rather than the member function.
  static bool swk_is_zero(const K& c) {
    using swk::is_zero;
    return is_zero(c);
  }

  void check_compatible(const LaurentPoly& o) const {
    if (!(vars_ == o.vars_)) throw DimensionError("variable-list mismatch between Laurent polynomials");
  }

  Exponent bound_exponents(bool upper) const {
    Exponent out(nvars(), 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (first) out[i] = e[i];
        else out[i] = upper ? std::max(out[i], e[i]) : std::min(out[i], e[i]);
      }
      first = false;
    }
    return out;
  }

  Variables vars_;
  Terms terms_;
};

template <class K>
bool is_zero(const LaurentPoly<K>& p) {
  return p.is_zero();
}

template <class K>
std::optional<LaurentPoly<K>> exact_quotient(const LaurentPoly<K>& a, const LaurentPoly<K>& b) {
  if (b.is_zero()) return std::nullopt;
  return a.exact_divide(b);
}

template <class K>
std::string coeff_string(const LaurentPoly<K>& p) {
  return p.to_string();
}

}  // namespace swk
