#pragma once

/// Exact coefficient rings.
///
/// Two models are provided, both exposing the same surface so every
/// algorithm in the library is a template over the ring type:
///
///   * SymbolicRing: Z[v, v^-1, c1, ..., c(n-1), cn, cn^-1], with q := v^2.
///     Elements are Laurent polynomials in (v, c1, ..., cn) over the integers.
///   * PrimeField: F_ell with caller-chosen images of q, sqrt(q) and c1..cn.
///
/// A ring handle is cheap to copy. Elements never refer back to the handle.

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "swk/errors.hpp"
#include "swk/laurent.hpp"

namespace swk {

/// Residue class modulo a prime ell < 2^62.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t modulus) : value_(value % modulus), modulus_(modulus) {}

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }

  friend Fp operator+(Fp a, Fp b) {
    a.check(b);
    std::uint64_t s = a.value_ + b.value_;
    if (s >= a.modulus_) s -= a.modulus_;
    return Fp(s, a.modulus_);
  }
  friend Fp operator-(Fp a, Fp b) {
    a.check(b);
    return Fp(a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + a.modulus_ - b.value_, a.modulus_);
  }
  Fp operator-() const { return Fp(value_ == 0 ? 0 : modulus_ - value_, modulus_); }
  friend Fp operator*(Fp a, Fp b) {
    a.check(b);
    const auto wide = static_cast<unsigned __int128>(a.value_) * b.value_;
    return Fp(static_cast<std::uint64_t>(wide % a.modulus_), a.modulus_);
  }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  Fp pow(std::uint64_t k) const {
    Fp result(1, modulus_), base = *this;
    while (k) {
      if (k & 1u) result *= base;
      base *= base;
      k >>= 1u;
    }
    return result;
  }

  /// Inverse by Fermat; nullopt for zero.
  std::optional<Fp> inverse() const {
    if (value_ == 0) return std::nullopt;
    return pow(modulus_ - 2);
  }

  friend bool operator==(Fp a, Fp b) { return a.value_ == b.value_ && a.modulus_ == b.modulus_; }

 private:
  void check(Fp o) const {
    if (modulus_ != o.modulus_) throw InvariantViolation("mixing elements of different prime fields");
  }

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 1;
};

inline bool is_zero(const Fp& x) { return x.value() == 0; }
inline std::optional<Fp> exact_quotient(const Fp& a, const Fp& b) {
  auto inv = b.inverse();
  if (!inv) return std::nullopt;
  return a * *inv;
}
inline std::string coeff_string(const Fp& x) { return std::to_string(x.value()); }

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Serializable description of a coefficient ring.
struct RingDescriptor {
  enum class Kind { symbolic, prime_field };
  Kind kind = Kind::symbolic;
  int n = 1;
  // prime-field only
  std::uint64_t ell = 0;
  Integer q;                         // residue field size, reduced mod ell
  std::optional<Integer> sqrt_q;     // image of sqrt(q) in F_ell
  std::vector<Integer> c;            // c1..cn
};

using SymElem = LaurentPoly<Integer>;

class SymbolicRing {
 public:
  using Elem = SymElem;

  explicit SymbolicRing(int n) : n_(n) {
    if (n < 1) throw InputError("rank n must be positive");
    std::vector<std::string> names{"v"};
    for (int j = 1; j <= n; ++j) names.push_back("c" + std::to_string(j));
    vars_ = Variables(std::move(names));
  }

  static constexpr bool is_symbolic = true;

  int n() const { return n_; }
  const Variables& variables() const { return vars_; }
  bool has_sqrt_q() const { return true; }

  Elem zero() const { return Elem(vars_); }
  Elem one() const { return from_int(1); }
  Elem from_int(long k) const { return Elem::constant(vars_, Integer(k)); }
  Elem from_integer(const Integer& k) const { return Elem::constant(vars_, k); }

  /// v^k = q^(k/2)
  Elem v_pow(int k) const { return generator_pow(0, k); }
  Elem q_pow(int k) const { return v_pow(2 * k); }
  Elem q() const { return q_pow(1); }
  /// c_j for 1 <= j <= n
  Elem c(int j) const {
    if (j < 1 || j > n_) throw InputError("c index out of range");
    return generator_pow(static_cast<std::size_t>(j), 1);
  }
  Elem c_last_inverse() const { return generator_pow(static_cast<std::size_t>(n_), -1); }

  /// Inverse inside the localized ring: only +-(monomials in v and cn).
  std::optional<Elem> inverse(const Elem& a) const {
    if (a.size() != 1) return std::nullopt;
    const auto& [e, coeff] = *a.terms().begin();
    if (coeff != 1 && coeff != -1) return std::nullopt;
    for (int j = 1; j < n_; ++j)
      if (e[static_cast<std::size_t>(j)] != 0) return std::nullopt;
    Exponent inv(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
    return Elem::monomial(vars_, inv, coeff);
  }

  /// Exact division in Z[v^+-1, c^+-1]; used for fraction-free elimination.
  std::optional<Elem> exact_div(const Elem& a, const Elem& b) const { return exact_quotient(a, b); }

  bool is_zero(const Elem& a) const { return a.is_zero(); }
  std::string to_string(const Elem& a) const { return a.to_string(); }

  RingDescriptor descriptor() const {
    RingDescriptor d;
    d.kind = RingDescriptor::Kind::symbolic;
    d.n = n_;
    return d;
  }

 private:
  Elem generator_pow(std::size_t index, int k) const {
    Exponent e(vars_.size(), 0);
    e[index] = k;
    return Elem::monomial(vars_, std::move(e), Integer(1));
  }

  int n_;
  Variables vars_;
};

class PrimeField {
 public:
  using Elem = Fp;

  /// Validates the descriptor: ell prime, q a unit, sqrt_q^2 = q, cn != 0.
  explicit PrimeField(const RingDescriptor& d) : n_(d.n), ell_(d.ell) {
    if (d.n < 1) throw InputError("rank n must be positive");
    if (ell_ > (std::uint64_t{1} << 62) || !is_prime(ell_))
      throw InputError("ell must be a prime below 2^62, got " + std::to_string(ell_));
    q_ = reduce(d.q);
    if (q_.value() == 0) throw InputError("q must be invertible modulo ell");
    if (d.sqrt_q) {
      Fp s = reduce(*d.sqrt_q);
      if (!(s * s == q_))
        throw InputError("sqrt_q^2 = " + std::to_string((s * s).value()) + " differs from q = " +
                         std::to_string(q_.value()) + " mod " + std::to_string(ell_));
      sqrt_q_ = s;
    }
    if (d.c.size() != static_cast<std::size_t>(n_))
      throw InputError("expected " + std::to_string(n_) + " c-values, got " + std::to_string(d.c.size()));
    for (const auto& x : d.c) c_.push_back(reduce(x));
    if (c_.back().value() == 0) throw InputError("c_n must be nonzero");
    q_raw_ = d.q;
    sqrt_q_raw_ = d.sqrt_q;
    c_raw_ = d.c;
  }

  static constexpr bool is_symbolic = false;

  int n() const { return n_; }
  std::uint64_t ell() const { return ell_; }
  bool has_sqrt_q() const { return sqrt_q_.has_value(); }

  Elem zero() const { return Fp(0, ell_); }
  Elem one() const { return Fp(1, ell_); }
  Elem from_int(long k) const { return reduce(Integer(k)); }
  Elem from_integer(const Integer& k) const { return reduce(k); }

  Elem v_pow(int k) const {
    if (k % 2 == 0) return q_pow(k / 2);
    if (!sqrt_q_) throw CapabilityError("ring has no square root of q; half-integral power of q required");
    return signed_pow(*sqrt_q_, k);
  }
  Elem q_pow(int k) const { return signed_pow(q_, k); }
  Elem q() const { return q_; }
  Elem c(int j) const {
    if (j < 1 || j > n_) throw InputError("c index out of range");
    return c_[static_cast<std::size_t>(j - 1)];
  }
  Elem c_last_inverse() const { return *c_.back().inverse(); }

  std::optional<Elem> inverse(const Elem& a) const { return a.inverse(); }
  std::optional<Elem> exact_div(const Elem& a, const Elem& b) const { return exact_quotient(a, b); }
  bool is_zero(const Elem& a) const { return a.value() == 0; }
  std::string to_string(const Elem& a) const { return std::to_string(a.value()); }

  RingDescriptor descriptor() const {
    RingDescriptor d;
    d.kind = RingDescriptor::Kind::prime_field;
    d.n = n_;
    d.ell = ell_;
    d.q = q_raw_;
    d.sqrt_q = sqrt_q_raw_;
    d.c = c_raw_;
    return d;
  }

 private:
  Fp reduce(const Integer& x) const {
    const Integer m(static_cast<unsigned long>(ell_));
    Integer r = x % m;
    if (r < 0) r += m;
    return Fp(r.get_ui(), ell_);
  }

  Fp signed_pow(Fp base, int k) const {
    if (k >= 0) return base.pow(static_cast<std::uint64_t>(k));
    return base.inverse()->pow(static_cast<std::uint64_t>(-static_cast<long long>(k)));
  }

  int n_;
  std::uint64_t ell_;
  Fp q_;
  std::optional<Fp> sqrt_q_;
  std::vector<Fp> c_;
  Integer q_raw_;
  std::optional<Integer> sqrt_q_raw_;
  std::vector<Integer> c_raw_;
};

template <class R>
concept CoeffRing = requires(const R& r, const typename R::Elem& a, int k) {
  { r.n() } -> std::convertible_to<int>;
  { r.zero() } -> std::same_as<typename R::Elem>;
  { r.one() } -> std::same_as<typename R::Elem>;
  { r.from_int(1L) } -> std::same_as<typename R::Elem>;
  { r.v_pow(k) } -> std::same_as<typename R::Elem>;
  { r.q_pow(k) } -> std::same_as<typename R::Elem>;
  { r.c(k) } -> std::same_as<typename R::Elem>;
  { r.inverse(a) } -> std::same_as<std::optional<typename R::Elem>>;
  { r.exact_div(a, a) } -> std::same_as<std::optional<typename R::Elem>>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { a + a } -> std::convertible_to<typename R::Elem>;
  { a * a } -> std::convertible_to<typename R::Elem>;
  { a - a } -> std::convertible_to<typename R::Elem>;
};

using AnyRing = std::variant<SymbolicRing, PrimeField>;

/// Validated ring handle from a descriptor.
inline AnyRing ring_make(const RingDescriptor& d) {
  if (d.kind == RingDescriptor::Kind::symbolic) return SymbolicRing(d.n);
  return PrimeField(d);
}

/// Ring homomorphism from the symbolic ring of rank n onto a prime field of
/// the same rank: v -> sqrt(q), cj -> cj.
inline Fp specialize(const SymElem& a, const PrimeField& target) {
  Fp out = target.zero();
  for (const auto& [e, coeff] : a.terms()) {
    Fp term = target.from_integer(coeff) * target.v_pow(e[0]);
    for (int j = 1; j <= target.n(); ++j) {
      const int k = e[static_cast<std::size_t>(j)];
      if (k >= 0) term *= target.c(j).pow(static_cast<std::uint64_t>(k));
      else term *= target.c(j).inverse().value().pow(static_cast<std::uint64_t>(-k));
    }
    out += term;
  }
  return out;
}

}  // namespace swk
