#pragma once

/// The extended affine Hecke algebra H(G, I) of GL(n) in its two
/// presentations.
///
/// Iwahori-Matsumoto (IM): basis T_w indexed by the extended affine
/// symmetric group, with
///   T_x T_s = T_xs                           if l(xs) > l(x)
///   T_x T_s = q T_xs + (q - 1) T_x           otherwise
/// for every simple reflection s (including s_0), and T_x T_t = T_xt for the
/// length-zero shift t. In particular T_s^2 = (q - 1) T_s + q.
///
/// Bernstein: elements sum_sigma f_sigma(X) T_sigma with sigma finite and
/// f_sigma a Laurent polynomial in X1..Xn, multiplied with the divided
/// difference commutation rule
///   S_i f = (s_i f) S_i + (q - 1) (f - s_i f) X_i / (X_i - X_(i+1)).
///
/// The two are linked by X^mu = q^((l(mu'') - l(mu'))/2) T_(mu') T_(mu'')^-1
/// for any dominant split mu = mu' - mu''.

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "swk/affperm.hpp"
#include "swk/errors.hpp"
#include "swk/laurent.hpp"
#include "swk/ring.hpp"
#include "swk/symfun.hpp"

namespace swk {

/// (f - s_i f) X_i / (X_i - X_(i+1)) for 1 <= i < nvars, exact for every
/// Laurent f (computed monomial by monomial).
template <class E>
LaurentPoly<E> divided_difference(const LaurentPoly<E>& f, int i) {
  if (i < 1 || static_cast<std::size_t>(i) >= f.nvars()) throw InputError("divided difference index out of range");
  const std::size_t a = static_cast<std::size_t>(i - 1), b = a + 1;
  LaurentPoly<E> out(f.variables());
  for (const auto& [e, c] : f.terms()) {
    const int p = e[a], r = e[b];
    if (p == r) continue;
    const int low = std::min(p, r), gap = std::abs(p - r);
    const E coeff = p > r ? c : -c;
    // X_a^low X_b^low (X_a^gap - X_b^gap) / (X_a - X_b), then times X_a.
    for (int k = 0; k < gap; ++k) {
      Exponent m = e;
      m[a] = low + k + 1;
      m[b] = low + gap - 1 - k;
      out.add_term(m, coeff);
    }
  }
  return out;
}

/// Element of H(G, I) in the IM basis.
template <class E>
class HeckeIM {
 public:
  using Terms = std::map<ExtAffPerm, E>;

  explicit HeckeIM(int n) : n_(n) {}

  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const ExtAffPerm& w, const E& c) {
    if (w.rank() != n_) throw DimensionError("affine permutation rank differs from algebra rank");
    using swk::is_zero;
    if (is_zero(c)) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
      return;
    }
    it->second = it->second + c;
    if (is_zero(it->second)) terms_.erase(it);
  }

  HeckeIM& operator+=(const HeckeIM& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  HeckeIM& operator-=(const HeckeIM& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend HeckeIM operator+(HeckeIM a, const HeckeIM& b) { return a += b; }
  friend HeckeIM operator-(HeckeIM a, const HeckeIM& b) { return a -= b; }

  HeckeIM scaled(const E& s) const {
    HeckeIM out(n_);
    for (const auto& [w, c] : terms_) out.add_term(w, c * s);
    return out;
  }

  friend bool operator==(const HeckeIM& a, const HeckeIM& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  int n_;
  Terms terms_;
};

/// Element of H(G, I) in the Bernstein basis {X^mu T_sigma}.
template <class E>
class HeckeB {
 public:
  using Poly = LaurentPoly<E>;
  using Terms = std::map<ExtAffPerm, Poly>;

  HeckeB(int n, Variables vars) : n_(n), vars_(std::move(vars)) {}

  int n() const { return n_; }
  const Variables& variables() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const ExtAffPerm& sigma, const Poly& f) {
    if (sigma.rank() != n_ || !sigma.is_finite()) throw InputError("Bernstein terms are indexed by permutations of 1..n");
    if (f.is_zero()) return;
    auto it = terms_.find(sigma);
    if (it == terms_.end()) {
      terms_.emplace(sigma, f);
      return;
    }
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }

  HeckeB& operator+=(const HeckeB& o) {
    for (const auto& [s, f] : o.terms_) add_term(s, f);
    return *this;
  }
  HeckeB& operator-=(const HeckeB& o) {
    for (const auto& [s, f] : o.terms_) add_term(s, -f);
    return *this;
  }
  friend HeckeB operator+(HeckeB a, const HeckeB& b) { return a += b; }
  friend HeckeB operator-(HeckeB a, const HeckeB& b) { return a -= b; }

  HeckeB scaled(const E& s) const {
    HeckeB out(n_, vars_);
    for (const auto& [sigma, f] : terms_) out.add_term(sigma, f.scaled(s));
    return out;
  }

  /// The polynomial coefficient of T_sigma (zero when absent).
  Poly coefficient(const ExtAffPerm& sigma) const {
    auto it = terms_.find(sigma);
    return it == terms_.end() ? Poly(vars_) : it->second;
  }

  friend bool operator==(const HeckeB& a, const HeckeB& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  int n_;
  Variables vars_;
  Terms terms_;
};

/// Operations of H(G, I) over a fixed coefficient ring and rank. Holds only
/// immutable data computed at construction, so one instance may be shared
/// between threads.
template <CoeffRing R>
class AffineHecke {
 public:
  using Elem = typename R::Elem;
  using IM = HeckeIM<Elem>;
  using B = HeckeB<Elem>;
  using Poly = LaurentPoly<Elem>;

  AffineHecke(R ring, int n) : ring_(std::move(ring)), n_(n), vars_(Variables::indexed("X", static_cast<std::size_t>(n))) {
    if (n < 1) throw InputError("rank must be positive");
    try {
      init_shift_images();
      have_shift_images_ = true;
    } catch (const CapabilityError&) {
      // q^((n-1)/2) is unavailable; only the IM-side operations work.
    }
  }

  const R& ring() const { return ring_; }
  int n() const { return n_; }
  const Variables& variables() const { return vars_; }

  // ---- Iwahori-Matsumoto basis -------------------------------------------

  IM im_zero() const { return IM(n_); }
  IM im_basis(const ExtAffPerm& w, const Elem& c) const {
    IM out(n_);
    out.add_term(w, c);
    return out;
  }
  IM im_basis(const ExtAffPerm& w) const { return im_basis(w, ring_.one()); }
  IM im_one() const { return im_basis(ExtAffPerm::identity(n_)); }
  /// S_i = T_(s_i), 0 <= i < n.
  IM im_simple(int i) const { return im_basis(ExtAffPerm::simple(n_, i)); }
  /// T^a for the length-zero shift.
  IM im_shift(int a) const { return im_basis(ExtAffPerm::power(ExtAffPerm::shift(n_), a)); }

  /// a * T_(s_i)
  IM im_right_simple(const IM& a, int i) const {
    const Elem q = ring_.q();
    const Elem q_minus_one = q - ring_.one();
    IM out(n_);
    for (const auto& [x, c] : a.terms()) {
      const ExtAffPerm xs = x.times_simple(i);
      if (!x.has_right_descent(i)) {
        out.add_term(xs, c);
      } else {
        out.add_term(xs, q * c);
        out.add_term(x, q_minus_one * c);
      }
    }
    return out;
  }

  /// a * T^k for the length-zero shift.
  IM im_right_shift(const IM& a, int k) const {
    if (k == 0) return a;
    const ExtAffPerm t = ExtAffPerm::power(ExtAffPerm::shift(n_), k);
    IM out(n_);
    for (const auto& [x, c] : a.terms()) out.add_term(x * t, c);
    return out;
  }

  /// Product in the IM basis: each right factor T_y is expanded along a
  /// reduced word y = s_i1 ... s_ik t^a.
  IM im_mul(const IM& a, const IM& b) const {
    check_rank(a.n());
    check_rank(b.n());
    IM out(n_);
    for (const auto& [y, c] : b.terms()) {
      const auto factor = y.factorize();
      IM partial = a.scaled(c);
      for (int i : factor.word) partial = im_right_simple(partial, i);
      out += im_right_shift(partial, factor.shift_power);
    }
    return out;
  }

  /// T_w^-1 = T^-a T_(s_ik)^-1 ... T_(s_i1)^-1 with T_s^-1 = q^-1 T_s + (q^-1 - 1).
  IM im_inverse_basis(const ExtAffPerm& w) const {
    const auto factor = w.factorize();
    const Elem q_inv = ring_.q_pow(-1);
    const Elem shift_coeff = q_inv - ring_.one();
    IM out = im_shift(-factor.shift_power);
    for (auto it = factor.word.rbegin(); it != factor.word.rend(); ++it)
      out = im_right_simple(out, *it).scaled(q_inv) + out.scaled(shift_coeff);
    return out;
  }

  /// Splits mu = mu' - mu'' with both parts dominant and mu'' minimal.
  static std::pair<Weight, Weight> dominant_split(const Weight& mu) {
    const std::size_t n = mu.size();
    Weight lower(n, 0);
    for (std::size_t i = n - 1; i-- > 0;) lower[i] = lower[i + 1] + std::max(0, mu[i + 1] - mu[i]);
    Weight upper(n);
    for (std::size_t i = 0; i < n; ++i) upper[i] = mu[i] + lower[i];
    return {upper, lower};
  }

  /// Image of the lattice element w^mu:
  /// q^((l(mu'') - l(mu'))/2) T_(mu') T_(mu'')^-1.
  IM x_monomial(const Weight& mu) const {
    if (static_cast<int>(mu.size()) != n_) throw DimensionError("weight length differs from rank");
    const auto [upper, lower] = dominant_split(mu);
    const ExtAffPerm top = ExtAffPerm::translation(upper);
    const ExtAffPerm bottom = ExtAffPerm::translation(lower);
    const int half_power = bottom.length() - top.length();
    return im_mul(im_basis(top, ring_.v_pow(half_power)), im_inverse_basis(bottom));
  }

  // ---- Bernstein basis -----------------------------------------------------

  B bern_zero() const { return B(n_, vars_); }
  B bern_poly(const Poly& f) const {
    B out = bern_zero();
    out.add_term(ExtAffPerm::identity(n_), f);
    return out;
  }
  B bern_one() const { return bern_poly(poly_constant(ring_.one())); }
  B bern_scalar(const Elem& c) const { return bern_poly(poly_constant(c)); }
  /// X^mu T_e
  B bern_x(const Weight& mu) const { return bern_poly(Poly::monomial(vars_, mu, ring_.one())); }
  /// T_sigma for a finite permutation
  B bern_t(const ExtAffPerm& sigma) const {
    B out = bern_zero();
    out.add_term(sigma, poly_constant(ring_.one()));
    return out;
  }
  /// S_i, 1 <= i < n
  B bern_simple(int i) const {
    if (i < 1 || i >= n_) throw InputError("finite simple reflection index out of range");
    return bern_t(ExtAffPerm::simple(n_, i));
  }
  /// S_i^-1 = q^-1 S_i + (q^-1 - 1)
  B bern_simple_inverse(int i) const {
    const Elem q_inv = ring_.q_pow(-1);
    return bern_simple(i).scaled(q_inv) + bern_scalar(q_inv - ring_.one());
  }

  Poly divided_difference(const Poly& f, int i) const { return swk::divided_difference(f, i); }

  /// S_i * h
  B bern_left_simple(int i, const B& h) const {
    const Elem q = ring_.q();
    const Elem q_minus_one = q - ring_.one();
    B out = bern_zero();
    for (const auto& [rho, f] : h.terms()) {
      const Poly swapped = f.swapped(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i));
      const ExtAffPerm s_rho = rho.simple_times(i);
      if (!rho.has_left_descent(i)) {
        out.add_term(s_rho, swapped);
      } else {
        out.add_term(s_rho, swapped.scaled(q));
        out.add_term(rho, swapped.scaled(q_minus_one));
      }
      out.add_term(rho, divided_difference(f, i).scaled(q_minus_one));
    }
    return out;
  }

  /// h * S_i
  B bern_right_simple(const B& h, int i) const {
    const Elem q = ring_.q();
    const Elem q_minus_one = q - ring_.one();
    B out = bern_zero();
    for (const auto& [rho, f] : h.terms()) {
      const ExtAffPerm rho_s = rho.times_simple(i);
      if (!rho.has_right_descent(i)) {
        out.add_term(rho_s, f);
      } else {
        out.add_term(rho_s, f.scaled(q));
        out.add_term(rho, f.scaled(q_minus_one));
      }
    }
    return out;
  }

  /// Product normalized to the {X^mu T_sigma} basis.
  B bern_mul(const B& a, const B& b) const {
    check_rank(a.n());
    check_rank(b.n());
    B out = bern_zero();
    for (const auto& [sigma, f] : a.terms()) {
      const auto word = sigma.factorize().word;
      for (const auto& [tau, g] : b.terms()) {
        // T_sigma g = S_i1 (S_i2 (... (S_ik g)))
        B moved = bern_poly(g);
        for (auto it = word.rbegin(); it != word.rend(); ++it) moved = bern_left_simple(*it, moved);
        B scaled = bern_zero();
        for (const auto& [rho, h] : moved.terms()) scaled.add_term(rho, f * h);
        for (int i : tau.factorize().word) scaled = bern_right_simple(scaled, i);
        out += scaled;
      }
    }
    return out;
  }

  // ---- change of basis -----------------------------------------------------

  /// X^mu T_sigma -> x_monomial(mu) T_sigma
  IM bern_to_im(const B& b) const {
    check_rank(b.n());
    IM out(n_);
    std::map<Weight, IM> monomials;
    for (const auto& [sigma, f] : b.terms()) {
      IM lattice_part(n_);
      for (const auto& [mu, c] : f.terms()) {
        auto it = monomials.find(mu);
        if (it == monomials.end()) it = monomials.emplace(mu, x_monomial(mu)).first;
        lattice_part += it->second.scaled(c);
      }
      out += im_mul(lattice_part, im_basis(sigma));
    }
    return out;
  }

  /// Algebra map on generators: S_i -> S_i, T -> shift image, extended along
  /// T_w = S_i1 ... S_ik T^a.
  B im_to_bern(const IM& a) const {
    check_rank(a.n());
    require_shift_images();
    B out = bern_zero();
    std::map<int, B> shift_powers;
    for (const auto& [w, c] : a.terms()) {
      const auto factor = w.factorize();
      B image = bern_scalar(c);
      for (int i : factor.word) image = bern_mul(image, i == 0 ? simple_zero_ : bern_simple(i));
      if (factor.shift_power != 0) {
        auto it = shift_powers.find(factor.shift_power);
        if (it == shift_powers.end()) it = shift_powers.emplace(factor.shift_power, shift_power_image(factor.shift_power)).first;
        image = bern_mul(image, it->second);
      }
      out += image;
    }
    return out;
  }

  /// Bernstein images of T and T^-1.
  const B& shift_image() const {
    require_shift_images();
    return shift_;
  }
  const B& shift_inverse_image() const {
    require_shift_images();
    return shift_inverse_;
  }

  // ---- center, characters, Levi --------------------------------------------

  /// Image of T^(j) in the symmetric Laurent polynomials: q^(-j(j-1)/2) e_j.
  Poly satake_spherical(int j) const {
    if (j < 1 || j > n_) throw InputError("satake_spherical: j outside 1..n");
    return elementary(j, vars_, ring_.one()).scaled(ring_.q_pow(-j * (j - 1) / 2));
  }

  /// Commutes with S_1..S_(n-1) and X_1 (which generate with the center).
  bool is_central(const B& a) const {
    std::vector<B> generators;
    for (int i = 1; i < n_; ++i) generators.push_back(bern_simple(i));
    Weight first(static_cast<std::size_t>(n_), 0);
    first[0] = 1;
    generators.push_back(bern_x(first));
    return std::all_of(generators.begin(), generators.end(),
                       [&](const B& g) { return bern_mul(a, g) == bern_mul(g, a); });
  }

  /// w -> [IwI : I] = q^l(w), extended linearly to the finite Hecke algebra.
  Elem trivial_char(const B& a) const {
    Elem out = ring_.zero();
    for (const auto& [sigma, f] : a.terms()) {
      if (!f.is_constant()) throw InputError("trivial_char: element has non-constant lattice part");
      const Elem c = f.coeff(Exponent(static_cast<std::size_t>(n_), 0)).value_or(ring_.zero());
      out = out + c * ring_.q_pow(sigma.length());
    }
    return out;
  }

  /// j_P^G on one Levi factor: shifts X_j -> X_(offset+j), S_j -> S_(offset+j).
  B levi_embed_factor(const std::vector<int>& blocks, std::size_t index, const B& factor) const {
    const int total = std::accumulate(blocks.begin(), blocks.end(), 0);
    if (total != n_) throw DimensionError("block sizes do not sum to the rank");
    if (index >= blocks.size() || factor.n() != blocks[index]) throw DimensionError("factor rank differs from its block");
    const int offset = std::accumulate(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(index), 0);
    B out = bern_zero();
    for (const auto& [sigma, f] : factor.terms()) {
      std::vector<int> one_line(static_cast<std::size_t>(n_));
      std::iota(one_line.begin(), one_line.end(), 1);
      for (int j = 0; j < factor.n(); ++j)
        one_line[static_cast<std::size_t>(offset + j)] = sigma.window()[static_cast<std::size_t>(j)] + offset;
      Poly g(vars_);
      for (const auto& [e, c] : f.terms()) {
        Exponent big(static_cast<std::size_t>(n_), 0);
        std::copy(e.begin(), e.end(), big.begin() + offset);
        g.add_term(big, c);
      }
      out.add_term(ExtAffPerm::finite(std::move(one_line)), g);
    }
    return out;
  }

  /// j_P^G on a pure tensor a_1 (x) ... (x) a_r.
  B levi_embed(const std::vector<int>& blocks, const std::vector<B>& factors) const {
    if (factors.size() != blocks.size()) throw DimensionError("one factor per block required");
    B out = bern_one();
    for (std::size_t i = 0; i < factors.size(); ++i) out = bern_mul(out, levi_embed_factor(blocks, i, factors[i]));
    return out;
  }

 private:
  Poly poly_constant(const Elem& c) const { return Poly::constant(vars_, c); }

  void require_shift_images() const {
    if (!have_shift_images_) throw CapabilityError("ring has no square root of q; the Bernstein image of T needs q^((n-1)/2)");
  }

  void check_rank(int n) const {
    if (n != n_) throw DimensionError("element rank differs from algebra rank");
  }

  /// For the dominant weight (1, 0, ..., 0) the translation factors as
  /// sigma * t with sigma finite (convention k -> k - n mu_k), so
  /// T = T_sigma^-1 T_(w^(1,0..0)) = T_sigma^-1 q^((n-1)/2) X_1.
  void init_shift_images() {
    Weight fundamental(static_cast<std::size_t>(n_), 0);
    fundamental[0] = 1;
    const ExtAffPerm trans = ExtAffPerm::translation(fundamental);
    const ExtAffPerm t = ExtAffPerm::shift(n_);
    const ExtAffPerm sigma = trans * t.inverse();
    if (!sigma.is_finite()) throw InvariantViolation("unexpected translation convention");
    const auto word = sigma.factorize().word;
    B sigma_inverse = bern_one();
    B sigma_forward = bern_one();
    for (auto it = word.rbegin(); it != word.rend(); ++it) sigma_inverse = bern_mul(sigma_inverse, bern_simple_inverse(*it));
    for (int i : word) sigma_forward = bern_mul(sigma_forward, bern_simple(i));
    const int len = trans.length();
    fundamental[0] = -1;
    shift_ = bern_mul(sigma_inverse, bern_poly(Poly::monomial(vars_, Exponent(vars_.size(), 0), ring_.v_pow(len)) *
                                                    Poly::variable(vars_, 0, ring_.one())));
    // T^-1 = T_(w^(1,0..0))^-1 T_sigma = q^(-(n-1)/2) X_1^-1 T_sigma
    shift_inverse_ = bern_mul(bern_poly(Poly::monomial(vars_, fundamental, ring_.v_pow(-len))), sigma_forward);
    simple_zero_ = n_ >= 2 ? bern_mul(bern_mul(shift_, bern_simple(1)), shift_inverse_) : bern_zero();
  }

  B shift_power_image(int k) const {
    B out = bern_one();
    const B& base = k > 0 ? shift_ : shift_inverse_;
    for (int i = 0; i < std::abs(k); ++i) out = bern_mul(out, base);
    return out;
  }

  R ring_;
  int n_;
  Variables vars_;
  B shift_{0, Variables()};
  B shift_inverse_{0, Variables()};
  B simple_zero_{0, Variables()};
  bool have_shift_images_ = false;
};

}  // namespace swk
