#pragma once

/// Finite model of the Iwahori-fixed part of the universal unramified module:
/// the splitting algebra k[X1..Xn] / (e_j(X) - c_j) with its Artin basis
/// {X^mu : mu_i <= n - i}, the commuting multiplication operators X_j, and
/// the operators S_i coming from H(G, I) acting on H (x)_(H_W) 1.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "swk/errors.hpp"
#include "swk/hecke.hpp"
#include "swk/laurent.hpp"
#include "swk/linalg.hpp"
#include "swk/ring.hpp"
#include "swk/symfun.hpp"
#include "swk/whittaker.hpp"

namespace swk {

enum class BanalClass { banal, quasi_banal_limit, neither };

inline std::string to_string(BanalClass c) {
  switch (c) {
    case BanalClass::banal: return "banal";
    case BanalClass::quasi_banal_limit: return "quasi-banal-limit";
    case BanalClass::neither: return "neither";
  }
  return "neither";
}

inline bool is_probable_prime(const Integer& p) { return p > 1 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

inline bool is_prime_power(const Integer& q) {
  if (q < 2) return false;
  const unsigned long bits = mpz_sizeinbase(q.get_mpz_t(), 2);
  for (unsigned long k = 1; k <= bits; ++k) {
    Integer root;
    if (mpz_root(root.get_mpz_t(), q.get_mpz_t(), k) != 0 && is_probable_prime(root)) return true;
  }
  return false;
}

/// Banal iff ell does not divide #GL_n(F_q) = q^(n(n-1)/2) prod (q^i - 1).
inline BanalClass banal_class(int n, const Integer& q, const Integer& ell) {
  if (n < 1) throw InputError("banal_class: n must be positive");
  if (!is_prime_power(q)) throw InputError("banal_class: q must be a prime power");
  if (!is_probable_prime(ell)) throw InputError("banal_class: ell must be prime");
  if (mpz_divisible_p(q.get_mpz_t(), ell.get_mpz_t())) throw InputError("banal_class: ell divides q");
  bool divides_order = false;
  for (int i = 1; i <= n; ++i) {
    Integer r;
    mpz_powm_ui(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(i), ell.get_mpz_t());
    if (r == 1) divides_order = true;
  }
  if (!divides_order) return BanalClass::banal;
  if (ell > n && Integer(q % ell) == 1) return BanalClass::quasi_banal_limit;
  return BanalClass::neither;
}

/// Reducers g_1..g_n: g_1(T) = prod (T - roots) = sum (-1)^k c_k T^(n-k) in
/// X_1, and g_(i+1) = (g_i(X_(i+1)) - g_i(X_i)) / (X_(i+1) - X_i). Each g_i
/// is monic of degree n - i + 1 in X_i and involves only X_1..X_i.
template <CoeffRing R>
std::vector<LaurentPoly<typename R::Elem>> splitting_basis(const HeckeChar<R>& character) {
  using Elem = typename R::Elem;
  using Poly = LaurentPoly<Elem>;
  const int n = character.n();
  const R& ring = character.ring();
  const Variables vars = Variables::indexed("X", static_cast<std::size_t>(n));
  std::vector<Poly> out;
  Poly g(vars);
  for (int k = 0; k <= n; ++k) {
    Exponent e(static_cast<std::size_t>(n), 0);
    e[0] = n - k;
    const Elem c = k == 0 ? ring.one() : character.satake_value(k);
    g.add_term(e, k % 2 == 0 ? c : -c);
  }
  out.push_back(g);
  for (int i = 1; i < n; ++i) {
    const std::size_t a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(i);
    Poly next(vars);
    for (const auto& [e, c] : out.back().terms()) {
      // X_a^d -> sum_(k<d) X_b^k X_a^(d-1-k)
      for (int k = 0; k < e[a]; ++k) {
        Exponent m = e;
        m[b] = k;
        m[a] = e[a] - 1 - k;
        next.add_term(m, c);
      }
    }
    out.push_back(next);
  }
  return out;
}

/// Artin monomials X^mu with 0 <= mu_i <= n - i, graded-lex ascending.
inline std::vector<Weight> artin_basis(int n) {
  std::vector<Weight> out{Weight(static_cast<std::size_t>(n), 0)};
  for (int i = 0; i < n; ++i) {
    std::vector<Weight> grown;
    for (const auto& mu : out)
      for (int d = 0; d <= n - 1 - i; ++d) {
        Weight w = mu;
        w[static_cast<std::size_t>(i)] = d;
        grown.push_back(w);
      }
    out = std::move(grown);
  }
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

inline std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::size_t>(k);
  return f;
}

template <CoeffRing R>
class UnramifiedModule {
 public:
  using Elem = typename R::Elem;
  using Poly = LaurentPoly<Elem>;
  using Mat = Matrix<Elem>;

  explicit UnramifiedModule(HeckeChar<R> character)
      : char_(std::move(character)),
        n_(char_.n()),
        vars_(Variables::indexed("X", static_cast<std::size_t>(n_))),
        reducers_(splitting_basis(char_)),
        basis_(artin_basis(n_)) {
    for (std::size_t k = 0; k < basis_.size(); ++k) index_.emplace(basis_[k], k);
    cn_inverse_ = char_.satake_value_last_inverse();
    for (int i = 0; i < n_; ++i) {
      Exponent lead(static_cast<std::size_t>(n_), 0);
      lead[static_cast<std::size_t>(i)] = n_ - i;
      tails_.push_back(Poly::monomial(vars_, lead, ring().one()) - reducers_[static_cast<std::size_t>(i)]);
    }
  }

  const R& ring() const { return char_.ring(); }
  const HeckeChar<R>& character() const { return char_; }
  int n() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const Variables& variables() const { return vars_; }
  const std::vector<Weight>& basis() const { return basis_; }
  const std::vector<Poly>& reducers() const { return reducers_; }
  const std::vector<Mat>& xmat() const { return xmat_; }
  const std::vector<Mat>& xinv() const { return xinv_; }
  const std::vector<Mat>& smat() const { return smat_; }

  /// Reduced representative of f modulo the ideal, as a polynomial
  /// supported on the Artin basis.
  Poly reduce(const Poly& f) const {
    if (!(f.variables() == vars_) && !f.is_zero()) throw DimensionError("polynomial variables differ from X1..Xn");
    int clear = 0;
    for (const auto& [e, c] : f.terms())
      for (int x : e) clear = std::max(clear, -x);
    Poly g = clear > 0 ? f.shifted(Exponent(static_cast<std::size_t>(n_), clear)) : f;
    for (int i = n_ - 1; i >= 0; --i) {
      const std::size_t v = static_cast<std::size_t>(i);
      const int degree = n_ - i;
      while (true) {
        bool reduced = false;
        Poly next(vars_);
        for (const auto& [e, c] : g.terms()) {
          if (e[v] < degree) {
            next.add_term(e, c);
            continue;
          }
          reduced = true;
          Exponent rest = e;
          rest[v] -= degree;
          next += tails_[v].shifted(rest).scaled(c);
        }
        g = std::move(next);
        if (!reduced) break;
      }
    }
    if (clear > 0) g = g.scaled(power(cn_inverse_, clear));
    return g;
  }

  /// Coordinates of f over the Artin basis.
  std::vector<Elem> normal_form(const Poly& f) const {
    std::vector<Elem> out(dim(), ring().zero());
    const Poly reduced = reduce(f);
    for (const auto& [e, c] : reduced.terms()) {
      auto it = index_.find(e);
      if (it == index_.end()) throw InvariantViolation("normal form left the Artin basis");
      out[it->second] = c;
    }
    return out;
  }

  Poly to_poly(const std::vector<Elem>& coords) const {
    if (coords.size() != dim()) throw DimensionError("coordinate vector length differs from module dimension");
    Poly out(vars_);
    for (std::size_t k = 0; k < dim(); ++k) out.add_term(basis_[k], coords[k]);
    return out;
  }

  /// Coordinates of the class of 1.
  std::vector<Elem> unit_vector() const { return normal_form(Poly::constant(vars_, ring().one())); }

  /// Fills xmat, xinv and smat; verify() checks them.
  void build() {
    const Elem q = ring().q();
    const Elem q_minus_one = q - ring().one();
    xmat_.clear();
    xinv_.clear();
    smat_.clear();
    for (int j = 0; j < n_; ++j) {
      Exponent e(static_cast<std::size_t>(n_), 0);
      e[static_cast<std::size_t>(j)] = 1;
      xmat_.push_back(operator_matrix([&](const Poly& f) { return f.shifted(e); }));
      e[static_cast<std::size_t>(j)] = -1;
      xinv_.push_back(operator_matrix([&](const Poly& f) { return f.shifted(e); }));
    }
    for (int i = 1; i < n_; ++i) {
      smat_.push_back(operator_matrix([&](const Poly& f) {
        return f.swapped(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i)).scaled(q) +
               divided_difference(f, i).scaled(q_minus_one);
      }));
    }
  }

  /// Throws InvariantViolation naming the first failed identity.
  void verify() const {
    const Elem zero = ring().zero(), one = ring().one();
    const Elem q = ring().q();
    const Mat id = Mat::identity(dim(), zero, one);
    auto require = [](bool ok, const std::string& what) {
      if (!ok) throw InvariantViolation("module invariant failed: " + what);
    };
    for (int j = 1; j <= n_; ++j) {
      Mat e = Mat(dim(), dim(), zero);
      for (unsigned mask = 0; mask < (1u << n_); ++mask) {
        if (__builtin_popcount(mask) != j) continue;
        Mat product = id;
        for (int k = 0; k < n_; ++k)
          if (mask >> k & 1u) product = product * xmat_[static_cast<std::size_t>(k)];
        e = e + product;
      }
      require(e == id.scaled(char_.satake_value(j)), "e_" + std::to_string(j) + "(X) = c_" + std::to_string(j));
    }
    for (int a = 0; a < n_; ++a) {
      const Mat& xa = xmat_[static_cast<std::size_t>(a)];
      require(xa * xinv_[static_cast<std::size_t>(a)] == id, "X_j X_j^-1 = 1");
      for (int b = a + 1; b < n_; ++b) require(xa * xmat_[static_cast<std::size_t>(b)] == xmat_[static_cast<std::size_t>(b)] * xa, "X_a X_b = X_b X_a");
    }
    for (int i = 1; i < n_; ++i) {
      const Mat& s = smat_[static_cast<std::size_t>(i - 1)];
      const Mat& xi = xmat_[static_cast<std::size_t>(i - 1)];
      const Mat& xnext = xmat_[static_cast<std::size_t>(i)];
      const Elem q_minus_one = q - one;
      require((s - id.scaled(q)) * (s + id) == Mat(dim(), dim(), zero), "quadratic relation");
      require(s * xnext * s == xi.scaled(q), "S_i X_(i+1) S_i = q X_i");
      require(xi * s == s * xnext + xi.scaled(q_minus_one), "X_i S_i = S_i X_(i+1) + (q-1) X_i");
      require(xnext * s == s * xi - xi.scaled(q_minus_one), "X_(i+1) S_i = S_i X_i - (q-1) X_i");
      for (int j = 1; j <= n_; ++j)
        if (j != i && j != i + 1)
          require(xmat_[static_cast<std::size_t>(j - 1)] * s == s * xmat_[static_cast<std::size_t>(j - 1)], "X_j S_i = S_i X_j");
      for (int k = i + 1; k < n_; ++k) {
        const Mat& t = smat_[static_cast<std::size_t>(k - 1)];
        if (k == i + 1)
          require(s * t * s == t * s * t, "braid relation");
        else
          require(s * t == t * s, "distant reflections commute");
      }
    }
  }

 private:
  template <class Op>
  Mat operator_matrix(Op op) const {
    Mat m(dim(), dim(), ring().zero());
    for (std::size_t col = 0; col < dim(); ++col) {
      const auto image = normal_form(op(Poly::monomial(vars_, basis_[col], ring().one())));
      for (std::size_t row = 0; row < dim(); ++row) m(row, col) = image[row];
    }
    return m;
  }

  Elem power(const Elem& base, int k) const {
    Elem out = ring().one();
    for (int i = 0; i < k; ++i) out = out * base;
    return out;
  }

  HeckeChar<R> char_;
  int n_;
  Variables vars_;
  std::vector<Poly> reducers_;
  std::vector<Poly> tails_;
  std::vector<Weight> basis_;
  std::map<Weight, std::size_t> index_;
  Elem cn_inverse_;
  std::vector<Mat> xmat_, xinv_, smat_;
};

/// Builds and verifies the module; refuses dimensions above max_dim.
template <CoeffRing R>
UnramifiedModule<R> build_module(const HeckeChar<R>& character, std::size_t max_dim = 120) {
  if (factorial(character.n()) > max_dim)
    throw DimensionError("module dimension " + std::to_string(factorial(character.n())) + " exceeds cap " + std::to_string(max_dim));
  UnramifiedModule<R> module(character);
  module.build();
  module.verify();
  return module;
}

/// Dimension of the smallest subspace containing f and stable under the
/// given matrices (breadth-first Krylov closure; rank over the fraction
/// field of the coefficient ring).
template <CoeffRing R>
std::size_t a_span_dim(const R& ring, const std::vector<Matrix<typename R::Elem>>& generators,
                       const std::vector<typename R::Elem>& f) {
  for (const auto& g : generators)
    if (g.rows() != g.cols() || g.cols() != f.size()) throw DimensionError("a_span_dim: matrix and vector sizes differ");
  std::vector<std::vector<typename R::Elem>> accepted;
  auto try_accept = [&](std::vector<typename R::Elem> v) {
    auto rows = accepted;
    rows.push_back(v);
    if (rank(ring, rows) > accepted.size()) accepted.push_back(std::move(v));
  };
  try_accept(f);
  for (std::size_t k = 0; k < accepted.size(); ++k)
    for (const auto& g : generators) {
      if (accepted.size() == f.size()) return accepted.size();
      try_accept(g.apply(accepted[k]));
    }
  return accepted.size();
}

/// Closure under X_j and X_j^-1.
template <CoeffRing R>
std::size_t a_span_dim(const UnramifiedModule<R>& module, const std::vector<typename R::Elem>& f) {
  std::vector<Matrix<typename R::Elem>> generators = module.xmat();
  generators.insert(generators.end(), module.xinv().begin(), module.xinv().end());
  return a_span_dim(module.ring(), generators, f);
}

struct IharaVerdict {
  std::size_t span_dim = 0;
  std::size_t n_factorial = 0;
  bool generic_cyclic = false;
  std::string label() const { return generic_cyclic ? "generic-cyclic" : "not-generating"; }
};

template <CoeffRing R>
IharaVerdict ihara_criterion(const UnramifiedModule<R>& module, const std::vector<typename R::Elem>& f) {
  IharaVerdict out;
  out.span_dim = a_span_dim(module, f);
  out.n_factorial = factorial(module.n());
  out.generic_cyclic = out.span_dim == out.n_factorial;
  return out;
}

/// The (Z, *)-action on the spherical module, transported to Laurent
/// polynomials: multiplication by a symmetric z.
template <class E>
LaurentPoly<E> satake_module_action(const LaurentPoly<E>& z, const LaurentPoly<E>& m) {
  if (!is_symmetric(z)) throw InputError("satake_module_action: z is not symmetric");
  return z * m;
}

}  // namespace swk
