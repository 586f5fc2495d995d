#pragma once

/// Spherical Whittaker functions of GL(n).
///
/// A Hecke character is fixed by the values lambda_j := lambda(T^(j)) of the
/// double-coset operators of diag(w,..,w,1,..,1) (j uniformizers). The
/// normalized spherical Whittaker function takes, at a dominant weight mu,
///
///   W(mu) = q^(sum_i (i-n) mu_i) * S_mu(lambda_1, q lambda_2, ..., q^(n(n-1)/2) lambda_n)
///
/// with S_mu a Schur polynomial written in the elementary generators, and
/// vanishes off the dominant cone. An independent solver recovers the same
/// values from the Hecke eigen-equations alone.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <thread>
#include <vector>

#include "swk/errors.hpp"
#include "swk/ring.hpp"
#include "swk/symfun.hpp"

namespace swk {

template <CoeffRing R>
class HeckeChar {
 public:
  using Elem = typename R::Elem;

  /// Character with explicit values lambda_1..lambda_n; lambda_n must be a
  /// unit of the ring.
  HeckeChar(R ring, std::vector<Elem> values) : ring_(std::move(ring)), values_(std::move(values)) {
    if (values_.empty()) throw InputError("Hecke character needs at least one value");
    auto inv = ring_.inverse(values_.back());
    if (!inv) throw InputError("lambda(T^(n)) must be invertible in the coefficient ring");
    inv_last_ = std::move(*inv);
  }

  /// The character whose Satake-normalized values q^(j(j-1)/2) lambda_j are
  /// the ring's parameters c_j.
  static HeckeChar generic(const R& ring) {
    std::vector<Elem> values;
    for (int j = 1; j <= ring.n(); ++j) values.push_back(ring.q_pow(-j * (j - 1) / 2) * ring.c(j));
    return HeckeChar(ring, std::move(values));
  }

  const R& ring() const { return ring_; }
  int n() const { return static_cast<int>(values_.size()); }
  const std::vector<Elem>& values() const { return values_; }
  const Elem& value(int j) const { return values_.at(static_cast<std::size_t>(j - 1)); }
  const Elem& inv_last() const { return inv_last_; }

  /// q^(j(j-1)/2) lambda_j, the value of the j-th elementary symmetric
  /// function at the Satake parameters.
  Elem satake_value(int j) const { return ring_.q_pow(j * (j - 1) / 2) * value(j); }
  Elem satake_value_last_inverse() const { return ring_.q_pow(-n() * (n() - 1) / 2) * inv_last_; }

 private:
  R ring_;
  std::vector<Elem> values_;
  Elem inv_last_;
};

/// Values of a function on the dominant weights of the box [-bound, bound]^n;
/// implicitly zero at non-dominant weights.
template <CoeffRing R>
class WhittakerTable {
 public:
  using Elem = typename R::Elem;
  using Entries = std::map<Weight, Elem, GrlexLess>;

  WhittakerTable(HeckeChar<R> character, int bound, Entries entries)
      : char_(std::move(character)), bound_(bound), entries_(std::move(entries)) {}

  const HeckeChar<R>& character() const { return char_; }
  int n() const { return char_.n(); }
  int bound() const { return bound_; }
  const Entries& entries() const { return entries_; }

  bool in_box(const Weight& mu) const {
    return std::all_of(mu.begin(), mu.end(), [&](int x) { return x >= -bound_ && x <= bound_; });
  }

  Elem at(const Weight& mu) const {
    if (static_cast<int>(mu.size()) != n()) throw DimensionError("weight length differs from rank");
    if (!in_box(mu)) throw InputError("weight outside table bound");
    if (!is_dominant(mu)) return char_.ring().zero();
    auto it = entries_.find(mu);
    return it == entries_.end() ? char_.ring().zero() : it->second;
  }

  WhittakerTable scaled(const Elem& s) const {
    Entries out;
    for (const auto& [mu, value] : entries_) out.emplace(mu, value * s);
    return WhittakerTable(char_, bound_, std::move(out));
  }

  WhittakerTable restricted(int bound) const {
    if (bound > bound_) throw InputError("cannot enlarge a table by restriction");
    Entries out;
    for (const auto& [mu, value] : entries_)
      if (std::all_of(mu.begin(), mu.end(), [&](int x) { return x >= -bound && x <= bound; })) out.emplace(mu, value);
    return WhittakerTable(char_, bound, std::move(out));
  }

  /// The same table with every weight having a negative entry set to zero
  /// (the restriction to the polynomial part k[X1..Xn] of k[Lambda]).
  WhittakerTable polynomial_part() const {
    Entries out;
    for (const auto& [mu, value] : entries_)
      out.emplace(mu, std::any_of(mu.begin(), mu.end(), [](int x) { return x < 0; }) ? char_.ring().zero() : value);
    return WhittakerTable(char_, bound_, std::move(out));
  }

  static WhittakerTable zero(const HeckeChar<R>& character, int bound) {
    Entries out;
    for (const auto& mu : dominant_weights_in_box(character.n(), bound)) out.emplace(mu, character.ring().zero());
    return WhittakerTable(character, bound, std::move(out));
  }

  friend bool operator==(const WhittakerTable& a, const WhittakerTable& b) {
    if (a.bound_ != b.bound_ || a.n() != b.n()) return false;
    for (const auto& [mu, value] : a.entries_)
      if (!(value == b.at(mu))) return false;
    for (const auto& [mu, value] : b.entries_)
      if (!(value == a.at(mu))) return false;
    return true;
  }

 private:
  HeckeChar<R> char_;
  int bound_;
  Entries entries_;
};

namespace detail {

/// {eps in {0,1}^n : sum eps = j}
inline std::vector<Weight> unit_subsets(int n, int j) {
  std::vector<Weight> out;
  Weight eps(static_cast<std::size_t>(n), 0);
  std::fill(eps.begin(), eps.begin() + j, 1);
  do {
    out.push_back(eps);
  } while (std::prev_permutation(eps.begin(), eps.end()));
  return out;
}

inline Weight plus(const Weight& a, const Weight& b) {
  Weight out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

/// sum_i (n - i) mu_i with 1-based i.
inline int tilde_exponent(const Weight& mu) {
  const int n = static_cast<int>(mu.size());
  int acc = 0;
  for (int i = 1; i <= n; ++i) acc += (n - i) * mu[static_cast<std::size_t>(i - 1)];
  return acc;
}

template <CoeffRing R>
typename R::Elem power(const typename R::Elem& base, const typename R::Elem& inverse, int k, const R& ring) {
  typename R::Elem out = ring.one();
  for (int i = 0; i < std::abs(k); ++i) out = out * (k > 0 ? base : inverse);
  return out;
}

template <CoeffRing R>
class ClosedForm {
 public:
  using Elem = typename R::Elem;
  explicit ClosedForm(const HeckeChar<R>& character) : char_(character) {
    for (int j = 1; j <= character.n(); ++j) args_.push_back(character.satake_value(j));
  }

  Elem operator()(const Weight& mu) {
    const R& ring = char_.ring();
    const int n = char_.n();
    if (static_cast<int>(mu.size()) != n) throw DimensionError("weight length differs from rank");
    if (!is_dominant(mu)) return ring.zero();
    const int shift = mu.back();
    Weight partition = mu;
    for (auto& x : partition) x -= shift;
    auto it = schur_cache_.find(partition);
    if (it == schur_cache_.end()) it = schur_cache_.emplace(partition, schur_jacobi_trudi(partition, n)).first;
    Elem value = eval_in_elementary(it->second, args_, ring.one(),
                                    [&](const Integer& c) { return ring.from_integer(c); });
    value = value * power(args_.back(), char_.satake_value_last_inverse(), shift, ring);
    return ring.q_pow(-tilde_exponent(mu)) * value;
  }

 private:
  const HeckeChar<R>& char_;
  std::vector<Elem> args_;
  std::map<Weight, ElementaryPoly> schur_cache_;
};

}  // namespace detail

/// Closed-form value W(mu) of the normalized spherical Whittaker function.
template <CoeffRing R>
typename R::Elem whittaker_value(const HeckeChar<R>& character, const Weight& mu) {
  detail::ClosedForm<R> eval(character);
  return eval(mu);
}

/// Closed-form table on the box [-bound, bound]^n. With threads > 1 the
/// weights are split into contiguous chunks; the result does not depend on
/// the thread count.
template <CoeffRing R>
WhittakerTable<R> whittaker_table(const HeckeChar<R>& character, int bound, unsigned threads = 1) {
  if (bound < 0) throw InputError("bound must be non-negative");
  const std::vector<Weight> weights = dominant_weights_in_box(character.n(), bound);
  std::vector<typename R::Elem> values(weights.size(), character.ring().zero());
  auto work = [&](std::size_t begin, std::size_t end) {
    detail::ClosedForm<R> eval(character);
    for (std::size_t k = begin; k < end; ++k) values[k] = eval(weights[k]);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(weights.size())));
  if (threads == 1) {
    work(0, weights.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (weights.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < weights.size(); begin += chunk)
      pool.emplace_back(work, begin, std::min(weights.size(), begin + chunk));
  }
  typename WhittakerTable<R>::Entries entries;
  for (std::size_t k = 0; k < weights.size(); ++k) entries.emplace(weights[k], std::move(values[k]));
  return WhittakerTable<R>(character, bound, std::move(entries));
}

/// Solves the eigen-equations
///
///   W~(0) = 1,   W~ = 0 off the dominant cone,
///   q^(j(j-1)/2) lambda_j W~(mu) = sum_{eps in I(j)} W~(mu + eps)   (mu dominant)
///
/// for W~(mu) = q^(sum (n-i) mu_i) W(mu), without using Schur polynomials.
///
/// Unknowns are ordered by (|mu|, lex). Each partition nu != 0 is pinned by
/// the equation with j = number of nonzero parts at mu = nu - (1^j), whose
/// pivot coefficient is 1; weights with a negative last entry are pinned by
/// the j = n equation, whose pivot lambda_n is a unit. Every remaining
/// equation on the box is then checked; a failure means the system is
/// inconsistent and is reported as an invariant violation.
template <CoeffRing R>
WhittakerTable<R> recursion_solve(const HeckeChar<R>& character, int bound) {
  using Elem = typename R::Elem;
  if (bound < 0) throw InputError("bound must be non-negative");
  const R& ring = character.ring();
  const int n = character.n();
  std::vector<Elem> coeff;
  for (int j = 1; j <= n; ++j) coeff.push_back(character.satake_value(j));
  const Elem last_inverse = character.satake_value_last_inverse();
  std::vector<std::vector<Weight>> subsets;
  for (int j = 0; j <= n; ++j) subsets.push_back(detail::unit_subsets(n, j));

  std::map<Weight, Elem, GrlexLess> tilde;
  std::function<Elem(const Weight&)> solve = [&](const Weight& nu) -> Elem {
    if (!is_dominant(nu)) return ring.zero();
    if (auto it = tilde.find(nu); it != tilde.end()) return it->second;
    Elem value = ring.zero();
    if (nu.back() < 0) {
      Weight up = nu;
      for (auto& x : up) ++x;
      value = last_inverse * solve(up);
    } else if (std::all_of(nu.begin(), nu.end(), [](int x) { return x == 0; })) {
      value = ring.one();
    } else {
      const int j = static_cast<int>(std::count_if(nu.begin(), nu.end(), [](int x) { return x > 0; }));
      Weight mu = nu;
      for (int i = 0; i < j; ++i) --mu[static_cast<std::size_t>(i)];
      value = coeff[static_cast<std::size_t>(j - 1)] * solve(mu);
      for (const auto& eps : subsets[static_cast<std::size_t>(j)]) {
        Weight other = detail::plus(mu, eps);
        if (other == nu) continue;
        value = value - solve(other);
      }
    }
    tilde.emplace(nu, value);
    return value;
  };

  const std::vector<Weight> weights = dominant_weights_in_box(n, bound);
  for (const auto& mu : weights) {
    for (int j = 1; j <= n; ++j) {
      Elem rhs = ring.zero();
      for (const auto& eps : subsets[static_cast<std::size_t>(j)]) rhs = rhs + solve(detail::plus(mu, eps));
      if (!(coeff[static_cast<std::size_t>(j - 1)] * solve(mu) == rhs))
        throw InvariantViolation("inconsistent Whittaker recursion at j = " + std::to_string(j));
    }
  }

  typename WhittakerTable<R>::Entries entries;
  for (const auto& mu : weights) entries.emplace(mu, ring.q_pow(-detail::tilde_exponent(mu)) * solve(mu));
  return WhittakerTable<R>(character, bound, std::move(entries));
}

/// (T^(j) * W)(mu) = q^(-j(j-1)/2) sum_{eps in I(j)} q^(sum (n-i) eps_i) W(mu + eps)
/// on the dominant weights of the box shrunk by one.
template <CoeffRing R>
WhittakerTable<R> hecke_apply(int j, const WhittakerTable<R>& table) {
  const int n = table.n();
  if (j < 1 || j > n) throw InputError("hecke_apply: j outside 1..n");
  if (table.bound() < 1) throw InputError("hecke_apply: table bound exhausted");
  const R& ring = table.character().ring();
  const auto subsets = detail::unit_subsets(n, j);
  const int bound = table.bound() - 1;
  typename WhittakerTable<R>::Entries entries;
  for (const auto& mu : dominant_weights_in_box(n, bound)) {
    auto acc = ring.zero();
    for (const auto& eps : subsets) {
      auto value = table.at(detail::plus(mu, eps));
      if (ring.is_zero(value)) continue;
      acc = acc + ring.q_pow(detail::tilde_exponent(eps)) * value;
    }
    entries.emplace(mu, ring.q_pow(-j * (j - 1) / 2) * acc);
  }
  return WhittakerTable<R>(table.character(), bound, std::move(entries));
}

/// Whittaker value for a block-diagonal Levi GL(n1) x ... x GL(nr): the
/// product of the blockwise values, zero unless every segment is dominant.
template <CoeffRing R>
typename R::Elem whittaker_levi(const std::vector<HeckeChar<R>>& blocks, const Weight& mu) {
  if (blocks.empty()) throw InputError("whittaker_levi needs at least one block");
  int total = 0;
  for (const auto& b : blocks) total += b.n();
  if (total != static_cast<int>(mu.size())) throw DimensionError("block sizes do not sum to the weight length");
  auto product = blocks.front().ring().one();
  std::size_t start = 0;
  for (const auto& b : blocks) {
    Weight segment(mu.begin() + static_cast<std::ptrdiff_t>(start), mu.begin() + static_cast<std::ptrdiff_t>(start) + b.n());
    product = product * whittaker_value(b, segment);
    start += static_cast<std::size_t>(b.n());
  }
  return product;
}

/// Value at the identity.
template <CoeffRing R>
typename R::Elem ev1(const WhittakerTable<R>& table) {
  return table.at(Weight(static_cast<std::size_t>(table.n()), 0));
}

}  // namespace swk
