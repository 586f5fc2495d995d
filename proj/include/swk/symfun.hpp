#pragma once

/// Weights, partitions, elementary symmetric polynomials and Schur
/// polynomials (bialternant quotient and dual Jacobi-Trudi determinant).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "swk/errors.hpp"
#include "swk/laurent.hpp"
#include "swk/linalg.hpp"

namespace swk {

/// Integer n-vector; the exponent of a diagonal uniformizer power.
using Weight = std::vector<int>;

inline bool is_dominant(const Weight& mu) {
  return std::is_sorted(mu.begin(), mu.end(), std::greater<int>());
}

inline int weight_size(const Weight& mu) { return std::accumulate(mu.begin(), mu.end(), 0); }

inline bool is_partition(const Weight& mu) { return is_dominant(mu) && (mu.empty() || mu.back() >= 0); }

/// Conjugate partition, listed up to its largest part (mu' has mu[0] entries).
inline std::vector<int> conjugate(const Weight& mu) {
  if (!is_partition(mu)) throw InputError("conjugate requires a partition");
  const int width = mu.empty() ? 0 : mu.front();
  std::vector<int> out(static_cast<std::size_t>(width), 0);
  for (int part : mu)
    for (int k = 0; k < part; ++k) ++out[static_cast<std::size_t>(k)];
  return out;
}

/// Pads or trims trailing zeros so the partition has length n.
inline Weight pad_partition(Weight mu, std::size_t n) {
  while (mu.size() > n && mu.back() == 0) mu.pop_back();
  if (mu.size() > n) throw InputError("partition has more than n nonzero parts");
  mu.resize(n, 0);
  return mu;
}

/// Dominant weights with every entry in [-bound, bound], graded-lex ascending.
inline std::vector<Weight> dominant_weights_in_box(int n, int bound) {
  std::set<Weight, GrlexLess> found;
  Weight current(static_cast<std::size_t>(n));
  std::function<void(int, int)> fill = [&](int index, int ceiling) {
    if (index == n) {
      found.insert(current);
      return;
    }
    for (int x = -bound; x <= ceiling; ++x) {
      current[static_cast<std::size_t>(index)] = x;
      fill(index + 1, x);
    }
  };
  if (bound >= 0) fill(0, bound);
  return {found.begin(), found.end()};
}

/// Partitions of exactly `size` with at most n parts, padded to length n.
inline std::vector<Weight> partitions_of(int size, int n) {
  std::vector<Weight> out;
  Weight current;
  std::function<void(int, int)> fill = [&](int remaining, int ceiling) {
    if (remaining == 0) {
      out.push_back(pad_partition(current, static_cast<std::size_t>(n)));
      return;
    }
    if (static_cast<int>(current.size()) == n) return;
    for (int part = std::min(remaining, ceiling); part >= 1; --part) {
      current.push_back(part);
      fill(remaining - part, part);
      current.pop_back();
    }
  };
  fill(size, size);
  return out;
}

/// True iff f is fixed by every adjacent transposition inside the blocks
/// (block sizes list a Young subgroup of S_n).
template <class K>
bool is_symmetric(const LaurentPoly<K>& f, const std::vector<int>& blocks) {
  const int total = std::accumulate(blocks.begin(), blocks.end(), 0);
  if (total != static_cast<int>(f.nvars())) throw DimensionError("block sizes do not sum to the number of variables");
  std::size_t start = 0;
  for (int size : blocks) {
    if (size < 1) throw InputError("block sizes must be positive");
    for (std::size_t i = start; i + 1 < start + static_cast<std::size_t>(size); ++i)
      if (!(f.swapped(i, i + 1) == f)) return false;
    start += static_cast<std::size_t>(size);
  }
  return true;
}

template <class K>
bool is_symmetric(const LaurentPoly<K>& f) {
  return is_symmetric(f, std::vector<int>{static_cast<int>(f.nvars())});
}

/// e_j(x1..xn): sum of squarefree degree-j monomials; e_0 = 1.
template <class K>
LaurentPoly<K> elementary(int j, const Variables& vars, const K& one) {
  const int n = static_cast<int>(vars.size());
  if (j < 0 || j > n) throw InputError("elementary index " + std::to_string(j) + " outside 0.." + std::to_string(n));
  LaurentPoly<K> out(vars);
  std::vector<int> mask(static_cast<std::size_t>(n), 0);
  std::fill(mask.end() - j, mask.end(), 1);
  do {
    out.add_term(mask, one);
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

/// Schur polynomial as det(x_j^(mu_i + n - i)) / prod_{i<j}(x_i - x_j).
///
/// Dominant weights with negative entries are reduced to partitions by
/// S_{mu + k(1..1)} = e_n^k S_mu.
template <class K>
LaurentPoly<K> schur_bialternant(const Weight& mu, const Variables& vars, const K& one) {
  const std::size_t n = vars.size();
  if (mu.size() != n) throw DimensionError("weight length must equal the number of variables");
  if (!is_dominant(mu)) throw InputError("schur_bialternant requires a dominant weight");
  using P = LaurentPoly<K>;
  const int shift = n ? mu.back() : 0;
  Matrix<P> alternant(n, n, P(vars));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Exponent e(n, 0);
      e[j] = mu[i] - shift + static_cast<int>(n - 1 - i);
      alternant(i, j) = P::monomial(vars, e, one);
    }
  P quotient = determinant(alternant, P(vars), P::constant(vars, one));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      P factor = P::variable(vars, i, one) - P::variable(vars, j, one);
      auto next = quotient.exact_divide(factor);
      if (!next) throw InvariantViolation("alternant not divisible by Vandermonde factor");
      quotient = std::move(*next);
    }
  return quotient.shifted(Exponent(n, shift));
}

/// Variables E1..En standing for elementary symmetric functions.
inline Variables elementary_symbols(int n) { return Variables::indexed("E", static_cast<std::size_t>(n)); }

using ElementaryPoly = LaurentPoly<Integer>;

/// Schur polynomial of a partition written in the elementary generators:
/// det(E_{mu'_i - i + j}) over 1 <= i, j <= mu_1, with E_0 = 1 and E_k = 0
/// outside 0..n.
inline ElementaryPoly schur_jacobi_trudi(const Weight& mu, int n) {
  if (!is_partition(mu)) throw InputError("schur_jacobi_trudi requires a partition");
  const Weight padded = pad_partition(mu, static_cast<std::size_t>(n));
  const Variables symbols = elementary_symbols(n);
  const std::vector<int> dual = conjugate(padded);
  const std::size_t m = dual.size();
  const ElementaryPoly zero(symbols);
  const ElementaryPoly one = ElementaryPoly::constant(symbols, Integer(1));
  auto symbol = [&](int k) {
    if (k == 0) return one;
    if (k < 0 || k > n) return zero;
    return ElementaryPoly::variable(symbols, static_cast<std::size_t>(k - 1), Integer(1));
  };
  Matrix<ElementaryPoly> jt(m, m, zero);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      jt(i, j) = symbol(dual[i] - static_cast<int>(i) + static_cast<int>(j));
  return determinant(jt, zero, one);
}

/// Substitutes E_j := args[j-1] into a polynomial in the elementary symbols.
/// `embed` maps integer coefficients into the target ring.
template <class T, class Embed>
T eval_in_elementary(const ElementaryPoly& p, const std::vector<T>& args, const T& one, Embed embed) {
  if (args.size() != p.nvars()) throw DimensionError("eval_in_elementary: argument count mismatch");
  T acc = one - one;
  for (const auto& [e, coeff] : p.terms()) {
    T term = embed(coeff);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] < 0) throw InputError("eval_in_elementary: negative exponent");
      for (int k = 0; k < e[j]; ++k) term = term * args[j];
    }
    acc = acc + term;
  }
  return acc;
}

/// Convenience overload for Laurent-polynomial targets over the integers.
inline LaurentPoly<Integer> eval_in_elementary(const ElementaryPoly& p, const std::vector<LaurentPoly<Integer>>& args) {
  if (args.empty()) throw DimensionError("eval_in_elementary: no arguments");
  const Variables& vars = args.front().variables();
  const auto one = LaurentPoly<Integer>::constant(vars, Integer(1));
  return eval_in_elementary(p, args, one,
                            [&](const Integer& c) { return LaurentPoly<Integer>::constant(vars, c); });
}

}  // namespace swk
