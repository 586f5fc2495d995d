#pragma once

/// Extended affine symmetric group of GL(n) in window notation.
///
/// An element is a bijection w : Z -> Z with w(i + n) = w(i) + n, stored as
/// its window [w(1), ..., w(n)]. Products compose as functions:
/// (u * v)(i) = u(v(i)). Finite permutations are the elements whose window
/// is a permutation of 1..n.
///
/// Conventions used throughout the Hecke algebra code:
///   * s_i (0 <= i < n) exchanges i and i+1 (mod n); s_0 is the affine one.
///   * the length-zero shift t is k -> k - 1, so t s_i t^-1 = s_(i-1).
///   * the translation by a weight mu is k -> k - n * mu_k.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "swk/errors.hpp"

namespace swk {

class ExtAffPerm {
 public:
  ExtAffPerm() = default;

  /// Validates that the window residues are a permutation of 1..n.
  explicit ExtAffPerm(std::vector<int> window) : window_(std::move(window)) {
    const int n = rank();
    if (n < 1) throw InputError("affine permutation needs a non-empty window");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int x : window_) {
      const int r = residue(x, n);
      if (seen[static_cast<std::size_t>(r - 1)]) throw InputError("window residues are not a permutation of 1..n");
      seen[static_cast<std::size_t>(r - 1)] = true;
    }
  }

  static ExtAffPerm identity(int n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    return ExtAffPerm(std::move(w), Unchecked{});
  }

  /// s_i for 0 <= i < n (n >= 2).
  static ExtAffPerm simple(int n, int i) {
    if (n < 2 || i < 0 || i >= n) throw InputError("simple reflection index out of range");
    return identity(n).times_simple(i);
  }

  /// The length-zero generator t: k -> k - 1.
  static ExtAffPerm shift(int n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 0);
    return ExtAffPerm(std::move(w), Unchecked{});
  }

  /// Translation k -> k - n mu_k.
  static ExtAffPerm translation(const std::vector<int>& mu) {
    const int n = static_cast<int>(mu.size());
    std::vector<int> w(mu.size());
    for (int i = 1; i <= n; ++i) w[static_cast<std::size_t>(i - 1)] = i - n * mu[static_cast<std::size_t>(i - 1)];
    return ExtAffPerm(std::move(w), Unchecked{});
  }

  /// Finite permutation from one-line notation (values 1..n).
  static ExtAffPerm finite(std::vector<int> one_line) {
    ExtAffPerm p(std::move(one_line));
    if (!p.is_finite()) throw InputError("not a permutation of 1..n");
    return p;
  }

  int rank() const { return static_cast<int>(window_.size()); }
  const std::vector<int>& window() const { return window_; }

  int operator()(int k) const {
    const int n = rank();
    const int r = residue(k, n);
    return window_[static_cast<std::size_t>(r - 1)] + (k - r);
  }

  friend ExtAffPerm operator*(const ExtAffPerm& u, const ExtAffPerm& v) {
    if (u.rank() != v.rank()) throw DimensionError("rank mismatch in affine permutation product");
    std::vector<int> w(v.window_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = u(v.window_[i]);
    return ExtAffPerm(std::move(w), Unchecked{});
  }

  ExtAffPerm inverse() const {
    const int n = rank();
    std::vector<int> w(window_.size());
    for (int i = 1; i <= n; ++i) {
      const int image = window_[static_cast<std::size_t>(i - 1)];
      const int r = residue(image, n);
      w[static_cast<std::size_t>(r - 1)] = i - (image - r);
    }
    return ExtAffPerm(std::move(w), Unchecked{});
  }

  /// Right multiplication by s_i: exchanges window positions i and i+1.
  ExtAffPerm times_simple(int i) const {
    const int n = rank();
    std::vector<int> w = window_;
    if (i == 0) {
      const int first = w.front(), last = w.back();
      w.front() = last - n;
      w.back() = first + n;
    } else {
      std::swap(w[static_cast<std::size_t>(i - 1)], w[static_cast<std::size_t>(i)]);
    }
    return ExtAffPerm(std::move(w), Unchecked{});
  }

  /// Left multiplication by s_i: exchanges the values i and i+1 (mod n).
  ExtAffPerm simple_times(int i) const { return simple(rank(), i) * *this; }

  /// Number of pairs (i, j) with 1 <= i <= n, i < j and w(i) > w(j).
  int length() const {
    const int n = rank();
    int total = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const int diff = window_[static_cast<std::size_t>(j)] - window_[static_cast<std::size_t>(i)];
        total += std::abs(floor_div(diff, n));
      }
    return total;
  }

  /// l(w s_i) < l(w)
  bool has_right_descent(int i) const { return (*this)(i) > (*this)(i + 1); }
  /// l(s_i w) < l(w)
  bool has_left_descent(int i) const { return inverse().has_right_descent(i); }

  bool is_finite() const {
    return std::all_of(window_.begin(), window_.end(), [&](int x) { return x >= 1 && x <= rank(); });
  }

  /// a with w = u * t^a for u in the (non-extended) affine Weyl group.
  int shift_power() const {
    const int n = rank();
    const int excess = std::accumulate(window_.begin(), window_.end(), 0) - n * (n + 1) / 2;
    return -excess / n;
  }

  /// Reduced word (i1, ..., ik) and shift power a with w = s_i1 ... s_ik t^a.
  struct Factorization {
    std::vector<int> word;
    int shift_power = 0;
  };

  Factorization factorize() const {
    Factorization out;
    out.shift_power = shift_power();
    ExtAffPerm u = *this * power(shift(rank()), -out.shift_power);
    // Peel right descents: u = u' s_i with l(u') = l(u) - 1.
    std::vector<int> reversed;
    const int n = rank();
    while (true) {
      int descent = -1;
      for (int i = 0; i < n && n > 1; ++i)
        if (u.has_right_descent(i)) {
          descent = i;
          break;
        }
      if (descent < 0) break;
      reversed.push_back(descent);
      u = u.times_simple(descent);
    }
    if (!(u == identity(n))) throw InvariantViolation("descent peeling did not reach the identity");
    out.word.assign(reversed.rbegin(), reversed.rend());
    return out;
  }

  /// w = translation(mu) * sigma with sigma finite.
  std::pair<std::vector<int>, ExtAffPerm> split() const {
    const int n = rank();
    std::vector<int> sigma(window_.size()), mu(window_.size());
    for (std::size_t i = 0; i < window_.size(); ++i) {
      const int r = residue(window_[i], n);
      sigma[i] = r;
      mu[static_cast<std::size_t>(r - 1)] = (r - window_[i]) / n;
    }
    return {mu, ExtAffPerm(std::move(sigma), Unchecked{})};
  }

  static ExtAffPerm power(const ExtAffPerm& w, int k) {
    ExtAffPerm base = k >= 0 ? w : w.inverse();
    ExtAffPerm out = identity(w.rank());
    for (int i = 0; i < std::abs(k); ++i) out = out * base;
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < window_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(window_[i]);
    }
    return s + "]";
  }

  friend bool operator==(const ExtAffPerm&, const ExtAffPerm&) = default;
  friend auto operator<=>(const ExtAffPerm&, const ExtAffPerm&) = default;

 private:
  struct Unchecked {};
  ExtAffPerm(std::vector<int> window, Unchecked) : window_(std::move(window)) {}

  static int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static int residue(int k, int n) {
    int r = k % n;
    if (r <= 0) r += n;
    return r;
  }

  std::vector<int> window_;
};

}  // namespace swk
