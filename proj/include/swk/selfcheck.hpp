#pragma once

/// Built-in consistency suite run by `swk selfcheck`. Each check compares two
/// independent computations (or an identity) exactly.

#include <chrono>
#include <cstddef>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "swk/affperm.hpp"
#include "swk/errors.hpp"
#include "swk/hecke.hpp"
#include "swk/ring.hpp"
#include "swk/symfun.hpp"
#include "swk/unramified.hpp"
#include "swk/whittaker.hpp"

namespace swk {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace selfcheck {

inline PrimeField prime_field(int n, unsigned long ell, long q, std::vector<long> c, std::optional<long> sqrt_q = {}) {
  RingDescriptor d;
  d.kind = RingDescriptor::Kind::prime_field;
  d.n = n;
  d.ell = ell;
  d.q = q;
  if (sqrt_q) d.sqrt_q = Integer(*sqrt_q);
  for (long x : c) d.c.push_back(Integer(x));
  return PrimeField(d);
}

inline std::string whittaker_dual() {
  for (int n = 1; n <= 4; ++n) {
    const auto ch = HeckeChar<SymbolicRing>::generic(SymbolicRing(n));
    if (!(whittaker_table(ch, 3) == recursion_solve(ch, 3))) return "closed form and recursion differ at n=" + std::to_string(n);
  }
  return "";
}

inline std::string whittaker_eigen() {
  for (int n = 1; n <= 4; ++n) {
    const auto ch = HeckeChar<SymbolicRing>::generic(SymbolicRing(n));
    const auto table = whittaker_table(ch, 3);
    for (int j = 1; j <= n; ++j)
      if (!(hecke_apply(j, table) == table.restricted(2).scaled(ch.value(j))))
        return "T^(" + std::to_string(j) + ") eigen-equation fails at n=" + std::to_string(n);
  }
  return "";
}

inline std::string schur_consistency() {
  for (int n = 1; n <= 4; ++n) {
    const Variables x = Variables::indexed("x", static_cast<std::size_t>(n));
    std::vector<LaurentPoly<Integer>> e;
    for (int j = 1; j <= n; ++j) e.push_back(elementary(j, x, Integer(1)));
    for (int size = 0; size <= 6; ++size)
      for (const auto& mu : partitions_of(size, n)) {
        const auto bialt = schur_bialternant(mu, x, Integer(1));
        if (!(bialt == eval_in_elementary(schur_jacobi_trudi(mu, n), e)))
          return "bialternant and Jacobi-Trudi differ at n=" + std::to_string(n);
        Weight up = mu;
        for (auto& part : up) ++part;
        if (!(schur_bialternant(up, x, Integer(1)) == e.back() * bialt)) return "S_(mu+1) != e_n S_mu at n=" + std::to_string(n);
      }
  }
  return "";
}

template <CoeffRing R>
HeckeIM<typename R::Elem> random_im(const AffineHecke<R>& h, std::mt19937_64& rng) {
  const int n = h.n();
  std::uniform_int_distribution<int> gen(-1, n - 1), len(0, 3), coeff(-3, 3), terms(1, 3);
  HeckeIM<typename R::Elem> out(n);
  const int count = terms(rng);
  for (int k = 0; k < count; ++k) {
    ExtAffPerm w = ExtAffPerm::identity(n);
    const int steps = len(rng);
    for (int s = 0; s < steps; ++s) {
      const int g = gen(rng);
      w = g < 0 ? w * ExtAffPerm::power(ExtAffPerm::shift(n), coeff(rng) > 0 ? 1 : -1) : w.times_simple(g);
    }
    out.add_term(w, h.ring().from_int(coeff(rng)));
  }
  return out;
}

inline std::string hecke_suite() {
  std::mt19937_64 rng(20240601);
  for (int n = 2; n <= 3; ++n) {
    const SymbolicRing ring(n);
    const AffineHecke<SymbolicRing> h(ring, n);
    const auto one = h.im_one();
    const auto q = ring.q();
    const std::string at = " (n=" + std::to_string(n) + ")";
    for (int i = 0; i < n; ++i) {
      const auto s = h.im_simple(i);
      if (!h.im_mul(s - one.scaled(q), s + one).is_zero()) return "quadratic relation fails for s_" + std::to_string(i) + at;
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const auto t = h.im_simple(j);
        const bool adjacent = (i - j + n) % n == 1 || (j - i + n) % n == 1;
        if (n == 2) continue;  // s_0 s_1 has infinite order
        const bool ok = adjacent ? h.im_mul(h.im_mul(s, t), s) == h.im_mul(h.im_mul(t, s), t) : h.im_mul(s, t) == h.im_mul(t, s);
        if (!ok) return "braid relation fails" + at;
      }
    }
    const auto shift = h.im_shift(1);
    for (int i = 1; i < n; ++i)
      if (!(h.im_mul(shift, h.im_simple(i)) == h.im_mul(h.im_simple(i - 1), shift))) return "T S_i != S_(i-1) T" + at;
    const auto shift2 = h.im_mul(shift, shift);
    if (!(h.im_mul(shift2, h.im_simple(1)) == h.im_mul(h.im_simple(n - 1), shift2))) return "T^2 S_1 != S_(n-1) T^2" + at;
    for (int k = 0; k < 100; ++k) {
      const auto a = random_im(h, rng), b = random_im(h, rng), c = random_im(h, rng);
      if (!(h.im_mul(h.im_mul(a, b), c) == h.im_mul(a, h.im_mul(b, c)))) return "associativity fails" + at;
    }
    for (int k = 0; k < 50; ++k) {
      const auto a = random_im(h, rng), b = random_im(h, rng);
      const auto ba = h.im_to_bern(a);
      if (!(h.bern_to_im(ba) == a)) return "IM -> Bernstein -> IM round trip fails" + at;
      if (!(h.bern_mul(ba, h.im_to_bern(b)) == h.im_to_bern(h.im_mul(a, b)))) return "Bernstein product disagrees with IM product" + at;
    }
    for (int j = 1; j <= n; ++j) {
      Weight e(static_cast<std::size_t>(n), 0), top(static_cast<std::size_t>(n), 0), bottom(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(j - 1)] = 1;
      for (int i = 0; i < j; ++i) top[static_cast<std::size_t>(i)] = 1;
      for (int i = 0; i + 1 < j; ++i) bottom[static_cast<std::size_t>(i)] = 1;
      const auto tb = h.im_basis(ExtAffPerm::translation(bottom));
      const auto tb_inv = h.im_inverse_basis(ExtAffPerm::translation(bottom));
      if (!(h.im_mul(tb, tb_inv) == one) || !(h.im_mul(tb_inv, tb) == one)) return "T_w^-1 is not an inverse" + at;
      const auto xj = h.im_mul(h.im_basis(ExtAffPerm::translation(top), ring.v_pow(2 * j - n - 1)), tb_inv);
      if (!(h.x_monomial(e) == xj)) return "x_monomial(e_j) != X_j for j=" + std::to_string(j) + at;
    }
  }
  return "";
}

inline std::string centrality() {
  for (int n = 1; n <= 3; ++n) {
    const AffineHecke<SymbolicRing> h(SymbolicRing(n), n);
    for (int j = 1; j <= n; ++j)
      if (!h.is_central(h.bern_poly(elementary(j, h.variables(), h.ring().one()))))
        return "e_" + std::to_string(j) + " not central at n=" + std::to_string(n);
    Weight first(static_cast<std::size_t>(n), 0);
    first[0] = 1;
    if (n >= 2 && h.is_central(h.bern_x(first))) return "X_1 reported central at n=" + std::to_string(n);
  }
  return "";
}

template <CoeffRing R>
std::string module_dimension(const R& ring) {
  const auto module = build_module(HeckeChar<R>::generic(ring));
  if (module.dim() != factorial(ring.n())) return "dimension " + std::to_string(module.dim()) + " at n=" + std::to_string(ring.n());
  return "";
}

inline std::string universal_module() {
  for (int n = 2; n <= 3; ++n)
    if (auto msg = module_dimension(SymbolicRing(n)); !msg.empty()) return msg;
  return module_dimension(prime_field(4, 5, 11, {1, 2, 3, 4}));
}

/// Common eigenvectors of commuting matrices over a prime field: the joint
/// kernel of X_j - r_j for a choice of roots r_j of the splitting polynomial.
inline std::vector<Fp> common_eigenvector(const UnramifiedModule<PrimeField>& m) {
  const PrimeField& field = m.ring();
  const std::size_t d = m.dim();
  const std::size_t n = static_cast<std::size_t>(m.n());
  std::vector<Fp> roots;
  for (std::uint64_t r = 0; r < field.ell(); ++r) {
    Fp x = field.from_int(static_cast<long>(r)), acc = field.zero();
    for (int k = 0; k <= m.n(); ++k) {
      const Fp c = k == 0 ? field.one() : m.character().satake_value(k);
      acc = acc * x + (k % 2 == 0 ? c : -c);
    }
    if (acc.value() == 0) roots.push_back(x);
  }
  if (roots.size() < n) return {};
  // Stack X_j - r_j vertically and take the kernel by Gauss-Jordan.
  std::vector<std::vector<Fp>> rows;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Fp> row = std::vector<Fp>(d, field.zero());
      for (std::size_t k = 0; k < d; ++k) row[k] = m.xmat()[j](i, k) - (i == k ? roots[j] : field.zero());
      rows.push_back(row);
    }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < d && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col].value() == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Fp inv = *rows[r][col].inverse();
    for (auto& x : rows[r]) x = x * inv;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][col].value() != 0) {
        const Fp f = rows[i][col];
        for (std::size_t k = 0; k < d; ++k) rows[i][k] = rows[i][k] - f * rows[r][k];
      }
    pivots.push_back(col);
    ++r;
  }
  std::size_t free_col = d;
  for (std::size_t col = 0; col < d; ++col)
    if (std::find(pivots.begin(), pivots.end(), col) == pivots.end()) {
      free_col = col;
      break;
    }
  if (free_col == d) return {};
  std::vector<Fp> v(d, field.zero());
  v[free_col] = field.one();
  for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free_col];
  return v;
}

inline std::string ihara() {
  for (int n = 2; n <= 3; ++n) {
    const auto m = build_module(HeckeChar<SymbolicRing>::generic(SymbolicRing(n)));
    if (a_span_dim(m, m.unit_vector()) != factorial(n)) return "unit vector does not generate at n=" + std::to_string(n);
    if (a_span_dim(m, std::vector<SymElem>(m.dim(), m.ring().zero())) != 0) return "zero vector spans a nonzero space";
  }
  // X^2 - 3X + 2 = (X - 1)(X - 2) over F_5, q = 11 -> 1.
  const auto m2 = build_module(HeckeChar<PrimeField>::generic(prime_field(2, 5, 11, {3, 2})));
  const auto v2 = common_eigenvector(m2);
  if (v2.empty() || a_span_dim(m2, v2) != 1) return "eigenvector span is not 1 at n=2";
  // (X - 1)(X - 2)(X - 3) = X^3 - 6X^2 + 11X - 6 over F_7, q = 8 -> 1.
  const auto m3 = build_module(HeckeChar<PrimeField>::generic(prime_field(3, 7, 8, {6, 11, 6})));
  const auto v3 = common_eigenvector(m3);
  if (v3.empty() || a_span_dim(m3, v3) != 1) return "eigenvector span is not 1 at n=3";
  if (a_span_dim(m3, m3.unit_vector()) != 6) return "unit vector does not generate over F_7";
  return "";
}

inline std::string rank_one() {
  const SymbolicRing ring(1);
  const auto ch = HeckeChar<SymbolicRing>::generic(ring);
  const auto table = whittaker_table(ch, 6);
  const auto lambda = ch.value(1);
  const auto lambda_inv = *ring.inverse(lambda);
  const auto polynomial = table.polynomial_part();
  for (int m = -6; m <= 6; ++m) {
    auto expected = ring.one();
    for (int k = 0; k < std::abs(m); ++k) expected = expected * (m > 0 ? lambda : lambda_inv);
    if (!(table.at({m}) == expected)) return "W(" + std::to_string(m) + ") != lambda^m";
    if (!(polynomial.at({m}) == (m >= 0 ? expected : ring.zero()))) return "polynomial part wrong at m=" + std::to_string(m);
  }
  const auto field = prime_field(1, 5, 11, {2});
  const auto small = whittaker_table(HeckeChar<PrimeField>(field, {field.from_int(2)}), 3);
  const long expected[] = {1, 2, 4, 3};
  for (int m = 0; m <= 3; ++m)
    if (small.at({m}).value() != static_cast<std::uint64_t>(expected[m])) return "F_5 table differs from 2^m";
  return "";
}

inline std::string banality() {
  if (banal_class(2, 3, 7) != BanalClass::banal) return "(2,3,7) not banal";
  if (banal_class(2, 7, 3) != BanalClass::quasi_banal_limit) return "(2,7,3) not quasi-banal-limit";
  if (banal_class(3, 7, 3) != BanalClass::neither) return "(3,7,3) not neither";
  return "";
}

}  // namespace selfcheck

/// Runs checks 1-9 in order.
inline std::vector<CheckResult> run_selfcheck() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> checks = {
      {"whittaker closed form = recursion (n<=4, |mu_i|<=3)", selfcheck::whittaker_dual},
      {"T^(j) eigen-equation (n<=4)", selfcheck::whittaker_eigen},
      {"Schur bialternant = Jacobi-Trudi (|mu|<=6, n<=4)", selfcheck::schur_consistency},
      {"affine Hecke relations and change of basis (n=2,3)", selfcheck::hecke_suite},
      {"center: e_j central, X_1 not", selfcheck::centrality},
      {"unramified module dimension n! and relations", selfcheck::universal_module},
      {"Ihara span dimensions", selfcheck::ihara},
      {"rank one: W(m) = lambda_1^m", selfcheck::rank_one},
      {"banality classifier", selfcheck::banality},
  };
  std::vector<CheckResult> out;
  int id = 1;
  for (const auto& [name, fn] : checks) {
    CheckResult r;
    r.id = id++;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.detail = fn();
      r.pass = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace swk
