#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "swk/affperm.hpp"
#include "swk/hecke.hpp"
#include "swk/ring.hpp"

using namespace swk;

namespace {

using H = AffineHecke<SymbolicRing>;

/// Inversions (i, j) with 1 <= i <= n, i < j, w(i) > w(j), counted over Z.
int brute_length(const ExtAffPerm& w) {
  const int n = w.rank();
  int count = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= i + 40 * n; ++j)
      if (w(i) > w(j)) ++count;
  return count;
}

ExtAffPerm random_perm(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> gen(-1, n - 1), len(0, 6), dir(0, 1);
  ExtAffPerm w = ExtAffPerm::identity(n);
  const int steps = len(rng);
  for (int s = 0; s < steps; ++s) {
    const int g = gen(rng);
    w = g < 0 ? w * ExtAffPerm::power(ExtAffPerm::shift(n), dir(rng) ? 1 : -1) : w.times_simple(g);
  }
  return w;
}

Weight random_weight(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  Weight mu(static_cast<std::size_t>(n));
  for (auto& x : mu) x = d(rng);
  return mu;
}

Weight unit(int n, int j) {
  Weight e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(j - 1)] = 1;
  return e;
}

}  // namespace

TEST(ExtAffPerm, LengthMatchesInversionCount) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k < 60; ++k) {
      const auto w = random_perm(n, rng);
      EXPECT_EQ(w.length(), brute_length(w)) << w.to_string();
    }
}

TEST(ExtAffPerm, Generators) {
  EXPECT_EQ(ExtAffPerm::simple(3, 1).window(), (std::vector<int>{2, 1, 3}));
  EXPECT_EQ(ExtAffPerm::simple(3, 0).window(), (std::vector<int>{0, 2, 4}));
  EXPECT_EQ(ExtAffPerm::shift(3).window(), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(ExtAffPerm::shift(3).length(), 0);
  EXPECT_EQ(ExtAffPerm::simple(3, 0).length(), 1);
  const auto t = ExtAffPerm::shift(4);
  for (int i = 1; i < 4; ++i) EXPECT_EQ(t * ExtAffPerm::simple(4, i) * t.inverse(), ExtAffPerm::simple(4, i - 1));
  EXPECT_THROW(ExtAffPerm(std::vector<int>{1, 4, 3}), InputError);
  EXPECT_THROW(ExtAffPerm::simple(1, 0), InputError);
}

TEST(ExtAffPerm, FactorizationReconstructs) {
  std::mt19937_64 rng(12);
  for (int n = 2; n <= 4; ++n)
    for (int k = 0; k < 50; ++k) {
      const auto w = random_perm(n, rng);
      const auto f = w.factorize();
      EXPECT_EQ(static_cast<int>(f.word.size()), w.length());
      ExtAffPerm back = ExtAffPerm::identity(n);
      for (int i : f.word) back = back.times_simple(i);
      back = back * ExtAffPerm::power(ExtAffPerm::shift(n), f.shift_power);
      EXPECT_EQ(back, w);
    }
}

TEST(ExtAffPerm, TranslationsAndSplit) {
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k < 30; ++k) {
      const auto mu = random_weight(n, rng), nu = random_weight(n, rng);
      Weight sum(mu.size());
      for (std::size_t i = 0; i < mu.size(); ++i) sum[i] = mu[i] + nu[i];
      EXPECT_EQ(ExtAffPerm::translation(mu) * ExtAffPerm::translation(nu), ExtAffPerm::translation(sum));
      const auto w = random_perm(std::max(n, 2), rng);
      const auto [lambda, sigma] = w.split();
      EXPECT_TRUE(sigma.is_finite());
      EXPECT_EQ(ExtAffPerm::translation(lambda) * sigma, w);
    }
  // dominant translations have length <mu, 2 rho>-type sums of differences
  EXPECT_EQ(ExtAffPerm::translation({1, 0}).length(), 1);
  EXPECT_EQ(ExtAffPerm::translation({2, 0, -1}).length(), 2 + 3 + 1);
}

TEST(HeckeIM, QuadraticAndBraidRelations) {
  for (int n = 2; n <= 4; ++n) {
    const H h(SymbolicRing(n), n);
    const auto one = h.im_one();
    for (int i = 0; i < n; ++i) {
      const auto s = h.im_simple(i);
      EXPECT_TRUE(h.im_mul(s - one.scaled(h.ring().q()), s + one).is_zero());
    }
    if (n >= 3)
      for (int i = 0; i < n; ++i) {
        const auto a = h.im_simple(i), b = h.im_simple((i + 1) % n);
        EXPECT_EQ(h.im_mul(h.im_mul(a, b), a), h.im_mul(h.im_mul(b, a), b));
      }
  }
}

TEST(HeckeIM, InverseBasisElements) {
  std::mt19937_64 rng(14);
  const H h(SymbolicRing(3), 3);
  for (int k = 0; k < 30; ++k) {
    const auto w = random_perm(3, rng);
    EXPECT_EQ(h.im_mul(h.im_basis(w), h.im_inverse_basis(w)), h.im_one());
  }
  // T_s^-1 = q^-1 T_s + (q^-1 - 1)
  const auto& ring = h.ring();
  const auto expected = h.im_simple(1).scaled(ring.q_pow(-1)) + h.im_one().scaled(ring.q_pow(-1) - ring.one());
  EXPECT_EQ(h.im_inverse_basis(ExtAffPerm::simple(3, 1)), expected);
}

TEST(HeckeIM, LengthAdditiveProducts) {
  std::mt19937_64 rng(15);
  const H h(SymbolicRing(3), 3);
  for (int k = 0; k < 40; ++k) {
    const auto u = random_perm(3, rng), w = random_perm(3, rng);
    if ((u * w).length() == u.length() + w.length()) {
      EXPECT_EQ(h.im_mul(h.im_basis(u), h.im_basis(w)), h.im_basis(u * w));
    }
  }
}

TEST(Bernstein, SimpleTimesLatticeExamples) {
  const H h(SymbolicRing(2), 2);
  const auto& ring = h.ring();
  const auto S1 = h.bern_simple(1);
  const auto X1 = h.bern_x({1, 0}), X2 = h.bern_x({0, 1});
  // S1 X1 = X2 S1 + (q - 1) X1
  EXPECT_EQ(h.bern_mul(S1, X1), h.bern_mul(X2, S1) + X1.scaled(ring.q() - ring.one()));
  // S1 X2 = X1 S1 - (q - 1) X1
  EXPECT_EQ(h.bern_mul(S1, X2), h.bern_mul(X1, S1) - X1.scaled(ring.q() - ring.one()));
}

TEST(Bernstein, DefiningRelations) {
  for (int n = 2; n <= 4; ++n) {
    const H h(SymbolicRing(n), n);
    const auto& ring = h.ring();
    const auto qm1 = ring.q() - ring.one();
    for (int i = 1; i < n; ++i) {
      const auto S = h.bern_simple(i);
      const auto Xi = h.bern_x(unit(n, i)), Xi1 = h.bern_x(unit(n, i + 1));
      EXPECT_EQ(h.bern_mul(h.bern_mul(S, Xi1), S), Xi.scaled(ring.q()));
      EXPECT_EQ(h.bern_mul(Xi, S), h.bern_mul(S, Xi1) + Xi.scaled(qm1));
      EXPECT_EQ(h.bern_mul(Xi1, S), h.bern_mul(S, Xi) - Xi.scaled(qm1));
      for (int j = 1; j <= n; ++j)
        if (j != i && j != i + 1) {
          EXPECT_EQ(h.bern_mul(h.bern_x(unit(n, j)), S), h.bern_mul(S, h.bern_x(unit(n, j))));
        }
      // the same relations after transport to the IM basis
      const auto iS = h.bern_to_im(S), iXi = h.bern_to_im(Xi), iXi1 = h.bern_to_im(Xi1);
      EXPECT_EQ(h.im_mul(h.im_mul(iS, iXi1), iS), iXi.scaled(ring.q()));
      EXPECT_EQ(h.im_mul(iXi, iS), h.im_mul(iS, iXi1) + iXi.scaled(qm1));
      EXPECT_EQ(h.im_mul(iXi1, iS), h.im_mul(iS, iXi) - iXi.scaled(qm1));
    }
  }
}

TEST(Bernstein, SimpleInverse) {
  const H h(SymbolicRing(3), 3);
  for (int i = 1; i < 3; ++i) EXPECT_EQ(h.bern_mul(h.bern_simple(i), h.bern_simple_inverse(i)), h.bern_one());
  EXPECT_THROW(h.bern_simple(0), InputError);
  EXPECT_THROW(h.bern_simple(3), InputError);
}

TEST(Bernstein, NonFiniteTermIsRejected) {
  const H h(SymbolicRing(2), 2);
  auto b = h.bern_zero();
  EXPECT_THROW(b.add_term(ExtAffPerm::shift(2), LaurentPoly<SymElem>::constant(h.variables(), h.ring().one())),
               InputError);
}

TEST(Bernstein, DividedDifferenceIsExact) {
  const H h(SymbolicRing(3), 3);
  using P = LaurentPoly<SymElem>;
  const auto& x = h.variables();
  const auto one = h.ring().one();
  const P x1 = P::variable(x, 0, one), x2 = P::variable(x, 1, one), x3 = P::variable(x, 2, one);
  // (X1 - X2) X1 / (X1 - X2) = X1
  EXPECT_EQ(h.divided_difference(x1, 1), x1);
  EXPECT_TRUE(h.divided_difference(x1 + x2, 1).is_zero());
  EXPECT_TRUE(h.divided_difference(x3 * x3, 1).is_zero());
  // (X1^2 - X2^2) X1 / (X1 - X2) = X1^2 + X1 X2
  EXPECT_EQ(h.divided_difference(x1 * x1, 1), x1 * x1 + x1 * x2);
  const P x2inv = P::monomial(x, {0, -1, 0}, one);
  // (X2^-1 - X3^-1) X2 / (X2 - X3) = -X3^-1
  EXPECT_EQ(h.divided_difference(x2inv, 2), P::monomial(x, {0, 0, -1}, one).scaled(h.ring().from_int(-1)));
}

TEST(ChangeOfBasis, RoundTripAndProducts) {
  std::mt19937_64 rng(16);
  for (int n = 2; n <= 3; ++n) {
    const H h(SymbolicRing(n), n);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int k = 0; k < 25; ++k) {
      HeckeIM<SymElem> a(n), b(n);
      for (int t = 0; t < 2; ++t) {
        a.add_term(random_perm(n, rng), h.ring().from_int(coeff(rng)));
        b.add_term(random_perm(n, rng), h.ring().from_int(coeff(rng)));
      }
      const auto ba = h.im_to_bern(a), bb = h.im_to_bern(b);
      EXPECT_EQ(h.bern_to_im(ba), a);
      EXPECT_EQ(h.bern_mul(ba, bb), h.im_to_bern(h.im_mul(a, b)));
    }
  }
}

TEST(ChangeOfBasis, LatticeMonomialsAreMultiplicative) {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 3; ++n) {
    const H h(SymbolicRing(n), n);
    for (int k = 0; k < 20; ++k) {
      const auto mu = random_weight(n, rng), nu = random_weight(n, rng);
      Weight sum(mu.size());
      for (std::size_t i = 0; i < mu.size(); ++i) sum[i] = mu[i] + nu[i];
      EXPECT_EQ(h.im_mul(h.x_monomial(mu), h.x_monomial(nu)), h.x_monomial(sum));
      EXPECT_EQ(h.bern_to_im(h.bern_x(mu)), h.x_monomial(mu));
    }
  }
}

TEST(ChangeOfBasis, DominantWeightsAreScaledTranslations) {
  const H h(SymbolicRing(3), 3);
  const Weight mu{2, 1, 0};
  const auto t = ExtAffPerm::translation(mu);
  EXPECT_EQ(h.x_monomial(mu), h.im_basis(t, h.ring().v_pow(-t.length())));
  const auto [upper, lower] = H::dominant_split({0, 2, -1});
  EXPECT_EQ(upper, (Weight{2, 2, -1}));
  EXPECT_EQ(lower, (Weight{2, 0, 0}));
}

TEST(RankOne, LatticeGeneratorIsTheShift) {
  const H h(SymbolicRing(1), 1);
  EXPECT_EQ(h.x_monomial({1}), h.im_basis(ExtAffPerm::translation({1})));
  EXPECT_EQ(ExtAffPerm::translation({1}), ExtAffPerm::shift(1));
  EXPECT_EQ(h.im_to_bern(h.im_shift(1)), h.bern_x({1}));
  EXPECT_EQ(h.im_to_bern(h.im_shift(-2)), h.bern_x({-2}));
}

TEST(Center, SymmetricPolynomialsAreCentral) {
  for (int n = 2; n <= 3; ++n) {
    const H h(SymbolicRing(n), n);
    for (int j = 1; j <= n; ++j) EXPECT_TRUE(h.is_central(h.bern_poly(h.satake_spherical(j))));
    EXPECT_FALSE(h.is_central(h.bern_x(unit(n, 1))));
    EXPECT_FALSE(h.is_central(h.bern_simple(1)));
    EXPECT_TRUE(h.is_central(h.bern_one()));
  }
  const H h(SymbolicRing(2), 2);
  const auto& ring = h.ring();
  EXPECT_EQ(h.satake_spherical(2), LaurentPoly<SymElem>::monomial(h.variables(), {1, 1}, ring.q_pow(-1)));
  EXPECT_THROW(h.satake_spherical(3), InputError);
}

TEST(TrivialCharacter, Values) {
  const H h(SymbolicRing(3), 3);
  const auto& ring = h.ring();
  EXPECT_EQ(h.trivial_char(h.bern_one()), ring.one());
  EXPECT_EQ(h.trivial_char(h.bern_simple(1)), ring.q());
  EXPECT_EQ(h.trivial_char(h.bern_mul(h.bern_simple(1), h.bern_simple(2))), ring.q_pow(2));
  const auto S = h.bern_simple(2);
  EXPECT_EQ(h.trivial_char(h.bern_mul(S, S)), ring.q() * ring.q());
  EXPECT_THROW(h.trivial_char(h.bern_x(unit(3, 1))), InputError);
}

TEST(Levi, EmbeddingOfTorusFactors) {
  const SymbolicRing ring(2);
  const H h(ring, 2), h1(ring, 1);
  EXPECT_EQ(h.levi_embed_factor({1, 1}, 1, h1.bern_x({1})), h.bern_x({0, 1}));
  EXPECT_EQ(h.levi_embed({1, 1}, {h1.bern_x({2}), h1.bern_x({-1})}), h.bern_x({2, -1}));
  EXPECT_THROW(h.levi_embed({1, 1}, {h1.bern_one()}), DimensionError);
  EXPECT_THROW(h.levi_embed_factor({1, 2}, 0, h1.bern_one()), DimensionError);
}

TEST(Levi, EmbeddingIsMultiplicative) {
  const SymbolicRing ring(3);
  const H h(ring, 3), h2(ring, 2), h1(ring, 1);
  const std::vector<int> blocks{2, 1};
  const auto embed = [&](const H::B& a) { return h.levi_embed_factor(blocks, 0, a); };
  const std::vector<H::B> gens{h2.bern_simple(1), h2.bern_x({1, 0}), h2.bern_x({0, -1}),
                               h2.bern_simple(1) + h2.bern_x({2, 1})};
  for (const auto& a : gens)
    for (const auto& b : gens) EXPECT_EQ(embed(h2.bern_mul(a, b)), h.bern_mul(embed(a), embed(b)));
  EXPECT_EQ(embed(h2.bern_simple(1)), h.bern_simple(1));
  // the two blocks commute inside the big algebra
  const auto left = embed(h2.bern_simple(1)), right = h.levi_embed_factor(blocks, 1, h1.bern_x({1}));
  EXPECT_EQ(h.bern_mul(left, right), h.bern_mul(right, left));
  EXPECT_EQ(h.levi_embed(blocks, {h2.bern_simple(1), h1.bern_x({1})}), h.bern_mul(left, right));
}

TEST(Levi, CenterOfTheBlockFactorizes) {
  // e_1 of GL2 x GL1 embedded on the first block plus e_1 of the second block is e_1 of GL3.
  const SymbolicRing ring(3);
  const H h(ring, 3), h2(ring, 2), h1(ring, 1);
  const std::vector<int> blocks{2, 1};
  const auto sum = h.levi_embed_factor(blocks, 0, h2.bern_poly(h2.satake_spherical(1))) +
                   h.levi_embed_factor(blocks, 1, h1.bern_poly(h1.satake_spherical(1)));
  EXPECT_EQ(sum, h.bern_poly(h.satake_spherical(1)));
}

TEST(Capability, NoSquareRootLimitsTheBernsteinSide) {
  RingDescriptor d;
  d.kind = RingDescriptor::Kind::prime_field;
  d.n = 2;
  d.ell = 5;
  d.q = 2;  // not a square mod 5
  d.c = {Integer(1), Integer(1)};
  const PrimeField f(d);
  const AffineHecke<PrimeField> h(f, 2);
  const auto s = h.im_simple(1);
  EXPECT_TRUE(h.im_mul(s - h.im_one().scaled(f.q()), s + h.im_one()).is_zero());
  EXPECT_THROW(h.im_to_bern(h.im_shift(1)), CapabilityError);
  EXPECT_THROW(h.x_monomial({1, 0}), CapabilityError);
  // n = 3: every relevant power of v is even, so everything works
  d.n = 3;
  d.c = {Integer(1), Integer(1), Integer(1)};
  const AffineHecke<PrimeField> h3(PrimeField(d), 3);
  EXPECT_EQ(h3.bern_to_im(h3.im_to_bern(h3.im_shift(1))), h3.im_shift(1));
}

TEST(Specialization, ProductsCommuteWithReduction) {
  RingDescriptor d;
  d.kind = RingDescriptor::Kind::prime_field;
  d.n = 2;
  d.ell = 13;
  d.q = 3;
  d.sqrt_q = Integer(4);
  d.c = {Integer(2), Integer(5)};
  const PrimeField f(d);
  const SymbolicRing sym(2);
  const H hs(sym, 2);
  const AffineHecke<PrimeField> hf(f, 2);
  std::mt19937_64 rng(18);
  for (int k = 0; k < 20; ++k) {
    const auto u = random_perm(2, rng), w = random_perm(2, rng);
    const auto prod = hs.im_mul(hs.im_basis(u, sym.c(1)), hs.im_basis(w, sym.v_pow(-1)));
    HeckeIM<Fp> reduced(2);
    for (const auto& [x, c] : prod.terms()) reduced.add_term(x, specialize(c, f));
    EXPECT_EQ(reduced, hf.im_mul(hf.im_basis(u, f.c(1)), hf.im_basis(w, f.v_pow(-1))));
  }
}
