#include <functional>
#include <vector>

#include <gtest/gtest.h>

#include "swk/ring.hpp"
#include "swk/symfun.hpp"

using namespace swk;

namespace {

using P = LaurentPoly<Integer>;

/// Sum of x^content over semistandard tableaux of shape mu with entries
/// 1..n (rows weakly increase, columns strictly increase).
P schur_by_tableaux(const Weight& mu, const Variables& x) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<int>> t;
  for (int part : mu) t.emplace_back(static_cast<std::size_t>(part), 0);
  P out(x);
  std::vector<std::pair<int, int>> cells;
  for (std::size_t r = 0; r < mu.size(); ++r)
    for (int c = 0; c < mu[r]; ++c) cells.emplace_back(static_cast<int>(r), c);
  std::function<void(std::size_t)> fill = [&](std::size_t k) {
    if (k == cells.size()) {
      Exponent e(static_cast<std::size_t>(n), 0);
      for (const auto& row : t)
        for (int v : row) ++e[static_cast<std::size_t>(v - 1)];
      out.add_term(e, Integer(1));
      return;
    }
    const auto [r, c] = cells[k];
    int low = 1;
    if (c > 0) low = std::max(low, t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c - 1)]);
    if (r > 0) low = std::max(low, t[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c)] + 1);
    for (int v = low; v <= n; ++v) {
      t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
      fill(k + 1);
    }
  };
  fill(0);
  return out;
}

std::vector<P> elementaries(const Variables& x) {
  std::vector<P> e;
  for (int j = 1; j <= static_cast<int>(x.size()); ++j) e.push_back(elementary(j, x, Integer(1)));
  return e;
}

}  // namespace

TEST(Weights, DominanceAndConjugation) {
  EXPECT_TRUE(is_dominant({3, 1, 1, -2}));
  EXPECT_FALSE(is_dominant({0, 1}));
  EXPECT_EQ(weight_size({3, 1, -2}), 2);
  EXPECT_EQ(conjugate({3, 1, 0}), (std::vector<int>{2, 1, 1}));
  EXPECT_EQ(pad_partition(conjugate(pad_partition(conjugate({4, 2, 2, 1}), 4)), 4), (Weight{4, 2, 2, 1}));
  EXPECT_THROW(conjugate({1, 2}), InputError);
  EXPECT_THROW(pad_partition({1, 1, 1}, 2), InputError);
}

TEST(Weights, ConjugationIsAnInvolution) {
  for (int size = 0; size <= 8; ++size)
    for (const auto& mu : partitions_of(size, 8)) {
      const auto dual = pad_partition(conjugate(mu), 8);
      EXPECT_EQ(pad_partition(conjugate(dual), 8), mu);
    }
}

TEST(Weights, PartitionCounts) {
  EXPECT_EQ(partitions_of(6, 6).size(), 11u);
  EXPECT_EQ(partitions_of(6, 4).size(), 9u);
  EXPECT_EQ(partitions_of(0, 3), (std::vector<Weight>{{0, 0, 0}}));
}

TEST(Weights, DominantBoxMatchesBruteForce) {
  for (int n = 1; n <= 4; ++n)
    for (int bound = 0; bound <= 3; ++bound) {
      std::size_t count = 0;
      Weight w(static_cast<std::size_t>(n), -bound);
      while (true) {
        if (is_dominant(w)) ++count;
        std::size_t i = 0;
        while (i < w.size() && w[i] == bound) w[i++] = -bound;
        if (i == w.size()) break;
        ++w[i];
      }
      const auto box = dominant_weights_in_box(n, bound);
      EXPECT_EQ(box.size(), count);
      EXPECT_TRUE(std::is_sorted(box.begin(), box.end(), GrlexLess{}));
    }
}

TEST(Elementary, Examples) {
  const Variables x2 = Variables::indexed("X", 2), x3 = Variables::indexed("X", 3);
  EXPECT_EQ(elementary(0, x2, Integer(1)), P::constant(x2, Integer(1)));
  EXPECT_EQ(elementary(1, x2, Integer(1)).to_string(), "X1 + X2");
  EXPECT_EQ(elementary(2, x3, Integer(1)).to_string(), "X1*X2 + X1*X3 + X2*X3");
  EXPECT_THROW(elementary(3, x2, Integer(1)), InputError);
  EXPECT_THROW(elementary(-1, x2, Integer(1)), InputError);
}

TEST(SchurBialternant, Examples) {
  const Variables x = Variables::indexed("X", 2);
  EXPECT_EQ(schur_bialternant({1, 0}, x, Integer(1)).to_string(), "X1 + X2");
  EXPECT_EQ(schur_bialternant({1, 1}, x, Integer(1)).to_string(), "X1*X2");
  const P s20 = schur_bialternant({2, 0}, x, Integer(1));
  EXPECT_EQ(s20.to_string(), "X1^2 + X1*X2 + X2^2");
  EXPECT_EQ(s20, schur_by_tableaux({2, 0}, x));
  EXPECT_THROW(schur_bialternant({0, 1}, x, Integer(1)), InputError);
}

TEST(SchurBialternant, MatchesTableauxOracle) {
  for (int n = 1; n <= 4; ++n) {
    const Variables x = Variables::indexed("X", static_cast<std::size_t>(n));
    for (int size = 0; size <= 5; ++size)
      for (const auto& mu : partitions_of(size, n)) {
        const P s = schur_bialternant(mu, x, Integer(1));
        EXPECT_EQ(s, schur_by_tableaux(mu, x));
        EXPECT_TRUE(is_symmetric(s));
      }
  }
}

TEST(SchurBialternant, NegativeWeightsUseTheDeterminantShift) {
  const Variables x = Variables::indexed("X", 2);
  // S_(0,-1) = S_(1,0) / (X1 X2) = X1^-1 + X2^-1
  EXPECT_EQ(schur_bialternant({0, -1}, x, Integer(1)).to_string(), "X2^-1 + X1^-1");
  const P e2 = elementary(2, x, Integer(1));
  EXPECT_EQ(schur_bialternant({2, 1}, x, Integer(1)), e2 * schur_bialternant({1, 0}, x, Integer(1)));
  EXPECT_EQ(schur_bialternant({-1, -3}, x, Integer(1)) * e2 * e2 * e2, schur_bialternant({2, 0}, x, Integer(1)));
}

TEST(JacobiTrudi, Examples) {
  const Variables e = elementary_symbols(2);
  const P E1 = P::variable(e, 0, Integer(1)), E2 = P::variable(e, 1, Integer(1));
  EXPECT_EQ(schur_jacobi_trudi({1, 0}, 2), E1);
  EXPECT_EQ(schur_jacobi_trudi({1, 1}, 2), E2);
  EXPECT_EQ(schur_jacobi_trudi({2, 0}, 2), E1 * E1 - E2);
  EXPECT_EQ(schur_jacobi_trudi({1}, 3), P::variable(elementary_symbols(3), 0, Integer(1)));
  EXPECT_EQ(schur_jacobi_trudi({0, 0}, 2), P::constant(e, Integer(1)));
  EXPECT_THROW(schur_jacobi_trudi({1, 1, 1}, 2), InputError);
}

TEST(JacobiTrudi, AgreesWithBialternant) {
  for (int n = 1; n <= 4; ++n) {
    const Variables x = Variables::indexed("X", static_cast<std::size_t>(n));
    const auto e = elementaries(x);
    for (int size = 0; size <= 6; ++size)
      for (const auto& mu : partitions_of(size, n))
        EXPECT_EQ(eval_in_elementary(schur_jacobi_trudi(mu, n), e), schur_bialternant(mu, x, Integer(1)));
  }
}

TEST(JacobiTrudi, ShiftByDeterminant) {
  for (int n = 1; n <= 4; ++n) {
    const Variables x = Variables::indexed("X", static_cast<std::size_t>(n));
    const P en = elementary(n, x, Integer(1));
    for (int size = 0; size <= 4; ++size)
      for (const auto& mu : partitions_of(size, n)) {
        Weight up = mu;
        for (auto& part : up) ++part;
        EXPECT_EQ(schur_bialternant(up, x, Integer(1)), en * schur_bialternant(mu, x, Integer(1)));
      }
  }
}

TEST(EvalInElementary, Substitution) {
  const SymbolicRing ring(2);
  const Variables e = elementary_symbols(2);
  const P E1 = P::variable(e, 0, Integer(1)), E2 = P::variable(e, 1, Integer(1));
  const auto embed = [&](const Integer& c) { return ring.from_integer(c); };
  const auto value = eval_in_elementary(E1 * E1 - E2, std::vector<SymElem>{ring.c(1), ring.c(2)}, ring.one(), embed);
  EXPECT_EQ(value, ring.c(1) * ring.c(1) - ring.c(2));

  const Fp three(3, 7), five(5, 7);
  const auto f = eval_in_elementary(E2, std::vector<Fp>{three, five}, Fp(1, 7), [](const Integer& c) {
    return Fp(static_cast<std::uint64_t>(mpz_class(((c % 7) + 7) % 7).get_ui()), 7);
  });
  EXPECT_EQ(f.value(), 5u);

  const Variables x = Variables::indexed("X", 2);
  EXPECT_EQ(eval_in_elementary(schur_jacobi_trudi({2, 1}, 2), elementaries(x)), schur_bialternant({2, 1}, x, Integer(1)));
  EXPECT_THROW(eval_in_elementary(E1, std::vector<SymElem>{ring.c(1)}, ring.one(), embed), DimensionError);
}
