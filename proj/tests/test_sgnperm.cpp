#include <k3sym/sgnperm.hpp>

#include <gtest/gtest.h>

#include <chrono>

using namespace k3sym;

namespace {

const auto& F() { return standard_basis().f; }

QMatrix to_q(const Isometry& g) {
  QMatrix m(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = make_rational(g.quarter(i, j), 4);
  return m;
}

}  // namespace

TEST(SignedPerm, GroupOrder) {
  long count = 0;
  for_each_H([&](const SignedPerm&) { ++count; });
  EXPECT_EQ(count, 128L * 40320L);
  int two = 0;
  for (long c = count; c % 2 == 0; c /= 2) ++two;
  EXPECT_EQ(two, 14);
}

TEST(SignedPerm, RejectsOddSignProduct) {
  EXPECT_THROW(SignedPerm::diag({-1, 1, 1, 1, 1, 1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(SignedPerm::make({1, 1, 1, 1, 1, 1, 1, 1}, {0, 0, 2, 3, 4, 5, 6, 7}), std::invalid_argument);
}

TEST(SignedPerm, MultiplicationMatchesMatrices) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    SignedPerm a = random_H(rng), b = random_H(rng);
    EXPECT_EQ((a * b).isometry(), a.isometry() * b.isometry());
    EXPECT_EQ(a * a.inverse(), SignedPerm::identity());
    LatticeVec x = e8_roots()[rng() % 240];
    EXPECT_EQ(a(x), a.isometry()(x));
  }
}

TEST(SignedPerm, SemidirectRelation) {
  std::mt19937_64 rng(6);
  for (int it = 0; it < 100; ++it) {
    SignedPerm v = random_H(rng);
    SignedPerm eps = SignedPerm::diag({v.eps[0], v.eps[1], v.eps[2], v.eps[3], v.eps[4], v.eps[5], v.eps[6], v.eps[7]});
    SignedPerm sigma;
    sigma.perm = v.perm;
    EXPECT_EQ(eps * sigma, v);
    std::array<int, 8> shifted;
    for (int i = 0; i < 8; ++i) shifted[i] = v.eps[v.perm[i]];
    EXPECT_EQ(sigma * SignedPerm::diag(shifted), v);
    // v^2 = (eps_i)(eps_{sigma^-1(i)}) sigma^2
    std::array<int, 8> sq;
    std::array<int, 8> sinv;
    for (int i = 0; i < 8; ++i) sinv[v.perm[i]] = i;
    for (int i = 0; i < 8; ++i) sq[i] = v.eps[i] * v.eps[sinv[i]];
    SignedPerm s2 = sigma * sigma;
    EXPECT_EQ(v * v, SignedPerm::diag(sq) * s2);
  }
}

TEST(SignedPerm, CharpolyMatchesMatrix) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 60; ++it) {
    SignedPerm v = random_H(rng);
    auto otc = order_trace_charpoly(v);
    EXPECT_EQ(to_qpoly(otc.charpoly), charpoly(to_q(v.isometry())));
    EXPECT_EQ(otc.order, v.isometry().order());
    EXPECT_EQ(otc.trace, v.isometry().trace());
  }
  auto c = order_trace_charpoly(SignedPerm::from_cycles("(12345)"));
  EXPECT_EQ(c.order, 5);
  EXPECT_EQ(c.trace, 3);
  EXPECT_EQ(c.charpoly.str(), "x^8 - 3*x^7 + 3*x^6 - x^5 - x^3 + 3*x^2 - 3*x + 1");
}

TEST(Involution, WitnessesForSmallClasses) {
  const auto& f = F();
  struct Case {
    std::vector<LatticeVec> word;
    const char* label;
    LatticeVec witness;
  };
  std::vector<Case> cases{{{f[0]}, "1A'", f[1]},
                          {{f[0], f[2]}, "2A", f[3]},
                          {{f[0], f[2], f[4]}, "3A", f[5]},
                          {{f[0], f[2], f[4], f[6]}, "4A", f[7]}};
  for (const auto& c : cases) {
    auto k = involution_class(Isometry::word(c.word));
    EXPECT_EQ(k.label, c.label);
    ASSERT_TRUE(k.witness.has_value());
    EXPECT_EQ(*k.witness, c.witness);
    EXPECT_EQ(k.witness_pairing % 2 != 0, true);
  }
  auto last = involution_class(Isometry::word({f[0], f[2], f[4], f[6]}));
  EXPECT_EQ(last.witness_pairing, 1);
  Isometry prime = Isometry::word({f[0], f[2], f[4], standard_basis().f7p});
  EXPECT_EQ(prime, SignedPerm::from_cycles("(12)(34)(56)(78)").isometry());
  auto k = involution_class(prime);
  EXPECT_EQ(k.label, "4A'");
  EXPECT_FALSE(k.witness.has_value());
  EXPECT_EQ(involution_class(SignedPerm::diag({-1, -1, -1, -1, 1, 1, 1, 1})).label, "4A'");
  // -v normalisation
  auto n = involution_class(-Isometry::reflection(f[0]));
  EXPECT_TRUE(n.negated);
  EXPECT_EQ(n.label, "1A'");
  EXPECT_THROW(involution_class(Isometry::identity()), std::invalid_argument);
  EXPECT_THROW(involution_class(SignedPerm::from_cycles("(123)")), std::invalid_argument);
}

TEST(Involution, CriterionAgreesWithRootParity) {
  auto invs = involutions_of_H();
  size_t prime = 0;
  for (const auto& v : invs) {
    if (v == -SignedPerm::identity()) continue;
    bool by_roots = involution_class(v).label == "4A'";
    EXPECT_EQ(by_roots, is_4Aprime_by_criterion(v)) << v.str();
    prime += by_roots;
  }
  // C(8,4) diagonal ones plus 105 fixed-point-free involutions times 8 sign patterns
  EXPECT_EQ(prime, 70u + 105u * 8u);
  EXPECT_EQ(four_a_prime_elements().size(), prime);
}

TEST(Involution, ConjugationInvariance) {
  std::mt19937_64 rng(9);
  auto invs = involutions_of_H();
  for (int it = 0; it < 100; ++it) {
    const auto& v = invs[rng() % invs.size()];
    if (v == -SignedPerm::identity()) continue;
    SignedPerm h = random_H(rng);
    EXPECT_EQ(involution_class(v).label, involution_class(conjugate(h, v)).label);
  }
}

TEST(Order4, NormalForms) {
  auto c = classify_order4(SignedPerm::from_cycles("(12)(34)", {1, -1, 1, -1, -1, -1, -1, -1}));
  EXPECT_EQ(c.which, 'i');
  EXPECT_EQ(c.transpositions, 2);
  EXPECT_EQ(c.trace, -4);
  EXPECT_THROW(classify_order4(SignedPerm::from_cycles("(12)")), std::invalid_argument);
}

TEST(Order4, ExhaustiveOverH) {
  std::unordered_set<SignedPerm, SignedPermHash> prime(four_a_prime_elements().begin(), four_a_prime_elements().end());
  std::map<std::pair<char, int>, std::set<long>> seen;
  size_t n = 0;
  for_each_H([&](const SignedPerm& v) {
    SignedPerm v2 = v * v;
    if (!prime.count(v2)) return;
    ++n;
    auto c = classify_order4(v);
    seen[{c.which, c.transpositions}].insert(c.trace);
  });
  EXPECT_GT(n, 0u);
  ASSERT_EQ(seen.size(), 4u);
  EXPECT_EQ(seen[std::make_pair('j', 0)], (std::set<long>{0}));
  for (int m : {2, 3, 4})
    for (long t : seen[{'i', m}]) {
      EXPECT_EQ(t % 2, 0);
      EXPECT_LE(std::abs(t), 4);
    }
  EXPECT_TRUE(seen[std::make_pair('i', 2)].count(-4));
}

TEST(Searches, ElementaryAbelianRankFour) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = search_z2_4_obstruction();
  EXPECT_FALSE(r.budget_exceeded);
  EXPECT_EQ(r.averaged_dimension, make_rational(1, 2));
  EXPECT_EQ(r.traces, std::vector<long>{0});
  EXPECT_FALSE(r.found_rank4);
  EXPECT_EQ(r.orbit_count, 2u);
  EXPECT_GT(r.subgroups_by_rank[3], 0u);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 300.0);
}

TEST(Searches, QuaternionImages) {
  auto r = search_q8_obstruction();
  EXPECT_FALSE(r.budget_exceeded);
  EXPECT_GT(r.images, 0u);
  EXPECT_FALSE(r.sum_minus4.has_value());
  for (const auto& t : r.triples) {
    if (t.i == -4 && t.j == -4) EXPECT_EQ(t.k, 4);
    if (t.i == -4 && t.j == -2) EXPECT_EQ(t.k, 2);
    if (t.i == -4 && t.j == 0) EXPECT_EQ(t.k, 0);
    EXPECT_FALSE(t.i == -2 && t.j == -2 && t.k == -2);
  }
}
