#include <k3sym/kummer.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace k3sym;
using namespace k3sym::kummer;

TEST(Kummer, GeneratorNames) {
  for (int g = 0; g < kGenerators; ++g) EXPECT_EQ(parse_name(name(g)), g);
  EXPECT_EQ(name(exceptional(1, -1, 1, -1)), "S(1,-1,1,-1)");
  EXPECT_EQ(name(proper(2, 1, -1)), "S2(1,-1)");
  EXPECT_THROW(parse_name("S4(1,1)"), std::invalid_argument);
}

TEST(Kummer, GeneratorPairings) {
  PairingTable t;
  EXPECT_EQ(t(exceptional(1, 1, 1, 1), exceptional(1, 1, 1, -1)), 0);
  EXPECT_EQ(t(proper(2, 1, 1), proper(3, 1, 1)), -1);
  EXPECT_EQ(t(proper(2, 1, 1), proper(3, -1, 1)), 0);
  EXPECT_EQ(t(proper(2, 1, 1), proper(2, 1, -1)), 0);
  EXPECT_EQ(t(proper(1, -1, 1), exceptional(-1, 1, 1, -1)), 1);
  EXPECT_EQ(t(proper(1, -1, 1), exceptional(-1, -1, 1, -1)), 0);
  for (int g = 0; g < kGenerators; ++g) EXPECT_EQ(t(g, g), -2);
}

TEST(Kummer, FibreExpansions) {
  // T2 and T3 as written out explicitly
  Class t2 = make({{2, proper(2, 1, 1)},
                   {1, exceptional(1, 1, 1, 1)},
                   {1, exceptional(1, 1, 1, -1)},
                   {1, exceptional(1, -1, 1, 1)},
                   {1, exceptional(1, -1, 1, -1)}});
  Class t3 = make({{2, proper(3, 1, 1)},
                   {1, exceptional(1, 1, 1, 1)},
                   {1, exceptional(1, 1, -1, 1)},
                   {1, exceptional(1, -1, 1, 1)},
                   {1, exceptional(1, -1, -1, 1)}});
  EXPECT_EQ(fiber(2), t2);
  EXPECT_EQ(fiber(3), t3);
  PairingTable t;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) EXPECT_EQ(pair(fiber(i), fiber(j), t), 0);
}

TEST(Kummer, E8Bases) {
  PairingTable t;
  auto fails = verify_lattice(t);
  EXPECT_TRUE(fails.empty());
  auto l1 = e8_copy(1), l2 = e8_copy(-1);
  EXPECT_EQ(pair(l1[1], l2[3], t), 0);
  EXPECT_EQ(pair(l1[5], fiber(2), t), 0);
  ZMatrix g(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) g(i, j) = pair(l1[i], l1[j], t);
  EXPECT_EQ(g, minus_e8_matrix());
}

TEST(Kummer, Radical) {
  auto r = radical(PairingTable{});
  EXPECT_EQ(r.span_rank, 19);
  EXPECT_EQ(r.gram_rank, 16);
  EXPECT_TRUE(r.radical_is_fibres);
}

TEST(Kummer, CorruptedTableIsDetected) {
  PairingTable t;
  t.set(proper(2, 1, 1), proper(3, 1, 1), 1);
  auto fails = verify_lattice(t);
  ASSERT_FALSE(fails.empty());
  bool fibres = false;
  for (const auto& f : fails) fibres |= f.what == "fibres isotropic" && f.left == "T2" && f.right == "T3";
  EXPECT_TRUE(fibres);
}

TEST(KummerProperty, PairingSymmetricBilinear) {
  PairingTable t;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> u(-3, 3);
  for (int n = 0; n < 200; ++n) {
    Class x, y, z;
    for (int a = 0; a < kGenerators; ++a) x[a] = u(rng), y[a] = u(rng), z[a] = u(rng);
    Class xz;
    for (int a = 0; a < kGenerators; ++a) xz[a] = x[a] + 2 * z[a];
    EXPECT_EQ(pair(x, y, t), pair(y, x, t));
    EXPECT_EQ(pair(xz, y, t), pair(x, y, t) + 2 * pair(z, y, t));
  }
  for (int a = 0; a < kGenerators; ++a)
    for (int b = 0; b < kGenerators; ++b) EXPECT_EQ(t(a, b), t(b, a));
}

TEST(Kummer, BasicClasses) {
  auto cls = basic_classes({2, 3, 5});
  ASSERT_EQ(cls.size(), 27u);
  int canonical = 0;
  for (const auto& c : cls) {
    if (c.canonical) {
      ++canonical;
      EXPECT_EQ(c.fibre, (std::array<long, 3>{4, 6, 10}));
    }
    if (c.b == std::array<int, 3>{0, 0, 0}) EXPECT_EQ(c.sw, 1);
  }
  EXPECT_EQ(canonical, 1);
  EXPECT_THROW(basic_classes({2, 4, 5}), std::invalid_argument);
  EXPECT_THROW(basic_classes({3, 2, 5}), std::invalid_argument);
}

TEST(Kummer, Rigidity) {
  auto same = rigidity_check({2, 3, 5}, {2, 3, 5});
  EXPECT_TRUE(same.compatible);
  EXPECT_EQ(same.image, (std::array<int, 3>{0, 1, 2}));
  EXPECT_FALSE(rigidity_check({2, 3, 5}, {2, 3, 7}).compatible);
  EXPECT_FALSE(rigidity_check({3, 5, 7}, {2, 3, 5}).compatible);
  EXPECT_THROW(rigidity_check({2, 3, 5}, {3, 2, 5}), std::invalid_argument);
}
