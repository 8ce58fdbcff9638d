#pragma once

#include "e8.hpp"


namespace k3sym {

/// Generators of the sublattice of H^2 of the Kummer surface spanned by the 16 exceptional
/// spheres S(e0,e1,e2,e3) and the 12 proper transforms Sj(k,t), j = 1,2,3.
/// Index layout: exceptional 0..15 (bit i set when e_i = -1), proper transforms 16..27.
namespace kummer {

constexpr int kGenerators = 28;

inline int bit(int s) {
  if (s != 1 && s != -1) throw std::invalid_argument("sign must be +-1");
  return s < 0;
}

inline int exceptional(int e0, int e1, int e2, int e3) { return bit(e0) * 8 + bit(e1) * 4 + bit(e2) * 2 + bit(e3); }

inline int proper(int j, int kappa, int tau) {
  if (j < 1 || j > 3) throw std::invalid_argument("proper transform index must be 1..3");
  return 16 + (j - 1) * 4 + bit(kappa) * 2 + bit(tau);
}

inline int sign_of(int idx, int k) { return (idx >> k) & 1 ? -1 : 1; }

inline std::string name(int g) {
  auto s = [](int v) { return v > 0 ? std::string("1") : std::string("-1"); };
  if (g < 16)
    return "S(" + s(sign_of(g, 3)) + "," + s(sign_of(g, 2)) + "," + s(sign_of(g, 1)) + "," + s(sign_of(g, 0)) + ")";
  int q = g - 16;
  return "S" + std::to_string(q / 4 + 1) + "(" + s(sign_of(q, 1)) + "," + s(sign_of(q, 0)) + ")";
}

inline int parse_name(const std::string& n) {
  for (int g = 0; g < kGenerators; ++g)
    if (name(g) == n) return g;
  throw std::invalid_argument("unknown generator " + n);
}

/// Intersection numbers of the generators.
class PairingTable {
public:
  PairingTable() {
    for (int a = 0; a < kGenerators; ++a)
      for (int b = 0; b < kGenerators; ++b) t_[a][b] = rule(a, b);
  }
  int operator()(int a, int b) const { return t_[a][b]; }
  void set(int a, int b, int v) { t_[a][b] = t_[b][a] = v; }

  static int rule(int a, int b) {
    if (a == b) return -2;
    if (a < 16 && b < 16) return 0;
    if (a >= 16 && b < 16) std::swap(a, b);
    if (a < 16) {
      // S_j(k,t) meets S(e) iff e0 = k and e_j = t
      int q = b - 16, j = q / 4 + 1;
      int kappa = sign_of(q, 1), tau = sign_of(q, 0);
      int e0 = sign_of(a, 3), ej = sign_of(a, 3 - j);
      return e0 == kappa && ej == tau ? 1 : 0;
    }
    int qa = a - 16, qb = b - 16;
    if (qa / 4 == qb / 4) return 0;
    return sign_of(qa, 1) == sign_of(qb, 1) ? -1 : 0;
  }

private:
  std::array<std::array<int, kGenerators>, kGenerators> t_{};
};

using Class = std::array<long, kGenerators>;

inline long pair(const Class& x, const Class& y, const PairingTable& t) {
  long s = 0;
  for (int a = 0; a < kGenerators; ++a) {
    if (!x[a]) continue;
    for (int b = 0; b < kGenerators; ++b)
      if (y[b]) s += x[a] * y[b] * t(a, b);
  }
  return s;
}

inline Class make(std::initializer_list<std::pair<long, int>> terms) {
  Class c{};
  for (auto [coef, g] : terms) c[g] += coef;
  return c;
}

/// Fibre class T_j = 2 S_j(1,1) + the four exceptional curves with e0 = 1, e_j = 1.
inline Class fiber(int j) {
  Class c{};
  c[proper(j, 1, 1)] = 2;
  for (int g = 0; g < 16; ++g)
    if (sign_of(g, 3) == 1 && sign_of(g, 3 - j) == 1) c[g] += 1;
  return c;
}

/// Two mutually orthogonal copies of -E8, indexed by kappa = +1 and kappa = -1.
inline std::array<Class, 8> e8_copy(int k) {
  auto E = [&](int a, int b, int c) { return exceptional(k, a, b, c); };
  return {
      make({{-1, proper(3, k, -1)}, {-1, E(-1, -1, -1)}, {-1, E(1, -1, -1)}}),
      make({{1, E(1, -1, -1)}}),
      make({{1, proper(2, k, -1)}, {1, E(-1, -1, -1)}}),
      make({{1, E(1, -1, 1)}}),
      make({{1, proper(3, k, 1)}, {1, E(-1, -1, 1)}}),
      make({{1, E(1, 1, 1)}}),
      make({{-1, proper(2, k, 1)}, {-1, E(1, 1, -1)}, {-1, E(1, 1, 1)}}),
      make({{1, proper(1, k, -1)}, {1, E(-1, 1, 1)}}),
  };
}

struct CheckFailure {
  std::string what;
  std::string left, right;
  long expected, actual;
};

/// Verifies that the two lists span orthogonal copies of -E8 orthogonal to the fibres,
/// and that the fibres are isotropic and pairwise orthogonal.
inline std::vector<CheckFailure> verify_lattice(const PairingTable& t) {
  std::vector<CheckFailure> fails;
  ZMatrix target = minus_e8_matrix();
  std::array<std::array<Class, 8>, 2> lists{e8_copy(1), e8_copy(-1)};
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        long v = pair(lists[l][i], lists[l][j], t);
        if (v != target(i, j))
          fails.push_back({"Gram of list " + std::to_string(l + 1), "f" + std::to_string(i + 1),
                           "f" + std::to_string(j + 1), target(i, j), v});
      }
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      long v = pair(lists[0][i], lists[1][j], t);
      if (v) fails.push_back({"lists orthogonal", "f" + std::to_string(i + 1) + "(1)", "f" + std::to_string(j + 1) + "(2)", 0, v});
    }
  for (int j = 1; j <= 3; ++j) {
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 8; ++i) {
        long v = pair(lists[l][i], fiber(j), t);
        if (v)
          fails.push_back({"orthogonal to fibres", "f" + std::to_string(i + 1) + "(" + std::to_string(l + 1) + ")",
                           "T" + std::to_string(j), 0, v});
      }
    for (int k = j; k <= 3; ++k) {
      long v = pair(fiber(j), fiber(k), t);
      if (v) fails.push_back({"fibres isotropic", "T" + std::to_string(j), "T" + std::to_string(k), 0, v});
    }
  }
  return fails;
}

struct RadicalReport {
  int span_rank;   // rank of the 19 classes in Z^28
  int gram_rank;   // rank of their Gram matrix
  bool radical_is_fibres;
};

inline RadicalReport radical(const PairingTable& t) {
  std::vector<Class> v;
  for (const auto& c : e8_copy(1)) v.push_back(c);
  for (const auto& c : e8_copy(-1)) v.push_back(c);
  for (int j = 1; j <= 3; ++j) v.push_back(fiber(j));
  int n = static_cast<int>(v.size());
  QMatrix span(n, kGenerators), g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < kGenerators; ++a) span(i, a) = v[i][a];
    for (int j = 0; j < n; ++j) g(i, j) = pair(v[i], v[j], t);
  }
  RadicalReport r{rank(span), rank(g), false};
  // kernel of the Gram matrix is spanned by the last three coordinates
  ZMatrix gz(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gz(i, j) = pair(v[i], v[j], t);
  ZMatrix K = integer_kernel(gz);
  bool ok = K.cols == 3;
  for (int c = 0; c < K.cols && ok; ++c)
    for (int i = 0; i < 16; ++i) ok &= K(i, c) == 0;
  r.radical_is_fibres = ok;
  return r;
}

// ------------------------------------------------------ basic classes

struct BasicClass {
  std::array<int, 3> b;        // entries in {-1, 0, 1}
  std::array<long, 3> fibre;   // coefficient of [T_j]: 2 b_j d_j
  int sw;                      // Seiberg-Witten coefficient
  bool canonical;
};

inline void check_degrees(const std::array<long, 3>& d) {
  if (!(1 < d[0] && d[0] < d[1] && d[1] < d[2])) throw std::invalid_argument("need 1 < d1 < d2 < d3");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (gcd(d[i], d[j]) != 1) throw std::invalid_argument("degrees must be pairwise coprime");
}

/// The 27 basic classes 2 sum b_j d_j [T_j]; the SW coefficient is the product of the
/// coefficients of t^(b_j d_j) in 1 - t^d - t^-d.
inline std::vector<BasicClass> basic_classes(const std::array<long, 3>& d) {
  check_degrees(d);
  std::vector<BasicClass> out;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        BasicClass k;
        k.b = {a, b, c};
        k.sw = 1;
        for (int j = 0; j < 3; ++j) {
          k.fibre[j] = 2 * k.b[j] * d[j];
          if (k.b[j]) k.sw = -k.sw;
        }
        k.canonical = a == 1 && b == 1 && c == 1;
        out.push_back(k);
      }
  return out;
}

struct RigidityVerdict {
  bool compatible;
  std::array<int, 3> image;  // [T'_j] -> +-[T_image[j]]
  std::vector<std::string> diagnostics;
};

/// Decides whether an isometry f carrying basic classes of X(d2) onto those of X(d) can exist.
/// For each j, f*(2 d2_j [T'_j]) = 2 sum b_i d_i [T_i] for some nonzero b; f*[T'_j] must be
/// integral and primitive, and the images of distinct fibres distinct.
inline RigidityVerdict rigidity_check(const std::array<long, 3>& d, const std::array<long, 3>& d2) {
  check_degrees(d);
  check_degrees(d2);
  RigidityVerdict v{true, {-1, -1, -1}, {}};
  std::array<bool, 3> used{};
  for (int j = 0; j < 3; ++j) {
    std::string tag = "T'" + std::to_string(j + 1);
    std::vector<int> hits;
    for (int code = 1; code < 27; ++code) {
      std::array<int, 3> b{code % 3 - 1, code / 3 % 3 - 1, code / 9 - 1};
      if (b == std::array<int, 3>{0, 0, 0}) continue;
      long g = 0;
      bool integral = true;
      for (int i = 0; i < 3; ++i) {
        long c = b[i] * d[i];
        if (c % d2[j]) integral = false;
        g = gcd(g, c / d2[j]);
      }
      if (!integral || g != 1) continue;
      int support = -1, count = 0;
      for (int i = 0; i < 3; ++i)
        if (b[i]) support = i, ++count;
      if (count == 1 && b[support] == 1) hits.push_back(support);
      else if (count > 1) hits.push_back(-2);
    }
    if (hits.empty()) {
      v.compatible = false;
      v.diagnostics.push_back(tag + ": no basic class 2 d'_j x with x integral and primitive");
      continue;
    }
    if (hits.size() != 1 || hits[0] < 0) {
      v.compatible = false;
      v.diagnostics.push_back(tag + ": image is not a single fibre class");
      continue;
    }
    int i = hits[0];
    if (used[i]) {
      v.compatible = false;
      v.diagnostics.push_back(tag + ": image T" + std::to_string(i + 1) + " already taken");
      continue;
    }
    used[i] = true;
    v.image[j] = i;
    v.diagnostics.push_back(tag + " -> +-T" + std::to_string(i + 1));
  }
  return v;
}

}  // namespace kummer
}  // namespace k3sym
