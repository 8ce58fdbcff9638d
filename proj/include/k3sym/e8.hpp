#pragma once

#include "arith.hpp"
#include "intmat.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace k3sym {

/// Vector of (1/2)Z^8 stored as doubled coordinates.
struct LatticeVec {
  std::array<int, 8> d{};

  LatticeVec() = default;
  explicit LatticeVec(const std::array<int, 8>& doubled) : d(doubled) {}

  /// e_i, 1-based index
  static LatticeVec e(int i) {
    LatticeVec v;
    v.d.at(i - 1) = 2;
    return v;
  }
  /// (1/2) sum s_i e_i
  static LatticeVec half(const std::array<int, 8>& s) { return LatticeVec(s); }

  LatticeVec operator+(const LatticeVec& o) const {
    LatticeVec r;
    for (int i = 0; i < 8; ++i) r.d[i] = d[i] + o.d[i];
    return r;
  }
  LatticeVec operator-(const LatticeVec& o) const {
    LatticeVec r;
    for (int i = 0; i < 8; ++i) r.d[i] = d[i] - o.d[i];
    return r;
  }
  LatticeVec operator-() const { return LatticeVec() - *this; }
  LatticeVec operator*(int k) const {
    LatticeVec r;
    for (int i = 0; i < 8; ++i) r.d[i] = k * d[i];
    return r;
  }
  bool operator==(const LatticeVec& o) const { return d == o.d; }
  bool operator!=(const LatticeVec& o) const { return d != o.d; }
  bool operator<(const LatticeVec& o) const { return d < o.d; }

  bool is_zero() const {
    for (int x : d)
      if (x) return false;
    return true;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < 8; ++i) {
      if (i) s += ",";
      s += d[i] % 2 ? std::to_string(d[i]) + "/2" : std::to_string(d[i] / 2);
    }
    return s + ")";
  }
};

struct LatticeVecHash {
  size_t operator()(const LatticeVec& v) const {
    size_t h = 0;
    for (int x : v.d) h = h * 31 + static_cast<size_t>(x + 16);
    return h;
  }
};

/// 4 times the standard inner product.
inline long inner4(const LatticeVec& u, const LatticeVec& v) {
  long s = 0;
  for (int i = 0; i < 8; ++i) s += static_cast<long>(u.d[i]) * v.d[i];
  return s;
}

inline Rational inner(const LatticeVec& u, const LatticeVec& v) { return make_rational(inner4(u, v), 4); }

/// Inner product of two vectors with integral pairing (e.g. both in E8).
inline long ipair(const LatticeVec& u, const LatticeVec& v) {
  long s = inner4(u, v);
  if (s % 4) throw std::domain_error("non-integral pairing " + u.str() + "." + v.str());
  return s / 4;
}

/// Membership in E8: all coordinates in Z or all in Z+1/2, coordinate sum even.
inline bool in_e8(const LatticeVec& v) {
  int par = v.d[0] & 1;
  long sum = 0;
  for (int x : v.d) {
    if ((x & 1) != par) return false;
    sum += x;
  }
  return sum % 4 == 0;
}

inline const std::vector<LatticeVec>& e8_roots() {
  static const std::vector<LatticeVec> roots = [] {
    std::vector<LatticeVec> r;
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j)
        for (int si : {2, -2})
          for (int sj : {2, -2}) {
            LatticeVec v;
            v.d[i] = si;
            v.d[j] = sj;
            r.push_back(v);
          }
    for (int mask = 0; mask < 256; ++mask) {
      LatticeVec v;
      int neg = 0;
      for (int i = 0; i < 8; ++i) {
        v.d[i] = (mask >> i) & 1 ? -1 : 1;
        neg += (mask >> i) & 1;
      }
      if (neg % 2 == 0) r.push_back(v);
    }
    std::sort(r.begin(), r.end());
    return r;
  }();
  return roots;
}

inline bool is_root(const LatticeVec& v) { return in_e8(v) && inner4(v, v) == 8; }

inline int root_index(const LatticeVec& v) {
  const auto& R = e8_roots();
  auto it = std::lower_bound(R.begin(), R.end(), v);
  return it != R.end() && *it == v ? static_cast<int>(it - R.begin()) : -1;
}

/// w_r(x) = x - (r,x) r
inline LatticeVec reflect(const LatticeVec& r, const LatticeVec& x) {
  if (inner4(r, r) != 8) throw std::invalid_argument("reflect: not a root " + r.str());
  long s = inner4(r, x);
  if (s % 4) throw std::invalid_argument("reflect: non-integral pairing with " + x.str());
  return x - r * static_cast<int>(s / 4);
}

/// f1..f8 (index 0..7) with the extra root f7' = e7 - e8.
struct StandardBasis {
  std::array<LatticeVec, 8> f;
  LatticeVec f7p;
};

inline const StandardBasis& standard_basis() {
  static const StandardBasis b = [] {
    StandardBasis s;
    for (int i = 1; i <= 6; ++i) s.f[i - 1] = LatticeVec::e(i) - LatticeVec::e(i + 1);
    s.f[6] = LatticeVec::e(7) + LatticeVec::e(8);
    s.f[7] = LatticeVec::half({-1, -1, -1, -1, -1, 1, 1, -1});
    s.f7p = LatticeVec::e(7) - LatticeVec::e(8);
    return s;
  }();
  return b;
}

inline ZMatrix gram(const std::vector<LatticeVec>& v) {
  int n = static_cast<int>(v.size());
  ZMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = ipair(v[i], v[j]);
  return g;
}

/// The negative-definite E8 matrix: -2 on the diagonal, +1 along the chain 1..7 and between 5 and 8.
inline ZMatrix minus_e8_matrix() {
  ZMatrix m(8, 8);
  for (int i = 0; i < 8; ++i) m(i, i) = -2;
  auto edge = [&](int i, int j) { m(i - 1, j - 1) = m(j - 1, i - 1) = 1; };
  for (int i = 1; i < 7; ++i) edge(i, i + 1);
  edge(5, 8);
  return m;
}

/// Coordinates of an E8 vector in the basis f1..f8.
inline std::array<long, 8> basis_coords(const LatticeVec& v) {
  // c = B^-1 (d/2) = (M d)/den with M integral
  struct Inv {
    std::array<long, 64> m{};
    long den = 1;
  };
  static const Inv inv = [] {
    const auto& b = standard_basis();
    QMatrix m(8, 8);
    for (int j = 0; j < 8; ++j)
      for (int i = 0; i < 8; ++i) m(i, j) = make_rational(b.f[j].d[i], 2);
    QMatrix q(8, 8);
    Integer den = 1;
    for (int j = 0; j < 8; ++j) {
      std::vector<Rational> e(8, Rational(0));
      e[j] = make_rational(1, 2);
      auto c = solve(m, e);
      for (int i = 0; i < 8; ++i) {
        q(i, j) = c[i];
        den = boost::multiprecision::lcm(den, denominator(c[i]));
      }
    }
    Inv r;
    r.den = den.convert_to<long>();
    for (int i = 0; i < 64; ++i) r.m[i] = to_long(q.a[i] * r.den);
    return r;
  }();
  std::array<long, 8> c{};
  for (int i = 0; i < 8; ++i) {
    long s = 0;
    for (int j = 0; j < 8; ++j) s += inv.m[i * 8 + j] * v.d[j];
    if (s % inv.den) throw std::domain_error("vector outside E8: " + v.str());
    c[i] = s / inv.den;
  }
  return c;
}

/// Linear isometry of R^8 preserving E8, stored as 4 * matrix entries.
class Isometry {
public:
  Isometry() {
    for (int i = 0; i < 8; ++i) m_[i * 8 + i] = 4;
  }
  static Isometry identity() { return {}; }
  static Isometry reflection(const LatticeVec& r) {
    if (!is_root(r)) throw std::invalid_argument("reflection in a non-root " + r.str());
    Isometry w;
    // I - r r^T with r = d/2: 4*(r_i r_j) = d_i d_j
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) w.m_[i * 8 + j] -= r.d[i] * r.d[j];
    return w;
  }
  static Isometry from_quarter_entries(const std::array<int, 64>& m) {
    Isometry w;
    w.m_ = m;
    if (!w.is_valid()) throw std::invalid_argument("matrix is not an automorphism of E8");
    return w;
  }
  static Isometry word(const std::vector<LatticeVec>& roots) {
    Isometry w;
    for (const auto& r : roots) w = w * reflection(r);
    return w;
  }

  LatticeVec operator()(const LatticeVec& x) const {
    LatticeVec y;
    for (int i = 0; i < 8; ++i) {
      int s = 0;
      for (int j = 0; j < 8; ++j) s += m_[i * 8 + j] * x.d[j];
      if (s % 4) throw std::domain_error("isometry image leaves (1/2)Z^8");
      y.d[i] = s / 4;
    }
    return y;
  }
  Isometry operator*(const Isometry& o) const {
    Isometry r;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        int s = 0;
        for (int k = 0; k < 8; ++k) s += m_[i * 8 + k] * o.m_[k * 8 + j];
        if (s % 4) throw std::domain_error("product leaves quarter-integral matrices");
        r.m_[i * 8 + j] = s / 4;
      }
    return r;
  }
  Isometry operator-() const {
    Isometry r;
    for (int i = 0; i < 64; ++i) r.m_[i] = -m_[i];
    return r;
  }
  bool operator==(const Isometry& o) const { return m_ == o.m_; }
  bool operator<(const Isometry& o) const { return m_ < o.m_; }

  /// 4 * entry (i, j)
  int quarter(int i, int j) const { return m_[i * 8 + j]; }
  const std::array<int, 64>& quarter_entries() const { return m_; }

  long trace() const {
    int t = 0;
    for (int i = 0; i < 8; ++i) t += m_[i * 8 + i];
    if (t % 4) throw std::domain_error("non-integral trace");
    return t / 4;
  }
  int order(int cap = 1000) const {
    Isometry p = *this;
    for (int k = 1; k <= cap; ++k) {
      if (p == Isometry()) return k;
      p = p * *this;
    }
    throw std::domain_error("isometry order exceeds cap");
  }
  Isometry power(int k) const {
    Isometry r;
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }
  Isometry transpose() const {
    Isometry r;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) r.m_[i * 8 + j] = m_[j * 8 + i];
    return r;
  }
  Isometry inverse() const { return transpose(); }  // orthogonal

  /// Orthogonal and maps every root into the root system.
  bool is_valid() const {
    Isometry t = transpose();
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        int s = 0;
        for (int k = 0; k < 8; ++k) s += t.m_[i * 8 + k] * m_[k * 8 + j];
        if (s != (i == j ? 16 : 0)) return false;
      }
    for (const auto& r : e8_roots()) {
      LatticeVec y;
      for (int i = 0; i < 8; ++i) {
        int s = 0;
        for (int j = 0; j < 8; ++j) s += m_[i * 8 + j] * r.d[j];
        if (s % 4) return false;
        y.d[i] = s / 4;
      }
      if (!is_root(y)) return false;
    }
    return true;
  }

  /// Matrix in the basis f1..f8: integral.
  ZMatrix basis_matrix() const {
    const auto& b = standard_basis();
    ZMatrix g(8, 8);
    for (int j = 0; j < 8; ++j) {
      auto c = basis_coords((*this)(b.f[j]));
      for (int i = 0; i < 8; ++i) g(i, j) = c[i];
    }
    return g;
  }

private:
  std::array<int, 64> m_{};
};

/// Roots fixed by an isometry.
inline std::vector<LatticeVec> fixed_roots(const Isometry& g) {
  std::vector<LatticeVec> out;
  for (const auto& r : e8_roots())
    if (g(r) == r) out.push_back(r);
  return out;
}

// ---------------------------------------------------------------- Dynkin types

/// One connected simply-laced Dynkin diagram.
struct DynkinComponent {
  char family;  // 'A', 'D', 'E'
  int rank;
  bool operator<(const DynkinComponent& o) const { return std::tie(family, rank) < std::tie(o.family, o.rank); }
  bool operator==(const DynkinComponent& o) const { return family == o.family && rank == o.rank; }
};

using DynkinType = std::vector<DynkinComponent>;

inline std::string dynkin_str(DynkinType t) {
  if (t.empty()) return "0";
  std::sort(t.begin(), t.end());
  std::string s;
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "+" : "") + std::string(1, t[i].family) + std::to_string(t[i].rank);
  return s;
}

/// Parses labels such as "A4", "D4", "A2+A2", "E8".
inline DynkinType parse_dynkin(const std::string& label) {
  DynkinType t;
  size_t pos = 0;
  while (pos < label.size()) {
    size_t end = label.find('+', pos);
    if (end == std::string::npos) end = label.size();
    std::string part = label.substr(pos, end - pos);
    if (part.size() < 2) throw std::invalid_argument("bad Dynkin label " + label);
    char fam = part[0];
    int rank = std::stoi(part.substr(1));
    bool ok = (fam == 'A' && rank >= 1) || (fam == 'D' && rank >= 4) || (fam == 'E' && rank >= 6 && rank <= 8);
    if (!ok) throw std::invalid_argument("bad Dynkin label " + label);
    t.push_back({fam, rank});
    pos = end + 1;
  }
  return t;
}

/// Positive-definite Cartan matrix; vertex order makes every vertex after the first
/// of a component adjacent to an earlier one.
inline ZMatrix cartan_matrix(const DynkinType& t) {
  int n = 0;
  for (const auto& c : t) n += c.rank;
  ZMatrix m(n, n);
  int off = 0;
  auto edge = [&](int i, int j) { m(off + i, off + j) = m(off + j, off + i) = -1; };
  for (const auto& c : t) {
    for (int i = 0; i < c.rank; ++i) m(off + i, off + i) = 2;
    if (c.family == 'A') {
      for (int i = 0; i + 1 < c.rank; ++i) edge(i, i + 1);
    } else if (c.family == 'D') {
      for (int i = 0; i + 1 < c.rank - 1; ++i) edge(i, i + 1);
      edge(c.rank - 3, c.rank - 1);
    } else {
      // E_n: chain 0..n-2 with vertex n-1 attached to vertex 2
      for (int i = 0; i + 1 < c.rank - 1; ++i) edge(i, i + 1);
      edge(2, c.rank - 1);
    }
    off += c.rank;
  }
  return m;
}

/// Exhaustive search for roots with Gram matrix equal to the Cartan matrix of `type`.
inline std::optional<std::vector<LatticeVec>> find_subsystem(const std::vector<LatticeVec>& roots,
                                                             const DynkinType& type) {
  ZMatrix c = cartan_matrix(type);
  int n = c.rows;
  std::vector<LatticeVec> pick;
  std::function<bool(int)> rec = [&](int k) {
    if (k == n) return true;
    for (const auto& r : roots) {
      bool ok = inner4(r, r) == 8;
      for (int i = 0; i < k && ok; ++i) ok = inner4(pick[i], r) == 4 * c(i, k);
      if (!ok) continue;
      pick.push_back(r);
      if (rec(k + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (rec(0)) return pick;
  return std::nullopt;
}

/// Dynkin type of a simple system (Gram off-diagonal entries in {0, -1}).
/// Returns nullopt when the vectors do not form a simple system of an ADE type.
inline std::optional<DynkinType> dynkin_type(const std::vector<LatticeVec>& simple) {
  int n = static_cast<int>(simple.size());
  ZMatrix g = gram(simple);
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    if (g(i, i) != 2) return std::nullopt;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (g(i, j) == -1)
        adj[i].push_back(j);
      else if (g(i, j) != 0)
        return std::nullopt;
    }
  }
  QMatrix q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = g(i, j);
  if (n && rank(q) != n) return std::nullopt;

  DynkinType type;
  std::vector<int> comp(n, -1);
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> verts{s};
    comp[s] = s;
    for (size_t k = 0; k < verts.size(); ++k)
      for (int w : adj[verts[k]])
        if (comp[w] < 0) {
          comp[w] = s;
          verts.push_back(w);
        }
    int m = static_cast<int>(verts.size());
    int edges = 0, branch = -1, deg3 = 0;
    for (int v : verts) {
      edges += static_cast<int>(adj[v].size());
      if (adj[v].size() > 3) return std::nullopt;
      if (adj[v].size() == 3) {
        ++deg3;
        branch = v;
      }
    }
    if (edges / 2 != m - 1 || deg3 > 1) return std::nullopt;
    if (deg3 == 0) {
      type.push_back({'A', m});
      continue;
    }
    std::vector<int> arms;
    for (int w : adj[branch]) {
      int len = 1, prev = branch, cur = w;
      while (adj[cur].size() == 2) {
        int nx = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nx;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1)
      type.push_back({'D', m});
    else if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4)
      type.push_back({'E', m});
    else
      return std::nullopt;
  }
  std::sort(type.begin(), type.end());
  return type;
}

inline std::string root_subsystem_type(const std::vector<LatticeVec>& simple) {
  auto t = dynkin_type(simple);
  return t ? dynkin_str(*t) : "none";
}

}  // namespace k3sym
