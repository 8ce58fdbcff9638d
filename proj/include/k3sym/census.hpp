#pragma once

#include "index.hpp"
#include "reps.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace k3sym {

// ------------------------------------------------------------ group types

/// A group of fixed points whose rotation numbers are fixed multiples of one k.
struct GroupPattern {
  std::string name;
  std::vector<std::pair<long, long>> points;   // (a, b) as multiples of k
  std::vector<std::pair<long, long>> spheres;  // (self-intersection, c as multiple of k)

  FixedPointData instantiate(long p, long k) const {
    FixedPointData d{p, {}, {}};
    append(d, k);
    return d;
  }
  void append(FixedPointData& d, long k) const {
    for (auto [a, b] : points) d.isolated.push_back({mod(a * k, d.p), mod(b * k, d.p)});
    for (auto [self, c] : spheres) d.surfaces.push_back({0, self, mod(c * k, d.p)});
  }
};

/// Types of groups of fixed points for symplectic actions of order 5 and 7.
inline const std::vector<GroupPattern>& group_patterns(long p) {
  static const std::vector<GroupPattern> p5 = {
      {"(1)", {{1, -1}}, {}},
      {"(3)", {{1, 2}, {-1, 4}, {-1, 4}}, {}},
      {"(4)", {{1, 1}, {-1, 3}, {-1, 3}, {-1, 3}}, {}},
      {"A~4", {{-3, -1}, {-3, -1}, {3, 3}}, {{-2, 1}}},
  };
  static const std::vector<GroupPattern> p7 = {
      {"(1)", {{1, -1}}, {}},
      {"(2)", {{2, 3}, {-1, 6}}, {}},
      {"(3)", {{1, 2}, {-1, 4}, {-1, 4}}, {}},
  };
  if (p == 5) return p5;
  if (p == 7) return p7;
  throw std::invalid_argument("group types are tabulated for p = 5 and 7 only");
}

/// Euler characteristic, total defect and per-power contributions of a group type.
struct GroupFacts {
  GroupPattern pattern;
  long chi = 0;
  Rational defect;
  std::vector<CycNum> sign;  // index k = 1..p-1
  std::vector<CycNum> spin;
};

inline const std::vector<GroupFacts>& group_facts(long p) {
  static std::mutex m;
  static std::map<long, std::vector<GroupFacts>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  std::vector<GroupFacts> out;
  for (const auto& pat : group_patterns(p)) {
    GroupFacts f;
    f.pattern = pat;
    FixedPointData base = pat.instantiate(p, 1);
    f.chi = base.euler_characteristic();
    f.defect = total_defect(base);
    f.sign.assign(p, CycNum(0));
    f.spin.assign(p, CycNum(0));
    for (long k = 1; k < p; ++k) {
      FixedPointData d = pat.instantiate(p, k);
      if (total_defect(d) != f.defect) throw std::logic_error("group defect depends on k");
      f.sign[k] = signature_g(d);
      f.spin[k] = spin_value(d);
    }
    out.push_back(std::move(f));
  }
  return cache.emplace(p, std::move(out)).first->second;
}

// ------------------------------------------------------------- profiles

/// Decompositions of the two E8 summands under G.
struct ThetaProfile {
  RepDecomp first, second;

  long trace() const { return 6 + first.trace() + second.trace(); }  // of g != 1 on H_2
  long cyclotomic() const { return first.s + second.s; }
  bool nontrivial() const {
    RepDecomp triv{0, 0, 8};
    return !(first == triv) && !(second == triv);
  }
  /// (r,t,s) order as in the usual notation Z[Z_p]^r + Z^t + Z[mu_p]^s.
  std::string str() const {
    auto f = [](const RepDecomp& d) {
      return "(" + std::to_string(d.r) + "," + std::to_string(d.t) + "," + std::to_string(d.s) + ")";
    };
    return f(first) + "+" + f(second);
  }
};

struct QuotientBetti {
  long b2, b2plus, b2minus;
  long signature() const { return b2plus - b2minus; }
};

/// Betti numbers of M/G by averaging traces; G fixes a maximal positive subspace.
inline QuotientBetti quotient_betti(long p, long trace) {
  long num = 22 + (p - 1) * trace;
  if (num % p) throw std::logic_error("averaged trace is not an integer");
  long b2 = num / p;
  return {b2, 3, b2 - 3};
}

inline std::vector<ThetaProfile> profiles(long p) {
  auto census = lemma45_census(static_cast<int>(p));
  std::sort(census.begin(), census.end(), [](const RepDecomp& a, const RepDecomp& b) { return b < a; });
  std::vector<ThetaProfile> out;
  for (size_t i = 0; i < census.size(); ++i)
    for (size_t j = i; j < census.size(); ++j) out.push_back({census[i], census[j]});
  return out;
}

// -------------------------------------------------------------- stage 1

/// u = u0 + uw w + uA A, v = v0 + vw w + vA A.
struct Stage1Family {
  ThetaProfile profile;
  Rational u0, uw, uA, v0, vw, vA;
  std::vector<std::array<long, 4>> points;  // nonnegative integer (u, v, w, A)

  static std::string affine(const Rational& c, const Rational& w, const Rational& a) {
    std::string s;
    auto term = [&](const Rational& x, const std::string& var) {
      if (x == 0) return;
      Rational ax = abs(x);
      std::string mag = ax == 1 && !var.empty() ? "" : ax.str();
      if (s.empty()) s += x < 0 ? "-" : "";
      else s += x < 0 ? "-" : "+";
      s += mag + var;
    };
    term(c, "");
    term(w, "w");
    term(a, "A");
    return s.empty() ? "0" : s;
  }
  std::string str() const { return "(" + affine(u0, uw, uA) + ", " + affine(v0, vw, vA) + ")"; }
};

/// Lefschetz and weak G-signature equations for p = 5, solved for the counts of type (1)
/// and (3) groups in terms of the counts w of type (4) and A of type A~4.
inline Stage1Family solve_p5_stage1(const ThetaProfile& th) {
  const long p = 5;
  const auto& f = group_facts(p);
  long L = lefschetz(th.trace());
  QuotientBetti q = quotient_betti(p, th.trace());
  Rational S = Rational(p * q.signature() + 16);
  // [chi1 chi3; d1 d3] (u, v) = (L - chi4 w - chiA A, S - d4 w - dA A)
  Rational a = f[0].chi, b = f[1].chi, c = f[0].defect, d = f[1].defect;
  Rational det = a * d - b * c;
  if (det == 0) throw std::logic_error("singular stage-1 system");
  auto solve = [&](const Rational& r1, const Rational& r2) {
    return std::make_pair((d * r1 - b * r2) / det, (a * r2 - c * r1) / det);
  };
  Stage1Family fam{th};
  std::tie(fam.u0, fam.v0) = solve(Rational(L), S);
  std::tie(fam.uw, fam.vw) = solve(Rational(-f[2].chi), -f[2].defect);
  std::tie(fam.uA, fam.vA) = solve(Rational(-f[3].chi), -f[3].defect);
  for (long w = 0; w * f[2].chi <= L; ++w)
    for (long A = 0; A * f[3].chi <= L; ++A) {
      Rational u = fam.u0 + fam.uw * w + fam.uA * A, v = fam.v0 + fam.vw * w + fam.vA * A;
      if (u < 0 || v < 0 || !is_integer(u) || !is_integer(v)) continue;
      fam.points.push_back({to_long(u), to_long(v), w, A});
    }
  return fam;
}

// ---------------------------------------------------------- refinement

/// x, y, z count the isolated points of the type (1), (3), (4) groups by the value of
/// -cot(a pi/5) cot(b pi/5); index 1 for k = +-1 and 2 for k = +-2.
struct P5Counts {
  long u = 0, v = 0, w = 0, A = 0;
  long x1 = 0, x2 = 0, y1 = 0, y2 = 0, z1 = 0, z2 = 0;
  long v1 = 0, v2 = 0, w1 = 0, w2 = 0, a1 = 0, a2 = 0;

  std::array<long, 6> xyz() const { return {x1, x2, y1, y2, z1, z2}; }
  P5Counts swapped() const {
    P5Counts s = *this;
    std::swap(s.x1, s.x2);
    std::swap(s.y1, s.y2);
    std::swap(s.z1, s.z2);
    std::swap(s.v1, s.v2);
    std::swap(s.w1, s.w2);
    std::swap(s.a1, s.a2);
    return s;
  }
  std::string str() const {
    auto s = [](long x) { return std::to_string(x); };
    return "x=(" + s(x1) + "," + s(x2) + ") y=(" + s(y1) + "," + s(y2) + ") z=(" + s(z1) + "," + s(z2) + ") (u,v,w,A)=(" +
           s(u) + "," + s(v) + "," + s(w) + "," + s(A) + ")";
  }
};

struct FilterRecord {
  std::string name;
  std::string verdict;  // ruled_out, survives, not_applicable
  std::string detail;
};

struct P5Instance {
  P5Counts counts;
  FixedPointData data;
  CycNum spin;
  SpinVector spin_vec;
  std::vector<FilterRecord> filters;
  bool survives = true;
};

struct P5Candidate {
  ThetaProfile profile;
  bool affine_family = true;  // false when stage 1 determines (u,v,w,A) outright
  P5Counts counts;            // canonical under the relabelling g -> g^2
  std::vector<P5Instance> instances;  // distinct splits of the A~4 groups
  long max_tori = 0;
  bool survives = false;
};

inline FixedPointData p5_data(const P5Counts& c) {
  const auto& pats = group_patterns(5);
  FixedPointData d{5, {}, {}};
  auto add = [&](int type, long n1, long n2) {
    for (long i = 0; i < n1; ++i) pats[type].append(d, 1);
    for (long i = 0; i < n2; ++i) pats[type].append(d, 2);
  };
  add(0, c.z1, c.z2);
  add(1, c.v1, c.v2);
  add(2, c.w1, c.w2);
  add(3, c.a1, c.a2);
  return d;
}

/// Classifies points of the non-A~4 groups by their cot product at g.
inline void count_xyz(P5Counts& c) {
  const long p = 5;
  CycNum c11 = cot_product(p, 1, 1), c22 = cot_product(p, 2, 2), c12 = cot_product(p, 1, 2);
  FixedPointData d{p, {}, {}};
  const auto& pats = group_patterns(p);
  for (long i = 0; i < c.z1; ++i) pats[0].append(d, 1);
  for (long i = 0; i < c.z2; ++i) pats[0].append(d, 2);
  for (long i = 0; i < c.v1; ++i) pats[1].append(d, 1);
  for (long i = 0; i < c.v2; ++i) pats[1].append(d, 2);
  for (long i = 0; i < c.w1; ++i) pats[2].append(d, 1);
  for (long i = 0; i < c.w2; ++i) pats[2].append(d, 2);
  c.x1 = c.x2 = c.y1 = c.y2 = c.z1 = c.z2 = 0;
  for (const auto& m : d.isolated) {
    CycNum v = cot_product(p, m.a, m.b);
    if (v == c11) ++c.x1;
    else if (v == c22) ++c.x2;
    else if (v == c12) ++c.y1;
    else if (v == -c12) ++c.y2;
    else if (v == -c11) ++c.z1;
    else if (v == -c22) ++c.z2;
    else throw std::logic_error("unexpected cot product");
  }
}

/// Sum of the tabulated per-group contributions of data built from counts, at g^j.
inline CycNum p5_sign_at(const P5Counts& c, long j) {
  const auto& f = group_facts(5);
  auto k = [&](long cls) { return mod(cls * j, 5); };
  CycNum s(0);
  auto add = [&](int type, long n1, long n2) {
    if (n1) s = s + CycNum(n1) * f[type].sign[k(1)];
    if (n2) s = s + CycNum(n2) * f[type].sign[k(2)];
  };
  add(0, c.z1, c.z2);
  add(1, c.v1, c.v2);
  add(2, c.w1, c.w2);
  add(3, c.a1, c.a2);
  return s;
}

struct P5Census {
  std::vector<Stage1Family> families;
  std::vector<P5Candidate> candidates;
};

inline std::vector<FilterRecord> apply_filters(const FixedPointData& d, const ThetaProfile& th, const CycNum& spin,
                                               const SpinVector& vec, const RochlinTable* table, bool& survives);

/// Enumerates class splits of every stage-1 point and keeps those satisfying the
/// G-signature equation exactly at every power of g.
inline P5Census refine_p5(const RochlinTable* table = nullptr) {
  P5Census out;
  std::map<std::tuple<std::string, std::array<long, 4>, std::array<long, 6>>, size_t> index;
  for (const auto& th : profiles(5)) {
    Stage1Family fam = solve_p5_stage1(th);
    bool affine = fam.points.size() > 1;
    out.families.push_back(fam);
    CycNum target(3 - (th.trace() - 3));  // tr on H+ minus tr on H-, with H+ fixed
    for (auto [u, v, w, A] : fam.points)
      for (long z1 = 0; z1 <= u; ++z1)
        for (long v1 = 0; v1 <= v; ++v1)
          for (long w1 = 0; w1 <= w; ++w1)
            for (long a1 = 0; a1 <= A; ++a1) {
              P5Counts c;
              c.u = u, c.v = v, c.w = w, c.A = A;
              c.z1 = z1, c.z2 = u - z1, c.v1 = v1, c.v2 = v - v1, c.w1 = w1, c.w2 = w - w1, c.a1 = a1, c.a2 = A - a1;
              bool ok = true;
              for (long j = 1; j < 5 && ok; ++j) ok = p5_sign_at(c, j) == target;
              if (!ok) continue;
              long zz1 = c.z1, zz2 = c.z2;
              count_xyz(c);
              if (c.z1 != zz1 || c.z2 != zz2) throw std::logic_error("type (1) classification mismatch");
              if (c.swapped().xyz() > c.xyz()) c = c.swapped();
              else if (c.swapped().xyz() == c.xyz() && c.a1 > c.a2) c = c.swapped();
              auto key = std::make_tuple(th.str(), std::array<long, 4>{u, v, w, A}, c.xyz());
              auto it = index.find(key);
              if (it == index.end()) {
                P5Candidate cand;
                cand.profile = th;
                cand.affine_family = affine;
                cand.counts = c;
                cand.max_tori = th.cyclotomic() / 2;
                index[key] = out.candidates.size();
                out.candidates.push_back(cand);
                it = index.find(key);
              }
              auto& cand = out.candidates[it->second];
              bool dup = false;
              for (const auto& in : cand.instances) dup |= in.counts.a1 == c.a1;
              if (dup) continue;
              P5Instance inst;
              inst.counts = c;
              inst.data = p5_data(c);
              SpinResult sr = spin_number(inst.data);
              inst.spin = sr.value;
              inst.spin_vec = sr.vec;
              inst.filters = apply_filters(inst.data, th, inst.spin, inst.spin_vec, table, inst.survives);
              cand.instances.push_back(inst);
            }
  }
  for (auto& c : out.candidates) {
    c.survives = false;
    for (const auto& in : c.instances) c.survives |= in.survives;
  }
  return out;
}

/// Fang, Furuta and (for pseudofree data with tabulated lens spaces) Kirby-Siebenmann.
inline std::vector<FilterRecord> apply_filters(const FixedPointData& d, const ThetaProfile& th, const CycNum& spin,
                                               const SpinVector& vec, const RochlinTable* table, bool& survives) {
  std::vector<FilterRecord> out;
  survives = true;
  const long b2plus = 3;
  Verdict fang = fang_test(vec, b2plus, true);
  out.push_back({"fang", verdict_name(fang), "Spin = " + spin.str() + ", d = " + vec.str()});
  QuotientBetti q = quotient_betti(d.p, th.trace());
  long ind = vec.d[0];
  Verdict fur = furuta_test(ind, q.b2plus, q.b2minus);
  out.push_back({"furuta", verdict_name(fur),
                 "ind = " + std::to_string(ind) + ", (b2+, b2-) of quotient = (" + std::to_string(q.b2plus) + ", " +
                     std::to_string(q.b2minus) + ")"});
  survives = fang == Verdict::Survives && fur == Verdict::Survives;
  if (!d.surfaces.empty() || th.cyclotomic() > 0) {
    out.push_back({"kirby_siebenmann", "not_applicable", "action is not pseudofree"});
    return out;
  }
  Rational sign_n = orbifold_signature(-16, d);
  std::vector<LensSpace> links;
  for (const auto& m : d.isolated) links.push_back(link_of(d.p, m));
  if (!table) {
    out.push_back({"kirby_siebenmann", "not_applicable", "no Rochlin table loaded"});
    return out;
  }
  KsResult ks = ks_rochlin_test(links, to_long(sign_n), *table);
  if (!ks.missing.empty()) {
    out.push_back({"kirby_siebenmann", "not_applicable", "no Rochlin value for " + ks.missing.front()});
    return out;
  }
  bool ok = ks.consistent && ks.ks == 0;
  out.push_back({"kirby_siebenmann", ok ? "survives" : "ruled_out",
                 "Sign(N) = " + sign_n.str() + ", roc = " + std::to_string(ks.roc_total) + ", ks = " + std::to_string(ks.ks)});
  survives = survives && ok;
  return out;
}

// --------------------------------------------------------------- p = 7

struct P7Assignment {
  std::vector<std::vector<long>> k;  // per group type, sorted k values in 1..6
  CycNum spin;
  SpinVector spin_vec;
  std::vector<FilterRecord> filters;
  bool survives = false;

  FixedPointData data() const {
    const auto& pats = group_patterns(7);
    FixedPointData d{7, {}, {}};
    for (size_t t = 0; t < k.size(); ++t)
      for (long kk : k[t]) pats[t].append(d, kk);
    return d;
  }
};

struct P7Solution {
  long u, v, w;
  size_t assignments_tried = 0;
  std::vector<P7Assignment> signature_ok;
};

struct P7Census {
  ThetaProfile profile;
  std::vector<P7Solution> solutions;
  std::vector<P7Assignment> survivors;
};

inline void for_each_multiset(long n, long lo, long hi, const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> cur;
  std::function<void(long)> rec = [&](long start) {
    if (static_cast<long>(cur.size()) == n) {
      f(cur);
      return;
    }
    for (long x = start; x <= hi; ++x) {
      cur.push_back(x);
      rec(x);
      cur.pop_back();
    }
  };
  rec(lo);
}

inline P7Census solve_p7(const RochlinTable* table = nullptr) {
  const long p = 7;
  P7Census out;
  auto census = lemma45_census(7);
  if (census.size() != 1) throw std::logic_error("expected a single decomposition for p = 7");
  out.profile = {census[0], census[0]};
  const auto& f = group_facts(p);
  long L = lefschetz(out.profile.trace());
  QuotientBetti q = quotient_betti(p, out.profile.trace());
  Rational S = Rational(p * q.signature() + 16);
  CycNum target(3 - (out.profile.trace() - 3));
  for (long u = 0; u * f[0].chi <= L; ++u)
    for (long v = 0; u * f[0].chi + v * f[1].chi <= L; ++v) {
      long rest = L - u * f[0].chi - v * f[1].chi;
      if (rest % f[2].chi) continue;
      long w = rest / f[2].chi;
      if (f[0].defect * u + f[1].defect * v + f[2].defect * w != S) continue;
      P7Solution sol{u, v, w};
      for_each_multiset(u, 1, p - 1, [&](const std::vector<long>& ku) {
        for_each_multiset(v, 1, p - 1, [&](const std::vector<long>& kv) {
          for_each_multiset(w, 1, p - 1, [&](const std::vector<long>& kw) {
            ++sol.assignments_tried;
            std::array<const std::vector<long>*, 3> ks{&ku, &kv, &kw};
            for (long j = 1; j < p; ++j) {
              CycNum s(0);
              for (int t = 0; t < 3; ++t)
                for (long kk : *ks[t]) s = s + f[t].sign[mod(kk * j, p)];
              if (!(s == target)) return;
            }
            sol.signature_ok.push_back({{ku, kv, kw}});
          });
        });
      });
      for (auto& a : sol.signature_ok) {
        FixedPointData d = a.data();
        SpinResult sr = spin_number(d);
        a.spin = sr.value;
        a.spin_vec = sr.vec;
        a.filters = apply_filters(d, out.profile, a.spin, a.spin_vec, table, a.survives);
        if (a.survives) out.survivors.push_back(a);
      }
      out.solutions.push_back(std::move(sol));
    }
  return out;
}

/// The ten-point structure: two (2k,3k), two (-k,-k), two (2k,4k), four (-2k,k).
inline std::vector<IsolatedPoint> p7_structure(long k) {
  FixedPointData d{7, {}, {}};
  for (auto [a, b] : std::vector<std::pair<long, long>>{{2, 3}, {2, 3}, {-1, -1}, {-1, -1}, {2, 4}, {2, 4},
                                                        {-2, 1}, {-2, 1}, {-2, 1}, {-2, 1}})
    d.isolated.push_back({mod(a * k, 7), mod(b * k, 7)});
  return d.canonical();
}

// -------------------------------------------------------------- Q8 fixture

struct Q8Linear {
  long t, s_plus, s_minus;
};

/// Fixed points of an order-4 element whose square has 8 isolated fixed points:
/// Lefschetz and G-signature with weights (1,3) counted by s+ and (1,1),(3,3) by s-.
inline std::vector<Q8Linear> q8_linear_solutions() {
  std::vector<Q8Linear> out;
  Rational dplus = signature_defect(4, 3), dminus = signature_defect(4, 1);
  for (long t = 0; t <= 14; ++t) {
    // traces on H^2: g^2 fixes 14 dimensions (Lefschetz: 2 + tr = 8)
    long tr_g = t - (14 - t), tr_g2 = 14 - 8;
    long num = 22 + tr_g2 + 2 * tr_g;
    if (num % 4) continue;
    long b2 = num / 4;
    long sign_quot = 3 - (b2 - 3);
    long L = lefschetz(tr_g);
    // s+ + s- = L, dplus s+ + dminus s- = 4 Sign(M/G) + 16
    Rational rhs = Rational(4 * sign_quot + 16);
    Rational det = dminus - dplus;
    if (det == 0) throw std::logic_error("degenerate defects");
    Rational sp = (dminus * L - rhs) / det;
    Rational sm = Rational(L) - sp;
    if (!is_integer(sp) || !is_integer(sm) || sp < 0 || sm < 0 || sp + sm > 8) continue;
    out.push_back({t, to_long(sp), to_long(sm)});
  }
  return out;
}

struct Q8Branch {
  long n;  // fixed points of each of i, j, k
  bool feasible;
  std::string reason;
  std::array<std::array<int, 8>, 3> witness{};  // permutations of i, j, k on Fix(-1)
};

/// Q8 acts on the 8 fixed points of -1 through Q8/<-1>, so i and j act as commuting
/// involutions and k as their product. Each fixes n points: 4 of weight type (1,3) and
/// n - 4 of type (1,1)/(3,3); the latter are swapped in pairs by the other generators.
inline Q8Branch q8_branch(long n) {
  using Perm = std::array<int, 8>;
  std::vector<Perm> invols;
  Perm cur;
  std::function<void(int, Perm&, std::array<bool, 8>&)> rec = [&](int i, Perm& pm, std::array<bool, 8>& used) {
    while (i < 8 && used[i]) ++i;
    if (i == 8) {
      invols.push_back(pm);
      return;
    }
    used[i] = true;
    pm[i] = i;
    rec(i + 1, pm, used);
    for (int j = i + 1; j < 8; ++j) {
      if (used[j]) continue;
      used[j] = true;
      pm[i] = j;
      pm[j] = i;
      rec(i + 1, pm, used);
      used[j] = false;
    }
    used[i] = false;
  };
  std::array<bool, 8> used{};
  rec(0, cur, used);

  auto fixed = [](const Perm& p) {
    int c = 0;
    for (int i = 0; i < 8; ++i) c += p[i] == i;
    return c;
  };
  auto compose = [](const Perm& a, const Perm& b) {
    Perm r;
    for (int i = 0; i < 8; ++i) r[i] = a[b[i]];
    return r;
  };
  Q8Branch br{n, false, "", {}};
  bool counting = false;
  for (const auto& pi : invols) {
    if (fixed(pi) != n) continue;
    for (const auto& pj : invols) {
      if (fixed(pj) != n || compose(pi, pj) != compose(pj, pi)) continue;
      Perm pk = compose(pi, pj);
      if (fixed(pk) != n) continue;
      counting = true;
      // labelling: each element needs n - 4 points of type (1,1)/(3,3), moved by both others
      std::array<Perm, 3> g{pi, pj, pk};
      bool ok = true;
      for (int a = 0; a < 3 && ok; ++a) {
        int movable = 0;
        for (int x = 0; x < 8; ++x)
          if (g[a][x] == x && g[(a + 1) % 3][x] != x && g[(a + 2) % 3][x] != x) ++movable;
        ok = movable >= n - 4;
      }
      if (ok) {
        br.feasible = true;
        br.witness = {pi, pj, pk};
        br.reason = "realised by commuting involutions";
        return br;
      }
    }
  }
  br.reason = counting ? "no point of type (1,1)/(3,3) can be moved by the other generators"
                       : "no commuting involutions with equal fixed-point counts";
  return br;
}

struct Q8Fixture {
  std::vector<Q8Linear> linear;
  std::vector<Q8Branch> branches;
  std::vector<long> forced;  // fixed-point counts that survive
};

inline Q8Fixture q8_fixture_solver() {
  Q8Fixture f;
  f.linear = q8_linear_solutions();
  std::set<long> counts;
  for (const auto& s : f.linear) counts.insert(s.s_plus + s.s_minus);
  for (long n : counts) {
    f.branches.push_back(q8_branch(n));
    if (f.branches.back().feasible) f.forced.push_back(n);
  }
  return f;
}

// ----------------------------------------------------- involution fixture

struct SurfaceComponent {
  long genus;
  long selfint;
};

struct InvolutionVerdict {
  bool admissible = false;
  int shape = 0;  // 1 empty, 2 two tori, 3 spheres plus at most one torus
  std::optional<long> t;  // dimension of the 1-eigenspace
  std::vector<std::string> reasons;
};

/// Odd-type involution: Lefschetz 2 + t - (22 - t) = sum chi and G-signature
/// 2(2 - t) = -16 + sum Sigma^2, together with the per-component constraints.
inline InvolutionVerdict involution_fixture_check(const std::vector<SurfaceComponent>& comps) {
  InvolutionVerdict v;
  long chi = 0, self = 0;
  for (const auto& c : comps) {
    chi += 2 - 2 * c.genus;
    self += c.selfint;
  }
  for (long t = 0; t <= 22; ++t) {
    Rational def = Rational(0);
    for (const auto& c : comps) def += surface_defect(2, c.selfint);
    if (lefschetz(t - (22 - t)) == chi && Rational(2 * (2 - t)) == Rational(-16) + def) v.t = t;
  }
  if (!v.t) v.reasons.push_back("no eigenspace dimension satisfies both equations (sum chi + Sigma^2 = " +
                                std::to_string(chi + self) + ")");
  int spheres = 0, tori = 0;
  for (const auto& c : comps) {
    long x = 2 - 2 * c.genus;
    std::string tag = "genus " + std::to_string(c.genus) + " self-intersection " + std::to_string(c.selfint);
    if (c.selfint % 2) v.reasons.push_back(tag + ": odd square in an even lattice");
    if (x + c.selfint != 0) v.reasons.push_back(tag + ": chi + Sigma^2 = " + std::to_string(x + c.selfint));
    if (c.genus >= 2) v.reasons.push_back(tag + ": components of genus >= 1 must be tori of square 0");
    if (c.genus == 0) ++spheres;
    if (c.genus == 1) ++tori;
  }
  if (tori > 2) v.reasons.push_back("more than two tori");
  if (tori == 2 && spheres > 0) v.reasons.push_back("two tori together with spheres");
  v.admissible = v.reasons.empty();
  if (v.admissible) v.shape = comps.empty() ? 1 : (tori == 2 ? 2 : 3);
  return v;
}

// --------------------------------------------------------- Gamma types

struct GammaCheck {
  std::string label;  // affine type, e.g. "A~4"
  std::string lattice;  // root lattice, e.g. "A4"
  bool congruence;
  bool rank_ok;
  bool embeds;
  bool admissible() const { return congruence && rank_ok && embeds; }
};

/// Standard element of order p with the given decomposition, when one is tabulated.
inline std::optional<Isometry> representative(long p, const RepDecomp& d) {
  if (p == 5 && d == RepDecomp{1, 0, 3}) return SignedPerm::from_cycles("(12345)").isometry();
  if (p == 7 && d == RepDecomp{1, 0, 1}) return SignedPerm::from_cycles("(1234567)").isometry();
  if (p == 5 && d == RepDecomp{0, 2, 0}) {
    const auto& f = standard_basis().f;
    return Isometry::word(std::vector<LatticeVec>(f.begin(), f.end())).power(6);
  }
  return std::nullopt;
}

/// Affine diagrams whose root lattice could be fixed by the action on one E8 summand:
/// A~n needs n = -1 mod p, D~n needs n = 4 mod p; the lattice must embed in the fixed roots.
inline std::vector<GammaCheck> gamma_admissibility(long p, const RepDecomp& d) {
  auto g = representative(p, d);
  if (!g) throw std::invalid_argument("no tabulated representative");
  if (!(decompose_element(*g, static_cast<int>(p)) == d)) throw std::logic_error("representative mismatch");
  std::vector<LatticeVec> roots = fixed_roots(*g);
  int frank = d.fixed_rank();
  std::vector<GammaCheck> out;
  auto check = [&](const std::string& aff, char fam, int n, bool cong) {
    GammaCheck c{aff, std::string(1, fam) + std::to_string(n), cong, n <= frank, false};
    if (c.congruence && c.rank_ok) c.embeds = find_subsystem(roots, DynkinType{{fam, n}}).has_value();
    out.push_back(c);
  };
  for (int n = 1; n <= 8; ++n) check("A~" + std::to_string(n), 'A', n, mod(n + 1, p) == 0);
  for (int n = 4; n <= 8; ++n) check("D~" + std::to_string(n), 'D', n, mod(n - 4, p) == 0);
  for (int n = 6; n <= 8; ++n) check("E~" + std::to_string(n), 'E', n, true);
  return out;
}

}  // namespace k3sym
