#pragma once

#include "kummer.hpp"
#include "report.hpp"

#include <unordered_set>

namespace k3sym {

struct RunConfig {
  int digits = 5;
  size_t budget = 0;  // 0 selects each search's default
  bool timings = false;
  std::vector<std::tuple<std::string, std::string, int>> pair_overrides;  // for lemma-4.2
  std::vector<SurfaceComponent> components;                               // for census involution
};

namespace checks {

inline std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

inline Report lemma_4_2(const RunConfig& cfg) {
  Report r{"verify lemma-4.2"};
  kummer::PairingTable t;
  Json ov = Json::array();
  for (const auto& [a, b, v] : cfg.pair_overrides) {
    t.set(kummer::parse_name(a), kummer::parse_name(b), v);
    ov.push_back({a, b, v});
  }
  r.inputs["pair_overrides"] = ov;
  auto fails = kummer::verify_lattice(t);
  std::map<std::string, std::vector<const kummer::CheckFailure*>> by;
  for (const auto& f : fails) by[f.what].push_back(&f);
  for (const char* what : {"Gram of list 1", "Gram of list 2", "lists orthogonal", "orthogonal to fibres", "fibres isotropic"}) {
    auto it = by.find(what);
    if (it == by.end()) {
      r.check(what, true);
      continue;
    }
    const auto* f = it->second.front();
    r.check(what, false,
            f->left + "." + f->right + " = " + std::to_string(f->actual) + ", expected " + std::to_string(f->expected) + " (" +
                std::to_string(it->second.size()) + " mismatches)");
  }
  auto rad = kummer::radical(t);
  r.inputs["span_rank"] = rad.span_rank;
  r.inputs["gram_rank"] = rad.gram_rank;
  r.check("radical spanned by the fibres", rad.radical_is_fibres,
          "span rank " + std::to_string(rad.span_rank) + ", Gram rank " + std::to_string(rad.gram_rank));
  return r;
}

inline Report lemma_4_5(const RunConfig&) {
  Report r{"verify lemma-4.5"};
  const std::map<int, size_t> expect{{3, 4}, {5, 2}, {7, 1}};
  for (auto [p, n] : expect) {
    auto c = lemma45_census(p);
    std::vector<std::string> s;
    for (const auto& d : c) s.push_back(d.str());
    r.inputs["census"][std::to_string(p)] = s;
    r.check("p = " + std::to_string(p) + " decompositions", c.size() == n, join(s));
    // sampled elements of order p decompose inside the census
    bool ok = true;
    std::string bad;
    for (const auto& g : sample_order_p(p, 4, 1000 + p)) {
      RepDecomp d = decompose_element(g, p);
      if (std::find(c.begin(), c.end(), d) == c.end()) ok = false, bad = g.str() + " -> " + d.str();
    }
    r.check("p = " + std::to_string(p) + " sampled elements", ok, bad);
  }
  return r;
}

inline Report lemma_5_1(const RunConfig&) {
  Report r{"verify lemma-5.1"};
  const auto& b = standard_basis();
  auto w = involution_class(Isometry::word({b.f[0], b.f[2], b.f[4], b.f[6]}));
  bool witness = w.witness && *w.witness == b.f[7] && w.witness_pairing == 1;
  r.check("w(f1)w(f3)w(f5)w(f7) has witness f8 with pairing 1", w.label == "4A" && witness,
          w.label + (w.witness ? ", witness " + w.witness->str() + ", pairing " + std::to_string(w.witness_pairing) : ""));
  Isometry prime = Isometry::word({b.f[0], b.f[2], b.f[4], b.f7p});
  bool even = true;
  for (const auto& x : e8_roots()) even &= ipair(prime(x), x) % 2 == 0;
  r.check("w(f1)w(f3)w(f5)w(f7') pairs every root evenly", even && involution_class(prime).label == "4A'");
  for (const auto& [word, label] : std::vector<std::pair<std::vector<LatticeVec>, std::string>>{
           {{b.f[0]}, "1A'"}, {{b.f[0], b.f[2]}, "2A"}, {{b.f[0], b.f[2], b.f[4]}, "3A"}}) {
    auto c = involution_class(Isometry::word(word));
    r.check("class " + label, c.label == label && c.witness.has_value(), c.label);
  }
  return r;
}

inline Report lemma_5_2(const RunConfig&) {
  Report r{"verify lemma-5.2"};
  size_t agree = 0, total = 0;
  for (const auto& v : involutions_of_H()) {
    if (v == -SignedPerm::identity()) continue;
    ++total;
    agree += (involution_class(v).label == "4A'") == is_4Aprime_by_criterion(v);
  }
  r.check("4A' criterion agrees with root parity on all involutions of H", agree == total,
          std::to_string(agree) + "/" + std::to_string(total));
  r.check("number of 4A' elements", four_a_prime_elements().size() == 70 + 105 * 8,
          std::to_string(four_a_prime_elements().size()));
  std::unordered_set<SignedPerm, SignedPermHash> prime(four_a_prime_elements().begin(), four_a_prime_elements().end());
  std::map<std::string, std::set<long>> seen;
  std::string err;
  for_each_H([&](const SignedPerm& v) {
    if (!prime.count(v * v)) return;
    try {
      auto c = classify_order4(v);
      seen[c.normal_form].insert(c.trace);
    } catch (const std::exception& e) {
      if (err.empty()) err = e.what();
    }
  });
  r.check("every order-4 element with square 4A' has a normal form", err.empty(), err);
  for (const auto& [form, tr] : seen) {
    std::vector<std::string> s;
    for (long t : tr) s.push_back(std::to_string(t));
    r.candidates.push_back({{"normal_form", form}, {"traces", s}});
  }
  r.check("normal forms found", seen.size() == 4, std::to_string(seen.size()));
  return r;
}

inline Report lemma_5_3(const RunConfig&) {
  Report r{"verify lemma-5.3"};
  Q8Fixture f = q8_fixture_solver();
  std::set<std::pair<long, long>> s;
  for (const auto& l : f.linear) {
    s.insert({l.s_plus, l.s_minus});
    r.candidates.push_back({{"t", l.t}, {"s_plus", l.s_plus}, {"s_minus", l.s_minus}});
  }
  r.check("linear system solutions", s == std::set<std::pair<long, long>>{{4, 0}, {4, 2}, {4, 4}});
  for (const auto& b : f.branches)
    r.filters.push_back({{"fixed_points", b.n}, {"feasible", b.feasible}, {"reason", b.reason}});
  r.check("forced fixed-point count", f.forced == std::vector<long>{4}, f.forced.empty() ? "none" : std::to_string(f.forced[0]));
  return r;
}

inline Report fixed_root_check(long p, const RunConfig&) {
  Report r{p == 5 ? "verify lemma-6.3" : "verify lemma-6.5"};
  std::string cyc = "(";
  for (long i = 1; i <= p; ++i) cyc += std::to_string(i);
  cyc += ")";
  Isometry g = SignedPerm::from_cycles(cyc).isometry();
  auto fr = fixed_roots(g);
  std::set<LatticeVec> got(fr.begin(), fr.end()), expect;
  if (p == 5) {
    for (int i = 6; i <= 8; ++i)
      for (int j = i + 1; j <= 8; ++j)
        for (int s : {1, -1})
          for (int t : {1, -1}) expect.insert(LatticeVec::e(i) * s + LatticeVec::e(j) * t);
    for (const auto& x : e8_roots())
      if (x.d[0] % 2 && x.d[0] == x.d[1] && x.d[1] == x.d[2] && x.d[2] == x.d[3] && x.d[3] == x.d[4]) expect.insert(x);
  } else {
    expect = {LatticeVec::half({1, 1, 1, 1, 1, 1, 1, 1}), LatticeVec::half({-1, -1, -1, -1, -1, -1, -1, -1})};
  }
  r.inputs["element"] = cyc;
  r.check("fixed roots", got == expect, std::to_string(got.size()) + " roots");
  auto has = [&](const char* t) { return find_subsystem(fr, parse_dynkin(t)).has_value(); };
  if (p == 5) {
    auto e = [](int i) { return LatticeVec::e(i); };
    std::vector<LatticeVec> w{e(6) - e(7), LatticeVec::half({-1, -1, -1, -1, -1, -1, 1, 1}),
                              LatticeVec::half({1, 1, 1, 1, 1, -1, -1, 1}), e(6) + e(7)};
    bool fixed = true;
    for (const auto& x : w) fixed &= g(x) == x;
    r.check("explicit A4 witness", fixed && root_subsystem_type(w) == "A4");
    r.check("A4 found", has("A4"));
    r.check("no D4", !has("D4"));
    r.check("no A2+A2", !has("A2+A2"));
  } else {
    r.check("no A2", !has("A2"));
  }
  Json adm = Json::array();
  auto d = decompose_element(g, static_cast<int>(p));
  for (const auto& c : gamma_admissibility(p, d))
    adm.push_back({{"type", c.label}, {"congruence", c.congruence}, {"rank_ok", c.rank_ok}, {"embeds", c.embeds}});
  r.filters = adm;
  return r;
}

inline Report lemma_6_4(const RunConfig& cfg) {
  Report r{"verify lemma-6.4"};
  CycNum ratio = cot_product(5, 1, 4) / cot_product(5, 1, 3);  // cot(pi/5)/cot(2pi/5)
  std::string mp = minimal_polynomial(ratio).str("t");
  r.inputs["value"] = value_json(ratio, cfg.digits);
  r.check("minimal polynomial of cot(pi/5)/cot(2pi/5)", mp == "t^2 - 4*t - 1", mp);
  CycNum c = (cyc_make(10, 1) + cyc_make(10, -1)) * CycNum(make_rational(1, 2));
  CycNum lhs = CycNum(4) * c * c - CycNum(2) * c - CycNum(1);
  r.check("4t^2 - 2t - 1 vanishes at cos(pi/5)", lhs == CycNum(0), lhs.str());
  return r;
}

inline Report remark_4_7(const RunConfig&) {
  Report r{"verify remark-4.7"};
  // g x = x, g y = x - y, with the invariant line <x>
  ZMatrix g{{1, 1}, {0, -1}};
  auto res = lift_summand(g, 2, ZMatrix{{1}, {0}}, {0, 1}, SummandType::Cyclotomic);
  r.check("cyclotomic quotient of the 2x2 example does not lift", !res.exists, res.diagnosis);
  r.check("the 2x2 example is free", decompose_module(g, 2) == RepDecomp{1, 0, 0});
  // Z + Z[mu_3]: the trivial generator lifts
  ZMatrix h{{1, 0, 0}, {0, 0, -1}, {0, 1, -1}};
  auto triv = lift_summand(h, 3, ZMatrix{{0, 0}, {1, 0}, {0, 1}}, {1, 1, 0}, SummandType::Trivial);
  r.check("trivial summand lifts", triv.exists && h.apply(triv.lift) == triv.lift, triv.diagnosis);
  // Z[Z_3] + Z: the regular generator lifts
  ZMatrix q{{0, 0, 1, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  auto reg = lift_summand(q, 3, ZMatrix{{0}, {0}, {0}, {1}}, {1, 0, 0, 5}, SummandType::Regular);
  r.check("regular summand lifts", reg.exists && reg.generators.size() == 3, reg.diagnosis);
  return r;
}

inline Report theorem_1_7(const RunConfig& cfg) {
  Report r{"verify theorem-1.7"};
  Stopwatch sw(cfg.timings);
  auto z = cfg.budget ? search_z2_4_obstruction(cfg.budget) : search_z2_4_obstruction();
  sw.record(r, "z2_4");
  r.inputs["z2_4_averaged_dimension"] = value_json(z.averaged_dimension, cfg.digits);
  r.check("(Z2)^4 search within budget", !z.budget_exceeded, std::to_string(z.nodes) + " nodes");
  r.check("(Z2)^4 averaged dimension is 1/2", z.averaged_dimension == make_rational(1, 2), z.averaged_dimension.str());
  r.check("no (Z2)^4 of 4A' elements", !z.found_rank4);
  auto q = cfg.budget ? search_q8_obstruction(cfg.budget) : search_q8_obstruction();
  sw.record(r, "total");
  for (const auto& t : q.triples) r.candidates.push_back({t.i, t.j, t.k});
  r.check("Q8 search within budget", !q.budget_exceeded, std::to_string(q.images) + " images");
  r.check("no pair of Q8 images with traces summing to -4", !q.sum_minus4.has_value());
  return r;
}

inline Report census_p5(const RunConfig& cfg) {
  Report r{"census p5"};
  Stopwatch sw(cfg.timings);
  RochlinTable t = RochlinTable::load(RochlinTable::default_path());
  P5Census c = refine_p5(&t);
  sw.record(r, "total");
  fill_report(r, c, cfg.digits);
  r.check("stage-1 families", c.families.size() == 3,
          c.families.size() == 3 ? c.families[0].str() + "; " + c.families[1].str() : "");
  for (const auto& cand : c.candidates) {
    bool same = true;
    for (const auto& in : cand.instances) same &= in.survives == cand.survives;
    r.check("splits agree: " + cand.counts.str(), same);
  }
  r.check("at least one survivor", !r.survivors.empty());
  return r;
}

inline Report census_p7(const RunConfig& cfg) {
  Report r{"census p7"};
  Stopwatch sw(cfg.timings);
  P7Census c = solve_p7();
  sw.record(r, "total");
  fill_report(r, c, cfg.digits);
  bool structure = !c.survivors.empty();
  for (const auto& a : c.survivors) {
    bool m = false;
    for (long k = 1; k < 7; ++k) m |= a.data().canonical() == p7_structure(k);
    structure &= m;
  }
  r.check("survivors have the ten-point structure", structure, std::to_string(c.survivors.size()) + " assignments");
  return r;
}

inline Report census_q8(const RunConfig& cfg) {
  Report r = lemma_5_3(cfg);
  r.command = "census q8";
  return r;
}

inline Report census_involution(const RunConfig& cfg) {
  Report r{"census involution"};
  std::vector<std::pair<std::string, std::vector<SurfaceComponent>>> cases;
  if (cfg.components.empty()) {
    cases = {{"empty", {}},
             {"two tori", {{1, 0}, {1, 0}}},
             {"spheres and a torus", {{0, -2}, {0, -2}, {1, 0}}},
             {"genus 2, square -2", {{2, -2}}}};
  } else {
    cases = {{"input", cfg.components}};
  }
  for (const auto& [name, comps] : cases) {
    auto v = involution_fixture_check(comps);
    Json cs = Json::array();
    for (const auto& c : comps) cs.push_back({c.genus, c.selfint});
    r.candidates.push_back({{"name", name},
                            {"components", cs},
                            {"admissible", v.admissible},
                            {"shape", v.shape},
                            {"t", v.t ? Json(*v.t) : Json()},
                            {"reasons", v.reasons}});
    if (v.admissible) r.survivors.push_back(name);
  }
  if (cfg.components.empty()) {
    r.check("empty set admissible", r.candidates[0]["shape"] == 1);
    r.check("two tori admissible", r.candidates[1]["shape"] == 2);
    r.check("spheres and a torus admissible", r.candidates[2]["shape"] == 3);
    r.check("genus 2 component rejected", r.candidates[3]["admissible"] == false);
  }
  return r;
}

/// Defect tables for p = 5, 7 with exact and decimal values.
inline Report defect_table(const RunConfig& cfg) {
  Report r{"defect-table"};
  for (long p : {5L, 7L}) {
    for (long q = 1; q < p; ++q)
      r.candidates.push_back({{"p", p}, {"q", q}, {"defect", value_json(signature_defect(p, q), cfg.digits)}});
    for (const auto& f : group_facts(p)) {
      Json sign = Json::array(), spin = Json::array();
      for (long k = 1; k <= (p - 1) / 2; ++k) {
        sign.push_back(value_json(f.sign[k], cfg.digits));
        spin.push_back(value_json(f.spin[k], cfg.digits));
      }
      r.filters.push_back({{"p", p}, {"type", f.pattern.name}, {"chi", f.chi}, {"defect", value_json(f.defect, cfg.digits)},
                           {"sign_k", sign}, {"spin_k", spin}});
    }
  }
  r.check("signature_defect(5,1) = -4", signature_defect(5, 1) == -4);
  r.check("signature_defect(5,2) = 0", signature_defect(5, 2) == 0);
  return r;
}

}  // namespace checks

struct Command {
  std::string name;
  bool in_selftest;
  std::function<Report(const RunConfig&)> run;
};

inline const std::vector<Command>& verify_commands() {
  static const std::vector<Command> c = {
      {"lemma-4.2", true, checks::lemma_4_2},
      {"lemma-4.5", true, checks::lemma_4_5},
      {"lemma-5.1", true, checks::lemma_5_1},
      {"lemma-5.2", false, checks::lemma_5_2},
      {"lemma-5.3", true, checks::lemma_5_3},
      {"lemma-6.3", true, [](const RunConfig& r) { return checks::fixed_root_check(5, r); }},
      {"lemma-6.4", true, checks::lemma_6_4},
      {"lemma-6.5", true, [](const RunConfig& r) { return checks::fixed_root_check(7, r); }},
      {"remark-4.7", true, checks::remark_4_7},
      {"theorem-1.7", false, checks::theorem_1_7},
  };
  return c;
}

inline const std::vector<Command>& census_commands() {
  static const std::vector<Command> c = {
      {"p5", true, checks::census_p5},
      {"p7", true, checks::census_p7},
      {"q8", true, checks::census_q8},
      {"involution", true, checks::census_involution},
  };
  return c;
}

}  // namespace k3sym
