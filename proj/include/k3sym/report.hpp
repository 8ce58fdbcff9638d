#pragma once

#include "census.hpp"

#include <json.hpp>

#include <chrono>

namespace k3sym {

using Json = nlohmann::ordered_json;

/// One assertion made by a verification run.
struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
  bool operator==(const Check&) const = default;
};

/// Machine-readable record of a run. Field order is fixed so output is byte-deterministic.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json candidates = Json::array();
  Json filters = Json::array();
  Json survivors = Json::array();
  Json timings = Json::object();
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
  void check(const std::string& name, bool pass, const std::string& detail = "") { checks.push_back({name, pass, detail}); }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["candidates"] = candidates;
    j["filters"] = filters;
    j["survivors"] = survivors;
    j["timings"] = timings;
    j["checks"] = Json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["passed"] = passed();
    return j;
  }

  static Report from_json(const Json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.candidates = j.at("candidates");
    r.filters = j.at("filters");
    r.survivors = j.at("survivors");
    r.timings = j.at("timings");
    for (const auto& c : j.at("checks"))
      r.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(), c.at("detail").get<std::string>()});
    return r;
  }

  std::string text() const {
    std::ostringstream os;
    os << command << "\n";
    for (const auto& c : checks) {
      os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) os << ": " << c.detail;
      os << "\n";
    }
    auto list = [&](const char* title, const Json& a) {
      if (a.empty()) return;
      os << title << " (" << a.size() << ")\n";
      for (const auto& x : a) os << "  " << x.dump() << "\n";
    };
    list("candidates", candidates);
    list("filters", filters);
    list("survivors", survivors);
    if (!timings.empty()) os << "timings " << timings.dump() << "\n";
    os << (passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
  }

  bool operator==(const Report& o) const {
    return command == o.command && inputs == o.inputs && candidates == o.candidates && filters == o.filters &&
           survivors == o.survivors && timings == o.timings && checks == o.checks;
  }
};

/// Exact value with its decimal rendering.
inline Json value_json(const CycNum& x, int places = 5) {
  return {{"exact", x.str()}, {"decimal", embed_real(x, places).text}};
}

inline Json value_json(const Rational& x, int places = 5) { return {{"exact", x.str()}, {"decimal", decimal(x, places)}}; }

inline Json points_json(const FixedPointData& d) {
  Json a = Json::array();
  for (const auto& m : d.isolated) a.push_back({m.a, m.b});
  Json s = Json::array();
  for (const auto& y : d.surfaces) s.push_back({{"genus", y.genus}, {"selfint", y.selfint}, {"c", y.c}});
  return {{"p", d.p}, {"isolated", a}, {"surfaces", s}};
}

inline Json filters_json(const std::vector<FilterRecord>& f) {
  Json a = Json::array();
  for (const auto& r : f) a.push_back({{"name", r.name}, {"verdict", r.verdict}, {"detail", r.detail}});
  return a;
}

inline Json counts_json(const P5Counts& c) {
  return {{"uvwA", {c.u, c.v, c.w, c.A}},     {"x", {c.x1, c.x2}},   {"y", {c.y1, c.y2}},
          {"z", {c.z1, c.z2}},               {"v_split", {c.v1, c.v2}}, {"w_split", {c.w1, c.w2}},
          {"A_split", {c.a1, c.a2}}};
}

/// Fills a report from a p = 5 census; candidate ids are their positions in the list.
inline void fill_report(Report& r, const P5Census& c, int places = 5) {
  r.inputs["p"] = 5;
  Json fams = Json::array();
  for (const auto& f : c.families) {
    Json pts = Json::array();
    for (const auto& p : f.points) pts.push_back(p);
    fams.push_back({{"profile", f.profile.str()}, {"family", f.str()}, {"points", pts}});
  }
  r.inputs["stage1"] = fams;
  for (size_t i = 0; i < c.candidates.size(); ++i) {
    const auto& cand = c.candidates[i];
    Json inst = Json::array();
    for (const auto& in : cand.instances) {
      inst.push_back({{"counts", counts_json(in.counts)},
                      {"fixed_points", points_json(in.data)},
                      {"spin", value_json(in.spin, places)},
                      {"d", in.spin_vec.d},
                      {"survives", in.survives}});
      r.filters.push_back({{"candidate", i}, {"A_split", {in.counts.a1, in.counts.a2}}, {"records", filters_json(in.filters)}});
    }
    Json j = {{"id", i},
              {"profile", cand.profile.str()},
              {"affine_family", cand.affine_family},
              {"counts", counts_json(cand.counts)},
              {"instances", inst},
              {"survives", cand.survives}};
    r.candidates.push_back(j);
    if (cand.survives)
      r.survivors.push_back({{"candidate", i},
                             {"profile", cand.profile.str()},
                             {"counts", counts_json(cand.counts)},
                             {"max_tori", cand.max_tori}});
  }
}

inline void fill_report(Report& r, const P7Census& c, int places = 5) {
  r.inputs["p"] = 7;
  r.inputs["profile"] = c.profile.str();
  size_t id = 0;
  for (const auto& s : c.solutions) {
    Json asg = Json::array();
    for (const auto& a : s.signature_ok) {
      asg.push_back({{"k", a.k}, {"spin", value_json(a.spin, places)}, {"d", a.spin_vec.d}, {"survives", a.survives}});
      r.filters.push_back({{"candidate", id}, {"k", a.k}, {"records", filters_json(a.filters)}});
    }
    r.candidates.push_back({{"id", id},
                            {"uvw", {s.u, s.v, s.w}},
                            {"assignments_tried", s.assignments_tried},
                            {"signature_ok", asg}});
    ++id;
  }
  for (const auto& a : c.survivors) {
    Json pts = Json::array();
    for (const auto& m : a.data().canonical()) pts.push_back({m.a, m.b});
    r.survivors.push_back({{"k", a.k}, {"canonical_points", pts}, {"d", a.spin_vec.d}});
  }
}

/// Wall-clock timer that writes into report timings only when enabled.
class Stopwatch {
public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), t0_(std::chrono::steady_clock::now()) {}
  void record(Report& r, const std::string& key) const {
    if (!enabled_) return;
    r.timings[key] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

private:
  bool enabled_;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace k3sym
