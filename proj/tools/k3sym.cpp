// Command-line front end: verification runs, censuses and report emission.
// Exit status: 0 pass, 1 assertion failure, 2 usage error.

#include <k3sym/checks.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>

using namespace k3sym;

namespace {

const Command* find(const std::vector<Command>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> names(const std::vector<Command>& cs) {
  std::vector<std::string> v;
  for (const auto& c : cs) v.push_back(c.name);
  return v;
}

// "S2(1,1),S3(1,1)=1"
std::tuple<std::string, std::string, int> parse_override(const std::string& s) {
  static const std::regex re(R"(^\s*(S\d?\([-,0-9]+\))\s*,\s*(S\d?\([-,0-9]+\))\s*=\s*(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw CLI::ValidationError("--pair-override", "expected A,B=value, got " + s);
  kummer::parse_name(m[1]);
  kummer::parse_name(m[2]);
  return {m[1], m[2], std::stoi(m[3])};
}

// "0:-2,1:0" as genus:self-intersection pairs
std::vector<SurfaceComponent> parse_components(const std::string& s) {
  std::vector<SurfaceComponent> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--components", "expected genus:selfint, got " + item);
    out.push_back({std::stol(item.substr(0, colon)), std::stol(item.substr(colon + 1))});
  }
  return out;
}

Report selftest(const RunConfig& cfg) {
  Report r{"selftest"};
  auto absorb = [&](const Report& sub) {
    for (const auto& c : sub.checks) r.checks.push_back({sub.command + ": " + c.name, c.pass, c.detail});
  };
  for (const auto& c : verify_commands())
    if (c.in_selftest) absorb(c.run(cfg));
  for (const auto& c : census_commands())
    if (c.in_selftest) absorb(c.run(cfg));
  absorb(checks::defect_table(cfg));
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for finite symmetries of elliptic K3-type surfaces"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "text", out_path;
  std::vector<std::string> overrides;
  std::string components;
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--digits", cfg.digits, "decimal places in reports")->check(CLI::Range(0, 60));
  app.add_option("--budget", cfg.budget, "node budget for the exhaustive searches")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "write the report to this file");
  app.add_flag("--timings", cfg.timings, "record wall-clock timings in the report");
  app.add_option("--pair-override", overrides, "replace an intersection number, e.g. \"S2(1,1),S3(1,1)=1\"");
  app.add_option("--components", components, "fixed surfaces for census involution, e.g. \"0:-2,1:0\"");

  std::string target;
  auto* verify = app.add_subcommand("verify", "verify one result");
  verify->add_option("check", target)->required()->check(CLI::IsMember(names(verify_commands())));
  auto* census = app.add_subcommand("census", "run a fixed-point census");
  census->add_option("kind", target)->required()->check(CLI::IsMember(names(census_commands())));
  auto* defects = app.add_subcommand("defect-table", "print signature defects and group contributions");
  auto* self = app.add_subcommand("selftest", "run the fast checks");
  for (auto* sub : {verify, census, defects, self}) sub->fallthrough();

  try {
    app.parse(argc, argv);
    for (const auto& o : overrides) cfg.pair_overrides.push_back(parse_override(o));
    if (!components.empty()) cfg.components = parse_components(components);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  Report rep;
  try {
    if (*verify) rep = find(verify_commands(), target)->run(cfg);
    else if (*census) rep = find(census_commands(), target)->run(cfg);
    else if (*defects) rep = checks::defect_table(cfg);
    else rep = selftest(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::string text = format == "json" ? rep.to_json().dump(2) + "\n" : rep.text();
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    f << text;
  }
  if (const Check* c = rep.first_failure()) {
    std::cerr << "first failure: " << c->name << (c->detail.empty() ? "" : ": " + c->detail) << "\n";
    return 1;
  }
  return 0;
}
