// Copyright 2026 The cakecut Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cakecut/families.hpp"
#include "cakecut/nash.hpp"
#include "cakecut/report.hpp"
#include "cakecut/reproduce.hpp"
#include "cakecut/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace cakecut;

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kInput = 2;

std::vector<Rational> parse_menu(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw ParseError("--densities: empty list");
  for (const Rational& d : out)
    if (d < 0) throw ParseError("--densities: negative density " + to_string(d));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cake-cutting mechanisms and obvious-manipulation analysis"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string grid_h = "1/20";
  std::string densities = "0,1,2,4";
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--grid-h", grid_h, "Grid step of the type families, e.g. 1/20");
    sub->add_option("--densities", densities, "Comma-separated density menu");
  };

  std::string scenario_path;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario file");
  run_cmd->add_option("file", scenario_path, "Scenario JSON")->required();
  common(run_cmd);

  std::string target;
  CLI::App* repro_cmd = app.add_subcommand("reproduce", "Run a canned reproduction and assert its claims");
  std::vector<std::string> targets;
  for (std::string_view t : reproduce_targets()) targets.emplace_back(t);
  repro_cmd->add_option("target", target, "Reproduction target")->required()->check(CLI::IsMember(targets));
  common(repro_cmd);

  std::string mechanism = "leftmost-leaves";
  std::size_t n = 2;
  std::string type_file;
  CLI::App* cert_cmd = app.add_subcommand("certify", "Search a mechanism for obvious manipulations on the grid");
  cert_cmd->add_option("--mechanism", mechanism, "Mechanism name");
  cert_cmd->add_option("--n", n, "Number of agents")->check(CLI::PositiveNumber);
  cert_cmd->add_option("--type-file", type_file, "True type of agent 0 as a JSON list of [start, end, density]");
  common(cert_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  try {
    FamilySpec defaults{parse_rational(grid_h), parse_menu(densities)};
    families::check_grid_step(defaults.h);
    const report::Format fmt = format == "table" ? report::Format::Table : report::Format::Json;

    if (*run_cmd) {
      Scenario s = load_scenario(scenario_path, defaults);
      std::cout << report::render(report::run_scenario(s), fmt);
      return kOk;
    }
    if (*repro_cmd) {
      Reproduction r = reproduce(target, defaults);
      std::cout << report::render(r.to_json(), fmt);
      for (const Check& c : r.checks)
        if (!c.passed) std::cerr << "assertion failed: " << c.claim << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
      return r.passed() ? kOk : kAssertion;
    }

    const auto m = parse_mechanism(mechanism);
    if (!m) throw ParseError("--mechanism: unknown mechanism '" + mechanism + "'");
    check_arity(*m, n);
    const Valuation true_type = type_file.empty() ? Valuation::uniform() : parse_valuation_text(read_file(type_file));
    if (*m == MechanismId::LeftmostLeaves) {
      NomCertificate c = certify_nom_leftmost_leaves(n, true_type, defaults.h, defaults.density_menu);
      std::cout << report::render(report::certificate(c), fmt);
      return c.passed ? kOk : kAssertion;
    }
    report::ordered_json j;
    j["mechanism"] = mechanism;
    j["n"] = n;
    j["h"] = to_string(defaults.h);
    auto found = find_obvious_manipulation(*m, 0, n, true_type, grid_candidates(defaults.h, defaults.density_menu),
                                           grid_adversaries(defaults.h, {Rational(1, 100), Rational(1, 1000)}),
                                           SearchMode::Best);
    j["obvious_manipulation"] = found ? report::manipulation(*found) : report::ordered_json();
    std::cout << report::render(j, fmt);
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ArityError& e) {
    std::cerr << "arity error: " << e.what() << "\n";
    return kInput;
  } catch (const Unsatisfiable& e) {
    std::cerr << "unsatisfiable query: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const nash::NonConvergence& e) {
    std::cerr << "solver did not converge: " << e.what() << "\n";
    return kAssertion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAssertion;
  }
}
