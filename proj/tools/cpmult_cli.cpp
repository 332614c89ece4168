// Copyright 2026 The cpmult Authors
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

// cpmult command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cpmult/cpmult.h"

namespace {

constexpr int kInputError = 2;

struct InputError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Settings {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string output;
  std::string config;
};

// Flags win over per-command config entries, which win over global config entries.
cpm_config resolve(const Settings& s, const std::string& command) {
  cpm_config cfg = cpm_default_config();
  if (!s.config.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(s.config));
      if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
      if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("commands") && j["commands"].contains(command)) {
        const auto& c = j["commands"][command];
        if (c.contains("tol")) cfg.tol = c["tol"].get<double>();
        if (c.contains("seed")) cfg.seed = c["seed"].get<std::uint64_t>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw InputError{"config " + s.config + ": " + e.what()};
    }
  }
  if (s.tol) cfg.tol = *s.tol;
  if (s.seed) cfg.seed = *s.seed;
  if (!(cfg.tol > 0.0)) throw InputError{"tolerance must be positive"};
  return cfg;
}

int finish(cpm_status st, cpm_report* rep, const Settings& s) {
  if (st != CPM_OK) {
    std::cerr << "cpmult: " << cpm_status_name(st) << ": " << cpm_last_error() << "\n";
    return kInputError;
  }
  const std::string body = s.format == "text" ? cpm_report_text(rep) : cpm_report_json(rep);
  const int code = cpm_report_exit_code(rep);
  cpm_report_free(rep);
  if (s.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(s.output, std::ios::binary);
    if (!out) {
      std::cerr << "cpmult: cannot write " << s.output << "\n";
      return kInputError;
    }
    out << body;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify complete positivity of Schur and Herz-Schur multipliers on finite crossed products"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  double tol = 0.0;
  std::uint64_t seed = 0;
  auto* tol_opt = app.add_option("--tol", tol, "tolerance for every residual threshold (default 1e-9)");
  auto* seed_opt = app.add_option("--seed", seed, "seed for sampled routes (default 0)");
  app.add_option("--format", s.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output", s.output, "write the report here instead of stdout");
  app.add_option("--config", s.config, "JSON config: {tol, seed, commands: {<name>: {tol, seed}}}")
      ->check(CLI::ExistingFile);

  std::string system, second, third, element, mode;

  auto* validate = app.add_subcommand("validate", "check the group, action and trace invariants of a system");
  validate->add_option("system", system, "system file")->required();

  auto* check_schur = app.add_subcommand("check-schur", "decide positive type of a Schur multiplier");
  check_schur->add_option("system", system, "system file (its algebra is used)")->required();
  check_schur->add_option("phi", second, "Schur multiplier file")->required();

  auto* check_hs = app.add_subcommand("check-hs", "certify complete positivity of a Herz-Schur multiplier");
  check_hs->add_option("system", system, "system file")->required();
  check_hs->add_option("multiplier", second, "multiplier file")->required();

  auto* crossed = app.add_subcommand("crossed", "structural report on the crossed product of a system");
  crossed->add_option("system", system, "system file")->required();
  crossed->add_option("--element", element, "crossed-product element file to synthesize");

  auto* approx = app.add_subcommand("approx", "per-family approximation report");
  approx->add_option("mode", mode, "report kind")->required()->check(CLI::IsMember({"haagerup", "nuclearity"}));
  approx->add_option("system", system, "system file")->required();
  approx->add_option("family", second, "family file")->required();

  auto* amenable = app.add_subcommand("amenable", "check amenable-action data and build its multiplier");
  amenable->add_option("system", system, "system file")->required();
  amenable->add_option("T", second, "amenable data file")->required();
  amenable->add_option("phi", third, "unital CP map file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  if (*tol_opt) s.tol = tol;
  if (*seed_opt) s.seed = seed;

  try {
    cpm_report* rep = nullptr;
    cpm_status st = CPM_ERR_ARGUMENT;
    if (*validate) {
      const cpm_config cfg = resolve(s, "validate");
      st = cpm_cmd_validate(&cfg, read_file(system).c_str(), &rep);
    } else if (*check_schur) {
      const cpm_config cfg = resolve(s, "check-schur");
      st = cpm_cmd_check_schur(&cfg, read_file(system).c_str(), read_file(second).c_str(), &rep);
    } else if (*check_hs) {
      const cpm_config cfg = resolve(s, "check-hs");
      st = cpm_cmd_check_hs(&cfg, read_file(system).c_str(), read_file(second).c_str(), &rep);
    } else if (*crossed) {
      const cpm_config cfg = resolve(s, "crossed");
      const std::string el = element.empty() ? std::string() : read_file(element);
      st = cpm_cmd_crossed(&cfg, read_file(system).c_str(), element.empty() ? nullptr : el.c_str(), &rep);
    } else if (*approx) {
      const cpm_config cfg = resolve(s, "approx");
      st = cpm_cmd_approx(&cfg, read_file(system).c_str(), read_file(second).c_str(), mode.c_str(), &rep);
    } else if (*amenable) {
      const cpm_config cfg = resolve(s, "amenable");
      st = cpm_cmd_amenable(&cfg, read_file(system).c_str(), read_file(second).c_str(), read_file(third).c_str(),
                            &rep);
    }
    return finish(st, rep, s);
  } catch (const InputError& e) {
    std::cerr << "cpmult: " << e.message << "\n";
    return kInputError;
  }
}
