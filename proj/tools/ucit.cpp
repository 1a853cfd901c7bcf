// Copyright 2026 The ucit Authors
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

#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ucit/construct.hpp"
#include "ucit/dsl.hpp"
#include "ucit/enumerate.hpp"
#include "ucit/suite_io.hpp"
#include "ucit/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitInternal = 3;

struct Pipeline {
  ucit::ModelDocument doc;
  ucit::SpaceEncoding enc;
  ucit::Criterion criterion;
  ucit::RequirementSet reqs;
};

Pipeline run_pipeline(const std::string& model_path, int jobs) {
  Pipeline p;
  p.doc = ucit::load_model(model_path);
  p.enc = ucit::compile(p.doc);
  p.criterion = ucit::criterion_of(p.doc);
  p.reqs = ucit::enumerate(p.criterion, p.enc, jobs);
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ucit::Error("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ucit::Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ucit::Error("failed writing '" + path + "'");
}

const char* kind_name(ucit::RequirementKind kind) {
  return kind == ucit::RequirementKind::ValueTuple ? "value-tuple" : "ordering";
}

bool is_csv_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

int run_enumerate(const std::string& model_path, int jobs, bool as_json) {
  const Pipeline p = run_pipeline(model_path, jobs);
  if (as_json) {
    nlohmann::ordered_json out;
    out["criterion"] = ucit::to_string(p.criterion);
    out["candidates"] = p.reqs.candidates;
    out["invalid"] = p.reqs.invalid;
    out["duplicates"] = p.reqs.duplicates;
    out["requirements"] = nlohmann::ordered_json::array();
    for (const ucit::Requirement& r : p.reqs.requirements)
      out["requirements"].push_back(
          {{"id", r.id}, {"kind", kind_name(r.kind)}, {"descriptor", r.descriptor}});
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "criterion: " << ucit::to_string(p.criterion) << '\n';
    std::cout << "candidates: " << p.reqs.candidates << '\n';
    std::cout << "invalid: " << p.reqs.invalid << '\n';
    std::cout << "duplicates: " << p.reqs.duplicates << '\n';
    std::cout << "requirements: " << p.reqs.valid() << '\n';
    for (const ucit::Requirement& r : p.reqs.requirements)
      std::cout << "  " << r.id << ". " << r.descriptor << '\n';
  }
  return kExitOk;
}

int run_generate(const std::string& model_path, int jobs, std::uint64_t seed,
                 const std::string& order, const std::string& out_path,
                 const std::string& format) {
  Pipeline p = run_pipeline(model_path, jobs);
  ucit::Policy policy;
  policy.order = order == "shuffled" ? ucit::RequirementOrder::Shuffled
                                     : ucit::RequirementOrder::AsEnumerated;
  policy.seed = seed;
  ucit::UcitObject object = ucit::build(p.enc, p.reqs, policy);
  object.metadata.model_hash = ucit::model_hash_hex(p.doc);
  object.metadata.criterion = ucit::to_string(p.criterion);

  write_output(out_path, format == "csv" ? ucit::suite_to_csv(object, p.enc)
                                         : ucit::suite_to_json(object));
  std::cerr << "generated " << object.tests.size() << " tests for " << p.reqs.valid()
            << " requirements\n";
  return kExitOk;
}

int run_verify(const std::string& model_path, const std::string& suite_path, int jobs,
               bool as_json, bool quiet) {
  const Pipeline p = run_pipeline(model_path, jobs);
  const std::string text = read_file(suite_path);
  const ucit::UcitObject object = is_csv_path(suite_path)
                                      ? ucit::suite_from_csv(text, p.enc)
                                      : ucit::suite_from_json(text);
  if (!object.metadata.model_hash.empty() &&
      object.metadata.model_hash != ucit::model_hash_hex(p.doc))
    std::cerr << "warning: suite was generated from a different model (hash mismatch)\n";

  const ucit::CoverageReport report = ucit::verify(object, p.reqs, p.enc);
  if (!quiet) {
    if (as_json) std::cout << ucit::report_to_json(report);
    else std::cout << ucit::coverage_stats(report, p.reqs);
  }
  return report.full_coverage() ? kExitOk : kExitVerification;
}

int run_stats(const std::string& model_path, int jobs) {
  const Pipeline p = run_pipeline(model_path, jobs);
  std::cout << "kind: " << ucit::to_string(p.enc.kind) << '\n';
  std::cout << "criterion: " << ucit::to_string(p.criterion) << '\n';
  std::cout << "atoms: " << p.enc.atoms.size() << '\n';
  std::cout << "cnf: " << p.enc.cnf.var_count << " variables, " << p.enc.cnf.clauses.size()
            << " clauses\n";
  std::cout << "candidates: " << p.reqs.candidates << '\n';
  std::cout << "invalid: " << p.reqs.invalid << '\n';
  std::cout << "duplicates: " << p.reqs.duplicates << '\n';
  std::cout << "requirements: " << p.reqs.valid() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unified combinatorial interaction testing"};
  app.require_subcommand(1);

  std::string model_path;
  std::string suite_path;
  std::string out_path;
  std::string order = "as-enumerated";
  std::string format = "json";
  std::uint64_t seed = 0;
  int jobs = 1;
  bool as_json = false;
  bool quiet = false;

  const auto add_jobs = [&jobs](CLI::App* cmd) {
    cmd->add_option("--jobs", jobs, "Worker threads for enumeration (output is identical)")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* cmd_enumerate =
      app.add_subcommand("enumerate", "List the valid coverage requirements of a model");
  cmd_enumerate->add_option("model", model_path, "Model document (.ucit)")->required();
  cmd_enumerate->add_flag("--json", as_json, "Emit JSON instead of text");
  add_jobs(cmd_enumerate);

  CLI::App* cmd_generate =
      app.add_subcommand("generate", "Generate a covering test suite for a model");
  cmd_generate->add_option("model", model_path, "Model document (.ucit)")->required();
  cmd_generate->add_option("--seed", seed, "Shuffle seed")->envname("UCIT_SEED");
  cmd_generate->add_option("--order", order, "Requirement processing order")
      ->check(CLI::IsMember({"as-enumerated", "shuffled"}));
  cmd_generate->add_option("--out", out_path, "Output path (default: stdout)");
  cmd_generate->add_option("--format", format, "Suite format")
      ->check(CLI::IsMember({"json", "csv"}));
  add_jobs(cmd_generate);

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "Check a suite for validity and full coverage");
  cmd_verify->add_option("model", model_path, "Model document (.ucit)")->required();
  cmd_verify->add_option("suite", suite_path, "Suite file (.json or .csv)")->required();
  cmd_verify->add_flag("--json", as_json, "Emit the full report as JSON");
  cmd_verify->add_flag("--quiet", quiet, "Suppress the report; exit code only");
  add_jobs(cmd_verify);

  CLI::App* cmd_stats = app.add_subcommand("stats", "Print model and enumeration statistics");
  cmd_stats->add_option("model", model_path, "Model document (.ucit)")->required();
  add_jobs(cmd_stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_enumerate->parsed()) return run_enumerate(model_path, jobs, as_json);
    if (cmd_generate->parsed())
      return run_generate(model_path, jobs, seed, order, out_path, format);
    if (cmd_verify->parsed()) return run_verify(model_path, suite_path, jobs, as_json, quiet);
    return run_stats(model_path, jobs);
  } catch (const ucit::Error& e) {
    // Errors the engine flags as its own bugs are internal; everything else
    // reports a problem with the user's input.
    const bool internal = std::strncmp(e.what(), "internal:", 9) == 0;
    std::cerr << "error: " << e.what() << '\n';
    return internal ? kExitInternal : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
