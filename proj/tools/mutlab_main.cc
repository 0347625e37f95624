// Copyright 2026 The Mutlab Authors
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

// Command-line front end: analyze, compare, mutants, corpus and fuzz.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mutlab/fuzz.h"
#include "mutlab/mutagen.h"
#include "mutlab/parser.h"
#include "mutlab/report.h"
#include "mutlab/strategies.h"

namespace mutlab {
namespace {

namespace fs = std::filesystem;

constexpr int kExitInvalidTest = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconsistent = 3;

constexpr char kBudgetEnv[] = "MUTLAB_BUDGET_MULT";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Subject LoadSubject(const std::string& path) {
  std::string source = ReadFile(path);
  try {
    return PrepareSubject(fs::path(path).stem().string(), source);
  } catch (const SyntaxError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

// The flag wins over the environment; both must be at least 1.
std::int64_t BudgetMult(std::int64_t flag) {
  std::int64_t mult = 10;
  if (const char* env = std::getenv(kBudgetEnv); env != nullptr && *env) {
    try {
      std::size_t used = 0;
      mult = std::stoll(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw UsageError(std::string(kBudgetEnv) + " is not an integer");
    }
  }
  if (flag != 0) mult = flag;
  if (mult < 1) throw UsageError("budget multiplier must be at least 1");
  return mult;
}

std::vector<RunReport> RunAll(const Subject& subject,
                              const AnalysisOptions& options) {
  std::vector<RunReport> reports;
  for (Strategy s : kAllStrategies) {
    reports.push_back(RunStrategy(subject, s, options));
  }
  return reports;
}

bool AnyInvalid(const std::vector<RunReport>& reports) {
  for (const RunReport& r : reports) {
    if (!r.valid) {
      std::cerr << r.program << ": test " << r.invalid_test << " fails on the "
                << "original (" << OutcomeKindName(r.invalid_outcome.kind)
                << ")\n";
      return true;
    }
  }
  return false;
}

struct AnalyzeArgs {
  std::string program;
  std::string strategy;
  bool no_fork = false;
  bool no_memo = false;
  std::int64_t budget_mult = 0;
  std::string format = "json";
  std::string out;
};

int Analyze(const AnalyzeArgs& args) {
  std::optional<Strategy> strategy = ParseStrategy(args.strategy);
  if (!strategy) throw UsageError("unknown strategy " + args.strategy);
  StrategyConfig config = ConfigFor(*strategy);
  if ((args.no_fork || args.no_memo) &&
      config.kind != StrategyKind::kExecTaints) {
    throw UsageError("--no-fork and --no-memo apply to exec-taints only");
  }
  Strategy chosen = WithSwitches(*strategy, config.fork && !args.no_fork,
                                 config.memo && !args.no_memo);
  AnalysisOptions options;
  options.budget_mult = BudgetMult(args.budget_mult);
  Subject subject = LoadSubject(args.program);
  std::vector<RunReport> reports = {RunStrategy(subject, chosen, options)};
  WriteOutput(args.out, args.format == "csv" ? ReportsToCsv(reports)
                                             : ReportToJson(reports[0]));
  return AnyInvalid(reports) ? kExitInvalidTest : 0;
}

struct CompareArgs {
  std::string program;
  std::int64_t budget_mult = 0;
  std::string format = "json";
  std::string out;
};

int Compare(const CompareArgs& args) {
  AnalysisOptions options;
  options.budget_mult = BudgetMult(args.budget_mult);
  Subject subject = LoadSubject(args.program);
  std::vector<RunReport> reports = RunAll(subject, options);
  WriteOutput(args.out, args.format == "csv" ? ReportsToCsv(reports)
                                             : CompareToJson(reports));
  if (args.format == "csv") BuildKillMatrix(reports);
  return AnyInvalid(reports) ? kExitInvalidTest : 0;
}

int ListMutants(const std::string& path) {
  std::cout << FormatMutantList(LoadSubject(path).meta);
  return 0;
}

int RunCorpus(const std::string& dir, const std::string& out,
              std::int64_t budget_flag) {
  AnalysisOptions options;
  options.budget_mult = BudgetMult(budget_flag);
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".ml0") files.push_back(entry.path());
  }
  if (ec) throw UsageError("cannot list " + dir);
  std::sort(files.begin(), files.end());
  if (!out.empty()) fs::create_directories(out);
  std::vector<RunReport> all;
  bool invalid = false;
  for (const fs::path& file : files) {
    Subject subject = LoadSubject(file.string());
    std::vector<RunReport> reports = RunAll(subject, options);
    invalid = AnyInvalid(reports) || invalid;
    if (!out.empty()) {
      WriteOutput((fs::path(out) / (subject.name + ".json")).string(),
                  CompareToJson(reports));
    } else {
      BuildKillMatrix(reports);
    }
    all.insert(all.end(), reports.begin(), reports.end());
  }
  if (out.empty()) {
    std::cout << ReportsToCsv(all);
  } else {
    WriteOutput((fs::path(out) / "corpus.json").string(), CorpusToJson(all));
    WriteOutput((fs::path(out) / "corpus.csv").string(), ReportsToCsv(all));
  }
  std::cerr << "mean program_stmts ratio exec-taints/traditional: "
            << MeanReduction(all) << '\n';
  return invalid ? kExitInvalidTest : 0;
}

int Fuzz(int count, std::uint64_t seed, std::int64_t budget_flag) {
  AnalysisOptions options;
  options.budget_mult = BudgetMult(budget_flag);
  options.seed = seed;
  for (int i = 0; i < count; ++i) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    Subject subject = PrepareSubject("fuzz" + std::to_string(s),
                                     FuzzProgram(s));
    std::vector<RunReport> reports = RunAll(subject, options);
    if (AnyInvalid(reports)) {
      std::cerr << FuzzProgram(s);
      return kExitInvalidTest;
    }
    std::int64_t violations = 0;
    for (const RunReport& r : reports) violations += r.merge_violations;
    KillMatrix matrix;
    try {
      matrix = BuildKillMatrix(reports);
    } catch (const InconsistencyError&) {
      std::cerr << FuzzProgram(s);
      throw;
    }
    if (violations != 0) {
      std::cerr << FuzzProgram(s);
      throw InconsistencyError("unmerged contexts on seed " +
                               std::to_string(s));
    }
    std::cout << "seed " << s << ": " << matrix.mutant_count()
              << " mutants, " << matrix.killed() << " killed, "
              << std::size(kAllStrategies) << " strategies agree\n";
  }
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Mutation analysis with execution taints"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Run one strategy");
  analyze_cmd->add_option("--program", analyze.program)->required();
  analyze_cmd->add_option("--strategy", analyze.strategy)->required();
  analyze_cmd->add_flag("--no-fork", analyze.no_fork);
  analyze_cmd->add_flag("--no-memo", analyze.no_memo);
  analyze_cmd->add_option("--budget-mult", analyze.budget_mult)
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--format", analyze.format)
      ->check(CLI::IsMember({"json", "csv"}));
  analyze_cmd->add_option("--out", analyze.out);

  CompareArgs compare;
  bool all = false;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Run every strategy and check agreement");
  compare_cmd->add_option("--program", compare.program)->required();
  compare_cmd->add_flag("--all", all)->required();
  compare_cmd->add_option("--budget-mult", compare.budget_mult)
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--format", compare.format)
      ->check(CLI::IsMember({"json", "csv"}));
  compare_cmd->add_option("--out", compare.out);

  std::string mutants_program;
  CLI::App* mutants_cmd = app.add_subcommand("mutants", "Inspect mutants");
  mutants_cmd->require_subcommand(1);
  CLI::App* list_cmd = mutants_cmd->add_subcommand("list", "List mutants");
  list_cmd->add_option("--program", mutants_program)->required();

  std::string corpus_dir = "corpus";
  std::string corpus_out;
  std::int64_t corpus_budget = 0;
  CLI::App* corpus_cmd = app.add_subcommand("corpus", "Corpus runs");
  corpus_cmd->require_subcommand(1);
  CLI::App* run_cmd =
      corpus_cmd->add_subcommand("run", "Compare all strategies on a corpus");
  run_cmd->add_option("--dir", corpus_dir, "Directory of .ml0 programs");
  run_cmd->add_option("--out", corpus_out);
  run_cmd->add_option("--budget-mult", corpus_budget)
      ->check(CLI::PositiveNumber);

  int fuzz_count = 1;
  std::uint64_t fuzz_seed = 42;
  std::int64_t fuzz_budget = 0;
  CLI::App* fuzz_cmd =
      app.add_subcommand("fuzz", "Differential test on generated programs");
  fuzz_cmd->add_option("--count", fuzz_count)->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--seed", fuzz_seed);
  fuzz_cmd->add_option("--budget-mult", fuzz_budget)
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze_cmd) return Analyze(analyze);
    if (*compare_cmd) return Compare(compare);
    if (*list_cmd) return ListMutants(mutants_program);
    if (*run_cmd) return RunCorpus(corpus_dir, corpus_out, corpus_budget);
    if (*fuzz_cmd) return Fuzz(fuzz_count, fuzz_seed, fuzz_budget);
  } catch (const UsageError& e) {
    std::cerr << "mutlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InconsistencyError& e) {
    std::cerr << "mutlab: inconsistency: " << e.what() << '\n';
    return kExitInconsistent;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace mutlab

int main(int argc, char** argv) { return mutlab::Main(argc, argv); }
