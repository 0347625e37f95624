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

// JSON and CSV rendering of run reports.

#ifndef MUTLAB_REPORT_H_
#define MUTLAB_REPORT_H_

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mutlab/strategies.h"

namespace mutlab {

inline constexpr char kReportSchema[] = "mutlab/1";
inline constexpr char kCsvHeader[] =
    "program,strategy,mutants,killed,survived,not_covered,program_stmts,"
    "infra_ops";

class ReportFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One report as a JSON document, keys in a fixed order, newline-terminated.
std::string ReportToJson(const RunReport& report);

// Inverse of ReportToJson. The outcome value of an invalid test is not
// kept. Throws ReportFormatError on malformed input or a foreign schema.
RunReport ReportFromJson(std::string_view text);

// Every field that ReportToJson writes.
bool SameReport(const RunReport& a, const RunReport& b);

std::string CsvRow(const RunReport& report);
// The header and one row per report.
std::string ReportsToCsv(std::span<const RunReport> reports);

// All strategies on one program: the reports plus the agreed kill counts.
std::string CompareToJson(std::span<const RunReport> reports);

// program_stmts of exec-taints over traditional, averaged across programs.
// `reports` holds the reports of several programs in any order; programs
// missing either strategy are skipped. Zero when none qualifies.
double MeanReduction(std::span<const RunReport> reports);

// Several programs: every report plus the mean reduction.
std::string CorpusToJson(std::span<const RunReport> reports);

}  // namespace mutlab

#endif  // MUTLAB_REPORT_H_
