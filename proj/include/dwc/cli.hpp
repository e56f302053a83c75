// Job files, JSON reports, the polynomial parser, and the regression corpus
// runner behind the dwc command-line tool.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dwc/gaussmanin.hpp"

namespace dwc {

inline constexpr const char* kEngineVersion = "0.4.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 1,
    kExitUnstabilized = 2,
    kExitNotSmooth = 3,
    kExitCheckFailed = 4,
};

/// Grammar: sums of ±terms, terms are '*'-joined factors, a factor is an
/// integer, a rational p/q, or a declared variable with optional ^exponent.
/// Whitespace is ignored. Throws ParseError carrying the byte offset.
Polynomial<Rational> parse_polynomial(std::string_view text, const std::vector<std::string>& variables);

/// Identifiers occurring in the text, ordered by name with numeric suffixes
/// compared as numbers (x2 < x10).
std::vector<std::string> infer_variables(std::string_view text);

/// Partial overrides of StabilizationPolicy::defaults.
struct PolicyOverrides {
    std::optional<int> initial_bound;
    std::optional<int> step;
    std::optional<int> max_bound;
    std::optional<int> lag;

    bool empty() const { return !initial_bound && !step && !max_bound && !lag; }
    StabilizationPolicy resolve(std::size_t nvars, int m) const;
};

struct Job {
    std::string command;  // hodge dwork affine strands koszul fourier ts suspension compare gm verify
    std::string polynomial;
    std::vector<std::string> polynomials;  // koszul equations
    std::vector<std::string> variables;    // empty: inferred
    std::vector<int> weights;
    std::optional<int> strand;
    PolicyOverrides policy;
    std::optional<int> bound;
    int r = 1;
    bool force_truncation = false;
    std::string perturbation;               // gm
    std::vector<std::string> basis;         // gm, optional
    std::vector<std::string> samples;       // gm, rationals
    std::string directory;                  // verify
    std::string output;                     // report path; empty: stdout only

    static Job from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct JobResult {
    int exit_code = kExitOk;
    nlohmann::json report;
};

/// Runs the job and builds its report; never throws for math or input
/// failures, which are encoded in exit_code and report["error"].
JobResult run_job(const Job& job);

nlohmann::json report_to_json(const CohomologyReport& rep);
nlohmann::json verdict_to_json(const Verdict& v);

/// Serializes with two-space indent and a trailing newline; writes through a
/// temporary file and rename.
void write_report(const nlohmann::json& report, const std::filesystem::path& path);

struct CorpusEntry {
    std::string name;
    std::string status;  // pass, mismatch, infra
    std::vector<std::string> details;
    double ms = 0;
};

struct CorpusSummary {
    std::vector<CorpusEntry> entries;
    std::size_t passed() const;
    std::size_t mismatches() const;
    std::size_t infra_failures() const;
    /// 0 all pass, 1 any infrastructure failure, 4 mathematical mismatch only.
    int exit_code() const;
};

/// Differences between `actual` and the subset of fields in `expected`;
/// timing_ms is never compared.
std::vector<std::string> diff_expected(const nlohmann::json& expected, const nlohmann::json& actual,
                                       const std::string& path = "");

/// Runs every <name>.job.json under dir against <name>.expect.json.
CorpusSummary corpus_runner(const std::filesystem::path& dir);
void print_summary(const CorpusSummary& s, std::ostream& os);

}  // namespace dwc
