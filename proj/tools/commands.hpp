#pragma once

#include "abst/baselines.hpp"
#include "abst/dynamic.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace abst::cli {

enum ExitCode : int {
    kOk = 0,
    kSuiteFailure = 1,
    kConfigError = 2,
    kParseError = 3,
    kBoundViolation = 4,
};

enum class Format { json, csv, text };
Format parse_format(std::string_view text);

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct RunConfig {
    std::size_t n = 0;  // 0: infer from a freq/file workload
    std::uint64_t alpha = 2;
    std::optional<std::uint64_t> m;
    std::string workload = "uniform";
    std::vector<Key> append;  // extra requests after the generated sequence
    Smoothing smoothing = Smoothing::laplace;
    std::uint64_t seed = kDefaultSeed;
    Format format = Format::json;
    std::string out;  // empty: stdout
    bool with_stat = false;
    bool check_bounds = false;
    std::string steps_csv;
};

struct CompareConfig {
    std::size_t n = 16;
    std::vector<std::uint64_t> alphas{2, 8, 32};
    std::vector<std::string> workloads{"uniform", "zipf:1.0", "zipf:1.5"};
    // Explicit lengths; when empty each cell uses multiples of its minimum bound length.
    std::vector<std::uint64_t> ms;
    std::vector<std::uint64_t> multiples{1, 2, 4, 8};
    Smoothing smoothing = Smoothing::laplace;
    std::uint64_t seed = kDefaultSeed;
    Format format = Format::csv;
    std::string out;
};

enum class VerifyScale { quick, full };
VerifyScale parse_scale(std::string_view text);

struct VerifyConfig {
    VerifyScale scale = VerifyScale::quick;
    std::uint64_t seed = kDefaultSeed;
    bool inject_fault = false;
};

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
};

// ceil(2 n alpha log2 alpha), at least 20.
std::uint64_t default_length(std::size_t n, std::uint64_t alpha);

// Fills stat_cost and rho from the realized request counts.
void attach_static_baseline(SimulationReport& report, const WeightVector& weights);

struct SimulationOutcome {
    SimulationReport report;
    std::vector<BoundCheck> checks;
    std::vector<StepRecord> steps;
};
SimulationOutcome simulate(const RunConfig& config);

std::vector<SuiteResult> run_verify_suites(const VerifyConfig& config);

int cmd_encode(const std::string& dist, Format format, std::ostream& out);
int cmd_build(const std::string& dist, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyConfig& config, std::ostream& out);

// Runs `body`, mapping library exceptions to exit codes with a message on `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace abst::cli
