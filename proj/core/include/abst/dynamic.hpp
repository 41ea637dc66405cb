#pragma once

#include "abst/distribution.hpp"
#include "abst/search_tree.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace abst {

enum class Smoothing { laplace, none };

std::string_view to_string(Smoothing s);
Smoothing parse_smoothing(std::string_view text);

// Request counts w_i(t) after t requests.
class CounterState {
public:
    explicit CounterState(std::size_t n) : counts_(n, 0) {}
    CounterState(std::vector<std::uint64_t> counts);

    std::size_t n() const noexcept { return counts_.size(); }
    std::uint64_t t() const noexcept { return t_; }
    std::uint64_t count(Key key) const { return counts_.at(key - 1); }
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

    void record(Key key);

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t t_ = 0;
};

// none: w_i(t) / t. laplace: (w_i(t) + 1) / (t + n).
// Throws InvalidArgument for smoothing none at t = 0.
Rational empirical_q(const CounterState& counters, Key key, Smoothing smoothing);

// The tree distribution held exactly as integer masses over a common total:
// p_i = mass[i - 1] / total. Masses may be zero (smoothing none).
struct ModelDistribution {
    std::vector<std::uint64_t> mass;
    std::uint64_t total = 0;

    static ModelDistribution uniform(std::size_t n);
    // Common-denominator form; throws InvalidArgument if it does not fit 64 bits.
    static ModelDistribution from(const ProbabilityDistribution& dist);

    std::size_t size() const noexcept { return mass.size(); }
    Rational prob(Key key) const;
};

// SFE-derived tree over the keys with positive mass. Each in-order run of
// zero-mass keys is hung as a balanced subtree in the empty child slot
// between its positive-mass neighbours, so positive keys keep their depths.
SearchTree tree_for_model(const ModelDistribution& model);

struct StepRecord {
    std::uint64_t t = 0;
    Key key = 0;
    Depth depth = 0;         // on the tree that serves the request (after any rebuild)
    Depth depth_before = 0;  // on the tree in place when the request arrived
    bool rebuilt = false;
    Rational q;         // q_key(t) after the counter update
    Rational p_before;  // p_key before the step
};

// A rebuild triggered by `key` at time t; the previous rebuild (by any key)
// happened at prev_t, when the key's count was prev_count. prev_t = 0 means
// the initial tree.
struct RebuildEvent {
    std::uint64_t t = 0;
    Key key = 0;
    std::uint64_t count = 0;
    std::uint64_t prev_t = 0;
    std::uint64_t prev_count = 0;
};

struct SimulationOptions {
    bool keep_steps = true;
    // Full O(n) guarded-invariant scan after every step.
    bool check_invariants = true;
};

struct SimulationReport {
    std::size_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t alpha = 0;
    Smoothing smoothing = Smoothing::laplace;
    std::uint64_t search_cost = 0;
    // Sum of depths on the pre-adjustment trees, the literal per-step reading of the cost sum.
    std::uint64_t search_cost_pre_adjust = 0;
    std::uint64_t adjust_cost = 0;
    std::uint64_t rebuilds = 0;
    std::uint64_t total = 0;
    double entropy_empirical = 0.0;
    double theorem_bound = 0.0;
    bool theorem_applicable = false;
    std::optional<std::uint64_t> stat_cost;
    std::optional<double> rho;

    friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

nlohmann::json to_json(const SimulationReport& report);
SimulationReport report_from_json(const nlohmann::json& doc);
std::string report_csv_header();
std::string report_csv_row(const SimulationReport& report);

struct BoundCheck {
    std::string name;
    bool applicable = false;
    bool ok = true;
    std::string detail;
};

inline constexpr double kEntropyTolerance = 1e-9;

// 2 n alpha log2(alpha); the theorem applies for m at least this long.
double theorem_min_length(std::size_t n, std::uint64_t alpha);

class SimulationState {
public:
    // Balanced initial tree, uniform tree distribution, zero counters.
    SimulationState(std::size_t n, std::uint64_t alpha, Smoothing smoothing, SimulationOptions options = {});

    // Resumes from a given tree distribution and counts, as if a rebuild
    // from `model` had just happened at time sum(counts).
    static SimulationState from_snapshot(ModelDistribution model, std::vector<std::uint64_t> counts,
                                         std::uint64_t alpha, Smoothing smoothing, SimulationOptions options = {});

    // Counter update, trigger test p_i < q_i / 2, optional rebuild, then the
    // request is served on the resulting tree.
    StepRecord step(Key key);

    std::size_t n() const noexcept { return counters_.n(); }
    std::uint64_t alpha() const noexcept { return alpha_; }
    Smoothing smoothing() const noexcept { return smoothing_; }
    const SearchTree& tree() const noexcept { return tree_; }
    const ModelDistribution& tree_distribution() const noexcept { return model_; }
    const CounterState& counters() const noexcept { return counters_; }
    std::uint64_t search_cost() const noexcept { return search_cost_; }
    std::uint64_t adjust_cost() const noexcept { return alpha_ * rebuilds_.size(); }
    std::uint64_t rebuild_count() const noexcept { return rebuilds_.size(); }

    const std::vector<StepRecord>& steps() const noexcept { return steps_; }
    const std::vector<RebuildEvent>& rebuilds() const noexcept { return rebuilds_; }
    // Per key: sum over its requests of log2(1 / q_key(t)).
    const std::vector<double>& log_inverse_q() const noexcept { return log_inv_q_; }
    std::uint64_t guard_violations() const noexcept { return guard_violations_; }
    std::uint64_t laplace_violations() const noexcept { return laplace_violations_; }
    std::uint64_t depth_bound_violations() const noexcept { return depth_bound_violations_; }

    SimulationReport report() const;
    std::vector<BoundCheck> check_bounds() const;

private:
    void rebuild();
    bool guard_holds(Key key) const;

    CounterState counters_;
    std::uint64_t alpha_;
    Smoothing smoothing_;
    SimulationOptions options_;
    ModelDistribution model_;
    SearchTree tree_;
    std::vector<Depth> depths_;

    std::uint64_t search_cost_ = 0;
    std::uint64_t search_cost_pre_ = 0;
    std::uint64_t last_rebuild_t_ = 0;
    std::vector<std::uint64_t> counts_at_last_rebuild_;

    std::vector<StepRecord> steps_;
    std::vector<RebuildEvent> rebuilds_;
    std::vector<double> log_inv_q_;
    std::uint64_t guard_violations_ = 0;
    std::uint64_t laplace_violations_ = 0;
    std::uint64_t depth_bound_violations_ = 0;
};

SimulationReport run(SimulationState& state, std::span<const Key> trace);

bool all_ok(std::span<const BoundCheck> checks);

}  // namespace abst
