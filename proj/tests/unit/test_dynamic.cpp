#include "abst/dynamic.hpp"
#include "abst/errors.hpp"
#include "abst/prefix_tree.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>

namespace abst {
namespace {

const char* kTreeA = "(3 (2 (1 . .) .) (4 . (5 . .)))";
const char* kTreeB = "(3 (1 . (2 . .)) (4 . (5 . .)))";

// Reference run in plain rationals: counters first, trigger p < q / 2,
// P := Q on trigger. Tracks rebuild times and, when every q is positive,
// the served cost on sfe_to_bst(P).
struct NaiveRun {
    std::vector<std::uint64_t> rebuild_times;
    std::uint64_t search_cost = 0;
    std::vector<Rational> final_p;
};

NaiveRun naive_run(std::size_t n, const std::vector<Key>& trace, bool laplace) {
    NaiveRun out;
    std::vector<Rational> p(n, oracle::frac(1, n));
    std::vector<std::uint64_t> w(n, 0);
    SearchTree tree = SearchTree::balanced(n);
    std::uint64_t t = 0;
    const unsigned long s = laplace ? 1 : 0;
    auto q_of = [&](std::size_t i) { return oracle::frac(w[i] + s, t + s * n); };
    for (Key k : trace) {
        ++w[k - 1];
        ++t;
        if (p[k - 1] < q_of(k - 1) / 2) {
            for (std::size_t i = 0; i < n; ++i) p[i] = q_of(i);
            out.rebuild_times.push_back(t);
            if (laplace) tree = sfe_to_bst(ProbabilityDistribution(p));
        }
        out.search_cost += tree.depth_of(k);
    }
    out.final_p = p;
    return out;
}

std::vector<std::uint64_t> rebuild_times(const SimulationState& s) {
    std::vector<std::uint64_t> times;
    for (const auto& e : s.rebuilds()) times.push_back(e.t);
    return times;
}

TEST(Dynamic, Initialization) {
    SimulationState s(5, 2, Smoothing::laplace);
    EXPECT_EQ(s.tree().depths(), (std::vector<Depth>{3, 2, 1, 2, 3}));
    for (Key k = 1; k <= 5; ++k) EXPECT_EQ(s.tree_distribution().prob(k), oracle::frac(1, 5));
    EXPECT_EQ(s.counters().t(), 0u);
    EXPECT_EQ(s.search_cost(), 0u);
    EXPECT_EQ(s.adjust_cost(), 0u);
    EXPECT_THROW(SimulationState(5, 0, Smoothing::none), InvalidArgument);
}

TEST(Dynamic, EmpiricalQ) {
    CounterState c(5);
    EXPECT_EQ(empirical_q(c, 1, Smoothing::laplace), oracle::frac(1, 5));
    EXPECT_THROW(empirical_q(c, 1, Smoothing::none), InvalidArgument);
    for (Key k : {1, 2, 2, 3, 3, 3, 3, 4, 4, 5, 1}) c.record(k);
    EXPECT_EQ(empirical_q(c, 1, Smoothing::none), oracle::frac(2, 11));
    c.record(1);
    EXPECT_EQ(empirical_q(c, 1, Smoothing::none), oracle::frac(3, 12));
    EXPECT_EQ(empirical_q(c, 1, Smoothing::laplace), oracle::frac(4, 17));
}

TEST(Dynamic, SnapshotStepsNoRebuildThenRebuild) {
    const auto model = ModelDistribution::from(ProbabilityDistribution::parse("0.1,0.2,0.4,0.2,0.1"));
    auto s = SimulationState::from_snapshot(model, {1, 2, 4, 2, 1}, 2, Smoothing::none);
    EXPECT_EQ(s.tree().to_string(), kTreeA);

    const auto first = s.step(1);
    EXPECT_EQ(first.t, 11u);
    EXPECT_FALSE(first.rebuilt);
    EXPECT_EQ(first.depth, 3u);
    EXPECT_EQ(first.q, oracle::frac(2, 11));
    EXPECT_EQ(first.p_before, oracle::frac(1, 10));

    const auto second = s.step(1);
    EXPECT_EQ(second.t, 12u);
    EXPECT_TRUE(second.rebuilt);
    EXPECT_EQ(second.depth_before, 3u);
    EXPECT_EQ(second.depth, 2u);
    EXPECT_EQ(s.tree().to_string(), kTreeB);
    EXPECT_EQ(s.tree_distribution().prob(1), oracle::frac(3, 12));
    EXPECT_EQ(s.search_cost(), 5u);
    EXPECT_EQ(s.adjust_cost(), 2u);
}

TEST(Dynamic, ColdStartTraceReachesBothGoldenTrees) {
    const std::vector<Key> prefix{1, 2, 2, 3, 3, 3, 3, 4, 4, 5};
    SimulationState s(5, 2, Smoothing::none);
    const auto first = s.step(prefix[0]);
    EXPECT_TRUE(first.rebuilt);  // q = 1 against p = 1/5
    for (std::size_t i = 1; i < prefix.size(); ++i) s.step(prefix[i]);
    EXPECT_EQ(s.tree_distribution().prob(1), oracle::frac(1, 10));
    EXPECT_EQ(s.tree_distribution().prob(3), oracle::frac(4, 10));
    EXPECT_EQ(s.tree().to_string(), kTreeA);

    EXPECT_FALSE(s.step(1).rebuilt);
    const auto last = s.step(1);
    EXPECT_TRUE(last.rebuilt);
    EXPECT_EQ(last.depth, 2u);
    EXPECT_EQ(s.tree().to_string(), kTreeB);

    std::vector<Key> trace = prefix;
    trace.insert(trace.end(), {1, 1});
    const auto ref = naive_run(5, trace, false);
    EXPECT_EQ(rebuild_times(s), ref.rebuild_times);
    EXPECT_EQ(s.rebuild_count(), 7u);
    EXPECT_EQ(s.guard_violations(), 0u);
    EXPECT_TRUE(all_ok(s.check_bounds()));
}

TEST(Dynamic, SingleKey) {
    for (auto mode : {Smoothing::laplace, Smoothing::none}) {
        SimulationState s(1, 2, mode);
        for (int i = 0; i < 50; ++i) EXPECT_EQ(s.step(1).depth, 1u);
        EXPECT_EQ(s.search_cost(), 50u);
        EXPECT_EQ(s.rebuild_count(), 0u);
    }
}

TEST(Dynamic, RejectsOutOfRangeKeys) {
    SimulationState s(3, 2, Smoothing::laplace);
    EXPECT_THROW(s.step(0), InvalidRequest);
    EXPECT_THROW(s.step(4), InvalidRequest);
    std::vector<Key> empty;
    EXPECT_THROW(run(s, empty), InvalidArgument);
}

TEST(Dynamic, ZeroMassKeysHangInGaps) {
    ModelDistribution model{{0, 3, 0, 0, 1, 0}, 4};
    const auto tree = tree_for_model(model);
    std::vector<Key> expect{1, 2, 3, 4, 5, 6};
    EXPECT_EQ(tree.in_order(), expect);
    // Positive keys keep their SFE-2-BST depths on the support {2, 5}.
    const auto support = sfe_to_bst(ProbabilityDistribution::parse("3/4,1/4"));
    EXPECT_EQ(tree.depth_of(2), support.depth_of(1));
    EXPECT_EQ(tree.depth_of(5), support.depth_of(2));
}

TEST(Dynamic, ReportJsonRoundTrip) {
    SimulationState s(6, 4, Smoothing::laplace);
    for (Key k : {1, 1, 1, 6, 6, 2, 1, 1}) s.step(k);
    auto r = s.report();
    EXPECT_EQ(r.total, r.search_cost + r.adjust_cost);
    EXPECT_EQ(report_from_json(to_json(r)), r);
    r.stat_cost = 12;
    r.rho = double(r.total) / 12.0;
    EXPECT_EQ(report_from_json(to_json(r)), r);
    EXPECT_EQ(parse_smoothing(to_string(Smoothing::none)), Smoothing::none);
    EXPECT_THROW(parse_smoothing("bogus"), Error);
}

// Against the rational reference: rebuild times, P after the run, and
// (laplace) the served cost. Plus the instrumented bounds.
TEST(DynamicProperty, MatchesReferenceAndKeepsBounds) {
    Rng rng(9);
    for (int c = 0; c < 80; ++c) {
        const std::size_t n = 1 + rng.below(24);
        const std::size_t m = 1 + rng.below(400);
        const bool laplace = rng.below(2) == 0;
        const auto alpha = 2 + rng.below(8);
        std::vector<Key> trace(m);
        const auto hot = static_cast<Key>(1 + rng.below(n));
        for (auto& k : trace) k = rng.below(3) == 0 ? hot : static_cast<Key>(1 + rng.below(n));

        SimulationState s(n, alpha, laplace ? Smoothing::laplace : Smoothing::none);
        const auto report = run(s, trace);
        const auto ref = naive_run(n, trace, laplace);
        ASSERT_EQ(rebuild_times(s), ref.rebuild_times);
        for (Key k = 1; k <= n; ++k) ASSERT_EQ(s.tree_distribution().prob(k), ref.final_p[k - 1]);
        if (laplace) ASSERT_EQ(report.search_cost, ref.search_cost);
        ASSERT_EQ(report.adjust_cost, alpha * ref.rebuild_times.size());

        ASSERT_EQ(s.guard_violations(), 0u);
        ASSERT_EQ(s.depth_bound_violations(), 0u);
        for (const auto& e : s.rebuilds()) ASSERT_LT(2 * e.prev_count, e.count);
        for (const auto& chk : s.check_bounds()) {
            if (chk.name == "total_cost_bound") continue;
            EXPECT_TRUE(chk.ok) << chk.name << ": " << chk.detail;
        }
    }
}

TEST(DynamicProperty, PerKeyLogBoundInNoneMode) {
    Rng rng(10);
    for (int c = 0; c < 40; ++c) {
        const std::size_t n = 2 + rng.below(16);
        std::vector<Key> trace(50 + rng.below(500));
        for (auto& k : trace) k = static_cast<Key>(1 + rng.below(n));
        SimulationState s(n, 2, Smoothing::none);
        run(s, trace);
        const double m = double(trace.size());
        for (Key k = 1; k <= n; ++k) {
            const double w = double(s.counters().count(k));
            if (w == 0) continue;
            EXPECT_LE(s.log_inverse_q()[k - 1], w * std::log2(m / w) + 2 * w + 1e-9);
        }
    }
}

}  // namespace
}  // namespace abst
