// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include "commands.hpp"

#include "abst/baselines.hpp"
#include "abst/dynamic.hpp"
#include "abst/matching.hpp"
#include "abst/prefix_tree.hpp"
#include "abst/sfe_code.hpp"
#include "abst/workload.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace abst;

namespace {

constexpr std::uint64_t kSeed = 20240229;
constexpr int kDistributions = 500;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<ProbabilityDistribution> distribution_suite() {
    Rng rng(kSeed);
    std::vector<ProbabilityDistribution> out;
    for (int c = 0; c < kDistributions; ++c) {
        const std::size_t n = 2 + rng.below(127);
        out.push_back(ProbabilityDistribution::from_weights(oracle::random_weights(rng, n)));
    }
    return out;
}

double entropy_of(const std::vector<std::uint64_t>& counts) {
    const double m = std::accumulate(counts.begin(), counts.end(), 0.0);
    std::vector<double> p;
    for (auto c : counts) p.push_back(double(c) / m);
    return oracle::entropy(p);
}

Outcome c1_sandwich(const std::vector<ProbabilityDistribution>& suite) {
    std::size_t bad = 0;
    std::string first;
    for (const auto& d : suite) {
        const auto rows = oracle::sfe_rows(d.probs());
        Rational len = 0;
        std::vector<double> p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            len += d.probs()[i] * rows[i].length;
            p.push_back(to_double(d.probs()[i]));
        }
        const Rational lib = average_code_length(build_sfe_code(d), d);
        const double h = oracle::entropy(p);
        const double l = to_double(len);
        if (lib != len || h + 1 > l + 1e-9 || l >= h + 2 + 1e-9) {
            if (bad++ == 0) first = "n=" + std::to_string(d.size()) + " L=" + to_string(len) + " H=" + std::to_string(h);
        }
    }
    return {bad == 0, std::to_string(suite.size()) + " distributions, " + std::to_string(bad) + " counterexamples" +
                          (bad ? " (first: " + first + ")" : "")};
}

Outcome c2_depth_bound(const std::vector<ProbabilityDistribution>& suite) {
    std::size_t keys = 0, bad = 0;
    for (const auto& d : suite) {
        const auto depths = sfe_to_bst(d).depths();
        for (std::size_t i = 0; i < d.size(); ++i, ++keys) {
            if (!oracle::depth_bound_holds(depths[i], d.probs()[i])) ++bad;
        }
    }
    return {bad == 0, std::to_string(keys) + " keys, " + std::to_string(bad) + " violations"};
}

Outcome c3_goldens() {
    std::vector<std::string> failures;
    const auto a = ProbabilityDistribution::parse("1/10,2/10,4/10,2/10,1/10");
    std::vector<unsigned> lengths;
    for (const auto& e : build_sfe_code(a).entries()) lengths.push_back(e.length);
    if (lengths != std::vector<unsigned>{5, 4, 3, 4, 5}) failures.push_back("skewed-five lengths");
    if (sfe_to_bst(a).to_string() != "(3 (2 (1 . .) .) (4 . (5 . .)))") failures.push_back("skewed-five tree");

    SimulationState s(5, 2, Smoothing::none);
    for (Key k : {1, 2, 2, 3, 3, 3, 3, 4, 4, 5}) s.step(k);
    const auto t11 = s.step(1);
    const auto t12 = s.step(1);
    if (t11.t != 11 || t11.rebuilt) failures.push_back("t=11 rebuilt");
    if (t12.t != 12 || !t12.rebuilt) failures.push_back("t=12 did not rebuild");
    if (t11.depth != 3 || t12.depth != 2) failures.push_back("key 1 depth not 3 -> 2");
    if (s.tree().to_string() != "(3 (1 . (2 . .)) (4 . (5 . .)))") failures.push_back("reweighted-five tree");

    std::string detail = "(1,2,4,2,1)/10 lengths (5,4,3,4,5) and tree; replay t=11 no rebuild, t=12 rebuild, key 1 depth 3->2";
    for (const auto& f : failures) detail += "; mismatch: " + f;
    return {failures.empty(), detail};
}

Outcome c4_stat() {
    Rng rng(kSeed + 4);
    std::size_t bad = 0;
    const int cases = 240;
    for (int c = 0; c < cases; ++c) {
        const std::size_t n = 1 + c % 8;
        std::vector<std::uint64_t> w(n);
        for (auto& x : w) x = rng.below(5) == 0 ? 0 : 1 + rng.below(100);
        w[rng.below(n)] += 1;
        const WeightVector wv(w);
        if (optimal_static_cost(wv).cost != brute_force_static_cost(wv)) ++bad;
    }
    const auto a = optimal_static_cost(WeightVector({1, 2, 4, 2, 1})).cost;
    return {bad == 0 && a == 18, std::to_string(cases) + " vectors n<=8, " + std::to_string(bad) +
                                     " mismatches; skewed-five stat = " + std::to_string(a)};
}

struct CellResult {
    std::size_t n;
    std::uint64_t alpha;
    std::string workload;
    Smoothing smoothing;
    std::uint64_t m;
    std::uint64_t total;
    double bound;
    bool bound_ok;
    std::uint64_t doubling_bad, logq_bad, guard_bad;
    bool adjust_ok;
    double seconds;
};

CellResult run_cell(std::size_t n, std::uint64_t alpha, const std::string& workload, Smoothing smoothing) {
    const auto start = std::chrono::steady_clock::now();
    const double min_len = 2.0 * double(n) * double(alpha) * std::log2(double(alpha));
    const std::uint64_t m = std::max<std::uint64_t>(20, static_cast<std::uint64_t>(std::ceil(min_len - 1e-9)));
    const auto trace = generate(WorkloadSpec::parse(workload), n, m, kSeed);

    SimulationState s(n, alpha, smoothing, SimulationOptions{false, false});
    const std::uint64_t sn = smoothing == Smoothing::laplace ? 1 : 0;
    std::uint64_t guard_bad = 0;
    for (Key k : trace) {
        s.step(k);
        // p_i >= q_i / 2 for every key, as 2 * mass * (t + s n) >= (w + s) * total.
        const auto& model = s.tree_distribution();
        const unsigned __int128 denom = s.counters().t() + sn * n;
        for (Key i = 1; i <= n; ++i) {
            const unsigned __int128 lhs = (unsigned __int128)2 * model.mass[i - 1] * denom;
            const unsigned __int128 rhs = (unsigned __int128)(s.counters().count(i) + sn) * model.total;
            if (lhs < rhs) ++guard_bad;
        }
    }

    CellResult r{n, alpha, workload, smoothing, m, 0, 0, false, 0, 0, guard_bad, false, 0};
    const auto& counts = s.counters().counts();
    const double h = entropy_of(counts);
    r.total = s.search_cost() + s.adjust_cost();
    r.bound = double(m) * (8 + h);
    r.bound_ok = double(r.total) <= r.bound * (1 + 1e-12);

    for (const auto& e : s.rebuilds()) {
        if (!(2 * e.prev_count < e.count)) ++r.doubling_bad;
    }
    if (smoothing == Smoothing::none) {
        for (Key i = 1; i <= n; ++i) {
            const double w = double(counts[i - 1]);
            if (w == 0) continue;
            if (s.log_inverse_q()[i - 1] > w * std::log2(double(m) / w) + 2 * w + 1e-9) ++r.logq_bad;
        }
    }
    r.adjust_ok = double(s.adjust_cost()) <= min_len + double(m) + 1e-9;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CellResult> run_grid() {
    std::vector<CellResult> out;
    for (std::size_t n : {5, 16, 64})
        for (std::uint64_t alpha : {2, 8, 32})
            for (const char* w : {"uniform", "zipf:1.0", "zipf:1.5"})
                for (auto mode : {Smoothing::laplace, Smoothing::none}) out.push_back(run_cell(n, alpha, w, mode));
    return out;
}

std::string cell_name(const CellResult& c) {
    return "n=" + std::to_string(c.n) + " alpha=" + std::to_string(c.alpha) + " " + c.workload + " " +
           std::string(to_string(c.smoothing));
}

Outcome c5_total_cost(const std::vector<CellResult>& grid) {
    std::size_t bad = 0;
    double worst = 0, slowest = 0;
    std::string first;
    for (const auto& c : grid) {
        worst = std::max(worst, double(c.total) / c.bound);
        slowest = std::max(slowest, c.seconds);
        if (!c.bound_ok && bad++ == 0) first = cell_name(c);
    }
    std::ostringstream os;
    os.precision(3);
    os << grid.size() << " cells, " << bad << " over bound, max total/bound " << worst << ", slowest cell " << slowest
       << " s";
    if (bad) os << " (first: " << first << ")";
    return {bad == 0 && slowest < 5.0, os.str()};
}

Outcome c6_instrumented(const std::vector<CellResult>& grid) {
    std::uint64_t a = 0, b = 0, c = 0, d = 0;
    for (const auto& cell : grid) {
        a += cell.doubling_bad;
        b += cell.logq_bad;
        c += cell.adjust_ok ? 0 : 1;
        d += cell.guard_bad;
    }
    const std::string detail = "(a) " + std::to_string(a) + " (b) " + std::to_string(b) + " (c) " +
                               std::to_string(c) + " (d) " + std::to_string(d) + " violations";
    return {a + b + c + d == 0, detail};
}

Outcome c7_structure() {
    Rng rng(kSeed + 7);
    const int cases = 500;
    std::size_t bad = 0;
    std::string first;
    auto fail = [&](const std::string& what) {
        if (bad++ == 0) first = what;
    };
    for (int c = 0; c < cases; ++c) {
        const std::size_t n = 1 + rng.below(128);
        const auto dist = ProbabilityDistribution::from_weights(oracle::random_weights(rng, n));
        const auto code = build_sfe_code(dist);
        std::vector<std::string> words;
        for (const auto& e : code.entries()) words.push_back(e.codeword);
        std::sort(words.begin(), words.end());
        for (std::size_t i = 1; i < words.size(); ++i) {
            if (words[i].compare(0, words[i - 1].size(), words[i - 1]) == 0) fail("prefix-free");
        }
        const auto trie = build_prefix_tree(code);
        std::vector<Key> ordered(n);
        std::iota(ordered.begin(), ordered.end(), Key{1});
        if (trie.leaves_in_order() != ordered) fail("sorted leaves");
        const auto tree = prefix_tree_to_bst(trie);
        if (tree.in_order() != ordered) fail("symmetric order");
        const auto bst_depths = tree.depths();
        for (auto [key, depth] : trie.leaf_depths()) {
            if (bst_depths[key - 1] > depth) fail("depth increased");
        }
        const auto m = bst_to_matchings(tree);
        if (matchings_to_bst(m) != tree) fail("matching round trip");
        for (Key k = 1; k <= n; ++k) {
            if (route(m, k).size() != bst_depths[k - 1]) fail("route length");
        }
        const auto bal = SearchTree::balanced(n);
        if (bal.in_order() != ordered) fail("balanced symmetric order");
    }
    return {bad == 0, std::to_string(cases) + " cases, " + std::to_string(bad) + " failures" +
                          (bad ? " (first: " + first + ")" : "")};
}

Outcome c8_rho_trend() {
    cli::RunConfig cfg;
    cfg.n = 16;
    cfg.alpha = 8;
    cfg.with_stat = true;
    std::ostringstream os;
    os.precision(3);
    for (const char* w : {"uniform", "zipf:1.0", "zipf:1.5"}) {
        cfg.workload = w;
        os << w << " rho";
        for (std::uint64_t mult : {1, 2, 4, 8}) {
            cfg.m = cli::default_length(16, 8) * mult;
            os << ' ' << *cli::simulate(cfg).report.rho;
        }
        os << "; ";
    }
    os << "(n=16 alpha=8, m = 1,2,4,8 x 768; informational)";
    return {true, os.str()};
}

bool report(int id, const Outcome& o, double seconds) {
    std::printf("%s C%d %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(), seconds);
    std::fflush(stdout);
    return o.pass;
}

template <typename F>
bool timed(int id, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = f();
    return report(id, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

}  // namespace

int main() {
    bool ok = true;
    const auto suite = distribution_suite();
    ok &= timed(1, [&] { return c1_sandwich(suite); });
    ok &= timed(2, [&] { return c2_depth_bound(suite); });
    ok &= timed(3, c3_goldens);
    ok &= timed(4, c4_stat);
    std::vector<CellResult> grid;
    ok &= timed(5, [&] {
        grid = run_grid();
        return c5_total_cost(grid);
    });
    ok &= timed(6, [&] { return c6_instrumented(grid); });
    ok &= timed(7, c7_structure);
    ok &= timed(8, c8_rho_trend);
    std::printf("%s\n", ok ? "acceptance: all criteria passed" : "acceptance: FAILED");
    return ok ? 0 : 1;
}
