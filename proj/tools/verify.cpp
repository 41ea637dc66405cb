#include "commands.hpp"

#include "abst/baselines.hpp"
#include "abst/errors.hpp"
#include "abst/matching.hpp"
#include "abst/prefix_tree.hpp"
#include "abst/sfe_code.hpp"
#include "abst/workload.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace abst::cli {

namespace {

// Mix of flat and heavily skewed integer weights so tiny probabilities occur.
std::vector<std::uint64_t> random_weights(Rng& rng, std::size_t n) {
    std::vector<std::uint64_t> w(n);
    const bool skewed = rng.below(2) == 1;
    for (auto& x : w) {
        x = skewed ? static_cast<std::uint64_t>(std::exp2(rng.unit() * 24.0)) : 1 + rng.below(1000);
    }
    return w;
}

class Suite {
public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::string& what) {
        ++result_.cases;
        if (!ok) {
            if (result_.failures++ == 0) result_.first_failure = what;
        }
    }

    // Counts an exception thrown by a case as a failure.
    template <typename Fn>
    void run_case(Fn&& fn, const std::string& label) {
        try {
            check(fn(), label);
        } catch (const std::exception& e) {
            check(false, label + ": " + e.what());
        }
    }

    SuiteResult result() const { return result_; }

private:
    SuiteResult result_;
};

std::string describe(std::size_t n, std::uint64_t case_no) {
    return "case " + std::to_string(case_no) + " (n=" + std::to_string(n) + ")";
}

}  // namespace

std::vector<SuiteResult> run_verify_suites(const VerifyConfig& config) {
    const bool full = config.scale == VerifyScale::full;
    const std::size_t cases = full ? 500 : 100;
    const std::size_t max_n = full ? 128 : 48;
    Rng rng(config.seed);

    Suite prefix_free("sfe_prefix_free");
    Suite sandwich("sfe_entropy_sandwich");
    Suite lengths("sfe_length_formula");
    Suite monotone("sfe_monotone_codewords");
    Suite deterministic("sfe_deterministic");
    Suite sorted_leaves("trie_sorted_leaves");
    Suite depth_bound("sfe_depth_bound");
    Suite no_deeper("depth_never_increases");
    Suite symmetric("bst_symmetric_order");
    Suite roundtrip("matching_roundtrip");
    Suite routing("route_length_equals_depth");
    Suite stat_sandwich("stat_sandwich");

    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(max_n - 1));
        const auto weights = random_weights(rng, n);
        const auto dist = ProbabilityDistribution::from_weights(weights);
        auto table = build_sfe_code(dist);
        const std::string label = describe(n, c);

        if (config.inject_fault) {
            auto& entries = table.mutable_entries();
            entries[1].codeword = entries[0].codeword.substr(0, entries[0].codeword.size() - 1);
        }
        prefix_free.run_case([&] { return is_prefix_free(table); }, label);
        if (config.inject_fault) table = build_sfe_code(dist);

        sandwich.run_case(
            [&] {
                const double h = entropy(dist);
                const double avg = to_double(average_code_length(table, dist));
                return h + 1 <= avg + kEntropyTolerance && avg < h + 2 + kEntropyTolerance;
            },
            label);
        lengths.run_case(
            [&] {
                for (const auto& e : table.entries()) {
                    const auto& p = dist.prob(e.key);
                    // Smallest k with num * 2^k >= den, by repeated doubling.
                    BigInt num = p.get_num();
                    unsigned k = 0;
                    while (num < p.get_den()) {
                        num *= 2;
                        ++k;
                    }
                    if (e.length != k + 1 || e.codeword.size() != e.length) return false;
                }
                return true;
            },
            label);
        monotone.run_case(
            [&] {
                for (std::size_t i = 1; i < table.size(); ++i) {
                    if (!(table.entries()[i - 1].codeword < table.entries()[i].codeword)) return false;
                }
                return true;
            },
            label);
        deterministic.run_case([&] { return build_sfe_code(dist) == table; }, label);

        const auto trie = build_prefix_tree(table);
        sorted_leaves.run_case(
            [&] {
                auto leaves = trie.leaves_in_order();
                std::vector<Key> expect(n);
                std::iota(expect.begin(), expect.end(), Key{1});
                return leaves == expect;
            },
            label);
        const auto tree = prefix_tree_to_bst(trie);
        const auto depths = tree.depths();
        depth_bound.run_case(
            [&] {
                for (Key k = 1; k <= n; ++k) {
                    const double bound = -std::log2(to_double(dist.prob(k))) + 3;
                    if (!(depths[k - 1] < bound + kEntropyTolerance)) return false;
                }
                return true;
            },
            label);
        no_deeper.run_case(
            [&] {
                for (auto [key, trie_depth] : trie.leaf_depths()) {
                    if (depths[key - 1] > trie_depth) return false;
                }
                return true;
            },
            label);
        symmetric.run_case(
            [&] {
                auto order = tree.in_order();
                std::vector<Key> expect(n);
                std::iota(expect.begin(), expect.end(), Key{1});
                return order == expect;
            },
            label);
        const auto pair = bst_to_matchings(tree);
        roundtrip.run_case([&] { return matchings_to_bst(pair) == tree; }, label);
        routing.run_case(
            [&] {
                for (Key k = 1; k <= n; ++k) {
                    if (route(pair, k).size() != depths[k - 1]) return false;
                }
                return true;
            },
            label);
        stat_sandwich.run_case(
            [&] {
                // Scale weights down so costs stay small; keep every key present.
                std::vector<std::uint64_t> w(weights);
                for (auto& x : w) x = 1 + x % 97;
                WeightVector wv(w);
                const auto opt = optimal_static_cost(wv);
                const auto sfe_tree = sfe_to_bst(ProbabilityDistribution::from_weights(w));
                return opt.cost == tree_cost(opt.tree, wv) && opt.cost <= balanced_static_cost(wv) &&
                       opt.cost <= tree_cost(sfe_tree, wv);
            },
            label);
    }

    Suite dp("stat_dp_equals_bruteforce");
    const std::size_t dp_cases = full ? 200 : 60;
    for (std::size_t c = 0; c < dp_cases; ++c) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.below(8));
        std::vector<std::uint64_t> w(n);
        for (auto& x : w) x = rng.below(20);
        if (std::accumulate(w.begin(), w.end(), std::uint64_t{0}) == 0) w[0] = 1;
        WeightVector wv(w);
        dp.run_case([&] { return optimal_static_cost(wv).cost == brute_force_static_cost(wv); }, describe(n, c));
    }

    Suite workload("workload_determinism");
    for (std::size_t c = 0; c < 20; ++c) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.below(32));
        const std::uint64_t seed = rng.next();
        for (const char* text : {"uniform", "zipf:1.2"}) {
            const auto spec = WorkloadSpec::parse(text);
            workload.run_case([&] { return generate(spec, n, 200, seed) == generate(spec, n, 200, seed); },
                              std::string(text) + " " + describe(n, c));
        }
        WorkloadSpec freq;
        freq.kind = WorkloadKind::fixed_frequency;
        freq.weights.resize(n);
        for (auto& x : freq.weights) x = rng.below(6);
        freq.weights[0] += 1;
        workload.run_case(
            [&] {
                const auto seq = generate(freq, n, std::accumulate(freq.weights.begin(), freq.weights.end(), 0ULL), seed);
                std::vector<std::uint64_t> counts(n, 0);
                for (Key k : seq) ++counts[k - 1];
                return counts == freq.weights;
            },
            "freq " + describe(n, c));
    }

    // Dynamic algorithm: every instrumented inequality on a grid of runs.
    Suite dynamic("abst_dynamic_bounds");
    Suite matching_valid("matching_valid_after_rebuild");
    const std::vector<std::size_t> ns = full ? std::vector<std::size_t>{5, 16, 64} : std::vector<std::size_t>{5, 16};
    const std::vector<std::uint64_t> alphas =
        full ? std::vector<std::uint64_t>{2, 8, 32} : std::vector<std::uint64_t>{2, 8};
    const std::vector<std::string> workloads{"uniform", "zipf:1.0", "zipf:1.5"};
    for (auto n : ns) {
        for (auto alpha : alphas) {
            for (const auto& w : workloads) {
                for (auto mode : {Smoothing::laplace, Smoothing::none}) {
                    const std::string label = "n=" + std::to_string(n) + " alpha=" + std::to_string(alpha) + " " + w +
                                              " " + std::string(to_string(mode));
                    const auto m = default_length(n, alpha);
                    const auto trace = generate(WorkloadSpec::parse(w), n, m, config.seed + n * 1000 + alpha);
                    SimulationOptions opts;
                    opts.keep_steps = false;
                    SimulationState state(n, alpha, mode, opts);
                    bool matchings_ok = true;
                    std::string matching_error;
                    dynamic.run_case(
                        [&] {
                            for (Key k : trace) {
                                if (state.step(k).rebuilt) {
                                    try {
                                        validate_matchings(bst_to_matchings(state.tree()));
                                    } catch (const Error& e) {
                                        matchings_ok = false;
                                        matching_error = e.what();
                                    }
                                }
                            }
                            const auto checks = state.check_bounds();
                            for (const auto& c : checks) {
                                if (!c.ok) throw Error(c.name + ": " + c.detail);
                            }
                            return state.report().theorem_applicable;
                        },
                        label);
                    matching_valid.check(matchings_ok, label + ": " + matching_error);
                }
            }
        }
    }

    return {prefix_free.result(),   sandwich.result(),       lengths.result(), monotone.result(),
            deterministic.result(), sorted_leaves.result(),  depth_bound.result(),  no_deeper.result(),
            symmetric.result(),     roundtrip.result(),      routing.result(), stat_sandwich.result(),
            dp.result(),            workload.result(),       dynamic.result(), matching_valid.result()};
}

}  // namespace abst::cli
