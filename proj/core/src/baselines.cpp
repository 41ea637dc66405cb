#include "abst/baselines.hpp"

#include "abst/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace abst {

WeightVector::WeightVector(std::vector<std::uint64_t> weights) : w_(std::move(weights)) {
    m_ = std::accumulate(w_.begin(), w_.end(), std::uint64_t{0});
    if (w_.empty()) throw InvalidArgument("weight vector has no keys");
    if (m_ == 0) throw InvalidArgument("weight vector is all zero");
}

WeightVector WeightVector::from_trace(std::size_t n, std::span<const Key> trace) {
    std::vector<std::uint64_t> w(n, 0);
    for (Key k : trace) {
        if (k < 1 || k > n) throw InvalidRequest("trace key " + std::to_string(k) + " outside 1.." + std::to_string(n));
        ++w[k - 1];
    }
    return WeightVector(std::move(w));
}

std::uint64_t tree_cost(const SearchTree& tree, const WeightVector& weights) {
    if (tree.size() != weights.size()) throw DimensionError("tree and weight vector sizes differ");
    const auto depths = tree.depths();
    std::uint64_t cost = 0;
    for (std::size_t i = 0; i < depths.size(); ++i) cost += weights.values()[i] * depths[i];
    return cost;
}

StaticOptimum optimal_static_cost(const WeightVector& weights) {
    const std::size_t n = weights.size();
    const auto& w = weights.values();
    std::vector<std::uint64_t> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + w[i];

    // cost[i][j], root[i][j] over keys i+1..j (0 <= i <= j <= n); empty ranges cost 0.
    const std::size_t stride = n + 1;
    std::vector<std::uint64_t> cost(stride * stride, 0);
    std::vector<Key> root(stride * stride, 0);
    auto at = [stride](std::size_t i, std::size_t j) { return i * stride + j; };

    for (std::size_t len = 1; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            const std::size_t j = i + len;
            std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
            Key best_root = 0;
            for (std::size_t r = i + 1; r <= j; ++r) {
                const std::uint64_t c = cost[at(i, r - 1)] + cost[at(r, j)];
                if (c < best) {
                    best = c;
                    best_root = static_cast<Key>(r);
                }
            }
            cost[at(i, j)] = best + (prefix[j] - prefix[i]);
            root[at(i, j)] = best_root;
        }
    }

    std::vector<Key> left(n + 1, 0);
    std::vector<Key> right(n + 1, 0);
    struct Range {
        std::size_t i, j;
        Key parent;
        bool is_left;
    };
    std::vector<Range> stack{{0, n, 0, false}};
    Key tree_root = 0;
    while (!stack.empty()) {
        auto [i, j, parent, is_left] = stack.back();
        stack.pop_back();
        if (i >= j) continue;
        const Key r = root[at(i, j)];
        if (parent == 0) {
            tree_root = r;
        } else {
            (is_left ? left : right)[parent] = r;
        }
        stack.push_back({i, r - 1, r, true});
        stack.push_back({r, j, r, false});
    }
    return StaticOptimum{cost[at(0, n)], SearchTree(tree_root, std::move(left), std::move(right))};
}

namespace {

// All depth vectors of BSTs over keys lo..hi (each vector indexed from lo).
std::vector<std::vector<std::uint8_t>> enumerate_depths(std::size_t lo, std::size_t hi) {
    if (lo > hi) return {{}};
    std::vector<std::vector<std::uint8_t>> out;
    for (std::size_t r = lo; r <= hi; ++r) {
        auto lefts = enumerate_depths(lo, r - 1);
        auto rights = enumerate_depths(r + 1, hi);
        for (const auto& l : lefts) {
            for (const auto& rt : rights) {
                std::vector<std::uint8_t> d;
                d.reserve(hi - lo + 1);
                for (auto x : l) d.push_back(static_cast<std::uint8_t>(x + 1));
                d.push_back(1);
                for (auto x : rt) d.push_back(static_cast<std::uint8_t>(x + 1));
                out.push_back(std::move(d));
            }
        }
    }
    return out;
}

}  // namespace

std::uint64_t brute_force_static_cost(const WeightVector& weights) {
    const std::size_t n = weights.size();
    if (n > kBruteForceMaxKeys) {
        throw InvalidArgument("brute force refused for n = " + std::to_string(n) + " (limit " +
                              std::to_string(kBruteForceMaxKeys) + ")");
    }
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (const auto& depths : enumerate_depths(1, n)) {
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < n; ++i) c += weights.values()[i] * depths[i];
        best = std::min(best, c);
    }
    return best;
}

std::uint64_t balanced_static_cost(const WeightVector& weights) {
    return tree_cost(SearchTree::balanced(weights.size()), weights);
}

EntropyBounds stat_entropy_bounds(const WeightVector& weights) {
    EntropyBounds b;
    const double m = static_cast<double>(weights.total());
    for (auto w : weights.values()) {
        if (w == 0) continue;
        const double x = static_cast<double>(w);
        b.entropy += (x / m) * std::log2(m / x);
    }
    b.lower = m * std::max(1.0, b.entropy) / std::log2(3.0);
    b.upper = 2.0 * m * (1.0 + b.entropy);
    return b;
}

}  // namespace abst
