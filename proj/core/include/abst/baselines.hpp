#pragma once

#include "abst/search_tree.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace abst {

// Per-key access counts w_1..w_n. Zero counts are allowed, but not all of them.
class WeightVector {
public:
    explicit WeightVector(std::vector<std::uint64_t> weights);
    static WeightVector from_trace(std::size_t n, std::span<const Key> trace);

    std::size_t size() const noexcept { return w_.size(); }
    std::uint64_t total() const noexcept { return m_; }
    std::uint64_t operator[](Key key) const { return w_.at(key - 1); }
    const std::vector<std::uint64_t>& values() const noexcept { return w_; }

private:
    std::vector<std::uint64_t> w_;
    std::uint64_t m_ = 0;
};

struct StaticOptimum {
    std::uint64_t cost = 0;
    SearchTree tree;
};

// Sum of w_i * depth(tree, i).
std::uint64_t tree_cost(const SearchTree& tree, const WeightVector& weights);

// Exact minimum over all BSTs on 1..n of the summed access depths, by the
// interval dynamic program (successful searches only). Ties pick the smallest root.
StaticOptimum optimal_static_cost(const WeightVector& weights);

inline constexpr std::size_t kBruteForceMaxKeys = 12;

// Enumerates every BST on 1..n explicitly. Refuses n > kBruteForceMaxKeys.
std::uint64_t brute_force_static_cost(const WeightVector& weights);

std::uint64_t balanced_static_cost(const WeightVector& weights);

// Report annotation only: m * max(1, H) / log2(3) and 2 * m * (1 + H).
struct EntropyBounds {
    double entropy = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};
EntropyBounds stat_entropy_bounds(const WeightVector& weights);

}  // namespace abst
