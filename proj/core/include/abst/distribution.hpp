#pragma once

#include "abst/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace abst {

// 1-based rank of a key in the sorted key order.
using Key = std::uint32_t;

// Exact probabilities over keys 1..n. Every probability is strictly positive
// and the probabilities sum to exactly one.
class ProbabilityDistribution {
public:
    explicit ProbabilityDistribution(std::vector<Rational> probs);

    static ProbabilityDistribution uniform(std::size_t n);
    // Normalizes strictly positive integer weights.
    static ProbabilityDistribution from_weights(std::span<const std::uint64_t> weights);
    // Comma-separated literal, e.g. "0.1,0.2,0.4,0.2,0.1" or "1/4,3/4".
    static ProbabilityDistribution parse(std::string_view literal);

    std::size_t size() const noexcept { return probs_.size(); }
    const Rational& prob(Key key) const;
    const std::vector<Rational>& probs() const noexcept { return probs_; }

    std::string to_string() const;

    friend bool operator==(const ProbabilityDistribution&, const ProbabilityDistribution&) = default;

private:
    std::vector<Rational> probs_;
};

// Binary entropy in bits, with 0 * log(1/0) = 0.
double entropy(const ProbabilityDistribution& dist);
double entropy_of_counts(std::span<const std::uint64_t> counts);

}  // namespace abst
