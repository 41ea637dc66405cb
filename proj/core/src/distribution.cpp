#include "abst/distribution.hpp"

#include "abst/errors.hpp"

#include <cmath>
#include <numeric>

namespace abst {

ProbabilityDistribution::ProbabilityDistribution(std::vector<Rational> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw InvalidDistribution("distribution has no keys");
    Rational total = 0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        probs_[i].canonicalize();
        if (sgn(probs_[i]) <= 0) {
            throw InvalidDistribution("probability of key " + std::to_string(i + 1) + " is not positive (" +
                                      abst::to_string(probs_[i]) + ")");
        }
        total += probs_[i];
    }
    if (total != 1) {
        throw InvalidDistribution("probabilities sum to " + abst::to_string(total) + ", not 1");
    }
}

ProbabilityDistribution ProbabilityDistribution::uniform(std::size_t n) {
    if (n == 0) throw InvalidDistribution("distribution has no keys");
    return ProbabilityDistribution(std::vector<Rational>(n, make_rational(1, n)));
}

ProbabilityDistribution ProbabilityDistribution::from_weights(std::span<const std::uint64_t> weights) {
    BigInt total = 0;
    for (auto w : weights) total += BigInt{std::to_string(w)};
    if (total == 0) throw InvalidDistribution("weights sum to zero");
    std::vector<Rational> probs;
    probs.reserve(weights.size());
    for (auto w : weights) {
        Rational p{BigInt{std::to_string(w)}, total};
        p.canonicalize();
        probs.push_back(std::move(p));
    }
    return ProbabilityDistribution(std::move(probs));
}

ProbabilityDistribution ProbabilityDistribution::parse(std::string_view literal) {
    std::vector<Rational> probs;
    std::size_t start = 0;
    while (true) {
        auto comma = literal.find(',', start);
        auto item = literal.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        probs.push_back(parse_rational(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return ProbabilityDistribution(std::move(probs));
}

const Rational& ProbabilityDistribution::prob(Key key) const {
    if (key < 1 || key > probs_.size()) {
        throw DimensionError("key " + std::to_string(key) + " outside 1.." + std::to_string(probs_.size()));
    }
    return probs_[key - 1];
}

std::string ProbabilityDistribution::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (i) out += ',';
        out += abst::to_string(probs_[i]);
    }
    return out;
}

double entropy(const ProbabilityDistribution& dist) {
    double h = 0.0;
    for (const auto& p : dist.probs()) {
        // log2(b/a) via the exact num/den keeps precision for tiny p.
        double lg = std::log2(p.get_den().get_d()) - std::log2(p.get_num().get_d());
        h += p.get_d() * lg;
    }
    return h;
}

double entropy_of_counts(std::span<const std::uint64_t> counts) {
    const double m = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    if (m == 0) return 0.0;
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        const double w = static_cast<double>(c);
        h += (w / m) * std::log2(m / w);
    }
    return h;
}

}  // namespace abst
