#include "abst/sfe_code.hpp"

#include "abst/errors.hpp"

#include <algorithm>

namespace abst {

const CodeEntry& CodeTable::entry(Key key) const {
    if (key < 1 || key > entries_.size()) {
        throw DimensionError("key " + std::to_string(key) + " outside code table of size " +
                             std::to_string(entries_.size()));
    }
    return entries_[key - 1];
}

std::string binary_expansion(const Rational& x, unsigned bits) {
    if (sgn(x) < 0 || x >= 1) throw InvalidArgument("binary_expansion needs 0 <= x < 1");
    BigInt num = x.get_num();
    const BigInt& den = x.get_den();
    std::string out;
    out.reserve(bits);
    for (unsigned k = 0; k < bits; ++k) {
        num <<= 1;
        if (num >= den) {
            out.push_back('1');
            num -= den;
        } else {
            out.push_back('0');
        }
    }
    return out;
}

CodeTable build_sfe_code(const ProbabilityDistribution& dist) {
    std::vector<CodeEntry> entries;
    entries.reserve(dist.size());
    Rational below = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const Rational& p = dist.probs()[i];
        CodeEntry e;
        e.key = static_cast<Key>(i + 1);
        e.midpoint = below + p / 2;
        below += p;
        e.cum = below;
        e.length = ceil_log2_inverse(p) + 1;
        e.codeword = binary_expansion(e.midpoint, e.length);
        entries.push_back(std::move(e));
    }
    return CodeTable(std::move(entries));
}

Rational average_code_length(const CodeTable& table, const ProbabilityDistribution& dist) {
    if (table.size() != dist.size()) {
        throw DimensionError("code table has " + std::to_string(table.size()) + " entries, distribution has " +
                             std::to_string(dist.size()));
    }
    Rational sum = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        sum += dist.probs()[i] * table.entries()[i].length;
    }
    return sum;
}

bool is_prefix_free(const CodeTable& table) {
    std::vector<std::string> words;
    words.reserve(table.size());
    for (const auto& e : table.entries()) words.push_back(e.codeword);
    std::sort(words.begin(), words.end());
    // After sorting, a word that prefixes others sorts directly before one of them.
    for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i].compare(0, words[i - 1].size(), words[i - 1]) == 0) return false;
    }
    return true;
}

}  // namespace abst
