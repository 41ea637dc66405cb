#pragma once

#include "abst/distribution.hpp"

#include <string>
#include <vector>

namespace abst {

// One Shannon-Fano-Elias codeword. `codeword` holds '0'/'1' characters,
// most significant bit first.
struct CodeEntry {
    Key key = 0;
    Rational cum;       // F(i) = sum of p_j for j <= i
    Rational midpoint;  // F(i-1) + p_i / 2
    unsigned length = 0;
    std::string codeword;

    friend bool operator==(const CodeEntry&, const CodeEntry&) = default;
};

class CodeTable {
public:
    CodeTable() = default;
    explicit CodeTable(std::vector<CodeEntry> entries) : entries_(std::move(entries)) {}

    std::size_t size() const noexcept { return entries_.size(); }
    const CodeEntry& entry(Key key) const;
    const std::vector<CodeEntry>& entries() const noexcept { return entries_; }
    std::vector<CodeEntry>& mutable_entries() noexcept { return entries_; }

    friend bool operator==(const CodeTable&, const CodeTable&) = default;

private:
    std::vector<CodeEntry> entries_;
};

// Codewords are the first ceil(log2(1/p_i)) + 1 bits of the binary expansion
// of the CDF midpoint, extracted by exact doubling.
CodeTable build_sfe_code(const ProbabilityDistribution& dist);

// First `bits` bits of the binary fraction of x, 0 <= x < 1.
std::string binary_expansion(const Rational& x, unsigned bits);

// Sum of p_i * length_i.
Rational average_code_length(const CodeTable& table, const ProbabilityDistribution& dist);

bool is_prefix_free(const CodeTable& table);

}  // namespace abst
