#pragma once

#include "abst/distribution.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace abst {

enum class WorkloadKind { uniform, zipf, fixed_frequency, file };

// Textual form: "uniform", "zipf:1.2", "freq:1,2,4,2,1", "file:trace.txt".
struct WorkloadSpec {
    WorkloadKind kind = WorkloadKind::uniform;
    double zipf_exponent = 0.0;
    std::vector<std::uint64_t> weights;
    std::filesystem::path path;

    static WorkloadSpec parse(std::string_view text);
    std::string to_string() const;
};

// Portable sampling on top of std::mt19937_64, whose output sequence is fixed
// by the C++ standard. The std distributions are avoided because their
// algorithms differ between standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Uniform on [0, bound) by modulo rejection.
    std::uint64_t below(std::uint64_t bound);
    // Uniform on [0, 1) with 53 random bits.
    double unit();

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// Deterministic for a fixed seed. `n` is the key count, `m` the sequence length.
// zipf: P(rank r) proportional to 1 / r^s, with a seeded rank-to-key permutation.
// freq: exact per-key counts (largest-remainder apportionment when m != sum of weights).
// file: the trace file's contents; m is ignored.
std::vector<Key> generate(const WorkloadSpec& spec, std::size_t n, std::uint64_t m, std::uint64_t seed);

// Counts per key realized by a fixed-frequency workload of length m.
std::vector<std::uint64_t> apportion(std::span<const std::uint64_t> weights, std::uint64_t m);

// One 1-based key per line; blank lines and lines starting with '#' are skipped.
// With n > 0, keys above n are rejected as well.
std::vector<Key> read_trace(const std::filesystem::path& path, std::size_t n = 0);
std::vector<Key> parse_trace(std::string_view text, std::size_t n = 0);
void write_trace(const std::filesystem::path& path, std::span<const Key> trace);

}  // namespace abst
