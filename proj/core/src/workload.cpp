#include "abst/workload.hpp"

#include "abst/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace abst {

namespace {

std::uint64_t parse_u64(std::string_view s, const std::string& what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("malformed " + what + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

WorkloadSpec WorkloadSpec::parse(std::string_view text) {
    WorkloadSpec spec;
    auto colon = text.find(':');
    auto kind = text.substr(0, colon);
    auto arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (kind == "uniform") {
        spec.kind = WorkloadKind::uniform;
    } else if (kind == "zipf") {
        spec.kind = WorkloadKind::zipf;
        try {
            std::size_t used = 0;
            spec.zipf_exponent = std::stod(std::string(arg), &used);
            if (used != arg.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("zipf exponent '" + std::string(arg) + "' is not a number");
        }
        if (!(spec.zipf_exponent >= 0.0) || !std::isfinite(spec.zipf_exponent)) {
            throw InvalidArgument("zipf exponent must be >= 0");
        }
    } else if (kind == "freq") {
        spec.kind = WorkloadKind::fixed_frequency;
        std::size_t start = 0;
        while (start <= arg.size()) {
            auto comma = arg.find(',', start);
            auto item = arg.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            spec.weights.push_back(parse_u64(item, "frequency"));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (std::accumulate(spec.weights.begin(), spec.weights.end(), std::uint64_t{0}) == 0) {
            throw InvalidArgument("frequency weights sum to zero");
        }
    } else if (kind == "file") {
        spec.kind = WorkloadKind::file;
        if (arg.empty()) throw ParseError("file workload needs a path");
        spec.path = std::string(arg);
    } else {
        throw InvalidArgument("unknown workload kind '" + std::string(kind) + "'");
    }
    return spec;
}

std::string WorkloadSpec::to_string() const {
    switch (kind) {
        case WorkloadKind::uniform:
            return "uniform";
        case WorkloadKind::zipf: {
            std::ostringstream os;
            os << "zipf:" << zipf_exponent;
            return os.str();
        }
        case WorkloadKind::fixed_frequency: {
            std::string s = "freq:";
            for (std::size_t i = 0; i < weights.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(weights[i]);
            }
            return s;
        }
        case WorkloadKind::file:
            return "file:" + path.string();
    }
    return {};
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw InvalidArgument("Rng::below needs a positive bound");
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        const std::uint64_t r = engine_();
        if (r >= threshold) return r % bound;
    }
}

double Rng::unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<std::uint64_t> apportion(std::span<const std::uint64_t> weights, std::uint64_t m) {
    const std::uint64_t total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
    if (total == 0) throw InvalidArgument("frequency weights sum to zero");
    if (m == total) return {weights.begin(), weights.end()};
    std::vector<std::uint64_t> counts(weights.size());
    std::vector<std::pair<unsigned __int128, std::size_t>> remainders;
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const unsigned __int128 scaled = static_cast<unsigned __int128>(weights[i]) * m;
        counts[i] = static_cast<std::uint64_t>(scaled / total);
        assigned += counts[i];
        remainders.emplace_back(scaled % total, i);
    }
    std::stable_sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t j = 0; assigned < m; ++j, ++assigned) ++counts[remainders[j].second];
    return counts;
}

std::vector<Key> generate(const WorkloadSpec& spec, std::size_t n, std::uint64_t m, std::uint64_t seed) {
    if (spec.kind == WorkloadKind::file) {
        auto trace = read_trace(spec.path, n);
        if (trace.empty()) throw InvalidArgument("trace file " + spec.path.string() + " has no requests");
        return trace;
    }
    if (n == 0) throw InvalidArgument("workload needs n >= 1");
    if (m == 0) throw InvalidArgument("workload needs m >= 1");
    Rng rng(seed);
    std::vector<Key> out;
    out.reserve(m);
    switch (spec.kind) {
        case WorkloadKind::uniform:
            for (std::uint64_t t = 0; t < m; ++t) out.push_back(static_cast<Key>(1 + rng.below(n)));
            break;
        case WorkloadKind::zipf: {
            std::vector<Key> key_of_rank(n);
            std::iota(key_of_rank.begin(), key_of_rank.end(), Key{1});
            rng.shuffle(key_of_rank);
            std::vector<double> cdf(n);
            double acc = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                acc += 1.0 / std::pow(static_cast<double>(r + 1), spec.zipf_exponent);
                cdf[r] = acc;
            }
            for (std::uint64_t t = 0; t < m; ++t) {
                const double u = rng.unit() * acc;
                auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                const auto r = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), n - 1);
                out.push_back(key_of_rank[r]);
            }
            break;
        }
        case WorkloadKind::fixed_frequency: {
            if (spec.weights.size() != n) {
                throw InvalidArgument("freq workload has " + std::to_string(spec.weights.size()) +
                                      " weights but n = " + std::to_string(n));
            }
            const auto counts = apportion(spec.weights, m);
            for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), counts[i], static_cast<Key>(i + 1));
            rng.shuffle(out);
            break;
        }
        case WorkloadKind::file:
            break;
    }
    return out;
}

std::vector<Key> parse_trace(std::string_view text, std::size_t n) {
    std::vector<Key> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
        if (line.empty() || line.front() == '#') continue;
        std::uint64_t key = 0;
        auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), key);
        if (ec != std::errc{} || ptr != line.data() + line.size()) {
            throw ParseError("malformed key '" + std::string(line) + "'", line_no);
        }
        if (key == 0) throw ParseError("key 0 is invalid (keys are 1-based)", line_no);
        if (n > 0 && key > n) {
            throw ParseError("key " + std::to_string(key) + " exceeds n = " + std::to_string(n), line_no);
        }
        if (key > std::numeric_limits<Key>::max()) throw ParseError("key too large", line_no);
        out.push_back(static_cast<Key>(key));
    }
    return out;
}

std::vector<Key> read_trace(const std::filesystem::path& path, std::size_t n) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open trace file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_trace(buf.str(), n);
}

void write_trace(const std::filesystem::path& path, std::span<const Key> trace) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write trace file " + path.string());
    for (Key k : trace) out << k << '\n';
    if (!out) throw InvalidArgument("write failed for " + path.string());
}

}  // namespace abst
