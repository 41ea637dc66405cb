#include "commands.hpp"

#include "abst/errors.hpp"
#include "abst/matching.hpp"
#include "abst/prefix_tree.hpp"
#include "abst/sfe_code.hpp"
#include "abst/workload.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

namespace abst::cli {

Format parse_format(std::string_view text) {
    if (text == "json") return Format::json;
    if (text == "csv") return Format::csv;
    if (text == "text") return Format::text;
    throw InvalidArgument("unknown output format '" + std::string(text) + "'");
}

VerifyScale parse_scale(std::string_view text) {
    if (text == "quick") return VerifyScale::quick;
    if (text == "full") return VerifyScale::full;
    throw InvalidArgument("unknown verify scale '" + std::string(text) + "' (expected quick or full)");
}

std::uint64_t default_length(std::size_t n, std::uint64_t alpha) {
    const double min_len = theorem_min_length(n, alpha);
    // Values such as 2*5*2*1 = 20 are exact; nudge below the ceiling for float noise.
    auto m = static_cast<std::uint64_t>(std::ceil(min_len - 1e-9));
    return std::max<std::uint64_t>(m, 20);
}

void attach_static_baseline(SimulationReport& report, const WeightVector& weights) {
    const auto opt = optimal_static_cost(weights);
    report.stat_cost = opt.cost;
    report.rho = static_cast<double>(report.total) / static_cast<double>(opt.cost);
}

namespace {

// Writes to the named file, or to `fallback` when the name is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::trunc);
    if (!file) throw InvalidArgument("cannot open output file " + path);
    write(file);
}

std::size_t infer_key_count(const WorkloadSpec& spec, std::size_t n, const std::vector<Key>& append) {
    if (n > 0) return n;
    std::size_t inferred = 0;
    if (spec.kind == WorkloadKind::fixed_frequency) inferred = spec.weights.size();
    if (spec.kind == WorkloadKind::file) {
        for (Key k : read_trace(spec.path)) inferred = std::max<std::size_t>(inferred, k);
    }
    for (Key k : append) inferred = std::max<std::size_t>(inferred, k);
    if (inferred == 0) throw InvalidArgument("--n is required for this workload");
    return inferred;
}

}  // namespace

SimulationOutcome simulate(const RunConfig& config) {
    const auto spec = WorkloadSpec::parse(config.workload);
    const std::size_t n = infer_key_count(spec, config.n, config.append);
    if (config.alpha == 0) throw InvalidArgument("--alpha must be a positive integer");
    std::uint64_t m = config.m.value_or(0);
    if (m == 0) {
        m = spec.kind == WorkloadKind::fixed_frequency && !config.m
                ? std::accumulate(spec.weights.begin(), spec.weights.end(), std::uint64_t{0})
                : default_length(n, config.alpha);
    }
    auto trace = generate(spec, n, m, config.seed);
    trace.insert(trace.end(), config.append.begin(), config.append.end());
    for (Key k : trace) {
        if (k < 1 || k > n) throw InvalidRequest("request " + std::to_string(k) + " outside 1.." + std::to_string(n));
    }

    SimulationOptions options;
    options.keep_steps = !config.steps_csv.empty();
    options.check_invariants = config.check_bounds;
    SimulationState state(n, config.alpha, config.smoothing, options);
    SimulationOutcome outcome;
    outcome.report = run(state, trace);
    if (config.with_stat) attach_static_baseline(outcome.report, WeightVector(state.counters().counts()));
    if (config.check_bounds) outcome.checks = state.check_bounds();
    outcome.steps = state.steps();
    return outcome;
}

int cmd_encode(const std::string& literal, Format format, std::ostream& out) {
    const auto dist = ProbabilityDistribution::parse(literal);
    const auto table = build_sfe_code(dist);
    const auto avg = average_code_length(table, dist);
    const double h = entropy(dist);
    if (format == Format::json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& e : table.entries()) {
            rows.push_back({{"key", e.key},
                            {"p", to_string(dist.prob(e.key))},
                            {"F", to_string(e.cum)},
                            {"Fbar", to_string(e.midpoint)},
                            {"length", e.length},
                            {"codeword", e.codeword}});
        }
        out << nlohmann::json{{"entries", rows},
                              {"entropy", h},
                              {"average_length", to_string(avg)},
                              {"average_length_value", to_double(avg)}}
                   .dump(2)
            << '\n';
        return kOk;
    }
    if (format == Format::csv) {
        out << "key,p,F,Fbar,length,codeword\n";
        for (const auto& e : table.entries()) {
            out << e.key << ',' << to_string(dist.prob(e.key)) << ',' << to_string(e.cum) << ','
                << to_string(e.midpoint) << ',' << e.length << ',' << e.codeword << '\n';
        }
        return kOk;
    }
    out << std::left << std::setw(6) << "key" << std::setw(14) << "p" << std::setw(14) << "F" << std::setw(14)
        << "Fbar" << std::setw(5) << "len" << "code\n";
    for (const auto& e : table.entries()) {
        out << std::setw(6) << e.key << std::setw(14) << to_string(dist.prob(e.key)) << std::setw(14)
            << to_string(e.cum) << std::setw(14) << to_string(e.midpoint) << std::setw(5) << e.length << e.codeword
            << '\n';
    }
    out << "H = " << std::setprecision(10) << h << '\n';
    out << "L = " << to_string(avg) << " (" << to_double(avg) << ")\n";
    return kOk;
}

int cmd_build(const std::string& literal, std::ostream& out) {
    const auto tree = sfe_to_bst(ProbabilityDistribution::parse(literal));
    out << tree.to_string() << '\n';
    out << to_json(bst_to_matchings(tree)).dump() << '\n';
    return kOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto outcome = simulate(config);
    emit(config.out, out, [&](std::ostream& os) {
        if (config.format == Format::csv) {
            os << report_csv_header() << '\n' << report_csv_row(outcome.report) << '\n';
            return;
        }
        auto doc = to_json(outcome.report);
        if (config.check_bounds) {
            nlohmann::json checks = nlohmann::json::array();
            for (const auto& c : outcome.checks) {
                checks.push_back({{"name", c.name}, {"applicable", c.applicable}, {"ok", c.ok}, {"detail", c.detail}});
            }
            doc["bound_checks"] = checks;
        }
        os << doc.dump(2) << '\n';
    });
    if (!config.steps_csv.empty()) {
        emit(config.steps_csv, out, [&](std::ostream& os) {
            os << "t,key,depth,rebuilt\n";
            for (const auto& s : outcome.steps) os << s.t << ',' << s.key << ',' << s.depth << ',' << (s.rebuilt ? 1 : 0) << '\n';
        });
    }
    if (config.check_bounds) {
        bool ok = true;
        for (const auto& c : outcome.checks) {
            if (!c.ok) {
                err << "bound violated: " << c.name << ": " << c.detail << '\n';
                ok = false;
            }
        }
        if (!ok) return kBoundViolation;
    }
    return kOk;
}

int cmd_compare(const CompareConfig& config, std::ostream& out, std::ostream& err) {
    struct Cell {
        std::uint64_t alpha;
        std::string workload;
        std::uint64_t m;
    };
    std::vector<Cell> cells;
    for (auto alpha : config.alphas) {
        for (const auto& w : config.workloads) {
            if (!config.ms.empty()) {
                for (auto m : config.ms) cells.push_back({alpha, w, m});
            } else {
                const auto base = default_length(config.n, alpha);
                for (auto k : config.multiples) cells.push_back({alpha, w, base * k});
            }
        }
    }

    // Cells are independent simulations; results are joined in grid order.
    std::vector<std::future<SimulationOutcome>> futures;
    futures.reserve(cells.size());
    for (const auto& c : cells) {
        RunConfig rc;
        rc.n = config.n;
        rc.alpha = c.alpha;
        rc.m = c.m;
        rc.workload = c.workload;
        rc.smoothing = config.smoothing;
        rc.seed = config.seed;
        rc.with_stat = true;
        rc.check_bounds = false;
        futures.push_back(std::async(std::launch::async, [rc] { return simulate(rc); }));
    }
    std::vector<SimulationReport> reports;
    for (auto& f : futures) reports.push_back(f.get().report);

    emit(config.out, out, [&](std::ostream& os) {
        if (config.format == Format::json) {
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t i = 0; i < cells.size(); ++i) {
                auto row = to_json(reports[i]);
                row["workload"] = cells[i].workload;
                rows.push_back(row);
            }
            os << rows.dump(2) << '\n';
            return;
        }
        os << "n,alpha,workload,smoothing,m,search_cost,adjust_cost,rebuilds,total,stat_cost,rho,theorem_bound,"
              "theorem_applicable\n";
        os << std::setprecision(6);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto& r = reports[i];
            os << r.n << ',' << r.alpha << ',' << cells[i].workload << ',' << to_string(r.smoothing) << ',' << r.m
               << ',' << r.search_cost << ',' << r.adjust_cost << ',' << r.rebuilds << ',' << r.total << ','
               << *r.stat_cost << ',' << *r.rho << ',' << r.theorem_bound << ','
               << (r.theorem_applicable ? "true" : "false") << '\n';
        }
    });
    (void)err;
    return kOk;
}

int cmd_verify(const VerifyConfig& config, std::ostream& out) {
    const auto results = run_verify_suites(config);
    std::size_t failed = 0;
    for (const auto& r : results) {
        if (r.failures == 0) {
            out << "PASS " << r.name << " (" << r.cases << " cases)\n";
        } else {
            ++failed;
            out << "FAIL " << r.name << " (" << r.failures << "/" << r.cases << " failed): " << r.first_failure << '\n';
        }
    }
    out << (failed == 0 ? "all " + std::to_string(results.size()) + " suites passed"
                        : std::to_string(failed) + " of " + std::to_string(results.size()) + " suites failed")
        << '\n';
    return failed == 0 ? kOk : kSuiteFailure;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const InvalidDistribution& e) {
        err << "invalid distribution: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const nlohmann::json::exception& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    }
}

}  // namespace abst::cli
