#include "abst/dynamic.hpp"

#include "abst/errors.hpp"
#include "abst/prefix_tree.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>

namespace abst {

using u128 = unsigned __int128;

std::string_view to_string(Smoothing s) {
    return s == Smoothing::laplace ? "laplace" : "none";
}

Smoothing parse_smoothing(std::string_view text) {
    if (text == "laplace") return Smoothing::laplace;
    if (text == "none") return Smoothing::none;
    throw InvalidArgument("unknown smoothing mode '" + std::string(text) + "' (expected laplace or none)");
}

CounterState::CounterState(std::vector<std::uint64_t> counts)
    : counts_(std::move(counts)), t_(std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0})) {}

void CounterState::record(Key key) {
    ++counts_.at(key - 1);
    ++t_;
}

Rational empirical_q(const CounterState& counters, Key key, Smoothing smoothing) {
    if (key < 1 || key > counters.n()) throw InvalidRequest("key " + std::to_string(key) + " out of range");
    if (smoothing == Smoothing::laplace) return make_rational(counters.count(key) + 1, counters.t() + counters.n());
    if (counters.t() == 0) throw InvalidArgument("empirical frequency undefined at t = 0 without smoothing");
    return make_rational(counters.count(key), counters.t());
}

ModelDistribution ModelDistribution::uniform(std::size_t n) {
    return ModelDistribution{std::vector<std::uint64_t>(n, 1), n};
}

ModelDistribution ModelDistribution::from(const ProbabilityDistribution& dist) {
    BigInt common = 1;
    for (const auto& p : dist.probs()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), p.get_den().get_mpz_t());
    if (!common.fits_ulong_p()) throw InvalidArgument("distribution denominators exceed 64 bits");
    ModelDistribution model;
    model.total = common.get_ui();
    for (const auto& p : dist.probs()) {
        BigInt mass = p.get_num() * (common / p.get_den());
        model.mass.push_back(mass.get_ui());
    }
    return model;
}

Rational ModelDistribution::prob(Key key) const {
    return make_rational(mass.at(key - 1), total);
}

SearchTree tree_for_model(const ModelDistribution& model) {
    const std::size_t n = model.size();
    if (n == 0) throw InvalidArgument("model has no keys");
    std::vector<Key> support;
    std::vector<std::uint64_t> support_mass;
    for (std::size_t i = 0; i < n; ++i) {
        if (model.mass[i] > 0) {
            support.push_back(static_cast<Key>(i + 1));
            support_mass.push_back(model.mass[i]);
        }
    }
    if (support.empty()) throw InvalidDistribution("model distribution has no positive mass");

    const SearchTree core = sfe_to_bst(ProbabilityDistribution::from_weights(support_mass));
    if (support.size() == n) return core;

    std::vector<Key> left(n + 1, 0);
    std::vector<Key> right(n + 1, 0);
    for (Key r = 1; r <= core.size(); ++r) {
        const Key key = support[r - 1];
        if (Key l = core.left(r)) left[key] = support[l - 1];
        if (Key rt = core.right(r)) right[key] = support[rt - 1];
    }
    // Gap before the first support key, between neighbours, and after the last.
    left[support.front()] = detail::build_balanced(left, right, 1, support.front() - 1, true);
    for (std::size_t j = 0; j + 1 < support.size(); ++j) {
        const Key a = support[j];
        const Key b = support[j + 1];
        if (b == a + 1) continue;
        if (right[a] == 0) {
            right[a] = detail::build_balanced(left, right, a + 1, b - 1, false);
        } else {
            left[b] = detail::build_balanced(left, right, a + 1, b - 1, true);
        }
    }
    right[support.back()] = detail::build_balanced(left, right, support.back() + 1, static_cast<Key>(n), false);
    return SearchTree(support[core.root() - 1], std::move(left), std::move(right));
}

double theorem_min_length(std::size_t n, std::uint64_t alpha) {
    const double a = static_cast<double>(alpha);
    return 2.0 * static_cast<double>(n) * a * std::log2(a);
}

SimulationState::SimulationState(std::size_t n, std::uint64_t alpha, Smoothing smoothing, SimulationOptions options)
    : counters_(n),
      alpha_(alpha),
      smoothing_(smoothing),
      options_(options),
      model_(ModelDistribution::uniform(n)),
      tree_(SearchTree::balanced(n)),
      depths_(tree_.depths()),
      counts_at_last_rebuild_(n, 0),
      log_inv_q_(n, 0.0) {
    if (n == 0) throw InvalidArgument("simulation needs at least one key");
    if (alpha == 0) throw InvalidArgument("reconfiguration cost alpha must be positive");
    if (alpha < 2) {
        std::cerr << "warning: alpha = " << alpha << " is below 2; total-cost bound checks are disabled\n";
    }
}

SimulationState SimulationState::from_snapshot(ModelDistribution model, std::vector<std::uint64_t> counts,
                                               std::uint64_t alpha, Smoothing smoothing, SimulationOptions options) {
    if (model.size() != counts.size()) throw DimensionError("model and counts sizes differ");
    SimulationState s(counts.size(), alpha, smoothing, options);
    s.counters_ = CounterState(counts);
    s.model_ = std::move(model);
    s.tree_ = tree_for_model(s.model_);
    s.depths_ = s.tree_.depths();
    s.last_rebuild_t_ = s.counters_.t();
    s.counts_at_last_rebuild_ = std::move(counts);
    return s;
}

bool SimulationState::guard_holds(Key key) const {
    // p_i >= q_i / 2  <=>  2 * mass_i * (t + s n) >= (w_i + s) * total
    const std::uint64_t s = smoothing_ == Smoothing::laplace ? 1 : 0;
    const u128 qd = counters_.t() + s * n();
    const u128 qn = counters_.count(key) + s;
    return u128{2} * model_.mass[key - 1] * qd >= qn * model_.total;
}

void SimulationState::rebuild() {
    const std::uint64_t s = smoothing_ == Smoothing::laplace ? 1 : 0;
    for (std::size_t i = 0; i < n(); ++i) model_.mass[i] = counters_.counts()[i] + s;
    model_.total = counters_.t() + s * n();
    tree_ = tree_for_model(model_);
    depths_ = tree_.depths();
}

StepRecord SimulationState::step(Key key) {
    if (key < 1 || key > n()) {
        throw InvalidRequest("request for key " + std::to_string(key) + " outside 1.." + std::to_string(n()));
    }
    StepRecord rec;
    rec.key = key;
    rec.depth_before = depths_[key - 1];
    rec.p_before = model_.prob(key);

    counters_.record(key);
    rec.t = counters_.t();
    rec.q = empirical_q(counters_, key, smoothing_);
    log_inv_q_[key - 1] += std::log2(rec.q.get_den().get_d()) - std::log2(rec.q.get_num().get_d());

    if (!guard_holds(key)) {
        rebuilds_.push_back(RebuildEvent{rec.t, key, counters_.count(key), last_rebuild_t_,
                                         counts_at_last_rebuild_[key - 1]});
        rebuild();
        last_rebuild_t_ = rec.t;
        counts_at_last_rebuild_ = counters_.counts();
        rec.rebuilt = true;
    }

    rec.depth = depths_[key - 1];
    search_cost_ += rec.depth;
    search_cost_pre_ += rec.depth_before;

    // Served depth < log2(1/p) + 3, tested as 2^(depth-3) * mass < total.
    const std::uint64_t mass = model_.mass[key - 1];
    if (rec.depth >= 3) {
        const unsigned shift = rec.depth - 3;
        if (mass == 0 || shift >= 64 || (u128{mass} << shift) >= u128{model_.total}) ++depth_bound_violations_;
    }

    if (options_.check_invariants) {
        for (Key i = 1; i <= n(); ++i) {
            if (!guard_holds(i)) ++guard_violations_;
        }
        if (smoothing_ == Smoothing::laplace && counters_.t() >= n()) {
            // (w + 1) / (t + n) >= w / (2 t)
            const u128 t = counters_.t();
            for (auto w : counters_.counts()) {
                if (u128{2} * t * (w + 1) < u128{w} * (t + n())) ++laplace_violations_;
            }
        }
    }

    if (options_.keep_steps) steps_.push_back(rec);
    return rec;
}

SimulationReport SimulationState::report() const {
    SimulationReport r;
    r.n = n();
    r.m = counters_.t();
    r.alpha = alpha_;
    r.smoothing = smoothing_;
    r.search_cost = search_cost_;
    r.search_cost_pre_adjust = search_cost_pre_;
    r.rebuilds = rebuilds_.size();
    r.adjust_cost = adjust_cost();
    r.total = r.search_cost + r.adjust_cost;
    r.entropy_empirical = entropy_of_counts(counters_.counts());
    r.theorem_bound = static_cast<double>(r.m) * (8.0 + r.entropy_empirical);
    r.theorem_applicable =
        alpha_ >= 2 && static_cast<double>(r.m) >= theorem_min_length(n(), alpha_) * (1.0 - kEntropyTolerance);
    return r;
}

std::vector<BoundCheck> SimulationState::check_bounds() const {
    std::vector<BoundCheck> out;
    const double m = static_cast<double>(counters_.t());
    const bool theory = alpha_ >= 2;

    {
        BoundCheck c{"rebuild_count_doubling", true, true, ""};
        for (const auto& e : rebuilds_) {
            if (!(2 * e.prev_count < e.count)) {
                c.ok = false;
                c.detail = "rebuild at t=" + std::to_string(e.t) + " by key " + std::to_string(e.key) +
                           ": w(t')=" + std::to_string(e.prev_count) + ", w(t)=" + std::to_string(e.count);
                break;
            }
        }
        out.push_back(c);
    }
    {
        BoundCheck c{"per_key_log_bound", smoothing_ == Smoothing::none, true, ""};
        BoundCheck agg{"aggregate_entropy_bound", smoothing_ == Smoothing::none, true, ""};
        if (c.applicable) {
            double sum = 0.0;
            for (Key i = 1; i <= n(); ++i) {
                const double w = static_cast<double>(counters_.count(i));
                sum += log_inv_q_[i - 1];
                if (w == 0) continue;
                const double bound = w * std::log2(m / w) + 2 * w;
                if (log_inv_q_[i - 1] > bound + kEntropyTolerance * std::max(1.0, bound) && c.ok) {
                    c.ok = false;
                    std::ostringstream os;
                    os << "key " << i << ": sum=" << log_inv_q_[i - 1] << " > " << bound;
                    c.detail = os.str();
                }
            }
            const double bound = m * entropy_of_counts(counters_.counts()) + 2 * m;
            if (sum > bound + kEntropyTolerance * std::max(1.0, bound)) {
                agg.ok = false;
                std::ostringstream os;
                os << "sum=" << sum << " > " << bound;
                agg.detail = os.str();
            }
        }
        out.push_back(c);
        out.push_back(agg);
    }
    {
        BoundCheck c{"adjust_cost_bound", theory, true, ""};
        if (theory) {
            const double bound = theorem_min_length(n(), alpha_) + m;
            if (static_cast<double>(adjust_cost()) > bound + kEntropyTolerance * bound) {
                c.ok = false;
                c.detail = "adjust_cost=" + std::to_string(adjust_cost()) + " > " + std::to_string(bound);
            }
        }
        out.push_back(c);
    }
    out.push_back(BoundCheck{"guarded_invariant", options_.check_invariants, guard_violations_ == 0,
                             guard_violations_ ? std::to_string(guard_violations_) + " violations" : ""});
    out.push_back(BoundCheck{"laplace_vs_raw", options_.check_invariants && smoothing_ == Smoothing::laplace,
                             laplace_violations_ == 0,
                             laplace_violations_ ? std::to_string(laplace_violations_) + " violations" : ""});
    out.push_back(BoundCheck{"served_depth_bound", true, depth_bound_violations_ == 0,
                             depth_bound_violations_ ? std::to_string(depth_bound_violations_) + " violations" : ""});
    {
        const auto rep = report();
        BoundCheck c{"total_cost_bound", rep.theorem_applicable, true, ""};
        if (c.applicable && static_cast<double>(rep.total) > rep.theorem_bound + kEntropyTolerance * m) {
            c.ok = false;
            c.detail = "total=" + std::to_string(rep.total) + " > " + std::to_string(rep.theorem_bound);
        }
        out.push_back(c);
    }
    // Inapplicable checks never fail.
    for (auto& c : out) {
        if (!c.applicable) c.ok = true;
    }
    return out;
}

SimulationReport run(SimulationState& state, std::span<const Key> trace) {
    if (trace.empty()) throw InvalidArgument("trace is empty");
    for (Key k : trace) state.step(k);
    return state.report();
}

bool all_ok(std::span<const BoundCheck> checks) {
    for (const auto& c : checks) {
        if (!c.ok) return false;
    }
    return true;
}

nlohmann::json to_json(const SimulationReport& r) {
    nlohmann::json j{{"n", r.n},
                     {"m", r.m},
                     {"alpha", r.alpha},
                     {"smoothing", std::string(to_string(r.smoothing))},
                     {"search_cost", r.search_cost},
                     {"search_cost_pre_adjust", r.search_cost_pre_adjust},
                     {"adjust_cost", r.adjust_cost},
                     {"rebuilds", r.rebuilds},
                     {"total", r.total},
                     {"entropy_empirical", r.entropy_empirical},
                     {"theorem_bound", r.theorem_bound},
                     {"theorem_applicable", r.theorem_applicable}};
    if (r.stat_cost) j["stat_cost"] = *r.stat_cost;
    if (r.rho) j["rho"] = *r.rho;
    return j;
}

SimulationReport report_from_json(const nlohmann::json& j) {
    SimulationReport r;
    try {
        r.n = j.at("n").get<std::size_t>();
        r.m = j.at("m").get<std::uint64_t>();
        r.alpha = j.at("alpha").get<std::uint64_t>();
        r.smoothing = parse_smoothing(j.at("smoothing").get<std::string>());
        r.search_cost = j.at("search_cost").get<std::uint64_t>();
        r.search_cost_pre_adjust = j.value("search_cost_pre_adjust", std::uint64_t{0});
        r.adjust_cost = j.at("adjust_cost").get<std::uint64_t>();
        r.rebuilds = j.at("rebuilds").get<std::uint64_t>();
        r.total = j.at("total").get<std::uint64_t>();
        r.entropy_empirical = j.at("entropy_empirical").get<double>();
        r.theorem_bound = j.at("theorem_bound").get<double>();
        r.theorem_applicable = j.at("theorem_applicable").get<bool>();
        if (j.contains("stat_cost")) r.stat_cost = j.at("stat_cost").get<std::uint64_t>();
        if (j.contains("rho")) r.rho = j.at("rho").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report JSON: ") + e.what());
    }
    return r;
}

std::string report_csv_header() {
    return "n,m,alpha,smoothing,search_cost,search_cost_pre_adjust,adjust_cost,rebuilds,total,entropy_empirical,"
           "theorem_bound,theorem_applicable,stat_cost,rho";
}

std::string report_csv_row(const SimulationReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << r.n << ',' << r.m << ',' << r.alpha << ',' << to_string(r.smoothing) << ',' << r.search_cost << ','
       << r.search_cost_pre_adjust << ',' << r.adjust_cost << ',' << r.rebuilds << ',' << r.total << ','
       << r.entropy_empirical << ',' << r.theorem_bound << ',' << (r.theorem_applicable ? "true" : "false") << ',';
    if (r.stat_cost) os << *r.stat_cost;
    os << ',';
    if (r.rho) os << *r.rho;
    return os.str();
}

}  // namespace abst
