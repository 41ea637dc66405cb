#include "commands.hpp"

#include "abst/errors.hpp"
#include "abst/workload.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

std::vector<abst::Key> parse_key_list(const std::string& text) {
    std::vector<abst::Key> keys;
    if (text.empty()) return keys;
    std::string joined;
    for (char c : text) joined += c == ',' ? '\n' : c;
    return abst::parse_trace(joined);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace abst::cli;

    CLI::App app{"Arithmetic binary search trees: SFE codes, biased BSTs and the dynamic rebuild policy"};
    app.require_subcommand(1);

    std::string dist;
    std::string format = "text";
    auto* encode = app.add_subcommand("encode", "Print the Shannon-Fano-Elias code table of a distribution");
    encode->add_option("distribution", dist, "Comma-separated probabilities, e.g. 0.1,0.2,0.4,0.2,0.1")->required();
    encode->add_option("--format", format, "text | json | csv");

    auto* build = app.add_subcommand("build", "Print the SFE-derived search tree and its two matchings");
    build->add_option("distribution", dist, "Comma-separated probabilities")->required();

    RunConfig run;
    std::string smoothing = "laplace";
    std::string sim_format = "json";
    std::string append;
    auto* simulate = app.add_subcommand("simulate", "Run the dynamic tree on a workload and report its cost");
    simulate->add_option("--n", run.n, "Number of keys (inferred for freq/file workloads)");
    simulate->add_option("--alpha", run.alpha, "Reconfiguration cost (positive integer)");
    simulate->add_option("--m", run.m, "Number of requests (default: max(20, ceil(2 n alpha log2 alpha)))");
    simulate->add_option("--workload", run.workload, "uniform | zipf:<s> | freq:<w1,w2,...> | file:<path>");
    simulate->add_option("--append", append, "Comma-separated keys requested after the workload");
    simulate->add_option("--smoothing", smoothing, "laplace | none");
    simulate->add_option("--seed", run.seed, "Workload seed");
    simulate->add_option("--format", sim_format, "json | csv");
    simulate->add_option("--out", run.out, "Report file (default stdout)");
    simulate->add_flag("--with-stat", run.with_stat, "Compute the optimal static tree cost and rho");
    simulate->add_flag("--check-bounds", run.check_bounds, "Check the cost inequalities; exit 4 on violation");
    simulate->add_option("--steps-csv", run.steps_csv, "Per-request CSV (t,key,depth,rebuilt)");

    CompareConfig cmp;
    std::string cmp_smoothing = "laplace";
    std::string cmp_format = "csv";
    auto* compare = app.add_subcommand("compare", "Simulate a grid of alpha x workload x m and tabulate rho");
    compare->add_option("--n", cmp.n, "Number of keys");
    compare->add_option("--alpha", cmp.alphas, "Reconfiguration costs")->delimiter(',');
    compare->add_option("--workload", cmp.workloads, "Workload specs")->delimiter(';');
    compare->add_option("--m", cmp.ms, "Explicit request counts")->delimiter(',');
    compare->add_option("--multiples", cmp.multiples, "Multiples of the minimum bound length")->delimiter(',');
    compare->add_option("--smoothing", cmp_smoothing, "laplace | none");
    compare->add_option("--seed", cmp.seed, "Workload seed");
    compare->add_option("--format", cmp_format, "csv | json");
    compare->add_option("--out", cmp.out, "Output file (default stdout)");

    VerifyConfig ver;
    std::string scale = "quick";
    auto* verify = app.add_subcommand("verify", "Run the property suites");
    verify->add_option("scale", scale, "quick | full");
    verify->add_option("--seed", ver.seed, "Suite seed");
    verify->add_flag("--inject-fault", ver.inject_fault, "Corrupt one codeword per case (self-test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    return guarded(
        [&]() -> int {
            if (*encode) return cmd_encode(dist, parse_format(format), std::cout);
            if (*build) return cmd_build(dist, std::cout);
            if (*simulate) {
                run.smoothing = abst::parse_smoothing(smoothing);
                run.format = parse_format(sim_format);
                run.append = parse_key_list(append);
                return cmd_simulate(run, std::cout, std::cerr);
            }
            if (*compare) {
                cmp.smoothing = abst::parse_smoothing(cmp_smoothing);
                cmp.format = parse_format(cmp_format);
                return cmd_compare(cmp, std::cout, std::cerr);
            }
            ver.scale = parse_scale(scale);
            return cmd_verify(ver, std::cout);
        },
        std::cerr);
}
