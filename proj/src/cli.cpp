#include "relaylab/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relaylab/bounds.hpp"
#include "relaylab/energy.hpp"
#include "relaylab/errors.hpp"
#include "relaylab/schemes_exact.hpp"
#include "relaylab/sweep.hpp"

namespace relaylab {
namespace {

constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitConvergence = 4;

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RateArgs {
    std::string scheme = "df";
    std::vector<double> g, h, pr;
    double ps = 1.0;
    double n0 = 1.0;
    std::uint64_t seed = 7;
    int starts = 64;
};

void print_rate(std::ostream& os, const std::string& scheme, const RateResult& r) {
    os << "scheme: " << scheme << '\n';
    os << "rate: " << fixed6(r.rate_bits) << " bits\n";
    if (r.rate_split) os << "R1: " << full(r.rate_split->first) << "\nR2: " << full(r.rate_split->second) << '\n';
    for (const auto& [k, v] : r.params) os << k << ": " << full(v) << '\n';
    for (const auto& c : r.active_constraints) os << "active: " << c << '\n';
    os << "supremum_on_boundary: " << (r.supremum_on_boundary ? 1 : 0) << '\n';
}

int cmd_rate(const RateArgs& a) {
    NetworkConfig cfg;
    cfg.g = a.g;
    cfg.h = a.h;
    cfg.p_source = a.ps;
    cfg.p_relay = a.pr;
    cfg.n0 = a.n0;
    const NormalizedNetwork net = normalize(cfg);

    if (a.scheme == "cutset") {
        CutsetResult c;
        if (net.n_relays() == 2) {
            c = cutset_diamond(net);
        } else if (net.n_relays() > 2 && net.is_symmetric()) {
            c = cutset_symmetric_n(static_cast<int>(net.n_relays()), net.g[0], net.h[0]);
        } else {
            throw DomainError("cut-set bound needs two relays or a symmetric network");
        }
        std::cout << "scheme: cutset\nrate: " << fixed6(c.bound_bits) << " bits\nrho_star: " << full(c.rho_star)
                  << "\nactive_cut: " << c.active_cut << '\n';
        return 0;
    }

    ExactOptions opt;
    opt.seed = a.seed;
    opt.starts = a.starts;
    RateResult r;
    if (a.scheme == "df") r = rate_df(net);
    else if (a.scheme == "af") r = rate_af(net, opt);
    else if (a.scheme == "baf") r = rate_baf(net, opt);
    else if (a.scheme == "bspdf") r = rate_bspdf_opt(net, opt);
    else if (a.scheme == "tspdf") r = rate_tspdf_opt(net, opt);
    else throw CLI::ValidationError("--scheme", "unknown scheme '" + a.scheme + "'");
    print_rate(std::cout, a.scheme, r);
    return 0;
}

int emit_rows(const std::vector<sweep::CsvRow>& rows, const std::string& out) {
    if (out.empty() || out == "-") {
        sweep::write_csv(std::cout, rows);
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw DomainError("cannot open output file " + out);
    sweep::write_csv(f, rows);
    return f ? 0 : kExitUsage;
}

int cmd_ebit(double g, double h, double n0, const std::string& out) {
    const energy::EbitResult r = energy::ebit_all(g, h, n0);
    const std::vector<std::pair<std::string, double>> items = {
        {"lower", r.lower},         {"upper_df", r.upper_df},       {"upper_baf", r.upper_baf},
        {"upper_bspdf", r.upper_bspdf}, {"ratio_df", r.ratio_df},   {"ratio_baf", r.ratio_baf},
        {"ratio_bspdf", r.ratio_bspdf}, {"gamma_baf", r.gamma_baf}, {"gamma_bspdf", r.gamma_bspdf}};
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw DomainError("cannot open output file " + out);
        f << "quantity,value\n";
        for (const auto& [k, v] : items) f << k << ',' << full(v) << '\n';
    }
    for (const auto& [k, v] : items) std::cout << k << ": " << full(v) << '\n';
    return 0;
}

int cmd_verify(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open " + path);
    const std::vector<sweep::CsvRow> rows = sweep::read_csv(f);
    const std::vector<sweep::Violation> bad = sweep::verify(rows);
    for (const auto& v : bad) {
        std::cout << "violation: x=" << full(v.x) << " scheme=" << v.scheme << " y=" << full(v.y)
                  << " cutset=" << full(v.bound) << '\n';
    }
    std::cout << (bad.empty() ? "ok" : "FAILED") << ": " << rows.size() << " rows, " << bad.size()
              << " violations\n";
    return bad.empty() ? 0 : kExitVerify;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"relaylab: rates, cut-set bounds and energy-per-bit for Gaussian parallel relay networks"};
    // --h is a gain, so help is long-form only.
    app.set_help_flag("--help", "print this help and exit");
    app.set_config("--config", "", "key=value file overriding defaults ([subcommand] sections allowed)");
    app.require_subcommand(1);
    app.fallthrough();

    RateArgs ra;
    auto* rate = app.add_subcommand("rate", "single-network rate or cut-set bound");
    rate->add_option("--scheme", ra.scheme, "df | af | baf | bspdf | tspdf | cutset")->capture_default_str();
    rate->add_option("--g", ra.g, "source-relay power gains, comma separated")->delimiter(',')->required();
    rate->add_option("--h", ra.h, "relay-destination power gains, comma separated")->delimiter(',')->required();
    rate->add_option("--ps", ra.ps, "source power")->capture_default_str();
    rate->add_option("--pr", ra.pr, "relay powers, comma separated (default 1 each)")->delimiter(',');
    rate->add_option("--n0", ra.n0, "noise variance")->capture_default_str();
    rate->add_option("--seed", ra.seed, "multi-start seed")->capture_default_str();
    rate->add_option("--starts", ra.starts, "multi-start count")->capture_default_str()->check(CLI::PositiveNumber);

    sweep::SweepJob job;
    std::string schemes_arg, sweep_out;
    auto* sw = app.add_subcommand("sweep", "curve sweep to CSV");
    sw->add_option("--family", job.family, "sym2 | symN | asym2 | energy")->capture_default_str();
    sw->add_option("--scheme,--schemes", schemes_arg, "comma-separated scheme labels")->required();
    sw->add_option("--n", job.n_relays, "relay count for symN")->capture_default_str();
    sw->add_option("--x-min", job.x_min, "smallest h/g")->capture_default_str();
    sw->add_option("--x-max", job.x_max, "largest h/g")->capture_default_str();
    sw->add_option("--points", job.points, "number of grid points")->capture_default_str();
    bool log_flag = false;
    sw->add_flag("--log", log_flag, "log-spaced grid");
    sw->add_option("--seed", job.seed, "multi-start seed")->capture_default_str();
    sw->add_option("--out", sweep_out, "output CSV path (default stdout)");

    double eg = 1.0, eh = 1.0, en0 = 1.0;
    std::string ebit_out;
    auto* eb = app.add_subcommand("ebit", "energy-per-bit bounds of the symmetric diamond");
    eb->add_option("--g", eg, "source-relay power gain")->capture_default_str();
    eb->add_option("--h", eh, "relay-destination power gain")->capture_default_str();
    eb->add_option("--n0", en0, "noise level")->capture_default_str();
    eb->add_option("--out", ebit_out, "optional CSV path");

    std::string figure_id, figure_out;
    std::uint64_t figure_seed = 7;
    auto* fig = app.add_subcommand("figure", "data for one of fig3 ... fig8");
    fig->add_option("id", figure_id, "fig3 | fig4 | fig5 | fig6 | fig7 | fig8")->required();
    fig->add_option("--seed", figure_seed, "multi-start seed")->capture_default_str();
    fig->add_option("--out", figure_out, "output CSV path (default stdout)");

    std::string verify_path;
    auto* ver = app.add_subcommand("verify", "check every achievable row against the cut-set row");
    ver->add_option("csv", verify_path, "CSV written by sweep or figure")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*rate) return cmd_rate(ra);
        if (*sw) {
            job.log_spaced = log_flag;
            job.schemes.clear();
            std::stringstream ss(schemes_arg);
            for (std::string s; std::getline(ss, s, ',');) {
                if (!s.empty()) job.schemes.push_back(s);
            }
            return emit_rows(sweep::run(job, sweep::default_threads()), sweep_out);
        }
        if (*eb) return cmd_ebit(eg, eh, en0, ebit_out);
        if (*fig) {
            return emit_rows(sweep::run(sweep::figure_job(figure_id, figure_seed), sweep::default_threads()),
                             figure_out);
        }
        if (*ver) return cmd_verify(verify_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << " (best estimate " << full(e.best_estimate()) << ")\n";
        return kExitConvergence;
    }
    return kExitUsage;
}

}  // namespace relaylab
