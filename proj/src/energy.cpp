#include "relaylab/energy.hpp"

#include <cmath>
#include <numbers>

#include "relaylab/errors.hpp"
#include "relaylab/optimizer.hpp"

namespace relaylab::energy {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kGammaMin = 1e-4;
constexpr double kGammaMax = 1e4;
constexpr int kGammaGrid = 161;

void require_inputs(double g, double h, double n0) {
    if (!(g > 0.0) || !(h > 0.0) || !std::isfinite(g) || !std::isfinite(h)) {
        throw DomainError("energy bounds need finite g, h > 0");
    }
    if (!(n0 > 0.0) || !std::isfinite(n0)) throw DomainError("n0 must be finite and > 0");
}

// inf over gamma of (2 gamma + 1) n0 / (gamma h R(g/(gamma h))) for a program optimum R.
UpperBound gamma_search(double g, double h, double n0, double (*rate)(double, int)) {
    const auto objective = [&](double gamma) {
        const double r = rate(g / (gamma * h), 2);
        return (2.0 * gamma + 1.0) * n0 / (gamma * h * r);
    };
    double best = 0.0;
    const double gamma = opt::grid_golden_max([&](double gm) { return -objective(gm); }, kGammaMin, kGammaMax,
                                              kGammaGrid, true, 1e-13, &best);
    // The minimizer must sit strictly inside the bracket for the infimum to be trusted.
    const double span = std::log(kGammaMax / kGammaMin);
    if (std::log(gamma / kGammaMin) < 1e-6 * span || std::log(kGammaMax / gamma) < 1e-6 * span) {
        throw ConvergenceError("energy bound: relay power ratio pinned at the search bracket", -best, 0.0);
    }
    return {-best, gamma};
}

}  // namespace

double ebit_lower(double g, double h, double n0) {
    require_inputs(g, h, n0);
    const double r = h / g;
    if (r <= 0.5) return (g + 2.0 * h) * n0 * kLn2 / (g * h);
    if (r <= 2.0) return std::sqrt(8.0) * n0 * kLn2 / std::sqrt(g * h);
    return (h + 2.0 * g) * n0 * kLn2 / (g * h);
}

double ebit_upper_df(double g, double h, double n0) {
    require_inputs(g, h, n0);
    return (g + 2.0 * h) * n0 * kLn2 / (g * h);
}

double ebit_baf_objective(double beta, double gamma, double g, double h, double n0) {
    require_inputs(g, h, n0);
    if (!(beta > 0.0) || !(gamma > 0.0)) throw DomainError("beta and gamma must be > 0");
    const double root = std::sqrt(gamma * g * h);
    const double l = std::log1p(4.0 * root / (beta * (2.0 * gamma * h + g + beta * root)));
    return 2.0 * (1.0 + 2.0 * gamma) * n0 * kLn2 / (beta * root * l);
}

UpperBound ebit_upper_baf(double g, double h, double n0) {
    require_inputs(g, h, n0);
    return gamma_search(g, h, n0, &asym::rbaf);
}

UpperBound ebit_upper_bspdf(double g, double h, double n0) {
    require_inputs(g, h, n0);
    return gamma_search(g, h, n0, &asym::rbspdf);
}

EbitResult ebit_all(double g, double h, double n0) {
    EbitResult r;
    r.lower = ebit_lower(g, h, n0);
    r.upper_df = ebit_upper_df(g, h, n0);
    const UpperBound baf = ebit_upper_baf(g, h, n0);
    const UpperBound bspdf = ebit_upper_bspdf(g, h, n0);
    r.upper_baf = baf.value;
    r.upper_bspdf = bspdf.value;
    r.gamma_baf = baf.gamma;
    r.gamma_bspdf = bspdf.gamma;
    r.ratio_df = r.upper_df / r.lower;
    r.ratio_baf = r.upper_baf / r.lower;
    r.ratio_bspdf = r.upper_bspdf / r.lower;
    return r;
}

double ebit_ratio(const std::string& scheme, double x) {
    const double lower = ebit_lower(1.0, x);
    if (scheme == "df") return ebit_upper_df(1.0, x) / lower;
    if (scheme == "baf") return ebit_upper_baf(1.0, x).value / lower;
    if (scheme == "bspdf") return ebit_upper_bspdf(1.0, x).value / lower;
    throw DomainError("unknown energy scheme '" + scheme + "'");
}

std::vector<asym::CurveValue> ebit_ratio_curve(const std::string& scheme, const std::vector<double>& xs) {
    std::vector<asym::CurveValue> out;
    out.reserve(xs.size());
    for (double x : xs) {
        asym::CurveValue c;
        const double lower = ebit_lower(1.0, x);
        if (scheme == "df") {
            c.y = ebit_upper_df(1.0, x) / lower;
        } else {
            const UpperBound u = scheme == "baf"     ? ebit_upper_baf(1.0, x)
                                 : scheme == "bspdf" ? ebit_upper_bspdf(1.0, x)
                                                     : throw DomainError("unknown energy scheme '" + scheme + "'");
            c.y = u.value / lower;
            c.params.emplace_back("gamma", u.gamma);
        }
        out.push_back(std::move(c));
    }
    return out;
}

WorstCase ebit_worst_ratio(const std::string& scheme) {
    double best = 0.0;
    const double x = opt::grid_golden_max([&](double t) { return ebit_ratio(scheme, t); }, 1e-2, 1e2, 81, true,
                                          1e-10, &best);
    return {x, best};
}

}  // namespace relaylab::energy
