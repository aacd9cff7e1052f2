#include "relaylab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "relaylab/errors.hpp"
#include "relaylab/optimizer.hpp"

namespace relaylab {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr int kGrid = 1000;
constexpr double kRhoMaxOpen = 1.0 - 1e-12;

double half_log2(double v) { return 0.5 * std::log2(v); }

// Smallest rho in [0, hi] with f(rho) >= target, for f non-decreasing on [0, hi].
double smallest_attaining(const std::function<double(double)>& f, double hi, double target) {
    if (f(0.0) >= target) return 0.0;
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) >= target ? hi : lo) = mid;
    }
    return hi;
}

void require_gain(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError(std::string(name) + " must be finite and >= 0");
}

double symmetric_term(int n_relays, int n, double g, double h, double rho) {
    const double nn = n;
    const double rest = n_relays - n;
    const double corr = 1.0 + (nn - 1.0) * rho - nn * rest * rho * rho / (1.0 + (rest - 1.0) * rho);
    return half_log2(1.0 + rest * g) + half_log2(1.0 + nn * corr * h);
}

}  // namespace

double DiamondCuts::min() const { return std::min({s, sr1, sr2, d}); }

DiamondCuts diamond_cuts(const NormalizedNetwork& net, double rho) {
    if (net.n_relays() != 2) throw DomainError("diamond cut-set needs exactly two relays");
    const double g1 = net.g[0], g2 = net.g[1], h1 = net.h[0], h2 = net.h[1];
    const double r2 = 1.0 - rho * rho;
    return {half_log2(1.0 + g1 + g2), half_log2((1.0 + g2) * (1.0 + h1 * r2)),
            half_log2((1.0 + g1) * (1.0 + h2 * r2)), half_log2(1.0 + h1 + h2 + 2.0 * rho * std::sqrt(h1 * h2))};
}

CutsetResult cutset_diamond(const NormalizedNetwork& net) {
    const auto f = [&net](double rho) { return diamond_cuts(net, rho).min(); };
    double best = 0.0;
    const double rho_peak = opt::grid_golden_max(f, 0.0, 1.0, kGrid + 1, false, 1e-14, &best);
    // Endpoints are part of the domain; the grid covers them but golden may not.
    const double at_one = f(1.0);
    double peak = rho_peak;
    if (at_one > best) {
        best = at_one;
        peak = 1.0;
    }

    CutsetResult out;
    out.bound_bits = best;
    out.rho_star = smallest_attaining(f, peak, best - 1e-13 * std::max(1.0, best));
    const DiamondCuts c = diamond_cuts(net, out.rho_star);
    const double tie = 1e-9 * std::max(1.0, best);
    if (c.s <= out.bound_bits + tie) out.active_cut = "S";
    else if (c.sr1 <= out.bound_bits + tie) out.active_cut = "SR1";
    else if (c.sr2 <= out.bound_bits + tie) out.active_cut = "SR2";
    else out.active_cut = "D";
    return out;
}

CutsetResult cutset_symmetric_n(int n_relays, double g, double h) {
    if (n_relays < 2) throw DomainError("symmetric cut-set bound needs N >= 2");
    require_gain(g, "g");
    require_gain(h, "h");

    const auto inner = [&](double rho, int* arg) {
        double m = std::numeric_limits<double>::infinity();
        for (int n = 0; n <= n_relays; ++n) {
            const double v = symmetric_term(n_relays, n, g, h, rho);
            if (v < m) {
                m = v;
                if (arg) *arg = n;
            }
        }
        return m;
    };
    const auto f = [&](double rho) { return inner(rho, nullptr); };

    // The min of N+1 smooth curves can have several local maxima; refine the
    // best few grid brackets.
    constexpr int grid = 2000;
    std::vector<double> vals(grid + 1);
    for (int i = 0; i <= grid; ++i) vals[i] = f(kRhoMaxOpen * i / grid);
    std::vector<int> peaks;
    for (int i = 0; i <= grid; ++i) {
        const bool left = i == 0 || vals[i] >= vals[i - 1];
        const bool right = i == grid || vals[i] >= vals[i + 1];
        if (left && right) peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) { return vals[a] > vals[b]; });
    if (peaks.size() > 4) peaks.resize(4);

    double best = -1.0, rho_best = 0.0;
    for (int k : peaks) {
        const double lo = kRhoMaxOpen * std::max(0, k - 1) / grid;
        const double hi = kRhoMaxOpen * std::min(grid, k + 1) / grid;
        double v = 0.0;
        double r = opt::golden_max(f, lo, hi, 1e-14, &v);
        if (vals[k] >= v) {
            v = vals[k];
            r = kRhoMaxOpen * k / grid;
        }
        if (v > best || (v == best && r < rho_best)) {
            best = v;
            rho_best = r;
        }
    }

    CutsetResult out;
    out.bound_bits = best;
    out.rho_star = rho_best;
    // Walk back across a flat top so the reported rho is the smallest maximizer.
    const double target = best - 1e-13 * std::max(1.0, best);
    if (f(0.0) >= target) out.rho_star = 0.0;
    int arg = 0;
    inner(out.rho_star, &arg);
    out.active_cut = "n=" + std::to_string(arg);
    return out;
}

double cutset_asymptotic(double g, double h) {
    if (!(g > 0.0) || !(h > 0.0)) throw DomainError("asymptotic cut-set needs g, h > 0");
    const double r = h / g;
    double v;
    if (r < 0.25) v = 2.0 * h;
    else if (r <= 1.0) v = std::sqrt(g * h);
    else v = g;
    return v / kLn2;
}

double acutset_sym(double x, int n_relays) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("x must be finite and > 0");
    if (n_relays < 2) throw DomainError("symmetric cut-set bound needs N >= 2");
    const auto f = [&](double rho) {
        double m = std::numeric_limits<double>::infinity();
        for (int n = 0; n <= n_relays; ++n) {
            const double nn = n;
            const double rest = n_relays - n;
            const double corr = 1.0 + (nn - 1.0) * rho - nn * rest * rho * rho / (1.0 + (rest - 1.0) * rho);
            m = std::min(m, rest + nn * corr * x);
        }
        return m;
    };
    double best = 0.0;
    opt::grid_golden_max(f, 0.0, kRhoMaxOpen, 2001, false, 1e-14, &best);
    return best / (2.0 * kLn2);
}

double cutset_asymptotic_diamond(double g1, double g2, double h1, double h2) {
    for (double v : {g1, g2, h1, h2}) require_gain(v, "gain");
    const auto f = [&](double rho) {
        const double r2 = 1.0 - rho * rho;
        return std::min({g1 + g2, g2 + h1 * r2, g1 + h2 * r2, h1 + h2 + 2.0 * rho * std::sqrt(h1 * h2)});
    };
    double best = 0.0;
    opt::grid_golden_max(f, 0.0, 1.0, kGrid + 1, false, 1e-14, &best);
    best = std::max(best, f(1.0));
    return best / (2.0 * kLn2);
}

double acutset_asym(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("x must be finite and > 0");
    // g = 1, h = x; normalize by sqrt(gh).
    return cutset_asymptotic_diamond(1.0, x, x, 1.0) / std::sqrt(x);
}

}  // namespace relaylab
