#include "relaylab/schemes_exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "relaylab/errors.hpp"
#include "relaylab/optimizer.hpp"

namespace relaylab {
namespace {

using gaussmix::mi_conditional_gaussian;
using gaussmix::mi_label;
using gaussmix::MiMethod;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kDeltaFloor = 1e-9;

double half_log2p(double snr) { return 0.5 * std::log2(1.0 + snr); }

void require_size(const NormalizedNetwork& net, const std::vector<double>& v, const char* name) {
    if (v.size() != net.n_relays()) throw DomainError(std::string(name) + " needs one entry per relay");
    for (double k : v) {
        if (!std::isfinite(k) || k < 0.0) throw DomainError(std::string(name) + " entries must be finite and >= 0");
    }
}

void require_delta(double delta, const char* name) {
    if (!std::isfinite(delta) || !(delta > 0.0) || delta > 1.0) {
        throw DomainError(std::string(name) + " must lie in (0, 1]");
    }
}

std::string relay_label(const NormalizedNetwork& net, std::size_t k) {
    return std::to_string(net.order[k] + 1);
}

void append_per_relay(ParamList& out, const NormalizedNetwork& net, const std::string& name,
                      const std::vector<double>& sorted_values) {
    const std::vector<double> user = to_user_order(net, sorted_values);
    for (std::size_t i = 0; i < user.size(); ++i) out.emplace_back(name + "_" + std::to_string(i + 1), user[i]);
}

// (sum sqrt(kappa h g))^2 and sum kappa h.
std::pair<double, double> beamform(const NormalizedNetwork& net, const std::vector<double>& kappa) {
    double amp = 0.0, noise = 0.0;
    for (std::size_t i = 0; i < net.n_relays(); ++i) {
        amp += std::sqrt(kappa[i] * net.h[i] * net.g[i]);
        noise += kappa[i] * net.h[i];
    }
    return {amp * amp, noise};
}

double baf_value(const NormalizedNetwork& net, double delta, const std::vector<double>& kappa) {
    const auto [gain, noise] = beamform(net, kappa);
    return delta * half_log2p(gain / (delta * (noise + 1.0)));
}

// Objective wrapper: parameter maps that leave the feasible set or fail to
// evaluate count as infeasible points for the search.
template <class F>
double guarded(F&& f) {
    try {
        return f();
    } catch (const DomainError&) {
        return kNegInf;
    }
}

struct BafSearch {
    BafParams params;
    double value;
    bool boundary;
};

// dims: [delta (log) when bursty] + one amplification fraction u per relay (or
// one shared fraction on symmetric networks); kappa_i = u_i / (delta + g_i).
BafSearch search_baf(const NormalizedNetwork& net, bool bursty, const ExactOptions& options) {
    const std::size_t n = net.n_relays();
    const bool shared = net.is_symmetric();
    const std::size_t nu = shared ? 1 : n;

    opt::SearchSpec spec;
    if (bursty) spec.dims.push_back({1e-12, 1.0, opt::Scale::log});
    for (std::size_t i = 0; i < nu; ++i) spec.dims.push_back({0.0, 1.0, opt::Scale::linear});
    spec.starts = options.starts;
    spec.seed = options.seed;
    spec.max_evals = options.max_evals;
    spec.tol = 1e-13;

    const auto decode = [&](std::span<const double> p) {
        BafParams bp;
        bp.delta = bursty ? p[0] : 1.0;
        const std::size_t off = bursty ? 1 : 0;
        bp.kappa.resize(n);
        for (std::size_t i = 0; i < n; ++i) bp.kappa[i] = p[off + (shared ? 0 : i)] / (bp.delta + net.g[i]);
        return bp;
    };
    // Full-power start: amplification usually wants to sit near its cap.
    std::vector<double> warm(spec.dims.size(), 1.0);
    if (bursty) warm[0] = 1.0;
    spec.warm_starts.push_back(warm);

    const opt::OptResult r = opt::maximize(
        [&](std::span<const double> p) {
            const BafParams bp = decode(p);
            return baf_value(net, bp.delta, bp.kappa);
        },
        spec);
    return {decode(r.argmax), r.value, r.on_boundary()};
}

void check_bspdf(const NormalizedNetwork& net, const BspdfParams& p) {
    require_delta(p.delta, "delta");
    if (!std::isfinite(p.sigma2) || p.sigma2 < 0.0) throw DomainError("sigma2 must be finite and >= 0");
    require_size(net, p.kappa, "kappa");
    if (!(p.delta * p.sigma2 < 1.0)) throw DomainError("power constraint delta*sigma2 < 1 violated");
}

std::vector<int> levels(const NormalizedNetwork& net, const BspdfParams& p) {
    if (p.f.empty()) return std::vector<int>(net.n_relays(), 1);
    if (p.f.size() != net.n_relays()) throw DomainError("f needs one entry per relay");
    for (std::size_t i = 0; i < p.f.size(); ++i) {
        if (p.f[i] < 0 || p.f[i] > 2) throw DomainError("f entries must be 0, 1 or 2");
        if (i > 0 && p.f[i] < p.f[i - 1]) throw DomainError("f must be non-decreasing in relay order");
    }
    const bool has0 = std::find(p.f.begin(), p.f.end(), 0) != p.f.end();
    const bool has1 = std::find(p.f.begin(), p.f.end(), 1) != p.f.end();
    if (has0 && !has1) throw DomainError("f with level-0 relays needs at least one level-1 relay");
    return p.f;
}

}  // namespace

RateResult rate_df(const NormalizedNetwork& net) {
    if (net.n_relays() == 0) throw DomainError("network needs at least one relay");
    const double gmin = *std::min_element(net.g.begin(), net.g.end());
    double amp = 0.0;
    for (double h : net.h) amp += std::sqrt(h);
    const double mac = amp * amp;
    RateResult out;
    out.rate_bits = half_log2p(std::min(gmin, mac));
    out.active_constraints.push_back(gmin <= mac ? "broadcast" : "mac");
    return out;
}

double rate_af_at(const NormalizedNetwork& net, const std::vector<double>& kappa) {
    return rate_baf_at(net, BafParams{1.0, kappa});
}

double rate_baf_at(const NormalizedNetwork& net, const BafParams& params) {
    require_delta(params.delta, "delta");
    require_size(net, params.kappa, "kappa");
    for (std::size_t i = 0; i < net.n_relays(); ++i) {
        if (!(params.kappa[i] * (params.delta + net.g[i]) < 1.0)) {
            throw DomainError("power constraint kappa_" + relay_label(net, i) + " < 1/(delta + g) violated");
        }
    }
    return baf_value(net, params.delta, params.kappa);
}

RateResult rate_af(const NormalizedNetwork& net, const ExactOptions& options) {
    const BafSearch s = search_baf(net, false, options);
    RateResult out;
    out.rate_bits = std::max(0.0, s.value);
    append_per_relay(out.params, net, "kappa", s.params.kappa);
    out.supremum_on_boundary = s.boundary;
    return out;
}

RateResult rate_baf(const NormalizedNetwork& net, const ExactOptions& options) {
    BafSearch s = search_baf(net, true, options);
    // delta = 1 belongs to the feasible set; the log box only reaches it up to the margin.
    const BafSearch af = search_baf(net, false, options);
    if (af.value >= s.value) s = af;
    RateResult out;
    out.rate_bits = std::max(0.0, s.value);
    out.params.emplace_back("delta", s.params.delta);
    append_per_relay(out.params, net, "kappa", s.params.kappa);
    out.supremum_on_boundary = s.boundary;
    return out;
}

BspdfTerms bspdf_terms(const NormalizedNetwork& net, const BspdfParams& p, double tol) {
    check_bspdf(net, p);
    for (std::size_t i = 0; i < net.n_relays(); ++i) {
        if (!(p.delta * p.kappa[i] * (net.g[i] * p.sigma2 + 1.0) < 1.0)) {
            throw DomainError("power constraint delta*kappa_" + relay_label(net, i) +
                              "*(g*sigma2 + 1) < 1 violated");
        }
    }
    const std::array<double, 2> w = {1.0 - p.delta, p.delta};
    const auto [gain, noise] = beamform(net, p.kappa);
    const double signal = gain * p.sigma2;

    BspdfTerms t{};
    t.i_b_y1 = mi_label(w, std::array<double, 2>{0.0, net.g[0] * p.sigma2}, 1.0, MiMethod::exact, tol);
    t.i_b_yd = mi_label(w, std::array<double, 2>{0.0, signal + noise}, 1.0, MiMethod::exact, tol);
    t.i_x_yd_given_b = mi_conditional_gaussian(std::array<double, 1>{p.delta}, std::array<double, 1>{signal},
                                               std::array<double, 1>{noise + 1.0});
    return t;
}

RateResult rate_bspdf(const NormalizedNetwork& net, const BspdfParams& params, double tol) {
    if (!params.f.empty() && std::any_of(params.f.begin(), params.f.end(), [](int v) { return v != 1; })) {
        throw DomainError("rate_bspdf takes f = 1 at every relay; use rate_bspdf_f");
    }
    const BspdfTerms t = bspdf_terms(net, params, tol);
    const double r2 = t.i_x_yd_given_b;
    const double r1 = std::min(t.i_b_y1, t.i_b_yd);
    RateResult out;
    out.rate_bits = r1 + r2;
    out.rate_split = {r1, r2};
    out.params = {{"delta", params.delta}, {"sigma2", params.sigma2}};
    append_per_relay(out.params, net, "kappa", params.kappa);
    out.active_constraints.push_back(t.i_b_y1 <= t.i_b_yd ? "R1<I(B;Y1)" : "R1+R2<I(B,X;YD)");
    out.active_constraints.push_back("R2<I(X;YD|B)");
    return out;
}

RateResult rate_bspdf_opt(const NormalizedNetwork& net, const ExactOptions& options) {
    const std::size_t n = net.n_relays();
    // dims: delta (log), t = delta*sigma2, then u_i = delta*kappa_i*(g_i*sigma2 + 1).
    opt::SearchSpec spec;
    spec.dims.push_back({kDeltaFloor, 1.0, opt::Scale::log});
    spec.dims.push_back({0.0, 1.0, opt::Scale::linear});
    for (std::size_t i = 0; i < n; ++i) spec.dims.push_back({0.0, 1.0, opt::Scale::linear});
    spec.starts = options.starts;
    spec.seed = options.seed;
    spec.max_evals = options.max_evals;
    spec.tol = 1e-12;

    const auto decode = [&](std::span<const double> x) {
        BspdfParams p;
        p.delta = x[0];
        p.sigma2 = x[1] / x[0];
        p.kappa.resize(n);
        for (std::size_t i = 0; i < n; ++i) p.kappa[i] = x[2 + i] / (net.g[i] * x[1] + x[0]);
        return p;
    };

    // BAF is the face with B carrying no rate: sigma2 = 1/delta maps BAF (delta, kappa) here.
    const BafSearch baf = search_baf(net, true, options);
    std::vector<double> warm{baf.params.delta, 1.0};
    for (std::size_t i = 0; i < n; ++i) warm.push_back(baf.params.kappa[i] * (baf.params.delta + net.g[i]));
    spec.warm_starts.push_back(warm);

    const opt::OptResult r = opt::maximize(
        [&](std::span<const double> x) {
            return guarded([&] { return rate_bspdf(net, decode(x), options.quad_tol).rate_bits; });
        },
        spec);
    RateResult out = rate_bspdf(net, decode(r.argmax), options.quad_tol);
    out.supremum_on_boundary = r.on_boundary();
    return out;
}

TspdfTerms tspdf_terms(const NormalizedNetwork& net, const TspdfParams& p, double tol) {
    if (!(p.delta1 > 0.0) || !(p.delta2 > 0.0) || !(p.delta1 + p.delta2 <= 1.0 + 1e-15)) {
        throw DomainError("TSPDF needs delta1, delta2 > 0 and delta1 + delta2 <= 1");
    }
    for (double s : {p.sigma2_1, p.sigma2_2}) {
        if (!std::isfinite(s) || s < 0.0) throw DomainError("sigma2 values must be finite and >= 0");
    }
    require_size(net, p.kappa1, "kappa1");
    require_size(net, p.kappa2, "kappa2");
    if (!(p.delta1 * p.sigma2_1 + p.delta2 * p.sigma2_2 < 1.0)) {
        throw DomainError("power constraint delta1*sigma2_1 + delta2*sigma2_2 < 1 violated");
    }
    for (std::size_t i = 0; i < net.n_relays(); ++i) {
        const double load = p.delta1 * p.kappa1[i] * (net.g[i] * p.sigma2_1 + 1.0) +
                            p.delta2 * p.kappa2[i] * (net.g[i] * p.sigma2_2 + 1.0);
        if (!(load < 1.0)) throw DomainError("relay power constraint violated at relay " + relay_label(net, i));
    }

    const std::array<double, 3> w = {std::max(0.0, 1.0 - p.delta1 - p.delta2), p.delta1, p.delta2};
    const auto [gain1, noise1] = beamform(net, p.kappa1);
    const auto [gain2, noise2] = beamform(net, p.kappa2);
    const double s1 = gain1 * p.sigma2_1;
    const double s2 = gain2 * p.sigma2_2;

    TspdfTerms t{};
    t.i_t_y1 = mi_label(w, std::array<double, 3>{0.0, net.g[0] * p.sigma2_1, net.g[0] * p.sigma2_2}, 1.0,
                        MiMethod::exact, tol);
    t.i_t_yd = mi_label(w, std::array<double, 3>{0.0, s1 + noise1, s2 + noise2}, 1.0, MiMethod::exact, tol);
    t.i_x_yd_given_t =
        mi_conditional_gaussian(std::array<double, 2>{p.delta1, p.delta2}, std::array<double, 2>{s1, s2},
                                std::array<double, 2>{noise1 + 1.0, noise2 + 1.0});
    return t;
}

RateResult rate_tspdf(const NormalizedNetwork& net, const TspdfParams& params, double tol) {
    const TspdfTerms t = tspdf_terms(net, params, tol);
    const double r2 = t.i_x_yd_given_t;
    const double r1 = std::min(t.i_t_y1, t.i_t_yd);
    RateResult out;
    out.rate_bits = r1 + r2;
    out.rate_split = {r1, r2};
    out.params = {{"delta1", params.delta1},
                  {"delta2", params.delta2},
                  {"sigma2_1", params.sigma2_1},
                  {"sigma2_2", params.sigma2_2}};
    append_per_relay(out.params, net, "kappa1", params.kappa1);
    append_per_relay(out.params, net, "kappa2", params.kappa2);
    out.active_constraints.push_back(t.i_t_y1 <= t.i_t_yd ? "R1<I(T;Y1)" : "R1+R2<I(T,X;YD)");
    out.active_constraints.push_back("R2<I(X;YD|T)");
    return out;
}

RateResult rate_tspdf_opt(const NormalizedNetwork& net, const ExactOptions& options) {
    const std::size_t n = net.n_relays();
    // dims: total duty D (log), share p, source power tau, share a, then per relay
    // power nu_i and share b_i. delta1 = D p, delta1*sigma2_1 = tau a,
    // delta1*kappa_i1*(g_i*sigma2_1 + 1) = nu_i b_i, and the complements for symbol 2.
    opt::SearchSpec spec;
    spec.dims.push_back({kDeltaFloor, 1.0, opt::Scale::log});
    for (int k = 0; k < 3; ++k) spec.dims.push_back({0.0, 1.0, opt::Scale::linear});
    for (std::size_t i = 0; i < 2 * n; ++i) spec.dims.push_back({0.0, 1.0, opt::Scale::linear});
    spec.starts = options.starts;
    spec.seed = options.seed;
    spec.max_evals = options.max_evals;
    spec.tol = 1e-12;

    const auto decode = [&](std::span<const double> x) {
        TspdfParams p;
        const double total = x[0], share = x[1], tau = x[2], a = x[3];
        p.delta1 = total * share;
        p.delta2 = total * (1.0 - share);
        p.sigma2_1 = p.delta1 > 0.0 ? tau * a / p.delta1 : 0.0;
        p.sigma2_2 = p.delta2 > 0.0 ? tau * (1.0 - a) / p.delta2 : 0.0;
        p.kappa1.resize(n);
        p.kappa2.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double nu = x[4 + 2 * i], b = x[5 + 2 * i];
            p.kappa1[i] = nu * b / (net.g[i] * tau * a + p.delta1);
            p.kappa2[i] = nu * (1.0 - b) / (net.g[i] * tau * (1.0 - a) + p.delta2);
        }
        return p;
    };

    // Embed the BSPDF optimum: symbol 2 gets a vanishing share of every budget.
    const RateResult b = rate_bspdf_opt(net, options);
    const auto find = [&](const std::string& k) {
        for (const auto& [name, v] : b.params) {
            if (name == k) return v;
        }
        throw DomainError("missing parameter " + k);
    };
    const double delta = find("delta"), sigma2 = find("sigma2");
    std::vector<double> warm{delta, 1.0, delta * sigma2, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double kappa = find("kappa_" + std::to_string(net.order[i] + 1));
        warm.push_back(delta * kappa * (net.g[i] * sigma2 + 1.0));
        warm.push_back(1.0);
    }
    spec.warm_starts.push_back(warm);

    const opt::OptResult r = opt::maximize(
        [&](std::span<const double> x) {
            return guarded([&] { return rate_tspdf(net, decode(x), options.quad_tol).rate_bits; });
        },
        spec);
    RateResult out = rate_tspdf(net, decode(r.argmax), options.quad_tol);
    out.supremum_on_boundary = r.on_boundary();
    return out;
}

BspdfFTerms bspdf_f_terms(const NormalizedNetwork& net, const BspdfParams& p, double tol) {
    check_bspdf(net, p);
    const std::vector<int> f = levels(net, p);
    const std::size_t n = net.n_relays();

    double amp = 0.0, noise0 = 0.0, noise1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double load = f[i] == 0 ? p.kappa[i] * (p.delta * net.g[i] * p.sigma2 + 1.0)
                                      : p.delta * p.kappa[i] * (net.g[i] * p.sigma2 + 1.0);
        if (f[i] != 2 && !(load < 1.0)) {
            throw DomainError("relay power constraint violated at relay " + relay_label(net, i));
        }
        if (f[i] == 2) {
            amp += std::sqrt(net.h[i]);
        } else {
            amp += std::sqrt(p.kappa[i] * net.h[i] * net.g[i]);
            (f[i] == 0 ? noise0 : noise1) += p.kappa[i] * net.h[i];
        }
    }
    const double signal = amp * amp * p.sigma2;
    const std::array<double, 2> w = {1.0 - p.delta, p.delta};

    BspdfFTerms t{};
    const auto first = [&](int level) {
        for (std::size_t i = 0; i < n; ++i) {
            if (f[i] >= level) return static_cast<std::ptrdiff_t>(i);
        }
        return std::ptrdiff_t{-1};
    };
    if (const auto i = first(1); i >= 0) {
        t.i_b_yr = mi_label(w, std::array<double, 2>{0.0, net.g[i] * p.sigma2}, 1.0, MiMethod::exact, tol);
    }
    if (const auto i = first(2); i >= 0) t.i_x_yr_given_b = p.delta * half_log2p(net.g[i] * p.sigma2);
    t.i_b_yd = mi_label(w, std::array<double, 2>{noise0, signal + noise0 + noise1}, 1.0, MiMethod::exact, tol);
    t.i_x_yd_given_b = p.delta * half_log2p(signal / (noise0 + noise1 + 1.0));
    return t;
}

RateResult rate_bspdf_f(const NormalizedNetwork& net, const BspdfParams& params, double tol) {
    const BspdfFTerms t = bspdf_f_terms(net, params, tol);
    RateResult out;
    double r2 = t.i_x_yd_given_b;
    std::string r2_label = "R2<I(X;YD|B)";
    if (t.i_x_yr_given_b && *t.i_x_yr_given_b < r2) {
        r2 = *t.i_x_yr_given_b;
        r2_label = "R2<I(X;Yr|B)";
    }
    double r1 = t.i_b_yd + t.i_x_yd_given_b - r2;
    std::string r1_label = "R1+R2<I(B,X;YD)";
    if (t.i_b_yr && *t.i_b_yr < r1) {
        r1 = *t.i_b_yr;
        r1_label = "R1<I(B;Yr)";
    }
    r1 = std::max(0.0, r1);
    out.rate_bits = r1 + r2;
    out.rate_split = {r1, r2};
    out.params = {{"delta", params.delta}, {"sigma2", params.sigma2}};
    append_per_relay(out.params, net, "kappa", params.kappa);
    out.active_constraints = {r1_label, r2_label};
    return out;
}

}  // namespace relaylab
