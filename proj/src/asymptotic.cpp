#include "relaylab/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "relaylab/errors.hpp"
#include "relaylab/optimizer.hpp"

namespace relaylab::asym {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kBetaGrid = 401;

// x - ln(1 + x) without cancellation for small x.
double xm_log1p(double x) {
    if (std::abs(x) < 1e-3) return x * x * (0.5 - x * (1.0 / 3.0 - x * (0.25 - x / 5.0)));
    return x - std::log1p(x);
}

void require_ratio(double x) {
    if (!std::isfinite(x) || !(x > 0.0)) throw DomainError("x = h/g must be finite and > 0");
}

void require_n(int n) {
    if (n < 2) throw DomainError("the symmetric network needs N >= 2 relays");
}

struct BetaOpt {
    double beta;
    Caps caps;
    bool boundary;
};

// sup over beta in [kBetaMin, kBetaMax] of a program sum: log grid, then
// golden-section on the brackets of the best few grid peaks.
BetaOpt search_beta(const std::function<Caps(double)>& program) {
    const double la = std::log(kBetaMin), lb = std::log(kBetaMax);
    const auto f = [&](double t) {
        const double v = program(std::exp(t)).sum();
        return std::isnan(v) ? kNegInf : v;
    };
    std::vector<double> vals(kBetaGrid);
    for (int i = 0; i < kBetaGrid; ++i) vals[i] = f(la + (lb - la) * i / (kBetaGrid - 1));
    std::vector<int> peaks;
    for (int i = 0; i < kBetaGrid; ++i) {
        const bool left = i == 0 || vals[i] >= vals[i - 1];
        const bool right = i == kBetaGrid - 1 || vals[i] >= vals[i + 1];
        if (left && right) peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) { return vals[a] > vals[b]; });
    if (peaks.size() > 3) peaks.resize(3);

    double best_t = la, best_v = kNegInf;
    for (int k : peaks) {
        const double lo = la + (lb - la) * std::max(0, k - 1) / (kBetaGrid - 1);
        const double hi = la + (lb - la) * std::min(kBetaGrid - 1, k + 1) / (kBetaGrid - 1);
        double v = kNegInf;
        double t = opt::golden_max(f, lo, hi, 1e-15, &v);
        const double tk = la + (lb - la) * k / (kBetaGrid - 1);
        if (vals[k] >= v) {
            v = vals[k];
            t = tk;
        }
        if (v > best_v) {
            best_v = v;
            best_t = t;
        }
    }
    const double beta = std::exp(best_t);
    const double edge = 1e-6 * (lb - la);
    return {beta, program(beta), best_t - la < edge || lb - best_t < edge};
}

double fold_ratio(double x) {
    require_ratio(x);
    return std::min(x, 1.0 / x);
}

struct NdProgram {
    std::vector<opt::Dim> dims;
    std::vector<std::vector<double>> warm;
    std::function<Caps(std::span<const double>)> caps;
    std::function<ParamList(std::span<const double>)> names;
};

CurveValue search_nd(const NdProgram& prog, double scale, const AsymptoticOptions& options) {
    opt::SearchSpec spec;
    spec.dims = prog.dims;
    spec.starts = options.starts;
    spec.seed = options.seed;
    spec.max_evals = options.max_evals;
    spec.tol = 1e-15;
    spec.warm_starts = prog.warm;
    const opt::OptResult r = opt::maximize(
        [&](std::span<const double> p) {
            try {
                const double v = prog.caps(p).sum();
                return std::isfinite(v) ? v : kNegInf;
            } catch (const DomainError&) {
                return kNegInf;
            }
        },
        spec);
    const Caps c = prog.caps(r.argmax);
    CurveValue out;
    out.y = scale * c.sum();
    out.params = prog.names(r.argmax);
    out.params.emplace_back("r1", scale * c.r1);
    out.params.emplace_back("r2", scale * c.r2);
    out.on_boundary = r.on_boundary();
    return out;
}

CurveValue from_beta(const BetaOpt& b, double scale) {
    CurveValue out;
    out.y = scale * b.caps.sum();
    out.params = {{"beta", b.beta}, {"r1", scale * b.caps.r1}, {"r2", scale * b.caps.r2}};
    out.on_boundary = b.boundary;
    return out;
}

}  // namespace

double adf(double x, int n_relays) {
    require_ratio(x);
    require_n(n_relays);
    return std::min(1.0, n_relays * n_relays * x) / (2.0 * kLn2);
}

Caps baf_program(double G, int n, double beta) {
    const double s = std::sqrt(G);
    const double nn = n;
    const double r2 = beta * s / (2.0 * kLn2) * std::log1p(nn * nn * s / (beta * (nn + G + beta * s)));
    return {0.0, r2};
}

Caps bspdf_sym2_program(double G, double beta) {
    const double s = std::sqrt(G);
    const double bs = beta * s;
    const double cap1 = G - bs * std::log1p(s / beta);
    const double cap2 = 2.0 * (2.0 * s + beta) / (s + beta) -
                        bs * std::log1p(2.0 * (2.0 * s + beta) / (beta * (G + bs)));
    const double r2 = bs * std::log1p(4.0 * s / (beta * (2.0 + G + bs)));
    return {std::min(cap1, cap2) / (2.0 * kLn2), r2 / (2.0 * kLn2)};
}

Caps bspdf_symN_program(double G, int n, double beta) {
    const double s = std::sqrt(G);
    const double nn = n;
    const double bs = beta * s;
    const double cap1 = G - bs * std::log1p(s / beta);
    // beta*s*(u - ln(1 + u)) with u = N (N s + beta) / (beta (G + beta s)).
    const double u = nn * (nn * s + beta) / (beta * (G + bs));
    const double cap2 = bs * xm_log1p(u);
    const double r2 = bs * std::log1p(nn * nn * s / (beta * (nn + G + bs)));
    return {std::min(cap1, cap2) / (2.0 * kLn2), r2 / (2.0 * kLn2)};
}

double rbaf(double G, int n) {
    require_ratio(G);
    require_n(n);
    return search_beta([&](double b) { return baf_program(G, n, b); }).caps.sum();
}

double rbspdf(double G, int n) {
    require_ratio(G);
    require_n(n);
    return search_beta([&](double b) { return bspdf_symN_program(G, n, b); }).caps.sum();
}

CurveValue abaf(double x, int n) {
    require_ratio(x);
    require_n(n);
    return from_beta(search_beta([&](double b) { return baf_program(1.0 / x, n, b); }), x);
}

CurveValue abspdf_sym2(double x) {
    require_ratio(x);
    return from_beta(search_beta([&](double b) { return bspdf_sym2_program(1.0 / x, b); }), x);
}

CurveValue abspdf_symN(double x, int n) {
    require_ratio(x);
    require_n(n);
    return from_beta(search_beta([&](double b) { return bspdf_symN_program(1.0 / x, n, b); }), x);
}

Caps tspdf_program(double G, const TspdfAsymParams& p) {
    const double s = std::sqrt(G);
    for (double v : {p.beta1, p.beta2}) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("beta1, beta2 must be finite and > 0");
    }
    for (double v : {p.gamma1, p.gamma2, p.kappa1, p.kappa2}) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("gamma and kappa must be finite and >= 0");
    }
    if (!(s * (p.beta1 * p.gamma1 + p.beta2 * p.gamma2) < 1.0)) {
        throw DomainError("source power constraint of the ternary program violated");
    }
    if (!(s * (p.beta1 * (1.0 + p.gamma1 * G) * p.kappa1 + p.beta2 * (1.0 + p.gamma2 * G) * p.kappa2) < 1.0)) {
        throw DomainError("relay power constraint of the ternary program violated");
    }
    const double q1 = p.gamma1 * G, q2 = p.gamma2 * G;
    const double a1 = (2.0 + 4.0 * q1) * p.kappa1, a2 = (2.0 + 4.0 * q2) * p.kappa2;
    const double cap1 = s * (p.beta1 * xm_log1p(q1) + p.beta2 * xm_log1p(q2));
    const double cap2 = s * (p.beta1 * xm_log1p(a1) + p.beta2 * xm_log1p(a2));
    const double r2 = s * (p.beta1 * std::log1p(4.0 * q1 * p.kappa1 / (1.0 + 2.0 * p.kappa1)) +
                           p.beta2 * std::log1p(4.0 * q2 * p.kappa2 / (1.0 + 2.0 * p.kappa2)));
    return {std::min(cap1, cap2) / (2.0 * kLn2), r2 / (2.0 * kLn2)};
}

CurveValue atspdf_sym2(double x, AsymptoticOptions options) {
    require_ratio(x);
    const double G = 1.0 / x;
    const double s = std::sqrt(G);
    // Power-fraction coordinates: (beta1, beta2, tau, a, nu, b) with source
    // budget s(beta1 gamma1 + beta2 gamma2) = tau split a : 1-a, and relay budget
    // nu split b : 1-b. Both strict constraints hold whenever tau, nu < 1.
    const auto decode = [s, G](std::span<const double> p) {
        TspdfAsymParams t{};
        t.beta1 = p[0];
        t.beta2 = p[1];
        const double tau = p[2], a = p[3], nu = p[4], b = p[5];
        t.gamma1 = tau * a / (s * t.beta1);
        t.gamma2 = tau * (1.0 - a) / (s * t.beta2);
        t.kappa1 = nu * b / (s * t.beta1 * (1.0 + t.gamma1 * G));
        t.kappa2 = nu * (1.0 - b) / (s * t.beta2 * (1.0 + t.gamma2 * G));
        return t;
    };

    NdProgram prog;
    prog.dims = {{kBetaMin, kBetaMax, opt::Scale::log}, {kBetaMin, kBetaMax, opt::Scale::log},
                 {0.0, 1.0, opt::Scale::linear}, {0.0, 1.0, opt::Scale::linear},
                 {0.0, 1.0, opt::Scale::linear}, {0.0, 1.0, opt::Scale::linear}};
    // The binary program is the face where symbol 2 gets nothing: full source
    // and relay power on symbol 1 reproduces its three caps exactly.
    const BetaOpt bin = search_beta([&](double b) { return bspdf_sym2_program(G, b); });
    prog.warm = {{bin.beta, kBetaMin, 1.0, 1.0, 1.0, 1.0}, {bin.beta, bin.beta, 1.0, 1.0, 1.0, 1.0}};
    prog.caps = [&](std::span<const double> p) { return tspdf_program(G, decode(p)); };
    prog.names = [&](std::span<const double> p) {
        const TspdfAsymParams t = decode(p);
        return ParamList{{"beta1", t.beta1},   {"beta2", t.beta2},   {"gamma1", t.gamma1},
                         {"gamma2", t.gamma2}, {"kappa1", t.kappa1}, {"kappa2", t.kappa2}};
    };
    return search_nd(prog, x, options);
}

double adf_asym(double x) { return std::sqrt(fold_ratio(x)) / (2.0 * kLn2); }

Caps bspdf11_program(double G, double beta, double k1, double k2) {
    const double s = std::sqrt(G);
    const double bs = beta * s;
    if (!(k1 >= 0.0 && k2 >= 0.0) || !(k1 * (G + bs) < 1.0) || !(k2 * (1.0 + bs) < 1.0)) {
        throw DomainError("relay power constraint of the BSPDF(1,1) program violated");
    }
    const double beam = s * std::pow(std::sqrt(k1) + std::sqrt(k2), 2) / beta;
    const double cap1 = G - bs * std::log1p(s / beta);
    const double cap2 = bs * xm_log1p(k1 + k2 * G + beam);
    const double r2 = bs * std::log1p(beam / (1.0 + k1 + k2 * G));
    return {std::min(cap1, cap2) / (2.0 * kLn2), r2 / (2.0 * kLn2)};
}

Caps bafdf_program(double G, double beta, double k) {
    const double s = std::sqrt(G);
    const double bs = beta * s;
    if (!(k >= 0.0) || !(k * (bs + G) < 1.0)) throw DomainError("relay power constraint of BAF+DF violated");
    const double c1 = bs * std::log1p(1.0 / bs);
    const double c2 = bs * std::log1p(s * std::pow(1.0 + std::sqrt(k), 2) / (beta * (1.0 + k)));
    return {0.0, std::min(c1, c2) / (2.0 * kLn2)};
}

Caps bspdf12_program(double G, double beta, double k) {
    const double s = std::sqrt(G);
    const double bs = beta * s;
    if (!(k >= 0.0) || !(k * (bs + G) < 1.0)) {
        throw DomainError("relay power constraint of the BSPDF(1,2) program violated");
    }
    const double beam = std::pow(1.0 + std::sqrt(k), 2);
    const double cap1a = G - bs * std::log1p(s / beta);
    const double cap1b = G * beam + bs * k - bs * std::log1p(k + s * beam / beta);
    const double c2a = bs * std::log1p(1.0 / bs);
    const double c2b = bs * std::log1p(s * beam / (beta * (1.0 + k)));
    return {std::min(cap1a, cap1b) / (2.0 * kLn2), std::min(c2a, c2b) / (2.0 * kLn2)};
}

namespace {

// (beta, u1, u2) with kappa1 = u1/(G + beta s), kappa2 = u2/(1 + beta s).
NdProgram two_kappa_program(double G, bool binary_rate) {
    const double s = std::sqrt(G);
    const auto kappas = [s, G](std::span<const double> p) {
        const double bs = p[0] * s;
        return std::pair{p[1] / (G + bs), p[2] / (1.0 + bs)};
    };
    NdProgram prog;
    prog.dims = {{kBetaMin, kBetaMax, opt::Scale::log}, {0.0, 1.0, opt::Scale::linear}, {0.0, 1.0, opt::Scale::linear}};
    prog.warm = {{1.0, 1.0, 1.0}};
    prog.caps = [=](std::span<const double> p) {
        const auto [k1, k2] = kappas(p);
        Caps c = bspdf11_program(G, p[0], k1, k2);
        if (!binary_rate) c.r1 = 0.0;
        return c;
    };
    prog.names = [=](std::span<const double> p) {
        const auto [k1, k2] = kappas(p);
        return ParamList{{"beta", p[0]}, {"kappa1", k1}, {"kappa2", k2}};
    };
    return prog;
}

// (beta, u) with kappa = u/(beta s + G).
NdProgram one_kappa_program(double G, Caps (*program)(double, double, double)) {
    const double s = std::sqrt(G);
    const auto kappa = [s, G](std::span<const double> p) { return p[1] / (p[0] * s + G); };
    NdProgram prog;
    prog.dims = {{kBetaMin, kBetaMax, opt::Scale::log}, {0.0, 1.0, opt::Scale::linear}};
    prog.warm = {{1.0, 1.0}, {1.0, 0.0}};
    prog.caps = [=](std::span<const double> p) { return program(G, p[0], kappa(p)); };
    prog.names = [=](std::span<const double> p) { return ParamList{{"beta", p[0]}, {"kappa", kappa(p)}}; };
    return prog;
}

}  // namespace

CurveValue abaf_asym(double x, const AsymptoticOptions& options) {
    const double G = fold_ratio(x);
    return search_nd(two_kappa_program(G, false), 1.0 / std::sqrt(G), options);
}

CurveValue abspdf_asym11(double x, const AsymptoticOptions& options) {
    const double G = fold_ratio(x);
    return search_nd(two_kappa_program(G, true), 1.0 / std::sqrt(G), options);
}

CurveValue abafdf(double x, const AsymptoticOptions& options) {
    const double G = fold_ratio(x);
    return search_nd(one_kappa_program(G, &bafdf_program), 1.0 / std::sqrt(G), options);
}

CurveValue abspdf_asym12(double x, const AsymptoticOptions& options) {
    const double G = fold_ratio(x);
    return search_nd(one_kappa_program(G, &bspdf12_program), 1.0 / std::sqrt(G), options);
}

TimeshareEnvelope::TimeshareEnvelope(Curve curve_a, Curve curve_b, double x_lo, double x_hi, int grid)
    : a_(std::move(curve_a)), b_(std::move(curve_b)), x_lo_(x_lo), x_hi_(x_hi) {
    if (!(x_lo > 0.0) || !(x_lo < x_hi) || grid < 3) throw DomainError("envelope grid needs 0 < x_lo < x_hi");
    xs_.resize(grid);
    ya_.resize(grid);
    yb_.resize(grid);
    const double la = std::log(x_lo), lb = std::log(x_hi);
    for (int i = 0; i < grid; ++i) {
        xs_[i] = std::exp(la + (lb - la) * i / (grid - 1));
        ya_[i] = a_(xs_[i]);
        yb_[i] = b_(xs_[i]);
    }
}

CurveValue TimeshareEnvelope::operator()(double x) const {
    require_ratio(x);
    if (x <= x_lo_ || x >= x_hi_) throw DomainError("x lies outside the envelope's tabulated range");

    const double pure_a = a_(x), pure_b = b_(x);
    CurveValue out;
    out.y = std::max(pure_a, pure_b);
    const double lambda_pure = pure_a >= pure_b ? 1.0 : 0.0;
    out.params = {{"lambda", lambda_pure}, {"x_a", x}, {"x_b", x}, {"source_share_a", lambda_pure},
                  {"relay_share_a", lambda_pure}};

    // Orientation: scheme A on the left (u < x < v) or on the right.
    struct Chord {
        double value = kNegInf;
        std::size_t i = 0, j = 0;
        bool a_left = true;
    } best;
    const std::size_t n = xs_.size();
    for (int orient = 0; orient < 2; ++orient) {
        const bool a_left = orient == 0;
        const std::vector<double>& yl = a_left ? ya_ : yb_;
        const std::vector<double>& yr = a_left ? yb_ : ya_;
        for (std::size_t i = 0; i < n && xs_[i] < x; ++i) {
            for (std::size_t j = n; j-- > 0 && xs_[j] > x;) {
                const double lam = (xs_[j] - x) / (xs_[j] - xs_[i]);
                const double v = lam * yl[i] + (1.0 - lam) * yr[j];
                if (v > best.value) best = {v, i, j, a_left};
            }
        }
    }
    if (!(best.value > out.y)) return out;

    // Polish the chord endpoints with exact curve values in log coordinates.
    const Curve& left = best.a_left ? a_ : b_;
    const Curve& right = best.a_left ? b_ : a_;
    const auto chord = [&](double u, double v) {
        if (!(v - u > 1e-12 * x)) return kNegInf;
        const double lam = (v - x) / (v - u);
        return lam * left(u) + (1.0 - lam) * right(v);
    };
    opt::SearchSpec spec;
    spec.dims = {{x_lo_, x, opt::Scale::log}, {x, x_hi_, opt::Scale::log}};
    spec.starts = 0;
    spec.tol = 1e-14;
    spec.max_evals = 600;
    spec.warm_starts = {{xs_[best.i], xs_[best.j]}};
    const opt::OptResult r = opt::maximize([&](std::span<const double> p) { return chord(p[0], p[1]); }, spec);
    double u = xs_[best.i], v = xs_[best.j], value = chord(u, v);
    if (r.value > value) {
        value = r.value;
        u = r.argmax[0];
        v = r.argmax[1];
    }
    if (!(value > out.y)) return out;

    const double lam = (v - x) / (v - u);
    // Scheme A's share of time-averaged power: lambda of the source, lambda*x_a/x of the relays.
    const double lam_a = best.a_left ? lam : 1.0 - lam;
    const double xa = best.a_left ? u : v;
    const double xb = best.a_left ? v : u;
    out.y = value;
    out.params = {{"lambda", lam_a}, {"x_a", xa}, {"x_b", xb}, {"source_share_a", lam_a},
                  {"relay_share_a", lam_a * xa / x}};
    out.on_boundary = r.on_boundary();
    return out;
}

}  // namespace relaylab::asym
