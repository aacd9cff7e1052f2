#include "relaylab/gaussmix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <string>

#include "relaylab/errors.hpp"

namespace relaylab::gaussmix {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxIntervals = 4000;

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Precomputed log-density terms: log f(y) = logsumexp_i(offset_i - y^2 * curvature_i).
class LogDensity {
public:
    explicit LogDensity(const GaussianMixture& mix) {
        for (std::size_t i = 0; i < mix.size(); ++i) {
            const double w = mix.weights()[i];
            if (w <= 0.0) continue;
            const double v = mix.variances()[i];
            offset_.push_back(std::log(w) - 0.5 * std::log(kTwoPi * v));
            curvature_.push_back(0.5 / v);
        }
    }

    double operator()(double y) const {
        const double y2 = y * y;
        double peak = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < offset_.size(); ++i) peak = std::max(peak, offset_[i] - y2 * curvature_[i]);
        if (!std::isfinite(peak)) return peak;
        double sum = 0.0;
        for (std::size_t i = 0; i < offset_.size(); ++i) sum += std::exp(offset_[i] - y2 * curvature_[i] - peak);
        return peak + std::log(sum);
    }

private:
    std::vector<double> offset_;
    std::vector<double> curvature_;
};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

// One GK15 panel with the QUADPACK error heuristic.
template <class F>
Segment gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double gauss = fc * kWg[3];
    double kronrod = fc * kWgk[7];
    double resabs = std::abs(kronrod);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double pair = f1[j] + f2[j];
        kronrod += kWgk[j] * pair;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    const double mean = 0.5 * kronrod;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double value = kronrod * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    if (resabs > std::numeric_limits<double>::min() / (50.0 * std::numeric_limits<double>::epsilon())) {
        err = std::max(err, roundoff);
    }
    return {a, b, value, err};
}

// Bound (in nats) on 2 * int_L^inf -f ln f using f(y) <= exp(-y^2 / 2 s_max^2) / (sqrt(2 pi) s_min).
double tail_bound_nats(double cut, double sigma_min, double sigma_max) {
    const double c = 1.0 / (std::sqrt(kTwoPi) * sigma_min);
    const double s = sigma_max;
    const double a = std::abs(std::log(std::sqrt(kTwoPi) * sigma_min));
    const double gauss_tail = c * s * std::sqrt(std::numbers::pi / 2.0) * std::erfc(cut / (s * std::numbers::sqrt2));
    const double second_moment_tail =
        c * (0.5 * cut * std::exp(-cut * cut / (2.0 * s * s))) + 0.5 * gauss_tail;
    return 2.0 * (a * gauss_tail + second_moment_tail);
}

}  // namespace

GaussianMixture::GaussianMixture(std::vector<double> weights, std::vector<double> variances)
    : weights_(std::move(weights)), variances_(std::move(variances)) {
    if (weights_.empty() || weights_.size() != variances_.size()) {
        throw DomainError("mixture needs matching, non-empty weight and variance vectors");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) throw DomainError("mixture weights must be >= 0");
        if (!std::isfinite(variances_[i]) || variances_[i] <= 0.0) {
            throw DomainError("mixture variances must be finite and > 0");
        }
        total += weights_[i];
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to 1");
}

double GaussianMixture::max_variance() const { return *std::max_element(variances_.begin(), variances_.end()); }

double GaussianMixture::min_variance() const { return *std::min_element(variances_.begin(), variances_.end()); }

double GaussianMixture::total_variance() const {
    return std::inner_product(weights_.begin(), weights_.end(), variances_.begin(), 0.0);
}

GaussianMixture GaussianMixture::inflated(double noise_var) const {
    std::vector<double> v(variances_);
    for (double& x : v) x += noise_var;
    return GaussianMixture(weights_, std::move(v));
}

double GaussianMixture::log_density(double y) const { return LogDensity(*this)(y); }

double GaussianMixture::density(double y) const { return std::exp(log_density(y)); }

double gaussian_entropy_bits(double variance) {
    if (!(variance > 0.0)) throw DomainError("Gaussian entropy needs a positive variance");
    return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * variance);
}

double entropy_quadrature(const GaussianMixture& mix, double tol) {
    if (!(tol > 0.0) || tol > 1e-3) throw DomainError("entropy_quadrature tolerance must lie in (0, 1e-3]");

    const LogDensity log_f(mix);
    const auto integrand = [&log_f](double y) {
        const double lf = log_f(y);
        if (!std::isfinite(lf)) return 0.0;  // f log f -> 0
        return -std::exp(lf) * lf;
    };

    const double sigma_max = std::sqrt(mix.max_variance());
    const double sigma_min = std::sqrt(mix.min_variance());
    // h(Y) is at least the entropy of the narrowest component minus log(1/w); a
    // magnitude guess of O(1) bits sets the budget before the first pass.
    const double budget_guess = tol * std::max(1.0, std::abs(gaussian_entropy_bits(mix.total_variance())));
    double cut = 10.0 * sigma_max;
    double tail = tail_bound_nats(cut, sigma_min, sigma_max) / kLn2;
    while (tail > 0.25 * budget_guess) {
        cut *= 1.25;
        tail = tail_bound_nats(cut, sigma_min, sigma_max) / kLn2;
    }

    // Seed panels at the component scales so narrow and wide parts are resolved.
    std::vector<double> breaks{0.0};
    for (double v : mix.variances()) {
        for (double k : {1.0, 3.0}) {
            const double p = k * std::sqrt(v);
            if (p < cut) breaks.push_back(p);
        }
    }
    breaks.push_back(cut);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [cut](double a, double b) { return std::abs(a - b) <= 1e-12 * cut; }),
                 breaks.end());

    std::priority_queue<Segment> heap;
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        Segment s = gk15(integrand, breaks[i], breaks[i + 1]);
        value += s.value;
        error += s.error;
        heap.push(s);
    }

    // Both halves of the real line: factor 2. Convert nats to bits.
    const auto bits = [](double nats) { return 2.0 * nats / kLn2; };
    int intervals = static_cast<int>(heap.size());
    while (bits(error) + tail > tol * std::max(1.0, std::abs(bits(value)))) {
        if (intervals >= kMaxIntervals) {
            throw ConvergenceError("entropy_quadrature: interval cap reached", bits(value), bits(error) + tail);
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk15(integrand, worst.a, mid);
        const Segment right = gk15(integrand, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
        // Recompute the running error from scratch occasionally to stop drift.
        if (intervals % 64 == 0) {
            auto copy = heap;
            double v = 0.0, e = 0.0;
            while (!copy.empty()) {
                v += copy.top().value;
                e += copy.top().error;
                copy.pop();
            }
            value = v;
            error = e;
        }
    }
    return bits(value);
}

double entropy_taylor(const GaussianMixture& mix) {
    const double s0 = mix.variances()[0];
    if (!(s0 > 0.0)) throw DomainError("entropy_taylor needs a positive reference variance");
    double first_order = 0.0;
    for (std::size_t i = 1; i < mix.size(); ++i) first_order += mix.weights()[i] * (mix.variances()[i] / s0 - 1.0);
    return gaussian_entropy_bits(s0) + first_order / (2.0 * kLn2);
}

double mi_label(std::span<const double> weights, std::span<const double> signal_variances, double noise_var,
                MiMethod method, double tol) {
    if (weights.size() != signal_variances.size() || weights.empty()) {
        throw DomainError("mi_label needs matching weight and variance vectors");
    }
    if (!std::isfinite(noise_var) || noise_var < 0.0) throw DomainError("noise variance must be >= 0");
    std::vector<double> inflated(signal_variances.begin(), signal_variances.end());
    for (double& v : inflated) {
        if (!std::isfinite(v) || v < 0.0) throw DomainError("signal variances must be finite and >= 0");
        v += noise_var;
        if (!(v > 0.0)) throw DomainError("mi_label needs positive noise-inflated variances");
    }

    // Only components that carry probability matter.
    std::vector<double> w_live, v_live;
    for (std::size_t i = 0; i < inflated.size(); ++i) {
        if (weights[i] < 0.0) throw DomainError("mixture weights must be >= 0");
        if (weights[i] > 0.0) {
            w_live.push_back(weights[i]);
            v_live.push_back(inflated[i]);
        }
    }
    if (w_live.empty()) throw DomainError("mixture weights must sum to 1");
    const bool degenerate = std::all_of(v_live.begin(), v_live.end(), [&](double v) {
        return std::abs(v - v_live[0]) <= 1e-15 * v_live[0];
    });
    if (degenerate) return 0.0;

    if (method == MiMethod::taylor) {
        const double v0 = inflated[0];
        double sum = 0.0;
        for (std::size_t i = 1; i < inflated.size(); ++i) {
            const double r = inflated[i] / v0;
            sum += weights[i] * ((r - 1.0) - std::log(r));
        }
        return sum / (2.0 * kLn2);
    }

    double conditional = 0.0;
    for (std::size_t i = 0; i < w_live.size(); ++i) conditional += w_live[i] * gaussian_entropy_bits(v_live[i]);
    const GaussianMixture mix(std::move(w_live), std::move(v_live));
    return std::max(0.0, entropy_quadrature(mix, tol) - conditional);
}

double mi_label(const GaussianMixture& mix_signal, double noise_var, MiMethod method, double tol) {
    return mi_label(mix_signal.weights(), mix_signal.variances(), noise_var, method, tol);
}

double mi_conditional_gaussian(std::span<const double> weights, std::span<const double> signal_variances,
                               double noise_var) {
    std::vector<double> noise(weights.size(), noise_var);
    return mi_conditional_gaussian(weights, signal_variances, noise);
}

double mi_conditional_gaussian(std::span<const double> weights, std::span<const double> signal_variances,
                               std::span<const double> noise_variances) {
    if (weights.size() != signal_variances.size() || weights.size() != noise_variances.size()) {
        throw DomainError("mi_conditional_gaussian needs matching vectors");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = weights[i];
        const double s = signal_variances[i];
        const double n = noise_variances[i];
        if (w < 0.0 || s < 0.0 || n < 0.0 || !std::isfinite(s) || !std::isfinite(n)) {
            throw DomainError("mi_conditional_gaussian inputs must be finite and >= 0");
        }
        if (w == 0.0 || s == 0.0) continue;
        if (n == 0.0) return std::numeric_limits<double>::infinity();
        sum += w * 0.5 * std::log2(1.0 + s / n);
    }
    return sum;
}

}  // namespace relaylab::gaussmix
