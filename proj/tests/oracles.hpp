#pragma once

// Reference computations that share no code with the library: plain composite
// Simpson on the density itself (no log-sum-exp, no adaptivity) and the channel
// model written out from scratch.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracle {

// -int f log2 f for a zero-mean Gaussian mixture, by composite Simpson on
// [0, 14 sigma_max] (the density is even).
inline double entropy_simpson(const std::vector<double>& w, const std::vector<double>& var) {
    const double smax = std::sqrt(*std::max_element(var.begin(), var.end()));
    const double smin = std::sqrt(*std::min_element(var.begin(), var.end()));
    const double len = 14.0 * smax;
    std::size_t n = static_cast<std::size_t>(std::ceil(60.0 * len / smin));
    n = std::clamp<std::size_t>(n, 20000, 40000000);
    n += n % 2;
    const double step = len / static_cast<double>(n);

    const auto integrand = [&](double y) {
        double f = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            f += w[i] * std::exp(-0.5 * y * y / var[i]) / std::sqrt(2.0 * std::numbers::pi * var[i]);
        }
        return f > 0.0 ? -f * std::log(f) : 0.0;
    };

    long double acc = integrand(0.0) + integrand(len);
    for (std::size_t k = 1; k < n; ++k) {
        acc += (k % 2 ? 4.0L : 2.0L) * integrand(step * static_cast<double>(k));
    }
    const double nats = 2.0 * static_cast<double>(acc) * step / 3.0;
    return nats / std::numbers::ln2;
}

inline double gaussian_entropy_simpson(double var) { return entropy_simpson({1.0}, {var}); }

// I(Q; Y) where Y | Q=j ~ N(0, var[j]).
inline double mi_label(const std::vector<double>& w, const std::vector<double>& var) {
    double cond = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] > 0.0) cond += w[j] * gaussian_entropy_simpson(var[j]);
    }
    return entropy_simpson(w, var) - cond;
}

struct Net {
    std::vector<double> g, h;  // unit powers and noise
};

// Destination view of one amplified burst: relays forward sqrt(k_i)(sqrt(g_i) X + Z_i).
struct Burst {
    double signal;  // variance of the useful part for source variance s2
    double noise;   // forwarded relay noise
};
inline Burst burst(const Net& net, const std::vector<double>& kappa, double s2) {
    double amp = 0.0, noise = 0.0;
    for (std::size_t i = 0; i < net.g.size(); ++i) {
        amp += std::sqrt(kappa[i] * net.h[i] * net.g[i]);
        noise += kappa[i] * net.h[i];
    }
    return {amp * amp * s2, noise};
}

struct Terms {
    double label_at_relay;  // I(B;Y_1) or I(T;Y_1) at the weakest relay
    double label_at_dest;   // I(B;Y_D) or I(T;Y_D)
    double data_at_dest;    // I(X;Y_D | label)
};

// One or two bursts with duty cycles delta[j], source variances s2[j] and gains kappa[j].
inline Terms bursty_terms(const Net& net, const std::vector<double>& delta, const std::vector<double>& s2,
                          const std::vector<std::vector<double>>& kappa) {
    const double g1 = *std::min_element(net.g.begin(), net.g.end());
    double idle = 1.0;
    for (double d : delta) idle -= d;
    std::vector<double> w{std::max(0.0, idle)}, v_relay{1.0}, v_dest{1.0};
    Terms t{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < delta.size(); ++j) {
        const Burst b = burst(net, kappa[j], s2[j]);
        w.push_back(delta[j]);
        v_relay.push_back(1.0 + g1 * s2[j]);
        v_dest.push_back(1.0 + b.signal + b.noise);
        t.data_at_dest += delta[j] * (gaussian_entropy_simpson(1.0 + b.signal + b.noise) -
                                      gaussian_entropy_simpson(1.0 + b.noise));
    }
    t.label_at_relay = mi_label(w, v_relay);
    t.label_at_dest = mi_label(w, v_dest);
    return t;
}

}  // namespace oracle
