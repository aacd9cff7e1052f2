#include "relaylab/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "relaylab/errors.hpp"

namespace relaylab {
namespace {

void require_gains(const std::vector<double>& v, const char* name) {
    for (double x : v) {
        if (!std::isfinite(x) || x < 0.0) {
            throw DomainError(std::string(name) + " must be finite and non-negative");
        }
    }
}

bool all_close(const std::vector<double>& v) {
    if (v.empty()) return true;
    const double ref = v.front();
    return std::all_of(v.begin(), v.end(), [ref](double x) {
        return std::abs(x - ref) <= 1e-12 * std::max(std::abs(ref), std::abs(x));
    });
}

}  // namespace

void NetworkConfig::validate() const {
    if (g.empty()) throw DomainError("network needs at least one relay");
    if (h.size() != g.size()) throw DomainError("g and h must have the same length");
    if (!p_relay.empty() && p_relay.size() != g.size()) {
        throw DomainError("p_relay must be empty or have one entry per relay");
    }
    require_gains(g, "g");
    require_gains(h, "h");
    if (!std::isfinite(p_source) || p_source <= 0.0) throw DomainError("p_source must be finite and > 0");
    for (double p : p_relay) {
        if (!std::isfinite(p) || p <= 0.0) throw DomainError("p_relay entries must be finite and > 0");
    }
    if (!std::isfinite(n0) || n0 <= 0.0) throw DomainError("n0 must be finite and > 0");
}

bool NormalizedNetwork::is_symmetric() const { return all_close(g) && all_close(h); }

NormalizedNetwork NormalizedNetwork::from_gains(std::vector<double> g, std::vector<double> h) {
    NetworkConfig cfg;
    cfg.g = std::move(g);
    cfg.h = std::move(h);
    return normalize(cfg);
}

NormalizedNetwork normalize(const NetworkConfig& config) {
    config.validate();
    const std::size_t n = config.n_relays();

    std::vector<double> g(n), h(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p_i = config.p_relay.empty() ? 1.0 : config.p_relay[i];
        g[i] = config.g[i] * config.p_source / config.n0;
        h[i] = config.h[i] * p_i / config.n0;
        if (!std::isfinite(g[i]) || !std::isfinite(h[i])) throw DomainError("normalized gain overflows");
    }

    NormalizedNetwork out;
    out.order.resize(n);
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    std::stable_sort(out.order.begin(), out.order.end(), [&g](std::size_t a, std::size_t b) { return g[a] < g[b]; });
    out.g.reserve(n);
    out.h.reserve(n);
    for (std::size_t k : out.order) {
        out.g.push_back(g[k]);
        out.h.push_back(h[k]);
    }
    return out;
}

std::vector<double> to_user_order(const NormalizedNetwork& net, const std::vector<double>& sorted_values) {
    if (sorted_values.size() != net.n_relays()) throw DomainError("per-relay vector has the wrong length");
    std::vector<double> out(sorted_values.size());
    for (std::size_t k = 0; k < net.order.size(); ++k) out[net.order[k]] = sorted_values[k];
    return out;
}

}  // namespace relaylab
