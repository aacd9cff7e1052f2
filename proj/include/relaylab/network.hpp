#pragma once

#include <cstddef>
#include <vector>

namespace relaylab {

/// Physical description of an N-relay parallel (diamond) network.
///
/// Gains are power gains: the amplitude gain from the source to relay i is
/// sqrt(g[i]) and from relay i to the destination sqrt(h[i]). Every receiver
/// sees additive Gaussian noise of variance n0.
struct NetworkConfig {
    std::vector<double> g;
    std::vector<double> h;
    double p_source = 1.0;
    std::vector<double> p_relay;  // empty means unit power at every relay
    double n0 = 1.0;

    std::size_t n_relays() const { return g.size(); }

    /// Throws DomainError when a field is non-finite, negative, or a power /
    /// noise level is not strictly positive.
    void validate() const;
};

/// Gains with unit powers and unit noise, sorted ascending by g.
///
/// order[k] is the user-facing index of the relay stored at position k.
struct NormalizedNetwork {
    std::vector<double> g;
    std::vector<double> h;
    std::vector<std::size_t> order;

    std::size_t n_relays() const { return g.size(); }

    // All g equal and all h equal (relative 1e-12).
    bool is_symmetric() const;

    /// Builds a network from gains that already have unit powers and noise.
    static NormalizedNetwork from_gains(std::vector<double> g, std::vector<double> h);
};

/// Absorbs powers and noise into the gains: g~ = g P_S / N0, h~ = h P_i / N0.
NormalizedNetwork normalize(const NetworkConfig& config);

/// Reorders a per-relay vector given in sorted order back to user order.
std::vector<double> to_user_order(const NormalizedNetwork& net, const std::vector<double>& sorted_values);

}  // namespace relaylab
