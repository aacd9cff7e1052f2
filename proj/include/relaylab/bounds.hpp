#pragma once

#include <string>

#include "relaylab/network.hpp"

namespace relaylab {

struct CutsetResult {
    double bound_bits = 0.0;
    double rho_star = 0.0;   // smallest correlation attaining the bound
    std::string active_cut;  // "S", "SR1", "SR2", "D" for the diamond; "n=<k>" for the N-relay bound
};

/// Cut-set bound of the 2-relay diamond:
/// max over rho in [0, 1] of min{C_S, C_SR1, C_SR2, C_D}.
/// Each cut is monotone in rho, so the inner min is quasi-concave and a grid
/// plus golden-section search is exact to ~1e-12.
CutsetResult cutset_diamond(const NormalizedNetwork& net);

/// The four cut values at a given rho (order S, SR1, SR2, D). Gains in sorted
/// order as stored in the network.
struct DiamondCuts {
    double s, sr1, sr2, d;
    double min() const;
};
DiamondCuts diamond_cuts(const NormalizedNetwork& net, double rho);

/// Cut-set bound of the symmetric N-relay parallel network:
/// sup over rho in [0, 1) of min over n of
///   0.5 log2(1 + (N-n) g) + 0.5 log2(1 + n (1 + (n-1) rho - n (N-n) rho^2 / (1 + (N-n-1) rho)) h).
CutsetResult cutset_symmetric_n(int n_relays, double g, double h);

/// Leading-order (g, h -> 0) cut-set bound of the symmetric diamond in bits:
/// {2h if h/g < 1/4; sqrt(gh) if 1/4 <= h/g <= 1; g otherwise} / ln 2.
double cutset_asymptotic(double g, double h);

/// Leading-order cut-set bound of the symmetric N-relay network, normalized as
/// rate/g at x = h/g.
double acutset_sym(double x, int n_relays);

/// Leading-order cut-set bound of a general diamond with gains scaled to zero
/// uniformly: every log1p is linearized, giving
/// max_rho min{g1+g2, g2+h1(1-rho^2), g1+h2(1-rho^2), h1+h2+2 rho sqrt(h1 h2)} / (2 ln 2).
double cutset_asymptotic_diamond(double g1, double g2, double h1, double h2);

/// Asymmetric family (g1 = h2 = g, g2 = h1 = h) normalized as rate/sqrt(gh).
double acutset_asym(double x);

}  // namespace relaylab
