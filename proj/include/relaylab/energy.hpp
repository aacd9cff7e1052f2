#pragma once

#include <string>
#include <vector>

#include "relaylab/asymptotic.hpp"

// Minimum energy-per-bit bounds (J/bit) for the symmetric diamond with
// source-relay power gain g, relay-destination gain h and noise level n0.
namespace relaylab::energy {

struct EbitResult {
    double lower = 0.0;
    double upper_df = 0.0;
    double upper_baf = 0.0;
    double upper_bspdf = 0.0;
    double ratio_df = 0.0;
    double ratio_baf = 0.0;
    double ratio_bspdf = 0.0;
    double gamma_baf = 0.0;    // relay-to-source power ratio at the optimum
    double gamma_bspdf = 0.0;
};

// Piecewise: (g+2h) n0 ln2/(gh) for h/g <= 1/2; sqrt(8) n0 ln2/sqrt(gh) up to
// h/g = 2; (h+2g) n0 ln2/(gh) beyond.
double ebit_lower(double g, double h, double n0 = 1.0);

// (g+2h) n0 ln2/(gh).
double ebit_upper_df(double g, double h, double n0 = 1.0);

// The BAF objective at fixed (beta, gamma):
// 2(1+2 gamma) n0 ln2 / (beta sqrt(gamma g h) ln[1 + 4 sqrt(gamma g h)/(beta (2 gamma h + g + beta sqrt(gamma g h)))]).
double ebit_baf_objective(double beta, double gamma, double g, double h, double n0 = 1.0);

struct UpperBound {
    double value;
    double gamma;
};

// inf over beta, gamma of the BAF objective, as the nested search
// inf_gamma (2 gamma + 1) n0 / (gamma h R_BAF(g/(gamma h))).
UpperBound ebit_upper_baf(double g, double h, double n0 = 1.0);

// inf_gamma (2 gamma + 1) n0 / (gamma h R_BSPDF(g/(gamma h))).
UpperBound ebit_upper_bspdf(double g, double h, double n0 = 1.0);

EbitResult ebit_all(double g, double h, double n0 = 1.0);

// Upper/lower ratio at g = 1, h = x for scheme "df", "baf" or "bspdf".
double ebit_ratio(const std::string& scheme, double x);

std::vector<asym::CurveValue> ebit_ratio_curve(const std::string& scheme, const std::vector<double>& xs);

struct WorstCase {
    double x;
    double ratio;
};
// Largest ratio over an 81-point log grid on [1e-2, 1e2], refined by
// golden-section around the grid argmax.
WorstCase ebit_worst_ratio(const std::string& scheme);

}  // namespace relaylab::energy
