#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relaylab/gaussmix.hpp"
#include "relaylab/network.hpp"

namespace relaylab {

using ParamList = std::vector<std::pair<std::string, double>>;

struct RateResult {
    double rate_bits = 0.0;
    std::optional<std::pair<double, double>> rate_split;  // (R1, R2)
    ParamList params;                                      // per-relay entries in user order
    std::vector<std::string> active_constraints;
    bool supremum_on_boundary = false;
};

// Per-relay vectors below are indexed in the network's sorted order.

struct BafParams {
    double delta = 1.0;
    std::vector<double> kappa;
};

struct BspdfParams {
    double delta = 1.0;
    double sigma2 = 0.0;
    std::vector<double> kappa;
    std::vector<int> f;  // decode level per relay; empty means every relay at level 1
};

struct TspdfParams {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double sigma2_1 = 0.0;
    double sigma2_2 = 0.0;
    std::vector<double> kappa1;
    std::vector<double> kappa2;
};

struct ExactOptions {
    int starts = 64;
    std::uint64_t seed = 7;
    int max_evals = 2000;
    double quad_tol = gaussmix::kDefaultTolerance;
};

RateResult rate_df(const NormalizedNetwork& net);

// AF/BAF at fixed parameters. Throw DomainError when a strict constraint fails.
double rate_af_at(const NormalizedNetwork& net, const std::vector<double>& kappa);
double rate_baf_at(const NormalizedNetwork& net, const BafParams& params);

// Suprema over the open parameter boxes, evaluated on the box shrunk by 1e-9.
RateResult rate_af(const NormalizedNetwork& net, const ExactOptions& options = {});
RateResult rate_baf(const NormalizedNetwork& net, const ExactOptions& options = {});

// The mutual-information terms entering the BSPDF rate (bits).
struct BspdfTerms {
    double i_b_y1;         // I(B; Y_1) at the weakest relay
    double i_b_yd;         // I(B; Y_D)
    double i_x_yd_given_b; // I(X_S; Y_D | B)
};
BspdfTerms bspdf_terms(const NormalizedNetwork& net, const BspdfParams& params,
                       double tol = gaussmix::kDefaultTolerance);
RateResult rate_bspdf(const NormalizedNetwork& net, const BspdfParams& params,
                      double tol = gaussmix::kDefaultTolerance);
RateResult rate_bspdf_opt(const NormalizedNetwork& net, const ExactOptions& options = {});

struct TspdfTerms {
    double i_t_y1;
    double i_t_yd;
    double i_x_yd_given_t;
};
TspdfTerms tspdf_terms(const NormalizedNetwork& net, const TspdfParams& params,
                       double tol = gaussmix::kDefaultTolerance);
RateResult rate_tspdf(const NormalizedNetwork& net, const TspdfParams& params,
                      double tol = gaussmix::kDefaultTolerance);
RateResult rate_tspdf_opt(const NormalizedNetwork& net, const ExactOptions& options = {});

// BSPDF with per-relay decode levels. Accepted maps are non-decreasing with
// values in {0, 1, 2}; a map containing 0 must also contain a level-1 relay.
struct BspdfFTerms {
    std::optional<double> i_b_yr;          // I(B; Y_i) at the weakest relay with f >= 1
    std::optional<double> i_x_yr_given_b;  // I(X_S; Y_i | B) at the weakest relay with f = 2
    double i_b_yd;
    double i_x_yd_given_b;
};
BspdfFTerms bspdf_f_terms(const NormalizedNetwork& net, const BspdfParams& params,
                          double tol = gaussmix::kDefaultTolerance);
RateResult rate_bspdf_f(const NormalizedNetwork& net, const BspdfParams& params,
                        double tol = gaussmix::kDefaultTolerance);

}  // namespace relaylab
