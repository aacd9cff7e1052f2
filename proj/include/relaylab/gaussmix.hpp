#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace relaylab::gaussmix {

inline constexpr double kDefaultTolerance = 1e-10;

/// Weighted mixture of zero-mean univariate Gaussians.
///
/// Weights are non-negative and sum to one (within 1e-12); variances are
/// strictly positive and finite. Component 0 plays the role of the dominant
/// component in the small-perturbation expansions below.
class GaussianMixture {
public:
    GaussianMixture(std::vector<double> weights, std::vector<double> variances);

    static GaussianMixture single(double variance) { return GaussianMixture({1.0}, {variance}); }

    std::span<const double> weights() const { return weights_; }
    std::span<const double> variances() const { return variances_; }
    std::size_t size() const { return weights_.size(); }

    double max_variance() const;
    double min_variance() const;
    // Sum of w_i * sigma_i^2.
    double total_variance() const;

    // Every component variance increased by noise_var (density of W + Z).
    GaussianMixture inflated(double noise_var) const;

    double log_density(double y) const;
    double density(double y) const;

private:
    std::vector<double> weights_;
    std::vector<double> variances_;
};

/// 0.5 * log2(2 pi e variance).
double gaussian_entropy_bits(double variance);

/// Differential entropy -int f log2 f by adaptive Gauss-Kronrod quadrature on
/// [0, L] (the integrand is even) with L = 10 max sigma, plus an analytic bound
/// on the truncated tail. The absolute error is at most tol * max(1, |h|).
///
/// Throws DomainError for tol outside (0, 1e-3] and ConvergenceError (carrying
/// the best estimate) when the interval cap is hit first.
double entropy_quadrature(const GaussianMixture& mix, double tol = kDefaultTolerance);

/// First-order expansion around component 0:
/// 0.5 log2(2 pi e s0) + sum_{i>=1} w_i (s_i/s0 - 1) / (2 ln 2).
double entropy_taylor(const GaussianMixture& mix);

enum class MiMethod { exact, taylor };

/// I(Q; W + Z) where Q has distribution `weights`, W | Q=i ~ N(0, signal_variances[i])
/// and Z ~ N(0, noise_var). Signal variances may be zero as long as every
/// inflated variance is positive. The taylor method uses component 0 as the
/// reference and drops the second-order remainder.
double mi_label(std::span<const double> weights, std::span<const double> signal_variances, double noise_var,
                MiMethod method = MiMethod::exact, double tol = kDefaultTolerance);

double mi_label(const GaussianMixture& mix_signal, double noise_var, MiMethod method = MiMethod::exact,
                double tol = kDefaultTolerance);

/// I(W; W + Z | Q) = sum_i w_i 0.5 log2(1 + s_i / noise_var). Returns +infinity
/// when noise_var is zero and some weighted signal variance is positive.
double mi_conditional_gaussian(std::span<const double> weights, std::span<const double> signal_variances,
                               double noise_var);

// Same with a per-component noise variance.
double mi_conditional_gaussian(std::span<const double> weights, std::span<const double> signal_variances,
                               std::span<const double> noise_variances);

}  // namespace relaylab::gaussmix
