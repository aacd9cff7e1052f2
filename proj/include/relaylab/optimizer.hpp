#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace relaylab::opt {

enum class Scale { linear, log };

struct Dim {
    double lower;
    double upper;
    Scale scale = Scale::linear;
};

struct SearchSpec {
    std::vector<Dim> dims;
    double margin = 1e-9;  // strict-inequality shrink, relative to each transformed span
    int starts = 64;
    std::uint64_t seed = 0x5eed;
    double tol = 1e-10;    // objective spread at which a simplex counts as converged
    int max_evals = 4000;  // per start
    // Evaluated before the quasi-random starts, in order; clamped into the box.
    std::vector<std::vector<double>> warm_starts;
};

struct OptResult {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<double> argmax;
    // Per dim: -1 pinned at the lower face, +1 at the upper face, 0 interior.
    std::vector<int> boundary_flags;
    long evals = 0;

    bool on_boundary() const;
};

// Objective returning -infinity marks an infeasible point.
using Objective = std::function<double(std::span<const double>)>;

/// Multi-start Nelder-Mead maximizer over a box in transformed coordinates.
///
/// Start points come from a shifted Halton sequence, so the first k starts of a
/// run with more starts are exactly the starts of a run with k. Starts are
/// reduced sequentially, keeping the first best (ties broken by lexicographic
/// argmax), which makes the result bit-identical for a fixed spec.
/// Throws InfeasibleError when no evaluated point is finite.
OptResult maximize(const Objective& objective, const SearchSpec& spec);

/// Golden-section maximizer of a unimodal function on [a, b]. Returns the
/// argmax; the value is written to *value when non-null.
double golden_max(const std::function<double(double)>& f, double a, double b, double xtol = 1e-12,
                  double* value = nullptr);

/// Dense grid followed by golden-section refinement on the best bracket.
/// Suitable for 1-D objectives that may be multi-modal at the grid scale.
/// With log_scale the grid and the refinement run in ln(x).
double grid_golden_max(const std::function<double(double)>& f, double a, double b, int grid, bool log_scale,
                       double xtol = 1e-12, double* value = nullptr);

}  // namespace relaylab::opt
