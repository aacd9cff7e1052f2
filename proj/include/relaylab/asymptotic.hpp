#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "relaylab/schemes_exact.hpp"

// Leading-order rate curves for g, h -> 0 at a fixed ratio x = h/g.
//
// Symmetric families report rate/g; the asymmetric diamond (g1 = h2 = g,
// g2 = h1 = h) reports rate/sqrt(gh). Every program below is written in terms
// of G = g/h and s = sqrt(G); a program value R(G) means rate = h R(G) + O(h^2),
// so rate/g = x R(1/x) and rate/sqrt(gh) = R(G) / s.
namespace relaylab::asym {

struct CurveValue {
    double y = 0.0;
    ParamList params;
    bool on_boundary = false;
};

struct AsymptoticOptions {
    int starts = 64;
    std::uint64_t seed = 7;
    int max_evals = 3000;
};

inline constexpr int kTspdfStarts = 512;

// Rate caps of a program at fixed parameters, in units of h (bits).
struct Caps {
    double r1;  // min over the R1 caps
    double r2;  // min over the R2 caps
    double sum() const { return r1 + r2; }
};

// Search range for every beta-like parameter.
inline constexpr double kBetaMin = 1e-15;
inline constexpr double kBetaMax = 1e4;

// ---- symmetric diamond and N-relay network --------------------------------

// min(1, N^2 x) / (2 ln 2).
double adf(double x, int n_relays = 2);

Caps baf_program(double G, int n_relays, double beta);
Caps bspdf_sym2_program(double G, double beta);
Caps bspdf_symN_program(double G, int n_relays, double beta);

// Program optima R(G) (not normalized). Used by the energy bounds.
double rbaf(double G, int n_relays = 2);
double rbspdf(double G, int n_relays = 2);

CurveValue abaf(double x, int n_relays = 2);
CurveValue abspdf_sym2(double x);
CurveValue abspdf_symN(double x, int n_relays);

struct TspdfAsymParams {
    double beta1, beta2, gamma1, gamma2, kappa1, kappa2;
};
// Throws DomainError when a strict power constraint fails.
Caps tspdf_program(double G, const TspdfAsymParams& p);
CurveValue atspdf_sym2(double x, AsymptoticOptions options = {kTspdfStarts, 7, 3000});

// ---- asymmetric diamond ----------------------------------------------------
// Inputs x and 1/x give the same value; internally G = min(x, 1/x).

double adf_asym(double x);
Caps bspdf11_program(double G, double beta, double kappa1, double kappa2);
Caps bafdf_program(double G, double beta, double kappa);
Caps bspdf12_program(double G, double beta, double kappa);

CurveValue abaf_asym(double x, const AsymptoticOptions& options = {});
CurveValue abspdf_asym11(double x, const AsymptoticOptions& options = {});
CurveValue abafdf(double x, const AsymptoticOptions& options = {});
CurveValue abspdf_asym12(double x, const AsymptoticOptions& options = {});

// ---- timesharing -----------------------------------------------------------

/// Upper envelope of timesharing two symmetric-family schemes.
///
/// Giving scheme A a fraction a of the source power and b of the relay power
/// (time fraction cancels at leading order) yields
///   a * curve_a(x b / a) + (1 - a) * curve_b(x (1 - b) / (1 - a)).
/// With u = x b / a and v = x (1 - b) / (1 - a) this is the chord a c_A(u) +
/// (1 - a) c_B(v) with a u + (1 - a) v = x, so the envelope is the best chord
/// between the two graphs straddling x, or a pure value.
///
/// Curve values on a log grid are cached at construction; each query scans the
/// chords on that grid and polishes the best one with exact evaluations.
class TimeshareEnvelope {
public:
    using Curve = std::function<double(double)>;

    TimeshareEnvelope(Curve curve_a, Curve curve_b, double x_lo = 1e-4, double x_hi = 1e4, int grid = 401);

    CurveValue operator()(double x) const;

private:
    Curve a_;
    Curve b_;
    double x_lo_, x_hi_;
    std::vector<double> xs_, ya_, yb_;
};

}  // namespace relaylab::asym
