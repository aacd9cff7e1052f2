#include "relaylab/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "relaylab/errors.hpp"

namespace relaylab::opt {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::array<int, 16> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
constexpr double kFlagTol = 1e-7;  // unit-cube distance counted as "on the face"

double radical_inverse(std::uint64_t index, int base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

// Maps between the shrunk unit cube and the user box.
class Box {
public:
    explicit Box(const SearchSpec& spec) : dims_(spec.dims), lo_(spec.margin), hi_(1.0 - spec.margin) {
        if (dims_.empty()) throw DomainError("search space has no dimensions");
        if (!(spec.margin >= 0.0 && spec.margin < 0.5)) throw DomainError("margin must lie in [0, 0.5)");
        for (const Dim& d : dims_) {
            if (!(d.lower < d.upper) || !std::isfinite(d.lower) || !std::isfinite(d.upper)) {
                throw DomainError("every search dimension needs finite lower < upper");
            }
            if (d.scale == Scale::log && !(d.lower > 0.0)) throw DomainError("log-scaled dimension needs lower > 0");
        }
    }

    std::size_t size() const { return dims_.size(); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    void clamp(std::vector<double>& u) const {
        for (double& v : u) v = std::clamp(v, lo_, hi_);
    }

    std::vector<double> to_user(const std::vector<double>& u) const {
        std::vector<double> x(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            const Dim& d = dims_[i];
            if (d.scale == Scale::log) {
                const double a = std::log(d.lower), b = std::log(d.upper);
                x[i] = std::exp(a + u[i] * (b - a));
            } else {
                x[i] = d.lower + u[i] * (d.upper - d.lower);
            }
            x[i] = std::clamp(x[i], d.lower, d.upper);
        }
        return x;
    }

    std::vector<double> to_unit(std::span<const double> x) const {
        std::vector<double> u(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const Dim& d = dims_[i];
            const double xi = std::clamp(x[i], d.lower, d.upper);
            if (d.scale == Scale::log) {
                const double a = std::log(d.lower), b = std::log(d.upper);
                u[i] = (std::log(xi) - a) / (b - a);
            } else {
                u[i] = (xi - d.lower) / (d.upper - d.lower);
            }
        }
        clamp(u);
        return u;
    }

private:
    std::vector<Dim> dims_;
    double lo_;
    double hi_;
};

struct Vertex {
    std::vector<double> u;
    double f;
};

bool better(double fa, const std::vector<double>& a, double fb, const std::vector<double>& b) {
    if (fa != fb) return fa > fb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

class LocalSearch {
public:
    LocalSearch(const Objective& objective, const Box& box, const SearchSpec& spec)
        : objective_(objective), box_(box), spec_(spec) {}

    double eval(std::vector<double>& u) {
        box_.clamp(u);
        ++evals_;
        const std::vector<double> x = box_.to_user(u);
        const double f = objective_(x);
        return std::isnan(f) ? kNegInf : f;
    }

    // Nelder-Mead from u0 with restarts until a restart stops improving.
    Vertex run(std::vector<double> u0, double f0) {
        Vertex best{u0, f0};
        double step = 0.1;
        for (int restart = 0; restart < 4; ++restart) {
            Vertex v = simplex(best.u, best.f, step);
            const bool improved = v.f > best.f + spec_.tol * (1.0 + std::abs(best.f));
            if (better(v.f, v.u, best.f, best.u)) best = v;
            if (!improved || evals_ >= spec_.max_evals) break;
            step = 0.02;
        }
        return best;
    }

    long evals() const { return evals_; }
    void reset_evals() { evals_ = 0; }

private:
    Vertex simplex(const std::vector<double>& u0, double f0, double step) {
        const std::size_t n = box_.size();
        std::vector<Vertex> s;
        s.push_back({u0, f0});
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> u = u0;
            // Step inward when close to the upper face.
            u[i] += (u[i] + step <= box_.hi()) ? step : -step;
            const double f = eval(u);
            s.push_back({u, f});
        }

        const long budget = evals_ + spec_.max_evals;
        const auto order = [&] {
            std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) {
                return better(a.f, a.u, b.f, b.u);
            });
        };
        order();
        while (evals_ < budget) {
            const double fbest = s.front().f;
            const double fworst = s.back().f;
            double diam = 0.0;
            for (std::size_t k = 1; k <= n; ++k) {
                for (std::size_t i = 0; i < n; ++i) diam = std::max(diam, std::abs(s[k].u[i] - s[0].u[i]));
            }
            if (std::isfinite(fworst) && fbest - fworst <= spec_.tol * (1.0 + std::abs(fbest)) && diam < 1e-9) break;
            if (diam < 1e-13) break;

            std::vector<double> centroid(n, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t i = 0; i < n; ++i) centroid[i] += s[k].u[i] / static_cast<double>(n);
            }
            const auto along = [&](double t) {
                std::vector<double> u(n);
                for (std::size_t i = 0; i < n; ++i) u[i] = centroid[i] + t * (s[n].u[i] - centroid[i]);
                return u;
            };

            std::vector<double> ur = along(-1.0);
            const double fr = eval(ur);
            if (fr > s[0].f) {
                std::vector<double> ue = along(-2.0);
                const double fe = eval(ue);
                s[n] = fe > fr ? Vertex{ue, fe} : Vertex{ur, fr};
            } else if (fr > s[n - 1].f) {
                s[n] = {ur, fr};
            } else {
                const bool outside = fr > s[n].f;
                std::vector<double> uc = along(outside ? -0.5 : 0.5);
                const double fc = eval(uc);
                if (outside ? (fc >= fr) : (fc > s[n].f)) {
                    s[n] = {uc, fc};
                } else {
                    for (std::size_t k = 1; k <= n; ++k) {
                        for (std::size_t i = 0; i < n; ++i) s[k].u[i] = s[0].u[i] + 0.5 * (s[k].u[i] - s[0].u[i]);
                        s[k].f = eval(s[k].u);
                    }
                }
            }
            order();
        }
        return s.front();
    }

    const Objective& objective_;
    const Box& box_;
    const SearchSpec& spec_;
    long evals_ = 0;
};

}  // namespace

bool OptResult::on_boundary() const {
    return std::any_of(boundary_flags.begin(), boundary_flags.end(), [](int f) { return f != 0; });
}

OptResult maximize(const Objective& objective, const SearchSpec& spec) {
    const Box box(spec);
    if (spec.starts < 1 && spec.warm_starts.empty()) throw DomainError("at least one start is required");
    if (box.size() > kPrimes.size()) throw DomainError("too many search dimensions");

    std::mt19937_64 rng(spec.seed);
    std::vector<double> shift(box.size());
    for (double& s : shift) s = static_cast<double>(rng() >> 11) * 0x1.0p-53;

    std::vector<std::vector<double>> starts;
    for (const auto& w : spec.warm_starts) {
        if (w.size() != box.size()) throw DomainError("warm start has the wrong dimension");
        starts.push_back(box.to_unit(w));
    }
    for (int k = 0; k < spec.starts; ++k) {
        std::vector<double> u(box.size());
        for (std::size_t i = 0; i < box.size(); ++i) {
            const double h = radical_inverse(static_cast<std::uint64_t>(k) + 1, kPrimes[i]) + shift[i];
            u[i] = box.lo() + (h - std::floor(h)) * (box.hi() - box.lo());
        }
        starts.push_back(std::move(u));
    }

    LocalSearch search(objective, box, spec);
    Vertex best{{}, kNegInf};
    long total = 0;
    for (auto& u : starts) {
        search.reset_evals();
        const double f0 = search.eval(u);
        Vertex v{u, f0};
        if (std::isfinite(f0)) v = search.run(u, f0);
        total += search.evals();
        if (best.u.empty() || better(v.f, v.u, best.f, best.u)) best = v;
    }
    if (!std::isfinite(best.f)) throw InfeasibleError("no feasible point found by any start");

    OptResult out;
    out.value = best.f;
    out.argmax = box.to_user(best.u);
    out.evals = total;
    out.boundary_flags.resize(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (best.u[i] - box.lo() <= kFlagTol) out.boundary_flags[i] = -1;
        else if (box.hi() - best.u[i] <= kFlagTol) out.boundary_flags[i] = 1;
    }
    return out;
}

double golden_max(const std::function<double(double)>& f, double a, double b, double xtol, double* value) {
    constexpr double kInvPhi = 0.6180339887498948482;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (std::abs(b - a) > xtol * (1.0 + std::abs(a) + std::abs(b)) * 0.5) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    const double x = fc >= fd ? c : d;
    if (value) *value = std::max(fc, fd);
    return x;
}

double grid_golden_max(const std::function<double(double)>& f, double a, double b, int grid, bool log_scale,
                       double xtol, double* value) {
    if (grid < 3) throw DomainError("grid needs at least 3 points");
    if (log_scale && !(a > 0.0)) throw DomainError("log grid needs a > 0");
    const double ta = log_scale ? std::log(a) : a;
    const double tb = log_scale ? std::log(b) : b;
    const auto g = [&](double t) {
        const double v = f(log_scale ? std::exp(t) : t);
        return std::isnan(v) ? kNegInf : v;
    };

    std::vector<double> vals(grid);
    int k = 0;
    for (int i = 0; i < grid; ++i) {
        vals[i] = g(ta + (tb - ta) * i / (grid - 1));
        if (vals[i] > vals[k]) k = i;
    }
    const double lo = ta + (tb - ta) * std::max(0, k - 1) / (grid - 1);
    const double hi = ta + (tb - ta) * std::min(grid - 1, k + 1) / (grid - 1);
    double fr = kNegInf;
    double tr = golden_max(g, lo, hi, xtol, &fr);
    if (!(fr >= vals[k])) {
        tr = ta + (tb - ta) * k / (grid - 1);
        fr = vals[k];
    }
    if (value) *value = fr;
    return log_scale ? std::exp(tr) : tr;
}

}  // namespace relaylab::opt
