#pragma once

#include <optional>
#include <vector>

#include "gevreyns/norms.hpp"

namespace gevreyns {

// Time-stamped sequence of states starting at t = 0.
struct Trajectory {
    std::vector<double> times;
    std::vector<VectorField> states;
    GevreyParams params;
    bool failed = false;  // truncated on NaN/overflow

    size_t size() const { return times.size(); }
};

struct SmallnessCertificate {
    double T = 0.0;
    double K = 0.0;       // configured constant in the bilinear bound
    double c0 = 0.0;      // K (nu^{-3/4} T^{1/4} + nu^{-1/4} T^{3/4}) sqrt(2(e^{2a}+1))
    double y_norm = 0.0;  // sup_[0,T] of the heat trajectory = ||u0||_{H^1_{a,sigma}}
    double product = 0.0; // 4 c0 ||y||
    bool holds = false;   // product < 1
};

struct PicardTrace {
    std::vector<double> iterate_norms;  // sup over nodes, H^1_{a,sigma}
    std::vector<double> deltas;         // successive-difference sup norms
    bool converged = false;
    SmallnessCertificate certificate;
};

// Default constant for the smallness certificate: the empirically measured
// bilinear-bound constant from the smoothing sweep, times a safety factor 2.
inline constexpr double kDefaultBilinearK = 0.5;

// B(u,v)(t) = -int_0^t e^{nu (t-tau) Delta} P div(u (x) v) dtau with the
// integrand piecewise linear in tau between trajectory nodes and the
// exponential kernel integrated exactly per interval.
VectorField duhamel_bilinear(const FrequencyGrid& g, const Trajectory& u, const Trajectory& v,
                             double t);

SmallnessCertificate smallness_certificate(const FrequencyGrid& g, const VectorField& u0,
                                           double T, const GevreyParams& p,
                                           double K = kDefaultBilinearK);

// Picard iteration on uniform nodes over [0,T]. Non-convergence is reported
// in the trace, not thrown.
std::pair<Trajectory, PicardTrace> picard_solve(const FrequencyGrid& g, const VectorField& u0,
                                                double T, const GevreyParams& p, int nodes = 33,
                                                double tol = 1e-12, int max_iter = 100,
                                                double K = kDefaultBilinearK);

// Integrating-factor RK4 in v = e^{nu t |xi|^2} uhat; exact on linear flow.
// store_stride > 1 keeps every k-th step (plus the final one).
Trajectory timestep_integrate(const FrequencyGrid& g, const VectorField& u0, double T, double dt,
                              const GevreyParams& p, int store_stride = 1);

enum class ContinueStatus { BudgetReached, ThresholdReached, UncertifiedContinuation };

struct ContinueOptions {
    double time_budget = 1.0;
    std::optional<double> norm_threshold;  // stop when H^1_{a,sigma} drops below
    double initial_window = 0.5;
    double window_floor = 1e-6;
    int nodes = 33;
    double tol = 1e-12;
    double K = kDefaultBilinearK;
};

struct ContinueResult {
    Trajectory traj;
    ContinueStatus status = ContinueStatus::BudgetReached;
    std::vector<SmallnessCertificate> window_certificates;
    std::vector<PicardTrace> window_traces;
};

// Solve on certified windows, restart from each endpoint, repeat.
ContinueResult continue_until(const FrequencyGrid& g, const VectorField& u0,
                              const GevreyParams& p, const ContinueOptions& opt);

}  // namespace gevreyns
