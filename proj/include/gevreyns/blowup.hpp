#pragma once

#include <optional>
#include <vector>

#include "gevreyns/inequalities.hpp"
#include "gevreyns/mild.hpp"

namespace gevreyns {

// Gronwall constant for the trajectory monitor: 2 * 32^2 from the product-law
// factor and the ab <= a^2/2 + b^2/2 step. Recorded in output.
inline constexpr double kGronwallC = 4096.0;

struct EnergyLedger {
    std::vector<double> times;
    std::vector<double> residuals;  // relative to ||u0||_{L2}^2
    double max_relative = 0.0;
};

// ||u(t)||^2_{L2} + 2 nu int_0^t ||grad u||^2_{L2} - ||u0||^2_{L2}, trapezoid
// in time on the trajectory nodes.
EnergyLedger energy_ledger(const FrequencyGrid& g, const Trajectory& traj);

struct HorizonReport {
    double t = 0.0;
    double l1_weighted = 0.0;  // radius a/sigma
    double l1_plain = 0.0;
    double horizon_weighted = 0.0;  // nu / (2 l1_weighted^2), inf for zero field
    double horizon_plain = 0.0;
};

HorizonReport horizon(const FrequencyGrid& g, const VectorField& u, const GevreyParams& p,
                      double t = 0.0);

struct HorizonConsistency {
    bool horizons_consistent = false;  // solution exists on [t, t + horizon(t)] in-window
    bool gronwall_pass = false;
    double gronwall_max_ratio = 0.0;
    double gronwall_c = kGronwallC;
    std::vector<HorizonReport> series;
};

HorizonConsistency horizon_consistency(const FrequencyGrid& g, const Trajectory& traj,
                                       double gronwall_c = kGronwallC);

// ---- explicit constants ---------------------------------------------------

struct CasigmaResult {
    double b = 0.0;            // 2a (1/sqrt(sigma) - 1/sigma)
    double quadrature = 0.0;   // adaptive quadrature of 4 pi int_0^inf e^{-b r^{1/sigma}} dr
    double closed_derived = 0.0;  // 4 pi sigma b^{-sigma} Gamma(sigma)
    double closed_variant = 0.0;  // 4 pi sigma b^{sigma-2} Gamma(sigma)
    bool matches_derived = false;  // within 1e-6 relative
    bool matches_variant = false;
};

// requires sigma > 1 (b -> 0 diverges); returns c^2_{a,sigma} candidates
CasigmaResult c_a_sigma(double a, double sigma);

// h(z) = (e^z - sum_{k<=2sigma0} z^k/k!) / (z^{2sigma0+1} e^{z/2}), z > 0.
// Series branch avoids the small-z cancellation.
double h_function(double z, int sigma0_twice);

// positive infimum of h over z > 0 (grid bracket + golden section)
double infimum_B(int sigma0_twice);

struct EnvelopeParams {
    int sigma0_twice = 0;  // integer part of 2 sigma
    double C1 = 0.0;
    double C2 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;  // = C2
    double B = 0.0;
    double M2 = 0.0;
};

// requires sigma > 1
EnvelopeParams envelope_constants(double u0_l2, const GevreyParams& p);

// c1 (T*-t)^{-(2sigma0+1)/(3sigma)-1/3} exp[a c2 (T*-t)^{-1/(3sigma)}]
double envelope(double t, double Tstar, const EnvelopeParams& ep, const GevreyParams& p);

// the k-indexed chain bound C1 (T*-t)^{-2/3} (C2 (T*-t)^{-1/(3sigma)})^k,
// a lower bound for ||u(t)||^2_{Hdot^{1+k/(2sigma)}}
double intermediate_bound(int k, double t, double Tstar, const EnvelopeParams& ep,
                          const GevreyParams& p);

struct ProfileFit {
    bool ok = false;
    double Tstar = 0.0;
    double scale = 0.0;
    double residual = 0.0;  // rms of log residuals
};

// Diagnostic-only least-squares fit of log values against the log envelope
// with unknown (Tstar, scale). Returns no-fit for non-growing series.
ProfileFit fit_profile(const std::vector<double>& times, const std::vector<double>& values,
                       const EnvelopeParams& ep, const GevreyParams& p,
                       double search_range = 10.0);
ProfileFit fit_profile(const FrequencyGrid& g, const Trajectory& traj, const EnvelopeParams& ep);

}  // namespace gevreyns
