#pragma once

#include <string>
#include <vector>

#include "gevreyns/mild.hpp"
#include "gevreyns/norms.hpp"

namespace gevreyns {

inline constexpr double kRatioTol = 1e-9;  // pass iff ratio <= 1 + kRatioTol

struct InequalityVerdict {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // lhs / rhs, 0 when lhs == 0
    bool pass = false;
    std::string witness;  // seeds / parameters for replay

    static InequalityVerdict make(std::string name, double lhs, double rhs, std::string witness);
};

enum class ProductForm { Symmetric, Asymmetric };

// Product law ||fg||_{Hdot^{s+t-3/2}} <= C (||f||_{Hdot^s}||g||_{Hdot^t} + sym).
// The constant is not given; the verdict carries the raw ratio with C = 1.
InequalityVerdict check_product_sobolev(const FrequencyGrid& g, const ScalarField& f,
                                        const ScalarField& h, double s, double t,
                                        ProductForm form, const std::string& witness = "");

// C_delta = 2 sqrt(pi/3) ((2d/3-1)^{3/(4d)} + (2d/3-1)^{-1+3/(4d)}), delta > 3/2
double cdelta(double delta);

// ||fhat||_{L1} <= C_delta ||f||_{L2}^{1-3/(2d)} ||f||_{Hdot^delta}^{3/(2d)},
// mean-free f required.
InequalityVerdict check_l1_interpolation(const FrequencyGrid& g, const ScalarField& f,
                                         double delta, const std::string& witness = "");

struct MBoundResult {
    double M = 0.0;  // sup of C_delta over [delta0, inf)
    double c_infinity = 0.0;  // large-delta limit 4 sqrt(pi/3)... evaluated numerically
    InequalityVerdict verdict;
};
// M(delta0) as the sup of cdelta over a refining grid plus the tail limit;
// verdict passes iff every sampled C_delta (including the given list) <= M.
MBoundResult check_m_bound(double delta0, const std::vector<double>& deltas = {});

// Gevrey product law with factor 16; LHS product by convolve_oracle unless
// use_transform_product (required for N > 16).
InequalityVerdict check_gevrey_product(const FrequencyGrid& g, const ScalarField& f,
                                       const ScalarField& h, const GevreyParams& p,
                                       bool use_transform_product = false,
                                       const std::string& witness = "");

// |xi|^{1/s} <= max(|xi-eta|,|eta|)^{1/s} + (1/s) min(|xi-eta|,|eta|)^{1/s}
InequalityVerdict check_triangle_gevrey(const Eigen::Vector3d& xi, const Eigen::Vector3d& eta,
                                        double sigma, const std::string& witness = "");

// (1+b)^theta <= 1 + theta b^theta on [0,1]^2 (0 * b^0 read as 0)
InequalityVerdict check_elementary(double b, double theta, const std::string& witness = "");

struct EmbeddingConstant {
    int k0 = 0;
    double c_chain = 0.0;    // full chain:   sqrt(2 (2a+1) (k0+1)! / (2a)^{k0+1})
    double c_variant = 0.0;  // shorter form: sqrt(2 (k0+1)! / (2a)^{k0})
};
EmbeddingConstant embedding_constant(double s, const GevreyParams& p);

// ||f||_{Hdot^s} <= c ||f||_{Hdot^1_{a,sigma}} with the chain constant
InequalityVerdict check_embedding(const FrequencyGrid& g, const ScalarField& f, double s,
                                  const GevreyParams& p, const std::string& witness = "");

// ||fg||_{L2} <= C (||f||_{Hdot^1_{a,sigma}}||g||_{L2} + sym); C unnamed in
// the source, verdict ratio uses C = 1 and the sweep tracks the empirical sup.
InequalityVerdict check_l2_product(const FrequencyGrid& g, const ScalarField& f,
                                   const ScalarField& h, const GevreyParams& p,
                                   const std::string& witness = "");

// both sides of ||f||^2_{H1_{a,s}} <= 2(e^{2a}+1)(||f||^2_{L2}+||f||^2_{H1dot_{a,s}})
//                                   <= 4(e^{2a}+1)||f||^2_{H1_{a,s}}
std::pair<InequalityVerdict, InequalityVerdict> check_norm_equivalence(
    const FrequencyGrid& g, const ScalarField& f, const GevreyParams& p,
    const std::string& witness = "");

// smoothing bounds for constant-in-time trajectories u(tau) = u, v(tau) = v:
// ratios of ||B(u,v)(T)|| against nu^{-3/4}T^{1/4} (H1dot Gevrey) and
// nu^{-1/4}T^{3/4} (L2) scalings with c = 1
std::pair<InequalityVerdict, InequalityVerdict> check_bilinear_smoothing(
    const FrequencyGrid& g, const VectorField& u, const VectorField& v, const GevreyParams& p,
    double T, int nodes, const std::string& witness = "");

// ---- sweep driver ---------------------------------------------------------

struct SweepSummary {
    std::string name;
    int trials = 0;
    double max_ratio = 0.0;
    bool pass = false;
    std::string worst_witness;
    std::vector<InequalityVerdict> failures;
};

std::string sweep_summary_csv_header();
std::string sweep_summary_csv_row(const SweepSummary& s);
std::string verdict_json(const InequalityVerdict& v);

struct SweepConfig {
    int N = 8;
    int trials = 1000;
    uint64_t seed = 7;
    double c_cap_product = 64.0;   // cap for the product_sobolev empirical constant
    double c_cap_l2 = 64.0;        // cap for the l2_product empirical constant
};

// Runs every inequality suite; names: product_sobolev, l1_interpolation, m_bound,
// gevrey_product, triangle_gevrey, elementary, embedding, l2_product,
// norm_equivalence, bilinear_smoothing_h1 / _l2.
std::vector<SweepSummary> run_inequality_suites(const SweepConfig& cfg);

}  // namespace gevreyns
