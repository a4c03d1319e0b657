#pragma once

#include <string>

#include "gevreyns/field.hpp"

namespace gevreyns {

// Parameters of the Gevrey-weighted scale of spaces.
struct GevreyParams {
    double a = 1.0;      // Gevrey radius, > 0
    double sigma = 2.0;  // Gevrey index, >= 1
    double s = 1.0;      // Sobolev exponent
    double nu = 1.0;     // viscosity, > 0

    void validate() const;  // throws std::invalid_argument
};

// e^{a |xi|^{1/sigma}}
double gevrey_weight(double kabs, double a, double sigma);

enum class NormKind {
    L2,          // sum |uhat|^2
    H1Dot,       // sum |xi|^2 |uhat|^2, xi != 0
    HsDot,       // sum |xi|^{2s} |uhat|^2, xi != 0
    Hs,          // sum (1+|xi|^2)^s |uhat|^2
    H1GevreyDot, // sum |xi|^2 e^{2a|xi|^{1/sigma}} |uhat|^2, xi != 0
    H1Gevrey,    // sum (1+|xi|^2) e^{2a|xi|^{1/sigma}} |uhat|^2
    GradL2,      // = H1Dot
};

double norm(const FrequencyGrid& g, const ScalarField& f, NormKind kind, const GevreyParams& p);
double norm(const FrequencyGrid& g, const VectorField& f, NormKind kind, const GevreyParams& p);

// sum_xi e^{radius |xi|^{1/sigma}} |fhat(xi)| (vector fields: Euclidean
// magnitude of the coefficient triple)
double fourier_l1_weighted(const FrequencyGrid& g, const ScalarField& f, double radius,
                           double sigma);
double fourier_l1_weighted(const FrequencyGrid& g, const VectorField& f, double radius,
                           double sigma);

double inner_product(const FrequencyGrid& g, const ScalarField& f, const ScalarField& h,
                     NormKind kind, const GevreyParams& p);
double inner_product(const FrequencyGrid& g, const VectorField& f, const VectorField& h,
                     NormKind kind, const GevreyParams& p);

// All norms of one field under one parameter set.
struct NormReport {
    double l2 = 0.0;
    double h1_dot = 0.0;
    double hs_dot = 0.0;
    double h1_gevrey_dot = 0.0;
    double h1_gevrey = 0.0;
    double fourier_l1_weighted = 0.0;  // radius a/sigma
    double fourier_l1 = 0.0;           // radius 0
    double grad_l2 = 0.0;
};

NormReport make_norm_report(const FrequencyGrid& g, const VectorField& f, const GevreyParams& p);

std::string norm_report_json(const NormReport& r);
std::string norm_report_csv_header();      // snake_case columns, no time column
std::string norm_report_csv_row(const NormReport& r);

}  // namespace gevreyns
