#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <string>

#include "gevreyns/grid.hpp"

namespace gevreyns {

using Complex = std::complex<double>;

// Scalar field as Fourier coefficients on a FrequencyGrid,
// u(x) = sum_xi uhat(xi) e^{i xi.x}.
using ScalarField = ArrayXcd;

// Velocity-like field: one coefficient array per component.
struct VectorField {
    std::array<ScalarField, 3> c;

    ScalarField& operator[](int i) { return c[size_t(i)]; }
    const ScalarField& operator[](int i) const { return c[size_t(i)]; }
};

VectorField zero_vector_field(const FrequencyGrid& g);

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);

// ---- transforms -----------------------------------------------------------

// spectral -> physical samples on the N^3 collocation grid (no scaling)
ScalarField to_physical(const FrequencyGrid& g, const ScalarField& f);
// physical samples -> spectral coefficients (1/N^3 scaling)
ScalarField to_spectral(const FrequencyGrid& g, const ScalarField& f);

// ---- differential operators ----------------------------------------------

VectorField gradient(const FrequencyGrid& g, const ScalarField& f);
ScalarField divergence(const FrequencyGrid& g, const VectorField& f);
ScalarField laplacian(const FrequencyGrid& g, const ScalarField& f);
VectorField laplacian(const FrequencyGrid& g, const VectorField& f);

// ---- core operators -------------------------------------------------------

// P f = f - (f.xi) xi / |xi|^2 per mode; annihilates the mean mode.
VectorField leray_project(const FrequencyGrid& g, const VectorField& f);

// multiplies each coefficient by e^{-nu t |xi|^2}; t >= 0 required
ScalarField heat_propagate(const FrequencyGrid& g, const ScalarField& f, double nu, double t);
VectorField heat_propagate(const FrequencyGrid& g, const VectorField& f, double nu, double t);

// P div(u (x) u) with 2/3 dealiasing; u must be divergence-free and dealiased.
// Throws std::runtime_error on non-finite products.
VectorField nonlinear_term(const FrequencyGrid& g, const VectorField& u);

// Direct lattice convolution hhat(xi) = sum_eta fhat(xi-eta) ghat(eta),
// out-of-range xi-eta treated as zero. O(N^6); intended for N <= 16.
ScalarField convolve_oracle(const FrequencyGrid& g, const ScalarField& f, const ScalarField& g2);

// Transform-based product f*g in physical space, dealiased.
ScalarField spectral_product(const FrequencyGrid& g, const ScalarField& f, const ScalarField& h);

ScalarField apply_dealias(const FrequencyGrid& g, const ScalarField& f);
VectorField apply_dealias(const FrequencyGrid& g, const VectorField& f);

// ---- generators and invariant helpers -------------------------------------

// Hermitian-symmetrized complex-Gaussian draw with |xi|^slope envelope on
// kmin <= |xi| <= kmax, Leray-projected and mean-free. Deterministic per seed.
VectorField random_divergence_free_field(const FrequencyGrid& g, double spectrum_slope,
                                         double kmin, double kmax, uint64_t seed);

// Mean-free Hermitian scalar field, same spectral envelope, for inequality sweeps.
ScalarField random_scalar_field(const FrequencyGrid& g, double spectrum_slope,
                                double kmin, double kmax, uint64_t seed);

// max over modes of |uhat(-xi) - conj(uhat(xi))| relative to max |uhat|
double hermitian_error(const FrequencyGrid& g, const ScalarField& f);
double hermitian_error(const FrequencyGrid& g, const VectorField& f);

// max over modes of |xi.uhat| / (|xi| |uhat|)
double divergence_error(const FrequencyGrid& g, const VectorField& f);

// ---- snapshot I/O ---------------------------------------------------------
// Row format (xi1, xi2, xi3, component, Re, Im). Binary mode round-trips
// losslessly; text mode is for inspection.

void write_field_binary(std::ostream& os, const FrequencyGrid& g, const VectorField& f);
VectorField read_field_binary(std::istream& is, const FrequencyGrid& g);
void write_field_text(std::ostream& os, const FrequencyGrid& g, const VectorField& f);

// Taylor-Green datum (sin x1 cos x2, -cos x1 sin x2, 0)
VectorField taylor_green(const FrequencyGrid& g);
// u3 = 2 cos x1, a divergence-free datum with vanishing nonlinearity
VectorField single_mode(const FrequencyGrid& g);

}  // namespace gevreyns
