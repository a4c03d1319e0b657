#include "gevreyns/field.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

namespace gevreyns {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// in-place radix-2 Cooley-Tukey, sign = -1 forward / +1 inverse, no scaling
void fft_pow2(std::vector<Complex>& a, int sign) {
    const int n = int(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[size_t(i)], a[size_t(j)]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / len;
        const Complex wl(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                Complex u = a[size_t(i + k)];
                Complex v = a[size_t(i + k + len / 2)] * w;
                a[size_t(i + k)] = u + v;
                a[size_t(i + k + len / 2)] = u - v;
                w *= wl;
            }
        }
    }
}

// O(n^2) fallback for even non-power-of-two N
void dft_naive(std::vector<Complex>& a, int sign) {
    const int n = int(a.size());
    std::vector<Complex> out(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        Complex s(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * std::numbers::pi * double(k) * double(j) / n;
            s += a[size_t(j)] * Complex(std::cos(ang), std::sin(ang));
        }
        out[size_t(k)] = s;
    }
    a = std::move(out);
}

void fft_line(std::vector<Complex>& a, int sign) {
    if (is_pow2(int(a.size())))
        fft_pow2(a, sign);
    else
        dft_naive(a, sign);
}

// apply 1D transform along every axis of the flat N^3 array
void transform3d(const FrequencyGrid& g, ScalarField& f, int sign) {
    const int N = g.N;
    std::vector<Complex> line(static_cast<size_t>(N));
    // axis 2 (stride 1)
    for (Eigen::Index base = 0; base < g.size(); base += N) {
        for (int k = 0; k < N; ++k) line[size_t(k)] = f[base + k];
        fft_line(line, sign);
        for (int k = 0; k < N; ++k) f[base + k] = line[size_t(k)];
    }
    // axis 1 (stride N)
    for (int i = 0; i < N; ++i) {
        for (int k = 0; k < N; ++k) {
            const Eigen::Index base = g.flat(i, 0, k);
            for (int j = 0; j < N; ++j) line[size_t(j)] = f[base + Eigen::Index(j) * N];
            fft_line(line, sign);
            for (int j = 0; j < N; ++j) f[base + Eigen::Index(j) * N] = line[size_t(j)];
        }
    }
    // axis 0 (stride N^2)
    const Eigen::Index NN = Eigen::Index(N) * N;
    for (Eigen::Index base = 0; base < NN; ++base) {
        for (int i = 0; i < N; ++i) line[size_t(i)] = f[base + Eigen::Index(i) * NN];
        fft_line(line, sign);
        for (int i = 0; i < N; ++i) f[base + Eigen::Index(i) * NN] = line[size_t(i)];
    }
}

void check_size(const FrequencyGrid& g, const ScalarField& f, const char* who) {
    if (f.size() != g.size()) throw std::invalid_argument(std::string(who) + ": field/grid size mismatch");
}

}  // namespace

VectorField zero_vector_field(const FrequencyGrid& g) {
    VectorField v;
    for (int i = 0; i < 3; ++i) v[i] = ScalarField::Zero(g.size());
    return v;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField r;
    for (int i = 0; i < 3; ++i) r[i] = a[i] + b[i];
    return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField r;
    for (int i = 0; i < 3; ++i) r[i] = a[i] - b[i];
    return r;
}

VectorField operator*(double s, const VectorField& a) {
    VectorField r;
    for (int i = 0; i < 3; ++i) r[i] = s * a[i];
    return r;
}

ScalarField to_physical(const FrequencyGrid& g, const ScalarField& f) {
    check_size(g, f, "to_physical");
    ScalarField out = f;
    transform3d(g, out, +1);
    return out;
}

ScalarField to_spectral(const FrequencyGrid& g, const ScalarField& f) {
    check_size(g, f, "to_spectral");
    ScalarField out = f;
    transform3d(g, out, -1);
    out /= double(g.size());
    return out;
}

VectorField gradient(const FrequencyGrid& g, const ScalarField& f) {
    check_size(g, f, "gradient");
    const Complex I(0.0, 1.0);
    VectorField r;
    r[0] = I * g.k1.cast<Complex>() * f;
    r[1] = I * g.k2.cast<Complex>() * f;
    r[2] = I * g.k3.cast<Complex>() * f;
    return r;
}

ScalarField divergence(const FrequencyGrid& g, const VectorField& f) {
    const Complex I(0.0, 1.0);
    return I * (g.k1.cast<Complex>() * f[0] + g.k2.cast<Complex>() * f[1] +
                g.k3.cast<Complex>() * f[2]);
}

ScalarField laplacian(const FrequencyGrid& g, const ScalarField& f) {
    check_size(g, f, "laplacian");
    return (-g.ksq).cast<Complex>() * f;
}

VectorField laplacian(const FrequencyGrid& g, const VectorField& f) {
    VectorField r;
    for (int i = 0; i < 3; ++i) r[i] = laplacian(g, f[i]);
    return r;
}

VectorField leray_project(const FrequencyGrid& g, const VectorField& f) {
    for (int i = 0; i < 3; ++i) check_size(g, f[i], "leray_project");
    ScalarField dot = g.k1.cast<Complex>() * f[0] + g.k2.cast<Complex>() * f[1] +
                      g.k3.cast<Complex>() * f[2];
    ArrayXd inv = (g.ksq > 0.0).select(1.0 / g.ksq.max(1e-300), ArrayXd::Zero(g.size()));
    ScalarField factor = dot * inv.cast<Complex>();
    VectorField r;
    r[0] = f[0] - g.k1.cast<Complex>() * factor;
    r[1] = f[1] - g.k2.cast<Complex>() * factor;
    r[2] = f[2] - g.k3.cast<Complex>() * factor;
    // mean mode has no divergence-free content
    for (int i = 0; i < 3; ++i) r[i][0] = Complex(0.0, 0.0);
    return r;
}

ScalarField heat_propagate(const FrequencyGrid& g, const ScalarField& f, double nu, double t) {
    check_size(g, f, "heat_propagate");
    if (t < 0.0) throw std::invalid_argument("heat_propagate: t must be >= 0");
    return f * (-nu * t * g.ksq).exp().cast<Complex>();
}

VectorField heat_propagate(const FrequencyGrid& g, const VectorField& f, double nu, double t) {
    VectorField r;
    for (int i = 0; i < 3; ++i) r[i] = heat_propagate(g, f[i], nu, t);
    return r;
}

ScalarField apply_dealias(const FrequencyGrid& g, const ScalarField& f) {
    check_size(g, f, "apply_dealias");
    return g.dealias.select(f, ScalarField::Zero(g.size()));
}

VectorField apply_dealias(const FrequencyGrid& g, const VectorField& f) {
    VectorField r;
    for (int i = 0; i < 3; ++i) r[i] = apply_dealias(g, f[i]);
    return r;
}

ScalarField spectral_product(const FrequencyGrid& g, const ScalarField& f, const ScalarField& h) {
    ScalarField fp = to_physical(g, f);
    ScalarField hp = to_physical(g, h);
    ScalarField prod = fp * hp;
    return apply_dealias(g, to_spectral(g, prod));
}

VectorField nonlinear_term(const FrequencyGrid& g, const VectorField& u) {
    // physical-space components
    std::array<ScalarField, 3> up;
    for (int i = 0; i < 3; ++i) up[size_t(i)] = to_physical(g, u[i]);
    // T_ij = u_i u_j back in spectral space, symmetric
    std::array<std::array<ScalarField, 3>, 3> T;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            ScalarField prod = up[size_t(i)] * up[size_t(j)];
            if (!prod.isFinite().all())
                throw std::runtime_error("nonlinear_term: non-finite product");
            T[size_t(i)][size_t(j)] = apply_dealias(g, to_spectral(g, prod));
        }
    }
    const Complex I(0.0, 1.0);
    VectorField div;
    for (int i = 0; i < 3; ++i) {
        auto& Ti0 = T[size_t(std::min(i, 0))][size_t(std::max(i, 0))];
        auto& Ti1 = T[size_t(std::min(i, 1))][size_t(std::max(i, 1))];
        auto& Ti2 = T[size_t(std::min(i, 2))][size_t(std::max(i, 2))];
        div[i] = I * (g.k1.cast<Complex>() * Ti0 + g.k2.cast<Complex>() * Ti1 +
                      g.k3.cast<Complex>() * Ti2);
    }
    return leray_project(g, div);
}

ScalarField convolve_oracle(const FrequencyGrid& g, const ScalarField& f, const ScalarField& g2) {
    check_size(g, f, "convolve_oracle");
    check_size(g, g2, "convolve_oracle");
    const int N = g.N;
    const int lo = -N / 2, hi = N / 2 - 1;
    // gather the support of g2 once; sparse band-limited inputs dominate use
    struct Mode {
        int e1, e2, e3;
        Complex w;
    };
    std::vector<Mode> support;
    for (int e1 = lo; e1 <= hi; ++e1)
        for (int e2 = lo; e2 <= hi; ++e2)
            for (int e3 = lo; e3 <= hi; ++e3) {
                const Complex w = g2[g.flat_wave(e1, e2, e3)];
                if (w != Complex(0.0, 0.0)) support.push_back({e1, e2, e3, w});
            }
    ScalarField out = ScalarField::Zero(g.size());
    for (int x1 = lo; x1 <= hi; ++x1)
        for (int x2 = lo; x2 <= hi; ++x2)
            for (int x3 = lo; x3 <= hi; ++x3) {
                Complex s(0.0, 0.0);
                for (const Mode& m : support) {
                    const int d1 = x1 - m.e1, d2 = x2 - m.e2, d3 = x3 - m.e3;
                    if (!g.in_range(d1) || !g.in_range(d2) || !g.in_range(d3)) continue;
                    s += f[g.flat_wave(d1, d2, d3)] * m.w;
                }
                out[g.flat_wave(x1, x2, x3)] = s;
            }
    return out;
}

namespace {

ScalarField random_hermitian_scalar(const FrequencyGrid& g, double slope, double kmin,
                                    double kmax, std::mt19937_64& rng) {
    if (kmin > kmax) throw std::invalid_argument("random field: empty band");
    std::normal_distribution<double> gauss(0.0, 1.0);
    ScalarField raw = ScalarField::Zero(g.size());
    for (Eigen::Index m = 0; m < g.size(); ++m) {
        // draw in fixed lattice order for determinism
        const double re = gauss(rng), im = gauss(rng);
        const double r = g.kabs[m];
        if (r < kmin || r > kmax || !g.dealias[m]) continue;
        const double env = std::pow(r, slope);
        raw[m] = env * Complex(re, im);
    }
    // Hermitian symmetrization f(xi) <- (f(xi) + conj(f(-xi)))/2
    ScalarField out = ScalarField::Zero(g.size());
    const int N = g.N;
    for (int x1 = -N / 2; x1 < N / 2; ++x1)
        for (int x2 = -N / 2; x2 < N / 2; ++x2)
            for (int x3 = -N / 2; x3 < N / 2; ++x3) {
                if (!g.in_range(-x1) || !g.in_range(-x2) || !g.in_range(-x3)) continue;
                const Eigen::Index m = g.flat_wave(x1, x2, x3);
                const Eigen::Index mm = g.flat_wave(-x1, -x2, -x3);
                out[m] = 0.5 * (raw[m] + std::conj(raw[mm]));
            }
    out[0] = Complex(0.0, 0.0);
    return out;
}

}  // namespace

ScalarField random_scalar_field(const FrequencyGrid& g, double spectrum_slope, double kmin,
                                double kmax, uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_hermitian_scalar(g, spectrum_slope, kmin, kmax, rng);
}

VectorField random_divergence_free_field(const FrequencyGrid& g, double spectrum_slope,
                                         double kmin, double kmax, uint64_t seed) {
    std::mt19937_64 rng(seed);
    VectorField v;
    for (int i = 0; i < 3; ++i)
        v[i] = random_hermitian_scalar(g, spectrum_slope, kmin, kmax, rng);
    v = leray_project(g, v);
    for (int i = 0; i < 3; ++i) v[i][0] = Complex(0.0, 0.0);
    return v;
}

double hermitian_error(const FrequencyGrid& g, const ScalarField& f) {
    const double scale = f.abs().maxCoeff();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    const int N = g.N;
    for (int x1 = -N / 2 + 1; x1 < N / 2; ++x1)
        for (int x2 = -N / 2 + 1; x2 < N / 2; ++x2)
            for (int x3 = -N / 2 + 1; x3 < N / 2; ++x3) {
                const Complex a = f[g.flat_wave(x1, x2, x3)];
                const Complex b = f[g.flat_wave(-x1, -x2, -x3)];
                worst = std::max(worst, std::abs(b - std::conj(a)));
            }
    return worst / scale;
}

double hermitian_error(const FrequencyGrid& g, const VectorField& f) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, hermitian_error(g, f[i]));
    return worst;
}

double divergence_error(const FrequencyGrid& g, const VectorField& f) {
    double worst = 0.0;
    for (Eigen::Index m = 1; m < g.size(); ++m) {
        const Complex dot = g.k1[m] * f[0][m] + g.k2[m] * f[1][m] + g.k3[m] * f[2][m];
        const double mag = std::sqrt(std::norm(f[0][m]) + std::norm(f[1][m]) + std::norm(f[2][m]));
        if (mag == 0.0) continue;
        worst = std::max(worst, std::abs(dot) / (g.kabs[m] * mag));
    }
    return worst;
}

void write_field_binary(std::ostream& os, const FrequencyGrid& g, const VectorField& f) {
    const int N = g.N;
    os.write(reinterpret_cast<const char*>(&N), sizeof(N));
    for (int comp = 0; comp < 3; ++comp)
        for (Eigen::Index m = 0; m < g.size(); ++m) {
            const int32_t row[4] = {int32_t(g.k1[m]), int32_t(g.k2[m]), int32_t(g.k3[m]),
                                    int32_t(comp)};
            const double vals[2] = {f[comp][m].real(), f[comp][m].imag()};
            os.write(reinterpret_cast<const char*>(row), sizeof(row));
            os.write(reinterpret_cast<const char*>(vals), sizeof(vals));
        }
}

VectorField read_field_binary(std::istream& is, const FrequencyGrid& g) {
    int N = 0;
    is.read(reinterpret_cast<char*>(&N), sizeof(N));
    if (!is || N != g.N) throw std::runtime_error("read_field_binary: grid mismatch");
    VectorField f = zero_vector_field(g);
    for (Eigen::Index row = 0; row < 3 * g.size(); ++row) {
        int32_t hdr[4];
        double vals[2];
        is.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
        is.read(reinterpret_cast<char*>(vals), sizeof(vals));
        if (!is) throw std::runtime_error("read_field_binary: truncated file");
        f[hdr[3]][g.flat_wave(hdr[0], hdr[1], hdr[2])] = Complex(vals[0], vals[1]);
    }
    return f;
}

void write_field_text(std::ostream& os, const FrequencyGrid& g, const VectorField& f) {
    char buf[160];
    for (int comp = 0; comp < 3; ++comp)
        for (Eigen::Index m = 0; m < g.size(); ++m) {
            std::snprintf(buf, sizeof(buf), "%d %d %d %d %.17g %.17g\n", int(g.k1[m]),
                          int(g.k2[m]), int(g.k3[m]), comp, f[comp][m].real(),
                          f[comp][m].imag());
            os << buf;
        }
}

VectorField taylor_green(const FrequencyGrid& g) {
    // sin x1 cos x2 = (e^{i x1} - e^{-i x1})(e^{i x2} + e^{-i x2})/(4i)
    VectorField u = zero_vector_field(g);
    const Complex quarter_i(0.0, -0.25);  // 1/(4i)
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
            const Complex w1 = quarter_i * double(s1);        // u1 coeff at (s1, s2, 0)
            const Complex w2 = -quarter_i * double(s2);       // u2 = -cos x1 sin x2
            u[0][g.flat_wave(s1, s2, 0)] += w1;
            u[1][g.flat_wave(s1, s2, 0)] += w2;
        }
    return u;
}

VectorField single_mode(const FrequencyGrid& g) {
    VectorField u = zero_vector_field(g);
    u[2][g.flat_wave(1, 0, 0)] = Complex(1.0, 0.0);
    u[2][g.flat_wave(-1, 0, 0)] = Complex(1.0, 0.0);
    return u;
}

}  // namespace gevreyns
