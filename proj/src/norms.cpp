#include "gevreyns/norms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gevreyns {

void GevreyParams::validate() const {
    if (a <= 0.0) throw std::invalid_argument("GevreyParams: a must be > 0");
    if (sigma < 1.0) throw std::invalid_argument("GevreyParams: sigma must be >= 1");
    if (nu <= 0.0) throw std::invalid_argument("GevreyParams: nu must be > 0");
}

double gevrey_weight(double kabs, double a, double sigma) {
    if (kabs == 0.0) return 1.0;
    return std::exp(a * std::pow(kabs, 1.0 / sigma));
}

namespace {

// squared-norm weight per mode; homogeneous kinds return 0 at xi = 0
ArrayXd norm_weights(const FrequencyGrid& g, NormKind kind, const GevreyParams& p) {
    switch (kind) {
        case NormKind::L2:
            return ArrayXd::Ones(g.size());
        case NormKind::H1Dot:
        case NormKind::GradL2:
            return g.ksq;
        case NormKind::HsDot:
            return (g.ksq > 0.0).select(g.kabs.pow(2.0 * p.s), ArrayXd::Zero(g.size()));
        case NormKind::Hs:
            return (1.0 + g.ksq).pow(p.s);
        case NormKind::H1GevreyDot:
            return g.ksq * (2.0 * p.a * g.kabs.pow(1.0 / p.sigma)).exp();
        case NormKind::H1Gevrey:
            return (1.0 + g.ksq) * (2.0 * p.a * g.kabs.pow(1.0 / p.sigma)).exp();
    }
    throw std::invalid_argument("norm: unknown kind");
}

}  // namespace

double norm(const FrequencyGrid& g, const ScalarField& f, NormKind kind, const GevreyParams& p) {
    return std::sqrt((norm_weights(g, kind, p) * f.abs2()).sum());
}

double norm(const FrequencyGrid& g, const VectorField& f, NormKind kind, const GevreyParams& p) {
    const ArrayXd w = norm_weights(g, kind, p);
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += (w * f[i].abs2()).sum();
    return std::sqrt(s);
}

double fourier_l1_weighted(const FrequencyGrid& g, const ScalarField& f, double radius,
                           double sigma) {
    if (radius < 0.0) throw std::invalid_argument("fourier_l1_weighted: radius must be >= 0");
    const ArrayXd w = (radius * g.kabs.pow(1.0 / sigma)).exp();
    return (w * f.abs()).sum();
}

double fourier_l1_weighted(const FrequencyGrid& g, const VectorField& f, double radius,
                           double sigma) {
    if (radius < 0.0) throw std::invalid_argument("fourier_l1_weighted: radius must be >= 0");
    const ArrayXd w = (radius * g.kabs.pow(1.0 / sigma)).exp();
    const ArrayXd mag = (f[0].abs2() + f[1].abs2() + f[2].abs2()).sqrt();
    return (w * mag).sum();
}

double inner_product(const FrequencyGrid& g, const ScalarField& f, const ScalarField& h,
                     NormKind kind, const GevreyParams& p) {
    if (f.size() != h.size()) throw std::invalid_argument("inner_product: mismatched grids");
    const ArrayXd w = norm_weights(g, kind, p);
    return (w * (f.conjugate() * h).real()).sum();
}

double inner_product(const FrequencyGrid& g, const VectorField& f, const VectorField& h,
                     NormKind kind, const GevreyParams& p) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += inner_product(g, f[i], h[i], kind, p);
    return s;
}

NormReport make_norm_report(const FrequencyGrid& g, const VectorField& f, const GevreyParams& p) {
    NormReport r;
    r.l2 = norm(g, f, NormKind::L2, p);
    r.h1_dot = norm(g, f, NormKind::H1Dot, p);
    r.hs_dot = norm(g, f, NormKind::HsDot, p);
    r.h1_gevrey_dot = norm(g, f, NormKind::H1GevreyDot, p);
    r.h1_gevrey = norm(g, f, NormKind::H1Gevrey, p);
    r.fourier_l1_weighted = gevreyns::fourier_l1_weighted(g, f, p.a / p.sigma, p.sigma);
    r.fourier_l1 = gevreyns::fourier_l1_weighted(g, f, 0.0, p.sigma);
    r.grad_l2 = norm(g, f, NormKind::GradL2, p);
    return r;
}

std::string norm_report_json(const NormReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "{\"l2\":%.17g,\"h1_dot\":%.17g,\"hs_dot\":%.17g,"
                  "\"h1_gevrey_dot\":%.17g,\"h1_gevrey\":%.17g,"
                  "\"fourier_l1_weighted\":%.17g,\"fourier_l1\":%.17g,\"grad_l2\":%.17g}",
                  r.l2, r.h1_dot, r.hs_dot, r.h1_gevrey_dot, r.h1_gevrey,
                  r.fourier_l1_weighted, r.fourier_l1, r.grad_l2);
    return buf;
}

std::string norm_report_csv_header() {
    return "l2,h1_dot,hs_dot,h1_gevrey_dot,h1_gevrey,fourier_l1_weighted,fourier_l1,grad_l2";
}

std::string norm_report_csv_row(const NormReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.l2,
                  r.h1_dot, r.hs_dot, r.h1_gevrey_dot, r.h1_gevrey, r.fourier_l1_weighted,
                  r.fourier_l1, r.grad_l2);
    return buf;
}

}  // namespace gevreyns
