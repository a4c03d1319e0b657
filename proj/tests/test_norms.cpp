#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gevreyns/norms.hpp"

using namespace gevreyns;

TEST_CASE("gevrey_weight hand values") {
    CHECK(gevrey_weight(0.0, 1.0, 2.0) == 1.0);
    CHECK(gevrey_weight(4.0, 1.0, 2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    CHECK(gevrey_weight(8.0, 0.5, 3.0) == doctest::Approx(std::exp(0.5 * 2.0)).epsilon(1e-14));
}

TEST_CASE("params validation") {
    GevreyParams p;
    CHECK_NOTHROW(p.validate());
    p.a = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.a = 1.0;
    p.sigma = 0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.sigma = 2.0;
    p.nu = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("two-mode field hand values") {
    // u3 = 2 cos x1: coefficients 1 at +-e1, |xi| = 1 on the support
    auto g = make_grid(8);
    auto u = single_mode(g);
    GevreyParams p;  // a = 1, sigma = 2

    const double l2 = norm(g, u, NormKind::L2, p);
    CHECK(l2 * l2 == doctest::Approx(2.0).epsilon(1e-14));

    const double h1 = norm(g, u, NormKind::H1Dot, p);
    CHECK(h1 * h1 == doctest::Approx(2.0).epsilon(1e-14));

    const double hg = norm(g, u, NormKind::H1GevreyDot, p);
    CHECK(hg * hg == doctest::Approx(2.0 * std::exp(2.0 * p.a)).epsilon(1e-14));

    const double hgf = norm(g, u, NormKind::H1Gevrey, p);
    CHECK(hgf * hgf == doctest::Approx(4.0 * std::exp(2.0 * p.a)).epsilon(1e-14));

    // weighted l1 at radius a/sigma
    const double l1w = fourier_l1_weighted(g, u, p.a / p.sigma, p.sigma);
    CHECK(l1w == doctest::Approx(2.0 * std::exp(p.a / p.sigma)).epsilon(1e-14));

    // s = 2 homogeneous norm equals H1Dot on the unit shell
    GevreyParams p2 = p;
    p2.s = 2.0;
    const double h2 = norm(g, u, NormKind::HsDot, p2);
    CHECK(h2 * h2 == doctest::Approx(2.0).epsilon(1e-14));

    const double hs = norm(g, u, NormKind::Hs, p2);
    CHECK(hs * hs == doctest::Approx(2.0 * 4.0).epsilon(1e-14));
}

TEST_CASE("homogeneous norms ignore the mean mode") {
    auto g = make_grid(8);
    auto u = single_mode(g);
    auto v = u;
    v[0][0] += Complex(7.0, 0.0);
    GevreyParams p;
    for (NormKind k : {NormKind::H1Dot, NormKind::HsDot, NormKind::H1GevreyDot, NormKind::GradL2}) {
        CHECK(norm(g, u, k, p) == norm(g, v, k, p));
    }
    CHECK(norm(g, v, NormKind::L2, p) > norm(g, u, NormKind::L2, p));
}

TEST_CASE("monotonicity in the Gevrey radius") {
    auto g = make_grid(8);
    auto u = random_divergence_free_field(g, -1.0, 1.0, 2.0, 31);
    GevreyParams pa, pb;
    pa.a = 0.5;
    pb.a = 1.5;
    CHECK(norm(g, u, NormKind::H1GevreyDot, pa) < norm(g, u, NormKind::H1GevreyDot, pb));
    CHECK(fourier_l1_weighted(g, u, pa.a, pa.sigma) < fourier_l1_weighted(g, u, pb.a, pb.sigma));
}

TEST_CASE("Cauchy-Schwarz for the weighted inner products") {
    auto g = make_grid(8);
    GevreyParams p;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        auto u = random_divergence_free_field(g, -1.0, 1.0, 2.5, seed);
        auto v = random_divergence_free_field(g, -1.0, 1.0, 2.5, seed + 100);
        for (NormKind k : {NormKind::L2, NormKind::H1Gevrey, NormKind::H1GevreyDot}) {
            const double ip = std::abs(inner_product(g, u, v, k, p));
            CHECK(ip <= norm(g, u, k, p) * norm(g, v, k, p) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("norm report fields agree with direct calls") {
    auto g = make_grid(8);
    auto u = random_divergence_free_field(g, -2.0, 1.0, 2.5, 9);
    GevreyParams p;
    p.s = 1.5;
    auto r = make_norm_report(g, u, p);
    CHECK(r.l2 == norm(g, u, NormKind::L2, p));
    CHECK(r.h1_dot == norm(g, u, NormKind::H1Dot, p));
    CHECK(r.hs_dot == norm(g, u, NormKind::HsDot, p));
    CHECK(r.h1_gevrey_dot == norm(g, u, NormKind::H1GevreyDot, p));
    CHECK(r.h1_gevrey == norm(g, u, NormKind::H1Gevrey, p));
    CHECK(r.fourier_l1_weighted == fourier_l1_weighted(g, u, p.a / p.sigma, p.sigma));
    CHECK(r.fourier_l1 == fourier_l1_weighted(g, u, 0.0, p.sigma));
    CHECK(r.grad_l2 == r.h1_dot);

    auto json = norm_report_json(r);
    CHECK(json.find("h1_gevrey_dot") != std::string::npos);
    auto hdr = norm_report_csv_header();
    auto row = norm_report_csv_row(r);
    CHECK(std::count(hdr.begin(), hdr.end(), ',') == std::count(row.begin(), row.end(), ','));
}

TEST_CASE("embedding chain between the weighted norms") {
    // || . ||_{l1, a/sqrt(sigma)} controls nothing here; just check the
    // elementary comparison e^{2a w} <= weight ordering on single shells.
    auto g = make_grid(16);
    GevreyParams p;
    p.a = 0.7;
    p.sigma = 1.5;
    auto u = random_divergence_free_field(g, -2.0, 1.0, 5.0, 13);
    const double lhs = norm(g, u, NormKind::H1Dot, p);
    const double rhs = norm(g, u, NormKind::H1GevreyDot, p);
    CHECK(lhs <= rhs * (1.0 + 1e-12));
    CHECK(norm(g, u, NormKind::H1GevreyDot, p) <= norm(g, u, NormKind::H1Gevrey, p) * (1.0 + 1e-12));
}
