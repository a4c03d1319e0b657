#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gevreyns/inequalities.hpp"

using namespace gevreyns;

TEST_CASE("cdelta hand values") {
    const double root = 2.0 * std::sqrt(std::numbers::pi / 3.0);
    // delta = 2: base 1/3, exponent 3/8
    const double expect2 = root * (std::pow(3.0, -0.375) + std::pow(3.0, 0.625));
    CHECK(cdelta(2.0) == doctest::Approx(expect2).epsilon(1e-14));
    // delta = 3: base 1, both powers are 1
    CHECK(cdelta(3.0) == doctest::Approx(2.0 * root).epsilon(1e-14));
    CHECK_THROWS_AS(cdelta(1.5), std::invalid_argument);
    // diverges toward the endpoint, flattens to the limit far out
    CHECK(cdelta(1.51) > 10.0);
    CHECK(cdelta(1e6) == doctest::Approx(root).epsilon(1e-3));
}

TEST_CASE("m bound") {
    auto res = check_m_bound(2.0, {2.0, 3.0, 10.0, 100.0});
    CHECK(res.M >= res.c_infinity);
    CHECK(res.verdict.pass);
    for (double d : {2.0, 2.5, 7.0, 50.0, 1e5}) CHECK(cdelta(d) <= res.M * (1.0 + 1e-12));
    // sup over [2, inf) is attained at the left endpoint region
    CHECK(res.M == doctest::Approx(cdelta(2.0)).epsilon(1e-6));
    auto empty = check_m_bound(2.0);
    CHECK(empty.verdict.pass);
    CHECK(empty.verdict.ratio == 0.0);
}

TEST_CASE("l1 interpolation") {
    auto g = make_grid(8);

    SUBCASE("random mean-free fields pass") {
        for (uint64_t seed = 0; seed < 50; ++seed) {
            ScalarField f = random_scalar_field(g, -1.0, 1.0, 2.5, seed);
            for (double d : {1.6, 2.0, 3.0, 5.0}) {
                auto v = check_l1_interpolation(g, f, d);
                CHECK(v.pass);
            }
        }
    }

    SUBCASE("nonzero mean rejected") {
        ScalarField f = random_scalar_field(g, -1.0, 1.0, 2.5, 1);
        f[0] = Complex(1.0, 0.0);
        CHECK_THROWS_AS(check_l1_interpolation(g, f, 2.0), std::invalid_argument);
    }

    SUBCASE("single mode closed form") {
        // one Hermitian pair at |xi| = 1: lhs = 2c, l2 = sqrt(2) c,
        // Hdot^delta = sqrt(2) c, so ratio = sqrt(2) / C_delta
        ScalarField f = ScalarField::Zero(g.size());
        f[g.flat_wave(1, 0, 0)] = Complex(0.5, 0.0);
        f[g.flat_wave(-1, 0, 0)] = Complex(0.5, 0.0);
        auto v = check_l1_interpolation(g, f, 2.0);
        CHECK(v.ratio == doctest::Approx(std::sqrt(2.0) / cdelta(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("product sobolev") {
    auto g = make_grid(8);
    CHECK_THROWS_AS(check_product_sobolev(g, ScalarField::Zero(g.size()),
                                          ScalarField::Zero(g.size()), 2.0, 1.0,
                                          ProductForm::Symmetric),
                    std::invalid_argument);
    double worst = 0.0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        ScalarField f = random_scalar_field(g, -1.0, 1.0, 2.5, seed);
        ScalarField h = random_scalar_field(g, -1.0, 1.0, 2.5, seed + 500);
        auto v = check_product_sobolev(g, f, h, 1.0, 1.0, ProductForm::Symmetric);
        CHECK(v.rhs > 0.0);
        CHECK(std::isfinite(v.ratio));
        worst = std::max(worst, v.ratio);
    }
    // the bound holds with a moderate constant on these band-limited fields
    CHECK(worst <= 64.0);
    CHECK(worst > 0.0);
}

TEST_CASE("gevrey product law") {
    auto g = make_grid(8);
    GevreyParams p;
    for (uint64_t seed = 0; seed < 30; ++seed) {
        for (double a : {0.1, 1.0}) {
            for (double sg : {1.0, 1.5, 2.0}) {
                p.a = a;
                p.sigma = sg;
                ScalarField f = random_scalar_field(g, -1.0, 1.0, 2.5, seed);
                ScalarField h = random_scalar_field(g, -1.0, 1.0, 2.5, seed + 900);
                auto v = check_gevrey_product(g, f, h, p);
                CHECK(v.pass);
            }
        }
    }
    // oracle and transform routes agree when the product stays inside the
    // dealias band (unit-shell inputs at N = 8)
    ScalarField f = random_scalar_field(g, -1.0, 1.0, 1.0, 3);
    ScalarField h = random_scalar_field(g, -1.0, 1.0, 1.0, 4);
    p.a = 1.0;
    p.sigma = 2.0;
    auto vo = check_gevrey_product(g, f, h, p, false);
    auto vt = check_gevrey_product(g, f, h, p, true);
    CHECK(vo.lhs == doctest::Approx(vt.lhs).epsilon(1e-10));
    // large grids require the transform product
    auto g32 = make_grid(32);
    CHECK_THROWS_AS(check_gevrey_product(g32, ScalarField::Zero(g32.size()),
                                         ScalarField::Zero(g32.size()), p),
                    std::invalid_argument);
}

TEST_CASE("triangle inequality for |xi|^{1/sigma}") {
    CHECK_THROWS_AS(check_triangle_gevrey(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0), 0.5),
                    std::invalid_argument);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> comp(-64, 64);
    for (int i = 0; i < 2000; ++i) {
        Eigen::Vector3d xi(comp(rng), comp(rng), comp(rng));
        Eigen::Vector3d eta(comp(rng), comp(rng), comp(rng));
        for (double sg : {1.0, 1.2, 2.0, 3.0}) {
            CHECK(check_triangle_gevrey(xi, eta, sg).pass);
        }
    }
    // equality when eta = 0 and sigma = 1
    auto v = check_triangle_gevrey(Eigen::Vector3d(3, 4, 0), Eigen::Vector3d(0, 0, 0), 1.0);
    CHECK(v.ratio == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("elementary bound (1+b)^theta <= 1 + theta b^theta") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
        CHECK(check_elementary(unif(rng), unif(rng)).pass);
    }
    // theta = 1 is equality
    CHECK(check_elementary(0.7, 1.0).ratio == doctest::Approx(1.0).epsilon(1e-14));
    // theta = 0 handled as 1 <= 1
    CHECK(check_elementary(0.7, 0.0).pass);
    CHECK(check_elementary(0.7, 0.0).ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(check_elementary(1.5, 0.5), std::invalid_argument);
}

TEST_CASE("embedding constant") {
    GevreyParams p;  // a = 1, sigma = 2
    auto e1 = embedding_constant(1.0, p);
    CHECK(e1.k0 == 0);
    // sqrt(2 * 3 * 1 / 2) = sqrt(3)
    CHECK(e1.c_chain == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(e1.c_variant == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    auto e2 = embedding_constant(1.5, p);
    CHECK(e2.k0 == 2);
    // sqrt(2 * 3 * 3! / 2^3) = sqrt(36/8)
    CHECK(e2.c_chain == doctest::Approx(std::sqrt(36.0 / 8.0)).epsilon(1e-13));

    CHECK_THROWS_AS(embedding_constant(0.5, p), std::invalid_argument);
}

TEST_CASE("embedding inequality on random fields") {
    auto g = make_grid(8);
    GevreyParams p;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        for (double a : {0.5, 1.0}) {
            for (double sg : {1.0, 2.0}) {
                for (double s : {1.0, 1.5, 2.0}) {
                    p.a = a;
                    p.sigma = sg;
                    ScalarField f = random_scalar_field(g, -1.0, 1.0, 2.5, seed);
                    CHECK(check_embedding(g, f, s, p).pass);
                }
            }
        }
    }
}

TEST_CASE("l2 product bound has a moderate empirical constant") {
    auto g = make_grid(8);
    GevreyParams p;
    double worst = 0.0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        ScalarField f = random_scalar_field(g, -1.0, 1.0, 2.5, seed);
        ScalarField h = random_scalar_field(g, -1.0, 1.0, 2.5, seed + 700);
        worst = std::max(worst, check_l2_product(g, f, h, p).ratio);
    }
    CHECK(worst <= 64.0);
    CHECK(worst > 0.0);
}

TEST_CASE("norm equivalence sandwich") {
    auto g = make_grid(8);
    GevreyParams p;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        for (double a : {0.1, 1.0, 2.0}) {
            p.a = a;
            ScalarField f = random_scalar_field(g, -1.0, 1.0, 2.5, seed);
            auto [lo, hi] = check_norm_equivalence(g, f, p);
            CHECK(lo.pass);
            CHECK(hi.pass);
        }
    }
}

TEST_CASE("sweep driver smoke run") {
    SweepConfig cfg;
    cfg.trials = 24;
    auto out = run_inequality_suites(cfg);
    CHECK(out.size() == 11);
    for (const auto& s : out) {
        INFO(s.name, " max_ratio=", s.max_ratio);
        CHECK(s.pass);
        CHECK(s.trials > 0);
    }
    // deterministic per seed
    auto out2 = run_inequality_suites(cfg);
    for (size_t i = 0; i < out.size(); ++i) {
        CHECK(out[i].max_ratio == out2[i].max_ratio);
        CHECK(out[i].worst_witness == out2[i].worst_witness);
    }
    auto row = sweep_summary_csv_row(out[0]);
    CHECK(row.find("product_sobolev") != std::string::npos);
}
