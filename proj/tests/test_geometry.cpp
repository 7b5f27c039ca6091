#include <catch2/catch_amalgamated.hpp>

#include "qpball/carleson_box.hpp"
#include "qpball/green.hpp"
#include "qpball/mobius.hpp"
#include "qpball/rng.hpp"

using namespace qpball;
using Catch::Approx;

namespace {

CPoint random_interior(Rng& rng, int n, double rmax = 0.97) {
    const double r = rmax * rng.radius_dv(n);
    CVec dir = rng.sphere_direction(n);
    CVec v(n);
    for (int j = 0; j < n; ++j) v[j] = r * dir[j];
    return CPoint(v);
}

} // namespace

TEST_CASE("mobius: defining contract") {
    CPoint a{cplx(0.5, 0), cplx(0, 0)};
    CPoint z{cplx(0.25, 0), cplx(0, 0)};

    SECTION("phi_0 = -identity") {
        CPoint zero = CPoint::origin(2);
        CPoint w{cplx(0.3, 0.1), cplx(-0.2, 0.4)};
        CPoint img = mobius(zero, w);
        for (int j = 0; j < 2; ++j) CHECK(std::abs(img[j] + w[j]) < 1e-15);
    }
    SECTION("phi_a(0) = a and phi_a(a) = 0") {
        CPoint at0 = mobius(a, CPoint::origin(2));
        CHECK(std::abs(at0[0] - cplx(0.5, 0)) < 1e-15);
        CHECK(std::abs(at0[1]) < 1e-15);
        CHECK(mobius(a, a).abs() < 1e-15);
    }
    SECTION("slice value: first coordinate (0.5-0.25)/(1-0.125) = 2/7") {
        CPoint img = mobius(a, z);
        CHECK(std::abs(img[0] - cplx(2.0 / 7.0, 0)) < 1e-15);
        CHECK(std::abs(img[1]) < 1e-15);
    }
    SECTION("|a| >= 1 rejected") {
        CPoint bad{cplx(1.0, 0), cplx(0, 0)};
        CHECK_THROWS_AS(mobius(bad, z), std::domain_error);
    }
}

TEST_CASE("mobius: involution and the fundamental identity on random pairs") {
    Rng rng(2024);
    for (int n : {2, 3}) {
        for (int i = 0; i < 1000; ++i) {
            CPoint a = random_interior(rng, n);
            CPoint z = random_interior(rng, n);
            CPoint round_trip = mobius(a, mobius(a, z));
            CHECK((round_trip.v - z.v).norm() < 1e-10);

            const double lhs = 1.0 - mobius(a, z).abs_sq();
            const double rhs = one_minus_mobius_abs_sq(a, z);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("pseudo_hyperbolic_dist") {
    Rng rng(7);
    CPoint z{cplx(0.5, 0), cplx(0, 0)};
    CPoint w{cplx(0.25, 0), cplx(0, 0)};
    CHECK(pseudo_hyperbolic_dist(z, z) == 0.0);
    CHECK(pseudo_hyperbolic_dist(CPoint::origin(2), w) == Approx(w.abs()).margin(1e-15));
    CHECK(pseudo_hyperbolic_dist(z, w) == Approx(2.0 / 7.0).margin(1e-14));

    for (int i = 0; i < 200; ++i) {
        CPoint x = random_interior(rng, 2);
        CPoint y = random_interior(rng, 2);
        CHECK(pseudo_hyperbolic_dist(x, y) == Approx(pseudo_hyperbolic_dist(y, x)).margin(1e-12));
    }
    CPoint boundary{cplx(1.0, 0), cplx(0, 0)};
    CHECK_THROWS_AS(pseudo_hyperbolic_dist(boundary, w), std::domain_error);
}

TEST_CASE("noniso_gauge basics") {
    CPoint xi{cplx(1.0, 0), cplx(0, 0)};
    CPoint minus_xi{cplx(-1.0, 0), cplx(0, 0)};
    CHECK(noniso_gauge(xi, xi) == Approx(0.0).margin(1e-15));
    CHECK(noniso_gauge(CPoint::origin(2), xi) == Approx(1.0));
    CHECK(noniso_gauge(minus_xi, xi) == Approx(2.0));
    CPoint interior{cplx(0.5, 0), cplx(0, 0)};
    CHECK_THROWS_AS(noniso_gauge(xi, interior), std::domain_error);
}

TEST_CASE("gauge square root satisfies the triangle inequality on random triples") {
    Rng rng(99);
    for (int i = 0; i < 2000; ++i) {
        // closed-ball points, including some on S
        auto pick = [&](bool on_sphere) {
            CVec dir = rng.sphere_direction(2);
            const double r = on_sphere ? 1.0 : rng.radius_dv(2);
            CVec v(2);
            for (int j = 0; j < 2; ++j) v[j] = r * dir[j];
            return CPoint(v);
        };
        CPoint w = pick(i % 3 == 0);
        CPoint z = pick(i % 2 == 0);
        CPoint xi = pick(true);
        const double dwz = std::sqrt(std::abs(1.0 - inner(w, z)));
        const double dwxi = std::sqrt(noniso_gauge(w, xi));
        const double dzxi = std::sqrt(noniso_gauge(z, xi));
        CHECK(dwz >= dwxi - dzxi - 1e-12);
    }
}

TEST_CASE("box nesting Q_d c Qhat_4d c Q_16d by sampled membership") {
    Rng rng(314);
    CPoint xi{cplx(1.0, 0), cplx(0, 0)};
    for (double delta : {0.02, 0.1, 0.125}) {
        CarlesonBox q(xi, delta);
        CarlesonBox qhat(xi, 4.0 * delta);
        CarlesonBox qbig(xi, 16.0 * delta);
        int tested = 0;
        while (tested < 500) {
            CPoint z = random_interior(rng, 2, 0.999999);
            if (!q.contains(z)) continue;
            ++tested;
            REQUIRE(qhat.collar_contains(z));
            REQUIRE(qbig.contains(z));
        }
    }
}

TEST_CASE("cover_box: construction and sampled coverage") {
    CPoint xi{cplx(1.0, 0), cplx(0, 0)};

    SECTION("m = 1 returns the cap itself") {
        auto net = cover_box(xi, 0.5, 1);
        REQUIRE(net.size() == 1);
        CHECK(net[0].delta == Approx(0.5));
        CHECK((net[0].center.v - xi.v).norm() < 1e-15);
    }
    SECTION("m = 0 rejected") { CHECK_THROWS_AS(cover_box(xi, 0.5, 0), std::domain_error); }

    SECTION("n = 2, delta = 0.5, m = 2: full sampled coverage and separation") {
        const double delta = 0.5;
        const int m = 2;
        auto net = cover_box(xi, delta, m);
        // pairwise separation >= delta / (2m)
        for (size_t i = 0; i < net.size(); ++i)
            for (size_t j = i + 1; j < net.size(); ++j)
                CHECK(noniso_gauge(net[i].center, net[j].center) >= delta / (2.0 * m) - 1e-12);
        // centers inside the parent cap
        CarlesonBox parent(xi, delta);
        for (const auto& b : net) CHECK(parent.cap_contains(b.center));
        // sampled coverage of the parent cap by the delta/m caps
        detail::SliceFrame frame(xi);
        Rng rng(5150);
        int misses = 0;
        for (int i = 0; i < 10000; ++i) {
            CPoint eta = detail::sample_cap_direction(frame, delta, rng);
            bool covered = false;
            for (const auto& b : net)
                if (b.cap_contains(eta)) {
                    covered = true;
                    break;
                }
            if (!covered) ++misses;
        }
        CHECK(misses == 0);
    }
}

TEST_CASE("green_g: closed-form oracles, monotonicity, pole") {
    SECTION("g(1) = 0") { CHECK(green_g(2, 1.0) == 0.0); }

    SECTION("n = 2 closed form (3/4)(1/(2r^2) - 1/2 + log r)") {
        auto oracle2 = [](double r) { return 0.75 * (1.0 / (2.0 * r * r) - 0.5 + std::log(r)); };
        for (double r : {0.3, 0.5, 0.8, 0.95}) {
            CHECK(green_g(2, r) == Approx(oracle2(r)).epsilon(1e-10));
        }
        CHECK(green_g(2, 0.5) == Approx(0.6051396145800410).epsilon(1e-9));
    }
    SECTION("n = 3 closed form (2/3)(3/4 + 1/(4r^4) - 1/r^2 - log r)") {
        auto oracle3 = [](double r) {
            return (2.0 / 3.0) * (0.75 + 1.0 / (4.0 * r * r * r * r) - 1.0 / (r * r) - std::log(r));
        };
        for (double r : {0.4, 0.7, 0.9}) CHECK(green_g(3, r) == Approx(oracle3(r)).epsilon(1e-10));
    }
    SECTION("strictly decreasing") {
        CHECK(green_g(2, 0.3) > green_g(2, 0.6));
        CHECK(green_g(2, 0.6) > green_g(2, 0.9));
    }
    SECTION("poles") {
        CHECK_THROWS_AS(green_g(2, 0.0), pole_error);
        CPoint a{cplx(0.5, 0), cplx(0, 0)};
        CHECK_THROWS_AS(green_G(a, a), pole_error);
    }
    SECTION("green_G = g(|phi_a(z)|)") {
        CPoint a{cplx(0.5, 0), cplx(0, 0)};
        CPoint z{cplx(0.25, 0), cplx(0, 0)};
        CHECK(green_G(z, a) == Approx(green_g(2, 2.0 / 7.0)).epsilon(1e-12));
    }
}

TEST_CASE("mobius jacobian at 0 against finite differences") {
    Rng rng(42);
    for (int i = 0; i < 50; ++i) {
        CPoint a = random_interior(rng, 2, 0.9);
        MobiusJacobian0 J = mobius_jacobian0(a);
        const double eps = 1e-6;
        for (int j = 0; j < 2; ++j) {
            CVec hp(2), hm(2);
            hp[j] = eps;
            hm[j] = -eps;
            CPoint fp = mobius(a, CPoint(hp));
            CPoint fm = mobius(a, CPoint(hm));
            for (int k = 0; k < 2; ++k) {
                const cplx fd = (fp[k] - fm[k]) / (2.0 * eps);
                CHECK(std::abs(fd - J.at(k, j)) < 1e-8);
            }
        }
    }
}
