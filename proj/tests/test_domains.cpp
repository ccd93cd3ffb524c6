#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "confining/domains.hpp"

using namespace confining;

TEST_SUITE("domains") {

TEST_CASE("reach values are exact") {
    CHECK(Domain::interval().reach() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(Domain::disk(2.0).reach() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(Domain::annulus(1.0, 3.0).reach() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(Domain::ellipse(2.0, 1.0).reach() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(Domain::ellipse(2.0, 0.5).reach() == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("constructors validate their parameters") {
    CHECK_THROWS_AS(Domain::disk(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::annulus(3.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::ellipse(1.0, 2.0), std::invalid_argument);
}

TEST_CASE("membership respects open boundaries") {
    CHECK(Domain::interval().contains(0.3));
    CHECK_FALSE(Domain::interval().contains(1.0));
    CHECK(Domain::disk(2.0).contains(1.9, 0.0));
    CHECK_FALSE(Domain::disk(2.0).contains(2.0, 0.0));
    CHECK(Domain::annulus(1.0, 3.0).contains(0.0, 2.0));
    CHECK_FALSE(Domain::annulus(1.0, 3.0).contains(0.5, 0.0));
    CHECK(Domain::ellipse(2.0, 1.0).contains(1.0, 0.5));
    CHECK_FALSE(Domain::ellipse(2.0, 1.0).contains(2.1, 0.0));
}

TEST_CASE("interval and disk distances with inward gradients") {
    DistGrad a = Domain::interval().dist_and_grad(0.3);
    CHECK(a.d == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(a.gx == 1.0);
    DistGrad b = Domain::interval().dist_and_grad(0.7);
    CHECK(b.gx == -1.0);
    CHECK(Domain::interval().dist_and_grad(0.5).on_medial_axis);

    DistGrad c = Domain::disk(2.0).dist_and_grad(1.0, 0.0);
    CHECK(c.d == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.gx == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(c.gy == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_FALSE(c.on_medial_axis);
    CHECK(Domain::disk(2.0).dist_and_grad(0.0, 0.0).on_medial_axis);
}

TEST_CASE("annulus distance switches boundary at the midline") {
    Domain an = Domain::annulus(1.0, 3.0);
    DistGrad in = an.dist_and_grad(1.5, 0.0);
    CHECK(in.d == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(in.gx == doctest::Approx(1.0).epsilon(1e-14));  // away from the inner circle
    DistGrad out = an.dist_and_grad(0.0, 2.75);
    CHECK(out.d == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(out.gy == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(an.dist_and_grad(2.0, 0.0).on_medial_axis);
}

TEST_CASE("ellipse distance matches the variational oracle") {
    Domain el = Domain::ellipse(2.0, 1.0);
    DistGrad g = el.dist_and_grad(1.2, 0.3);
    CHECK(g.d == doctest::Approx(0.45989680064439803).epsilon(1e-10));
    CHECK(g.gx == doctest::Approx(-0.44163258685408902).epsilon(1e-8));
    CHECK(g.gy == doctest::Approx(-0.89719599766637703).epsilon(1e-8));
    CHECK(std::hypot(g.gx, g.gy) == doctest::Approx(1.0).epsilon(1e-12));

    // brute-force the boundary distance on a fine parameter grid
    for (auto [qx, qy] : {std::pair{0.5, 0.0}, std::pair{-0.3, 0.55}, std::pair{1.8, -0.1}}) {
        double best = 1e300;
        for (int i = 0; i <= 400000; ++i) {
            double th = 2.0 * M_PI * i / 400000;
            best = std::min(best, std::hypot(qx - 2.0 * std::cos(th), qy - std::sin(th)));
        }
        DistGrad dg = el.dist_and_grad(qx, qy);
        CHECK(dg.d == doctest::Approx(best).epsilon(1e-9));
    }
    // foot point on the major axis inside the evolute: medial branch
    CHECK(el.dist_and_grad(0.0, 0.0).on_medial_axis);
    CHECK_FALSE(el.dist_and_grad(1.8, 0.05).on_medial_axis);
}

TEST_CASE("gradient norm sampling passes on every shape") {
    for (const Domain& d : {Domain::interval(), Domain::disk(2.0), Domain::annulus(1.0, 3.0),
                            Domain::ellipse(2.0, 1.0)}) {
        CAPTURE(d.describe());
        GradNormReport r = grad_norm_check(d, 1200, 42);
        CHECK(r.pass);
        CHECK(r.tested >= 600);
        CHECK(r.max_dev <= 1e-6);
        CHECK(r.max_norm <= 1.0 + 1e-5);
    }
}

TEST_CASE("gradient norm sampling is deterministic in the seed") {
    GradNormReport a = grad_norm_check(Domain::ellipse(2.0, 1.0), 500, 7);
    GradNormReport b = grad_norm_check(Domain::ellipse(2.0, 1.0), 500, 7);
    CHECK(a.max_dev == b.max_dev);
    CHECK(a.worst_x == b.worst_x);
    GradNormReport c = grad_norm_check(Domain::ellipse(2.0, 1.0), 500, 8);
    CHECK((c.max_dev != a.max_dev || c.worst_x != a.worst_x));
}

TEST_CASE("radial reduction adds the centrifugal term only for n = 2") {
    PotentialFamily base = PotentialFamily::power_critical(0.75);
    double s = std::log(4.0), t = 0.25;
    PotentialFamily r1 = radial_reduce(base, 1, 1.0);
    PotentialFamily r2 = radial_reduce(base, 2, 1.0);
    PotentialFamily r3 = radial_reduce(base, 3, 1.0);
    CHECK(r1.w(s) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(r3.w(s) == doctest::Approx(0.75).epsilon(1e-14));
    double centrifugal = 0.25 * (2.0 - 1.0) * (2.0 - 3.0) * t * t / ((1.0 - t) * (1.0 - t));
    CHECK(r2.w(s) == doctest::Approx(0.75 + centrifugal).epsilon(1e-13));
    // domain clipped to the inner half of the disk
    CHECK(r2.domain_min_s() == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(radial_reduce(base, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(radial_reduce(base, 2, -1.0), std::invalid_argument);
}

TEST_CASE("disk verdicts track the boundary coefficient across dimensions") {
    for (int dim : {1, 2, 3}) {
        RadialVerdict v = radial_esa(PotentialFamily::power_critical(0.75), dim, 1.0);
        CAPTURE(dim);
        CHECK(v.verdict == EsaVerdictType::EssentiallySelfAdjoint);
        CHECK(v.dim == dim);
    }
    RadialVerdict low = radial_esa(PotentialFamily::power_critical(0.5), 2, 1.0);
    CHECK(low.verdict == EsaVerdictType::NotEssentiallySelfAdjoint);
}

}  // TEST_SUITE
