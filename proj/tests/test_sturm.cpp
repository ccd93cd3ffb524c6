#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "confining/sturm.hpp"

using namespace confining;

namespace {

// synthetic sample u with ln|u|(s) = f(s) on a uniform deep grid
SampledSolution synthetic(const std::function<double(double)>& logu) {
    SampledSolution out;
    for (int i = 0; i <= 4000; ++i) {
        double s = 2.0 + i * 0.5;
        out.s.push_back(s);
        out.u.push_back(LogValue::from_parts(1, logu(s)));
        out.du.push_back(LogValue{});
    }
    return out;
}

}  // namespace

TEST_SUITE("sturm") {

TEST_CASE("quadrature grid validates and self-checks") {
    QuadratureGrid g(std::log(4.0), std::log(4.0) + 2.0, 201);
    CHECK(g.self_check_rel_err() <= 1e-8);
    CHECK(g.integrate_s([](double) { return 1.0; }) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(QuadratureGrid(1.0, 2.0, 100), std::invalid_argument);  // even
    CHECK_THROWS_AS(QuadratureGrid(2.0, 1.0, 101), std::invalid_argument);  // reversed
}

TEST_CASE("integrator reproduces the trivial and euler solutions") {
    // Forward integration holds neutral and growing branches on deep grids.
    // Decaying branches are only checked on a short window: any perturbation
    // feeds the growing branch, which overtakes the exact solution near
    // s - s0 ~ ln(1/eps) / (gap of the characteristic roots).
    std::vector<double> deep = make_s_grid(std::log(4.0), 30.0, 2001);
    // V = 0, E = 0, ic (1, 0): u constant
    SampledSolution c = integrate_solution(PotentialFamily::power_critical(0.0), 0.0, deep, 1.0, 0.0);
    for (size_t i = 0; i < deep.size(); i += 400) {
        CHECK(c.u[i].sign == 1);
        CHECK(std::abs(c.u[i].log_abs) < 1e-9);
    }
    double ta = 0.25;
    // V = 2/x^2, growing branch u = t^{-1}: ln u = s
    SampledSolution e1 = integrate_solution(PotentialFamily::power_critical(2.0), 0.0, deep,
                                            1.0 / ta, -1.0 / (ta * ta));
    for (size_t i = 0; i < deep.size(); i += 400)
        CHECK(e1.u[i].log_abs == doctest::Approx(deep[i]).epsilon(1e-8));

    std::vector<double> shallow = make_s_grid(std::log(4.0), 8.0, 1001);
    // V = 2/x^2, decaying branch u = t^2: ln u = -2 s
    SampledSolution e2 = integrate_solution(PotentialFamily::power_critical(2.0), 0.0, shallow,
                                            ta * ta, 2.0 * ta);
    for (size_t i = 0; i < shallow.size(); i += 200)
        CHECK(e2.u[i].log_abs == doctest::Approx(-2.0 * shallow[i]).epsilon(1e-8));
    // V = (3/4)/x^2, decaying branch u = t^{3/2}
    SampledSolution e32 = integrate_solution(PotentialFamily::power_critical(0.75), 0.0, shallow,
                                             std::pow(ta, 1.5), 1.5 * std::sqrt(ta));
    CHECK(e32.u.back().log_abs == doctest::Approx(-1.5 * shallow.back()).epsilon(1e-8));
    CHECK(e32.wronskian_drift <= 1e-6);
}

TEST_CASE("tail fits recover synthetic exponents") {
    TailExponent pow = tail_exponent(synthetic([](double s) { return -1.5 * s; }));
    REQUIRE(pow.valid);
    CHECK(pow.sigma == doctest::Approx(1.5).epsilon(1e-3));

    TailExponent grow = tail_exponent(synthetic([](double s) { return 0.5 * s; }));
    CHECK(grow.sigma == doctest::Approx(-0.5).epsilon(1e-3));

    TailExponent log1 = tail_exponent(synthetic([](double s) { return 0.5 * s - std::log(s); }));
    CHECK(log1.sigma == doctest::Approx(-0.5).epsilon(2e-3));
    REQUIRE(log1.gamma.size() >= 1);
    CHECK(log1.gamma[0] == doctest::Approx(-1.0).epsilon(0.02));
}

TEST_CASE("square integrability rides on the exponent ladder") {
    TailExponent t;
    t.valid = true;
    t.sigma = 1.5;
    t.gamma = {0.0, 0.0, 0.0};
    CHECK(l2_status(t) == L2Status::SquareIntegrable);
    t.sigma = -0.5;  // borderline power, bare
    CHECK(l2_status(t) == L2Status::NotSquareIntegrable);
    t.gamma = {-1.0, 0.0, 0.0};  // 2 gamma_1 = -2 < -1: convergent
    CHECK(l2_status(t) == L2Status::SquareIntegrable);
    t.gamma = {-0.5, 0.0, 0.0};  // boundary at level 1, divergent at level 2
    CHECK(l2_status(t) == L2Status::NotSquareIntegrable);
    t.gamma = {-0.5, -1.0, 0.0};
    CHECK(l2_status(t) == L2Status::SquareIntegrable);
    t.sigma = -0.6;
    t.gamma = {0.0, 0.0, 0.0};
    CHECK(l2_status(t) == L2Status::NotSquareIntegrable);
}

TEST_CASE("power potentials classify by the indicial roots") {
    EndpointClassification lc = classify_endpoint(PotentialFamily::power_critical(0.5));
    CHECK(lc.type == EndpointType::LimitCircle);
    CHECK(lc.agree);

    EndpointClassification lp = classify_endpoint(PotentialFamily::power_critical(1.0));
    CHECK(lp.type == EndpointType::LimitPoint);
    CHECK(lp.agree);
    // indicial roots 1/2 -+ sqrt(5)/2: the golden-ratio pair
    const EnergyDetail& d = lp.per_energy.front();
    CHECK(d.dominant_tail.sigma == doctest::Approx(-0.6180339887498949).epsilon(1e-8));
    CHECK(d.recessive_tail.sigma == doctest::Approx(1.6180339887498949).epsilon(1e-8));

    // the exact critical constant still has t^{-1/2} outside L^2: limit point
    EndpointClassification crit = classify_endpoint(PotentialFamily::power_critical(0.75));
    CHECK(crit.type == EndpointType::LimitPoint);

    // oscillatory below -1/4
    EndpointClassification osc = classify_endpoint(PotentialFamily::power_critical(-1.0));
    CHECK(osc.type == EndpointType::LimitCircle);
    CHECK(osc.per_energy.front().oscillatory);
}

TEST_CASE("borderline pair flips square-integrability with alpha") {
    EndpointClassification lc = classify_endpoint(PotentialFamily::counterexample(2, -0.75));
    CHECK(lc.type == EndpointType::LimitCircle);
    EndpointClassification lp = classify_endpoint(PotentialFamily::counterexample(2, -0.25));
    CHECK(lp.type == EndpointType::LimitPoint);
    EndpointClassification lc1 = classify_endpoint(PotentialFamily::counterexample(1, -0.75));
    CHECK(lc1.type == EndpointType::LimitCircle);
}

TEST_CASE("interval verdict combines both endpoints") {
    PotentialFamily crit = PotentialFamily::power_critical(0.75);
    EsaResult esa = esa_verdict(crit, crit);
    CHECK(esa.verdict == EsaVerdictType::EssentiallySelfAdjoint);

    PotentialFamily free = PotentialFamily::power_critical(0.0);
    CHECK(esa_verdict(free, free).verdict == EsaVerdictType::NotEssentiallySelfAdjoint);

    PotentialFamily over = PotentialFamily::log_hierarchy(2, 0.75, 1.5);
    CHECK(esa_verdict(over, over).verdict == EsaVerdictType::NotEssentiallySelfAdjoint);
}

TEST_CASE("threshold sweep brackets the power-law constant") {
    SweepResult r = threshold_sweep(
        [](double c) { return PotentialFamily::power_critical(c); }, 0.5, 1.0, 0.01);
    REQUIRE(r.status == SweepResult::Status::Found);
    CHECK(std::abs(r.c_hat - 0.75) <= 0.02);
    CHECK(r.band_hi - r.band_lo <= 0.011);
    CHECK(r.band_lo <= r.c_hat);
    CHECK(r.c_hat <= r.band_hi);
    CHECK(r.increasing);
    REQUIRE(r.evaluations.size() >= 4);
    // evaluations carry the fitted exponents for the report table
    for (const SweepEval& e : r.evaluations) {
        CHECK(std::isfinite(e.sigma_dominant));
        CHECK(std::isfinite(e.sigma_recessive));
    }
}

TEST_CASE("bounded potentials never reach limit point") {
    auto make = [](double c) {
        return PotentialFamily::custom("bounded", [c](double s) { return c * std::exp(-2.0 * s); }, 0.0);
    };
    SweepResult r = threshold_sweep(make, 0.5, 2.0, 0.1);
    CHECK(r.status == SweepResult::Status::NoThreshold);
}

TEST_CASE("wronskian certificates detect dependence and scale") {
    std::vector<double> grid = make_s_grid(std::log(4.0), 20.0, 2001);
    double ta = 0.25;
    SampledSolution a = integrate_solution(PotentialFamily::power_critical(0.75), 0.0, grid,
                                           std::pow(ta, 1.5), 1.5 * std::sqrt(ta));
    SampledSolution b = integrate_solution(PotentialFamily::power_critical(0.75), 0.0, grid,
                                           std::pow(ta, -0.5), -0.5 * std::pow(ta, -1.5));
    WronskianCertificate w = wronskian_certificate(a, b);
    // W(t^{3/2}, t^{-1/2}) = -2 identically
    CHECK(w.reference == doctest::Approx(-2.0).epsilon(1e-8));
    CHECK(w.max_drift_rel <= 1e-6);
    CHECK(w.fully_resolvable);
    // a dependent pair has no resolvable wronskian anywhere
    CHECK_THROWS_AS(wronskian_certificate(a, a), std::domain_error);
}

TEST_CASE("classification is energy independent on the shipped families") {
    for (const PotentialFamily& f :
         {PotentialFamily::power_critical(1.5), PotentialFamily::log_hierarchy(2, 0.75, 0.5)}) {
        EndpointClassification c = classify_endpoint(f);
        CHECK(c.agree);
        REQUIRE(c.per_energy.size() == 3);
        for (const EnergyDetail& d : c.per_energy) CHECK(d.type == c.type);
    }
}

}  // TEST_SUITE
