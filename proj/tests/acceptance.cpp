// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Tolerances are pinned in the checks; a FAIL line carries the measured value.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "confining/agmon.hpp"
#include "confining/domains.hpp"
#include "confining/hardy.hpp"
#include "confining/iterlog.hpp"
#include "confining/potentials.hpp"
#include "confining/sigma.hpp"
#include "confining/sturm.hpp"

using namespace confining;

namespace {

struct Gate {
    std::ostringstream fails;
    void expect(bool ok, const std::string& what) {
        if (!ok) fails << (fails.str().empty() ? "" : "; ") << what;
    }
    template <typename T>
    void near(T got, T want, T tol, const std::string& label) {
        std::ostringstream m;
        m.precision(10);
        m << label << "=" << got << " (want " << want << " +- " << tol << ")";
        expect(std::abs(got - want) <= tol, m.str());
    }
};

std::string fnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---- 1: power family verdicts and the threshold location ----------------------

void c1(Gate& g) {
    auto t0 = std::chrono::steady_clock::now();
    for (double c : {0.5, 0.7}) {
        auto cls = classify_endpoint(PotentialFamily::power_critical(c));
        g.expect(cls.type == EndpointType::LimitCircle,
                 "c=" + fnum(c) + " not limit circle");
    }
    for (double c : {0.8, 1.0, 2.0}) {
        auto cls = classify_endpoint(PotentialFamily::power_critical(c));
        g.expect(cls.type == EndpointType::LimitPoint, "c=" + fnum(c) + " not limit point");
    }
    SweepResult sw = threshold_sweep(
        [](double c) { return PotentialFamily::power_critical(c); }, 0.5, 1.0, 0.01);
    g.expect(sw.status == SweepResult::Status::Found, "sweep found no threshold");
    g.near(sw.c_hat, 0.75, 0.02, "c_hat");
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    g.expect(dt <= 60.0, "took " + fnum(dt) + " s (budget 60)");
}

// ---- 2: logarithmic hierarchy thresholds at depth 2 and 3 ---------------------

void c2(Gate& g) {
    auto t0 = std::chrono::steady_clock::now();
    auto lp = classify_endpoint(PotentialFamily::log_hierarchy(2, 0.75, 0.5));
    g.expect(lp.type == EndpointType::LimitPoint, "p=2 c=0.5 not limit point");
    auto lc = classify_endpoint(PotentialFamily::log_hierarchy(2, 0.75, 1.5));
    g.expect(lc.type == EndpointType::LimitCircle, "p=2 c=1.5 not limit circle");

    SweepResult s2 = threshold_sweep(
        [](double c) { return PotentialFamily::log_hierarchy(2, 0.75, c); }, 0.5, 1.5, 0.05);
    g.expect(s2.status == SweepResult::Status::Found, "p=2 sweep found no threshold");
    g.near(s2.c_hat, 1.0, 0.05, "p2 c_hat");

    SolveOptions deep;
    deep.s_span = 20000.0;
    deep.n_nodes = 8001;
    SweepResult s3 = threshold_sweep(
        [](double c) { return PotentialFamily::log_hierarchy(3, 0.75, c); }, 0.5, 1.5, 0.05,
        deep);
    g.expect(s3.status == SweepResult::Status::Found, "p=3 sweep found no threshold");
    g.near(s3.c_hat, 1.0, 0.1, "p3 c_hat");
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    g.expect(dt <= 300.0, "took " + fnum(dt) + " s (budget 300)");
}

// ---- 3: borderline solution pairs reproduce through the integrator ------------

void c3(Gate& g) {
    for (int p : {1, 2, 3}) {
        for (double alpha : {-0.6, -0.4}) {
            std::string tag = "p=" + std::to_string(p) + " a=" + fnum(alpha) + " ";
            PotentialFamily fam = PotentialFamily::counterexample(p, alpha);
            double s_lo = std::max(5.0, fam.domain_min_s());
            std::vector<double> grid = make_s_grid(s_lo, 40.0, 2001);
            SampledSolution psi = counterexample_psi_sample(p, alpha, grid);
            SampledSolution phi = second_solution(p, alpha, grid);

            SampledSolution ode = integrate_solution(fam, 0.0, grid, psi.u.front().to_double(),
                                                     psi.du.front().to_double());
            double max_rel = 0;
            for (size_t i = 0; i < grid.size(); ++i) {
                double r = std::exp(ode.u[i].log_abs - psi.u[i].log_abs);
                max_rel = std::max(max_rel,
                                   ode.u[i].sign == psi.u[i].sign ? std::abs(r - 1.0) : r + 1.0);
            }
            g.expect(max_rel <= 1e-5, tag + "ode residual " + fnum(max_rel) + " > 1e-5");

            WronskianCertificate cert = wronskian_certificate(psi, phi);
            g.expect(std::abs(cert.reference - 1.0) <= 1e-8,
                     tag + "wronskian " + fnum(cert.reference) + " != 1");
            g.expect(cert.max_drift_rel <= 1e-6,
                     tag + "wronskian drift " + fnum(cert.max_drift_rel) + " > 1e-6");

            std::vector<double> long_grid = make_s_grid(std::max(5.0, fam.domain_min_s()),
                                                        4000.0, 16001);
            TailExponent te = tail_exponent(counterexample_psi_sample(p, alpha, long_grid));
            L2Status l2 = l2_status(te);
            bool want_l2 = alpha < -0.5;
            g.expect(l2 == (want_l2 ? L2Status::SquareIntegrable
                                    : L2Status::NotSquareIntegrable),
                     tag + "L2 verdict wrong (sigma=" + fnum(te.sigma) + ")");
        }
    }
}

// ---- 4: dyadic series verdicts across the weight ladder ------------------------

void c4(Gate& g) {
    auto run = [&](const GFunction& w, SeriesVerdict want, int level, const std::string& tag,
                   double sa = 4.0, double sb = 5.0) {
        SigmaVerdict v = sigma_verdict(w, sa, sb, 2048);
        g.expect(v.agree, tag + ": radii disagree");
        g.expect(v.verdict == want, tag + ": wrong verdict");
        for (int i = 0; i < 2; ++i)
            g.expect(v.per_rho[i].decided_level == level,
                     tag + ": decided at level " + std::to_string(v.per_rho[i].decided_level) +
                         " (want " + std::to_string(level) + ")");
        return v;
    };
    run(g_log(0.25), SeriesVerdict::Divergent, 1, "ln");
    run(g_log_minus_ct(1.0, 0.25), SeriesVerdict::Divergent, 1, "ln-ct");
    run(g_hierarchy_build(2, IntegrableProfile::zero(), 1.0), SeriesVerdict::Divergent, 2, "G2");
    // the depth-3 weight plateaus until s0 = e^e, so its radii start below that
    run(g_hierarchy_build(3, IntegrableProfile::zero(), 1.0), SeriesVerdict::Divergent, 3, "G3",
        16.0, 17.0);
    SigmaVerdict k1 = run(g_log_plus_klog1(1.0, 0.25), SeriesVerdict::Convergent, 1, "ln+lnL1");
    g.near(k1.per_rho[0].beta[1], 2.0, 0.02, "k=1 beta1");
    SigmaVerdict k2 = run(g_log_plus_klog1(2.0, 0.1), SeriesVerdict::Convergent, 1, "ln+2lnL1");
    g.near(k2.per_rho[0].beta[1], 4.0, 0.04, "k=2 beta1");

    g.expect(brusentsev_sup(g_log(0.25)).satisfied, "brusentsev fails on ln");
    g.expect(brusentsev_sup(g_log_minus_ct(1.0, 0.25)).satisfied, "brusentsev fails on ln-ct");
    BrusentsevReport b2 = brusentsev_sup(g_hierarchy_build(2, IntegrableProfile::zero(), 1.0));
    g.near(b2.gamma, 0.5, 0.05, "G2 brusentsev gamma");
    g.expect(!b2.satisfied, "G2 brusentsev unexpectedly bounded");
}

// ---- 5: ground-state substitution identity ------------------------------------

void c5(Gate& g) {
    // analytic borderline power solution u = x^{-1/2} of u'' = (3/4) x^{-2} u
    auto u_pow = [](double x) { return 1.0 / std::sqrt(x); };
    auto du_pow = [](double x) { return -0.5 * std::pow(x, -1.5); };
    auto v_pow = [](double x) { return 0.75 / (x * x); };
    for (auto [lo, hi] : {std::pair{0.1, 0.9}, std::pair{0.25, 0.75}}) {
        auto r = form_identity_check(u_pow, du_pow, v_pow, 0.0, lo, hi, 32);
        g.expect(r.rel_residual <= 1e-5, "x^-1/2 bump [" + fnum(lo) + "," + fnum(hi) +
                                             "] residual " + fnum(r.rel_residual));
    }

    // first borderline family, one logarithm: support inside (0, 1/e)
    {
        const double a = -0.6;
        PotentialFamily fam = PotentialFamily::counterexample(1, a);
        auto u = [a](double x) { return std::pow(x, -0.5) * std::pow(std::log(1.0 / x), a); };
        auto du = [a](double x) {
            double L = std::log(1.0 / x);
            return -std::pow(x, -1.5) * std::pow(L, a - 1.0) * (0.5 * L + a);
        };
        auto v = [&fam](double x) { return fam.v_at(x); };
        auto r = form_identity_check(u, du, v, 0.0, 0.05, 0.3, 32);
        g.expect(r.rel_residual <= 1e-5, "one-log residual " + fnum(r.rel_residual));
    }

    // second borderline family: support inside (0, e^-e)
    {
        const double a = -0.6;
        PotentialFamily fam = PotentialFamily::counterexample(2, a);
        auto u = [a](double x) {
            double L = std::log(1.0 / x), M = std::log(L);
            return std::pow(x, -0.5) * std::pow(L, -0.5) * std::pow(M, a);
        };
        auto du = [a, &u](double x) {
            double L = std::log(1.0 / x), M = std::log(L);
            return u(x) * (-0.5 / x + 0.5 / (x * L) - a / (x * L * M));
        };
        auto v = [&fam](double x) { return fam.v_at(x); };
        auto r = form_identity_check(u, du, v, 0.0, 0.01, 0.06, 32);
        g.expect(r.rel_residual <= 1e-5, "two-log residual " + fnum(r.rel_residual));
    }

    // numerically shot eigenpair of the critical double well
    IntervalPotential well(PotentialFamily::power_critical(0.75),
                           PotentialFamily::power_critical(0.75));
    GroundState gs = ground_state(well);
    double rel8 = form_identity_check(well, gs.energy, 0.2, 0.8, 8).rel_residual;
    double rel16 = form_identity_check(well, gs.energy, 0.2, 0.8, 16).rel_residual;
    double rel32 = form_identity_check(well, gs.energy, 0.2, 0.8, 32).rel_residual;
    g.expect(rel32 <= 1e-5, "eigenpair residual " + fnum(rel32) + " > 1e-5");
    g.expect(rel8 > rel16 && rel16 > rel32,
             "no quadrature convergence: " + fnum(rel8) + " -> " + fnum(rel16) + " -> " +
                 fnum(rel32));
}

// ---- 6: weighted dyadic-annulus mass ratios stay finite ------------------------

void c6(Gate& g) {
    IntervalPotential well(PotentialFamily::power_critical(0.75),
                           PotentialFamily::power_critical(0.75));
    GroundState gs = ground_state(well);
    auto run = [&](const GFunction& w, double rho0, const std::string& tag) {
        AgmonReport r = agmon_ratio(well, gs, w, rho0, 6, 20001);
        g.expect(r.rho.size() == 7, tag + ": missing levels");
        for (size_t i = 0; i < r.ratio.size(); ++i)
            g.expect(std::isfinite(r.ratio[i]) && r.ratio[i] > 0,
                     tag + ": ratio[" + std::to_string(i) + "] not finite/positive");
        g.expect(r.stable, tag + ": sup ratio moved > 20% under grid refinement");
    };
    run(g_log(0.25), 0.05, "ln weight");
    run(g_hierarchy_build(2, IntegrableProfile::zero(), 1.0), 0.03, "hierarchy weight");
}

// ---- 7: boundary Hardy quotients ----------------------------------------------

void c7(Gate& g) {
    for (const TestFunction& tf :
         {TestFunction::sine(), TestFunction::parabola(), TestFunction::power_boundary(0.05),
          TestFunction::bump_product(0.2, 0.8)}) {
        QuotientReport q = hardy_quotient(tf, 0.0);
        g.expect(q.resolved, tf.name + ": tail unresolved");
        g.expect(q.quotient >= 1.0, tf.name + ": quotient " + fnum(q.quotient) + " < 1");
    }
    QuotientReport sharp = hardy_quotient(TestFunction::power_boundary(0.01), 0.0);
    g.near(sharp.quotient, 1.0404, 1e-4, "eps=0.01 quotient");
    g.expect(sharp.quotient <= 1.05, "eps=0.01 quotient above 1.05");

    double prev = hardy_quotient(TestFunction::sine(), 0.0).quotient;
    for (int depth = 1; depth <= 4; ++depth) {
        QuotientReport qi = improved_quotient(TestFunction::sine(), 2.0, depth);
        g.expect(qi.quotient >= 1.0,
                 "improved depth " + std::to_string(depth) + " below 1");
        g.expect(qi.quotient <= prev + 1e-12,
                 "improved depth " + std::to_string(depth) + " not monotone");
        prev = qi.quotient;
    }
}

// ---- 8: distance functions are unit-speed off the medial axis -------------------

void c8(Gate& g) {
    struct Case {
        Domain dom;
        double reach;
        const char* tag;
    } cases[] = {{Domain::disk(2.0), 2.0, "disk"},
                 {Domain::annulus(1.0, 2.0), 0.5, "annulus"},
                 {Domain::ellipse(2.0, 1.0), 0.5, "ellipse"}};
    for (const auto& c : cases) {
        g.expect(std::abs(c.dom.reach() - c.reach) <= 1e-10,
                 std::string(c.tag) + ": reach " + fnum(c.dom.reach()));
        GradNormReport r = grad_norm_check(c.dom, 2000, 20260825u);
        g.expect(r.tested >= 1000,
                 std::string(c.tag) + ": only " + std::to_string(r.tested) + " samples");
        g.expect(r.pass && r.max_dev <= 1e-6,
                 std::string(c.tag) + ": |grad d| off by " + fnum(r.max_dev));
    }
}

// ---- 9: radial reduction of the critical disk potential -------------------------

void c9(Gate& g) {
    for (int n : {1, 2, 3}) {
        RadialVerdict crit = radial_esa(PotentialFamily::power_critical(0.75), n, 1.0);
        g.expect(crit.verdict == EsaVerdictType::EssentiallySelfAdjoint,
                 "3/4 coefficient, dim " + std::to_string(n) + " not ESA");
        RadialVerdict sub = radial_esa(PotentialFamily::power_critical(0.5), n, 1.0);
        g.expect(sub.verdict == EsaVerdictType::NotEssentiallySelfAdjoint,
                 "1/2 coefficient, dim " + std::to_string(n) + " not rejected");
    }
}

// ---- 10: eigenfunction decay matches the indicial exponent ----------------------

void c10(Gate& g) {
    IntervalPotential crit(PotentialFamily::power_critical(0.75),
                           PotentialFamily::power_critical(0.75));
    GroundStateOptions opt;
    opt.cutoff = 1e-3;
    GroundState gs = ground_state(crit, 0, opt);
    DecayFit fit = decay_fit(gs, 1e-3);
    g.near(fit.exponent, 1.5, 0.05, "decay exponent");

    IntervalPotential free(PotentialFamily::power_critical(0.0),
                           PotentialFamily::power_critical(0.0));
    GroundStateOptions exact;
    exact.cutoff = 0.0;
    GroundState flat = ground_state(free, 0, exact);
    g.near(flat.energy, 9.869604401089358, 1e-6, "pi^2 energy");
    g.expect(flat.nodes == 0, "free ground state has interior nodes");
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* title;
        void (*body)(Gate&);
    } entries[] = {
        {1, "power-family verdicts and threshold", c1},
        {2, "log-hierarchy thresholds (depth 2, 3)", c2},
        {3, "borderline pairs: residual, wronskian, L2", c3},
        {4, "dyadic series verdicts and sup condition", c4},
        {5, "substitution identity on solution matrix", c5},
        {6, "weighted annulus ratios finite and stable", c6},
        {7, "Hardy quotients and iterated-log improvement", c7},
        {8, "distance gradients and reach constants", c8},
        {9, "radial disk reduction", c9},
        {10, "eigenfunction decay and free energy", c10},
    };
    int failures = 0;
    for (const auto& e : entries) {
        Gate gate;
        auto t0 = std::chrono::steady_clock::now();
        try {
            e.body(gate);
        } catch (const std::exception& ex) {
            gate.expect(false, std::string("exception: ") + ex.what());
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string verdict = gate.fails.str().empty() ? "PASS" : "FAIL";
        if (verdict == "FAIL") ++failures;
        std::printf("[%s] C%-2d %-46s (%6.1f s)%s%s\n", verdict.c_str(), e.id, e.title, dt,
                    gate.fails.str().empty() ? "" : ": ", gate.fails.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
