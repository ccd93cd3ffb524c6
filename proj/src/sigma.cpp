#include "confining/sigma.hpp"

#include <cmath>
#include <stdexcept>

namespace confining {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kLn4 = 1.38629436111989061883;
}

Sigma1Check check_sigma1(const GFunction& g, int n_grid, double s_depth) {
    if (n_grid < 8) throw std::invalid_argument("check_sigma1: grid too small");
    Sigma1Check out{true, 1e300, -1e300, 0.0};
    // interior window: s in (s0, s0 + s_depth]
    for (int i = 1; i <= n_grid; ++i) {
        double s = g.s0 + s_depth * i / n_grid;
        double sl = g.slope_t(s);
        out.min_slope = std::min(out.min_slope, sl);
        out.max_slope = std::max(out.max_slope, sl);
    }
    // plateau window: t in [d0, 2 d0], s in [s0 - ln2, s0]
    double s_lo = std::max(g.s0 - kLn2, 1e-9);
    for (int i = 0; i < n_grid; ++i) {
        double s = s_lo + (g.s0 - s_lo) * i / (n_grid - 1);
        out.max_plateau_slope = std::max(out.max_plateau_slope, std::abs(g.slope_t(s)));
    }
    out.ok = out.min_slope >= 0.0 && out.max_slope <= 1.0 + 1e-12 &&
             out.max_plateau_slope <= 1e-12;
    return out;
}

SigmaSeries sigma_series_terms(const GFunction& g, double s_rho0, int n_terms) {
    if (n_terms < 1) throw std::invalid_argument("sigma_series_terms: need n_terms >= 1");
    if (!(s_rho0 >= g.s0))
        throw std::domain_error("sigma_series_terms: rho0 must lie inside the cutoff");
    SigmaSeries out;
    out.s_rho0 = s_rho0;
    out.ln_terms.resize(n_terms + 1);
    double sum = 0, comp = 0;  // compensated summation
    for (int n = 0; n <= n_terms; ++n) {
        double s_n = s_rho0 + n * kLn2;
        double ln_a = -n * kLn4 - 2.0 * g.value(s_n);
        out.ln_terms[n] = ln_a;
        double a = std::exp(ln_a);
        double y = a - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    out.partial_sum = sum;
    return out;
}

DivergenceReport divergence_verdict(const SigmaSeries& series) {
    int n_max = static_cast<int>(series.ln_terms.size()) - 1;
    if (n_max < 64)
        throw std::invalid_argument("divergence_verdict: need at least 64 terms");
    // depth 4 needs lnlnln(s_n) > 0 on the window; push the start past that
    // point when possible, otherwise drop to a depth-3 ladder
    int n_first = 16;
    auto l3 = [&](int n) { return lnk(3, series.s_rho0 + n * kLn2); };
    while (n_first < n_max - 256 && l3(n_first) <= 0.01) ++n_first;
    int depth = l3(n_first) > 0.01 ? 4 : 3;
    size_t m = n_max - n_first + 1;
    std::vector<std::vector<double>> cols(depth + 3, std::vector<double>(m));
    std::vector<double> y(m);
    for (size_t i = 0; i < m; ++i) {
        double s_n = series.s_rho0 + (n_first + i) * kLn2;
        cols[0][i] = 1.0;
        for (int k = 1; k <= depth; ++k) cols[k][i] = -lnk(k, s_n);
        // power tails of the correction integrals, kept out of the ladder read
        cols[depth + 1][i] = 1.0 / s_n;
        cols[depth + 2][i] = 1.0 / (s_n * std::log(s_n));
        y[i] = series.ln_terms[n_first + i];
    }
    LstsqFit fit = lstsq(cols, y);

    DivergenceReport rep{};
    for (int k = 0; k <= depth; ++k) rep.beta[k] = fit.coef[k];
    rep.rms = fit.rms_residual;
    rep.decided_level = 0;
    rep.exhausted = false;
    if (rep.rms > 0.05) {
        rep.verdict = SeriesVerdict::Inconclusive;
        return rep;
    }
    // Bertrand ladder: sum 1/(s^b1 (ln s)^b2 ...) converges iff the exponent
    // vector exceeds (1,1,...) at its first decisive level
    constexpr double kMargin = 0.1;
    for (int k = 1; k <= depth; ++k) {
        if (rep.beta[k] > 1.0 + kMargin) {
            rep.verdict = SeriesVerdict::Convergent;
            rep.decided_level = k;
            return rep;
        }
        if (rep.beta[k] < 1.0 - kMargin) {
            rep.verdict = SeriesVerdict::Divergent;
            rep.decided_level = k;
            return rep;
        }
    }
    // every level sits on the boundary; the boundary series diverges
    rep.verdict = SeriesVerdict::Divergent;
    rep.decided_level = depth;
    rep.exhausted = true;
    return rep;
}

SigmaVerdict sigma_verdict(const GFunction& g, double s_rho0_a, double s_rho0_b,
                           int n_terms) {
    SigmaVerdict out{};
    out.per_rho[0] = divergence_verdict(sigma_series_terms(g, s_rho0_a, n_terms));
    out.per_rho[1] = divergence_verdict(sigma_series_terms(g, s_rho0_b, n_terms));
    out.s_rho0[0] = s_rho0_a;
    out.s_rho0[1] = s_rho0_b;
    out.n_terms = n_terms;
    out.agree = out.per_rho[0].verdict == out.per_rho[1].verdict;
    out.verdict = out.agree ? out.per_rho[0].verdict : SeriesVerdict::Inconclusive;
    return out;
}

BrusentsevReport brusentsev_sup(const GFunction& g, int n_probe) {
    if (n_probe < 8) throw std::invalid_argument("brusentsev_sup: need >= 8 probes");
    std::vector<std::vector<double>> cols(2, std::vector<double>(n_probe));
    std::vector<double> y(n_probe);
    double lo = g.s0 + 5.0, hi = g.s0 + 600.0;
    double llo = std::log(lo), lhi = std::log(hi);
    double ln_b_last = 0;
    for (int i = 0; i < n_probe; ++i) {
        double s = std::exp(llo + (lhi - llo) * i / (n_probe - 1));
        double slope = g.slope_t(s);
        double ln_b = std::log(std::max(slope, 1e-300)) + s + g.value(s);
        cols[0][i] = 1.0;
        cols[1][i] = std::log(s);
        y[i] = ln_b;
        ln_b_last = ln_b;
    }
    LstsqFit fit = lstsq(cols, y);
    BrusentsevReport rep{};
    rep.gamma = fit.coef[1];
    rep.ln_b_deep = ln_b_last;
    rep.satisfied = rep.gamma <= 0.05;
    return rep;
}

std::string to_string(SeriesVerdict v) {
    switch (v) {
        case SeriesVerdict::Divergent: return "divergent";
        case SeriesVerdict::Convergent: return "convergent";
        default: return "inconclusive";
    }
}

}  // namespace confining
