#pragma once

#include <array>
#include <string>
#include <vector>

#include "confining/potentials.hpp"

// Summability condition on a weight function G: the dyadic series
// a_n = 4^{-n} exp(-2 G(rho_n)), rho_n = rho_0 2^{-n}, must diverge.
// Everything is evaluated in s = ln(1/t); rho_0 enters as s_rho0 = ln(1/rho_0).

namespace confining {

struct Sigma1Check {
    bool ok;
    double min_slope;          // over (0, d0), i.e. s > s0
    double max_slope;
    double max_plateau_slope;  // over [d0, 2 d0]; must vanish
};

// verify 0 <= t G'(t) <= 1 inside the cutoff and G' = 0 on [d0, 2 d0]
Sigma1Check check_sigma1(const GFunction& g, int n_grid = 512, double s_depth = 60.0);

struct SigmaSeries {
    std::vector<double> ln_terms;  // ln a_n, n = 0..N
    double partial_sum;            // sum of a_n (compensated)
    double s_rho0;                 // starting depth; s_n = s_rho0 + n ln 2
};

SigmaSeries sigma_series_terms(const GFunction& g, double s_rho0, int n_terms);

enum class SeriesVerdict { Divergent, Convergent, Inconclusive };

struct DivergenceReport {
    SeriesVerdict verdict;
    int decided_level;           // 1-based exponent level that settled it; 0 if none
    bool exhausted;              // all levels structurally on the boundary
    std::array<double, 5> beta;  // intercept + 4 ladder exponents
    double rms;
};

// fit ln a_n = beta0 - sum_k beta_k ln_k(s_n) + beta5 / s_n on n in [16, N]
// and compare the exponent ladder against the Bertrand boundary (1,1,1,1)
// lexicographically; the s_n variable makes the fit shift-invariant in rho0
DivergenceReport divergence_verdict(const SigmaSeries& series);

struct SigmaVerdict {
    SeriesVerdict verdict;
    DivergenceReport per_rho[2];
    double s_rho0[2];
    int n_terms;
    bool agree;
};

// run the series test at two starting radii and require agreement
SigmaVerdict sigma_verdict(const GFunction& g, double s_rho0_a, double s_rho0_b,
                           int n_terms = 2048);

struct BrusentsevReport {
    double gamma;       // growth exponent of G'(t) e^{G(t)} against ln s
    double ln_b_deep;   // ln G' e^G at the deepest probe
    bool satisfied;     // bounded, i.e. gamma <= 0.05
};

// probe whether sup G'(t) e^{G(t)} < infinity by fitting the growth of
// ln B(s) = ln(t G') + s + G against ln s on log-spaced points in (s0+5, s0+600)
BrusentsevReport brusentsev_sup(const GFunction& g, int n_probe = 64);

std::string to_string(SeriesVerdict v);

}  // namespace confining
