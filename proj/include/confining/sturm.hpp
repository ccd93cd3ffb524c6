#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "confining/potentials.hpp"

// Endpoint classification for -u'' + V u on (0, d): integrate the dominant
// solution outward in s = ln(1/t), recover the recessive one by reduction of
// order, fit tail exponents and decide square-integrability by the iterated
// log ladder.  Limit circle means every solution is L^2 near the endpoint.

namespace confining {

struct QuadratureGrid {
    std::vector<double> s;       // ascending, uniform spacing
    std::vector<double> weight;  // composite Simpson weights in s
    QuadratureGrid(double s_min, double s_max, int n);  // n odd, >= 3
    double integrate_s(const std::function<double(double)>& f) const;
    // ln of int |u|^2 dt over the whole grid (dt = -e^{-s} ds)
    double log_mass_dt(const std::vector<LogValue>& u) const;
    // relative error of int t dt against the closed form; quadrature self-test
    double self_check_rel_err() const;
};

std::vector<double> make_s_grid(double s_lo, double s_hi, int n);

struct SolveOptions {
    double s_anchor = 1.3862943611198906;  // t = 1/4, clipped to the family domain
    double s_span = 2500.0;                // depth of the integration window
    int n_nodes = 5001;
    double rtol = 1e-12;
    double atol = 1e-12;
    std::vector<double> energies = {0.0, -1.0, 1.0};
    int tail_levels = 3;                   // max iterated-log levels in the fit
};

// solve u'' = (V - E) u from the first grid node toward s_hi; initial data in
// the t-convention (u, du/dt) at the anchor
SampledSolution integrate_solution(const PotentialFamily& fam, double energy,
                                   const std::vector<double>& s_grid, double u0,
                                   double du0_t, double rtol = 1e-12, double atol = 1e-12);

// second solution phi = u * int_0^t u^{-2}, built from the deep end
SampledSolution recessive_from_dominant(const SampledSolution& dom);

struct TailExponent {
    double sigma = 0;            // |u| ~ t^sigma
    std::vector<double> gamma;   // iterated-log corrections, gamma_k on ln L_k
    double rms = 0;
    bool valid = false;
};

// fit ln|u| = -sigma s + sum_k gamma_k ln L_k + c0 + c1/s on the deep window
TailExponent tail_exponent(const SampledSolution& u, int max_levels = 3);

enum class L2Status { SquareIntegrable, NotSquareIntegrable, Borderline };

// decide int |u|^2 dt near t = 0 from the fitted exponents; sigma is compared
// against -1/2 and ties cascade down the 2*gamma_k vs -1 ladder
L2Status l2_status(const TailExponent& te);

enum class EndpointType { LimitPoint, LimitCircle, Borderline };

struct EnergyDetail {
    double energy;
    TailExponent dominant_tail, recessive_tail;
    L2Status dominant_l2, recessive_l2;
    EndpointType type;
    bool oscillatory = false;
};

struct EndpointClassification {
    EndpointType type;
    std::vector<EnergyDetail> per_energy;
    bool agree;
};

EndpointClassification classify_endpoint(const PotentialFamily& fam,
                                         const SolveOptions& opt = {});

enum class EsaVerdictType { EssentiallySelfAdjoint, NotEssentiallySelfAdjoint, Borderline };

struct EsaResult {
    EsaVerdictType verdict;
    EndpointClassification left, right;
};

// operator on an interval is essentially self-adjoint iff both endpoints are
// limit point
EsaResult esa_verdict(const PotentialFamily& left, const PotentialFamily& right,
                      const SolveOptions& opt = {});

struct SweepEval {
    double param;
    EndpointType type;
    double sigma_dominant;   // fitted exponents at E = 0
    double sigma_recessive;
    bool agree;
};

struct SweepResult {
    enum class Status { Found, NoThreshold } status;
    double c_hat = 0;       // centre of the borderline band
    double band_lo = 0;     // deepest parameter still classified limit circle
    double band_hi = 0;     // shallowest parameter already limit point
    bool increasing = true; // limit point on the high-parameter side
    std::vector<SweepEval> evaluations;
};

// locate the classification flip of a one-parameter family by bisecting both
// edges of the borderline band; throws if the verdicts are not monotone
SweepResult threshold_sweep(const std::function<PotentialFamily(double)>& make,
                            double c_lo, double c_hi, double tol,
                            const SolveOptions& opt = {});

struct WronskianCertificate {
    double reference = 0;        // W at the anchor node
    double max_drift_rel = 0;    // relative drift over the resolvable window
    double resolvable_s_max = 0; // deepest s where the pair is still independent
    bool fully_resolvable = false;
};

// W = u_a (u_b)' - (u_a)' u_b in the t-convention; constant for exact pairs
WronskianCertificate wronskian_certificate(const SampledSolution& a,
                                           const SampledSolution& b);

const char* to_string(EndpointType t);
const char* to_string(L2Status s);
const char* to_string(EsaVerdictType v);

}  // namespace confining
