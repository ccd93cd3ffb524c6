#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "confining/iterlog.hpp"
#include "confining/numerics.hpp"

// Boundary potential families V(t) = w(s)/t^2 with t the distance to the
// endpoint and s = ln(1/t), together with the explicit borderline solutions
// and the log-hierarchy weight functions used by the summability test.

namespace confining {

// nonnegative profile with t f(t) -> 0 and a finite integral near 0
struct IntegrableProfile {
    std::string name;
    std::function<double(double)> f;       // f(t)
    std::function<double(double)> cum;     // int_t^1 f(u) du
    std::function<double(double)> cum_s;   // same, from s = ln(1/t); deep-safe
    std::function<double(double)> tf_s;    // t f(t) from s; deep-safe

    static IntegrableProfile zero();
    static IntegrableProfile one();
};

class PotentialFamily {
  public:
    enum class Kind { PowerCritical, LogHierarchy, Counterexample, BoundedPerturbation, Custom };

    static PotentialFamily power_critical(double c);
    // w = leading - sum_{j=2}^{p-1} prod_inv(j-1) - last_constant * prod_inv(p-1)
    static PotentialFamily log_hierarchy(int p, double leading, double last_constant);
    static PotentialFamily counterexample(int p, double alpha);
    static PotentialFamily bounded_perturbation(PotentialFamily base, IntegrableProfile f);
    static PotentialFamily custom(std::string name, std::function<double(double)> w,
                                  double domain_min_s);

    double w(double s) const;        // dimensionless coefficient, V = w/t^2
    double v_at(double t) const;     // raw-t evaluation
    double domain_min_s() const;     // smallest admissible s
    Kind kind() const;
    int p() const;
    double c() const;                // power coefficient / last hierarchy constant
    double alpha() const;
    double leading() const;
    std::string profile_name() const;
    std::string describe() const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit PotentialFamily(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

// --- critical coefficients ---------------------------------------------------

// w(s) = 3/4 - sum_{j=2}^{p} prod_inv(j-1, s); p = 1 gives the bare 3/4
double critical_coeff(int p, LogCoordinate x);

// w(s) = 3/4 - sum_{j=2}^{p-1} prod_inv(j-1, s) - c * prod_inv(p-1, s); p >= 2
double optimality_coeff(int p, double c, LogCoordinate x);

// --- explicit borderline solutions ------------------------------------------

// ln psi_{p,alpha}(t) = s/2 - (1/2) sum_{j=1}^{p-1} ln L_j + alpha ln L_p
double counterexample_psi_log(int p, double alpha, LogCoordinate x);

// d(ln psi)/ds at s
double counterexample_psi_dlog(int p, double alpha, double s);

// exact t^2 psi''/psi, from the second derivative of the closed form
double counterexample_potential(int p, double alpha, LogCoordinate x);

// the sum of the leading terms plus the printed correction list; agrees with
// counterexample_potential identically and is kept as a cross-check target
double counterexample_potential_display(int p, double alpha, LogCoordinate x);

// sampled solution on an ascending s-grid; values in signed-log form, du = d/dt
struct SampledSolution {
    std::vector<double> s;
    std::vector<LogValue> u;
    std::vector<LogValue> du;
    double energy = 0;
    double wronskian_drift = 0;
    double max_local_error = 0;
    bool tail_resolved = true;
};

SampledSolution counterexample_psi_sample(int p, double alpha, const std::vector<double>& s_grid);

// second solution phi = psi * int_0^t psi^{-2}; requires the grid to reach deep
// enough that the cumulative integral stabilizes (else tail_resolved = false)
SampledSolution second_solution(int p, double alpha, const std::vector<double>& s_grid);

// --- weight functions for the summability condition --------------------------

struct GFunction {
    std::string name;
    double s0 = 1.0;  // ln(1/d0); G is constant and G' = 0 for s < s0
    std::function<double(double)> value;    // G at s
    std::function<double(double)> slope_t;  // t G'(t) at s

    bool d0_materializable() const { return s0 <= kMaxMaterializableS; }
    double d0() const;
    double g_at_t(double t) const { return value(std::log(1.0 / t)); }
    double gprime_at_t(double t) const { return slope_t(std::log(1.0 / t)) / t; }
};

// analytic families, plateaued at d0
GFunction g_log(double d0);                              // G = ln t
GFunction g_log_minus_ct(double c, double d0);           // G = ln t - c t
GFunction g_log_plus_klog1(double kcoef, double d0);     // G = ln t + k ln L_1

// full hierarchy construction: h-joint, scriptL correction and profile term;
// d0 is the largest admissible cutoff at or below min(e_p^{-1}, d_omega)
GFunction g_hierarchy_build(int p, const IntegrableProfile& f, double d_omega);

}  // namespace confining
