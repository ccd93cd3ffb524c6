#pragma once

#include <cstdint>
#include <string>

#include "confining/potentials.hpp"
#include "confining/sturm.hpp"

// Distance-to-boundary geometry for simple smooth planar domains, and the
// radial reduction that feeds a disk problem to the half-line classifier.

namespace confining {

struct DistGrad {
    double d;
    double gx, gy;
    bool on_medial_axis;  // d >= reach; grad reports the branch that attained the min
};

class Domain {
  public:
    enum class Shape { Interval, Disk, Annulus, Ellipse };

    static Domain interval();                    // (0, 1), one-dimensional
    static Domain disk(double radius);
    static Domain annulus(double inner, double outer);
    static Domain ellipse(double a, double b);   // semi-axes, b <= a

    Shape shape() const { return shape_; }
    double p1() const { return p1_; }  // R | r | a
    double p2() const { return p2_; }  // - | R | b
    double reach() const;
    bool contains(double x, double y = 0.0) const;
    DistGrad dist_and_grad(double x, double y = 0.0) const;
    std::string describe() const;

  private:
    Domain(Shape s, double p1, double p2) : shape_(s), p1_(p1), p2_(p2) {}
    Shape shape_;
    double p1_, p2_;
};

struct GradNormReport {
    int requested;
    int tested;          // samples that landed inside with d < reach
    double max_dev;      // max | |grad d| - 1 | over tested samples
    double max_norm;     // max |grad d| over every interior sample, medial ones included
    double worst_x, worst_y;
    bool pass;           // max_dev <= 1e-6 and max_norm <= 1 + 1e-5
};

// finite-difference check of |grad d| = 1 at random interior points below the reach
GradNormReport grad_norm_check(const Domain& dom, int n_samples, std::uint64_t seed);

// radial reduction of -Laplace + V on a disk of radius R in dimension n:
// u = r^{-(n-1)/2} w turns the radial operator into -w'' + [V + (n-1)(n-3)/(4 r^2)] w
// on 0 < t = R - r; the centrifugal term is bounded on t < R/2
PotentialFamily radial_reduce(const PotentialFamily& boundary, int dim, double radius);

struct RadialVerdict {
    EsaVerdictType verdict;
    EndpointClassification boundary;
    int dim;
};

// classify the boundary endpoint of the reduced disk problem; the center is a
// removable coordinate singularity, so self-adjointness rides on the boundary alone
RadialVerdict radial_esa(const PotentialFamily& boundary, int dim, double radius,
                         const SolveOptions& opt = {});

}  // namespace confining
