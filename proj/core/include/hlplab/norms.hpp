#ifndef HLPLAB_NORMS_HPP
#define HLPLAB_NORMS_HPP

#include <functional>
#include <string>
#include <vector>

#include "hlplab/quad.hpp"
#include "hlplab/radialfn.hpp"

namespace hlplab {

enum class Exactness { ClosedForm, Numeric };

// Sampled distribution function lambda -> mu_gamma({ g > lambda }).
struct DistributionCurve {
  struct Sample {
    double lambda = 0.0;
    double measure = 0.0;
  };
  std::vector<Sample> samples;  // sorted by lambda, measure non-increasing
  Exactness exactness = Exactness::ClosedForm;

  std::string to_csv() const;  // header: lambda,measure,exactness
};

// (omega_n int_0^inf |f(r)|^p r^{beta+n-1} dr)^{1/p}. Exact whenever |f|^p
// stays inside the power-log algebra (single power-term pieces, or integer
// p with nonnegative pure-power pieces); adaptive quadrature otherwise.
// A non-integrable |f|^p raises DivergenceError naming the offending piece.
double strong_norm(const PiecewisePowerLog& f, double p, double beta, int n);

// omega_n int_{ {g > lambda} } r^{gamma+n-1} dr. Closed form through
// superlevel_set when the piece shapes allow it; otherwise a numeric
// root-bracketing fallback (reported via *exactness). A level set of
// infinite measure returns +inf (a sentinel, not an error). The numeric
// fallback applies to |g|; closed form takes g as-is (all operator images
// here are nonnegative).
double distribution_measure(const PiecewisePowerLog& g, double lambda,
                            double gamma, int n,
                            Exactness* exactness = nullptr);

// sup_{lambda>0} lambda * distribution_measure(g,lambda)^{1/q}. Candidate
// lambdas sit at every piece-endpoint value and interior critical value of
// g (the case boundaries where level sets change shape); golden-section on
// log(lambda) refines between consecutive candidates until the bracket is
// below 1e-10 relative. An infinite supremum raises UnboundedNormError.
// When curve_out is given, every (lambda, measure) pair evaluated is
// recorded there.
double weak_norm(const PiecewisePowerLog& g, double q, double gamma, int n,
                 DistributionCurve* curve_out = nullptr);

// Shape knowledge for weak norms of black-box radial profiles (numerically
// applied operator images): either globally non-increasing in r, or a single
// interior maximum.
enum class ShapeHint { Decreasing, Unimodal };

// Weak norm of a black-box nonnegative radial profile g via its radius
// parameterization. Decreasing profiles use the exact identity
//   sup_lambda lambda*mu^{1/q} = (omega_n/(n+gamma))^{1/q} sup_R g(R) R^{(n+gamma)/q};
// unimodal profiles bisect the level set on both sides of the peak. The
// search window [r_lo, r_hi] expands automatically; a supremum that keeps
// growing at the window edge raises UnboundedNormError.
double weak_norm_numeric(const std::function<double(double)>& g, double q,
                         double gamma, int n, ShapeHint hint,
                         double r_lo = 1e-9, double r_hi = 1e9);

// Seeded rejection estimate of distribution_measure (Monte Carlo oracle for
// the closed form): uniform proposals on (0, r_max), r_max chosen by
// doubling until the level set is covered.
double distribution_measure_mc(const PiecewisePowerLog& g, double lambda,
                               double gamma, int n,
                               const QuadratureConfig& cfg);

}  // namespace hlplab

#endif  // HLPLAB_NORMS_HPP
