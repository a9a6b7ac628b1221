#ifndef HLPLAB_QUAD_HPP
#define HLPLAB_QUAD_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace hlplab {

// How an infinite upper limit is folded onto [0, 1).
enum class TailMap { RationalMap };  // r = a + c t/(1-t), c ~ segment scale

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  TailMap tail_map = TailMap::RationalMap;
  // If the integrand behaves like r^a near 0, pass a here; integrable
  // singularities (a in (-1,0)) are flattened by the substitution r = t^s.
  std::optional<double> singularity_exponent_hint;
  long long mc_samples = 1'000'000;
  std::uint64_t mc_seed = 0;

  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  // converged implies error_estimate <= max(rel_tol*|value|, abs_tol)
  bool converged = false;
};

using Integrand1D = std::function<double(double)>;
using IntegrandND = std::function<double(std::span<const double>)>;

// Adaptive Gauss(7)/Kronrod(15) integration of f over (lo, hi), hi may be
// inf. `splits` lists interior radii (kernel kinks, support breakpoints)
// where the integrand is known to be non-smooth; the interval is pre-split
// there before adaptation. Non-convergence within cfg.max_subdivisions
// returns converged=false with the best estimate; a NaN/inf integrand value
// raises EvaluationError naming the abscissa.
IntegralResult integrate_1d(const Integrand1D& f, double lo, double hi,
                            const QuadratureConfig& cfg,
                            std::span<const double> splits = {});

// Per-coordinate options for integrate_nested. Entry j applies to coords[j];
// coords[m-1] is the outermost integration variable.
struct NestedOptions {
  std::vector<double> upper;                        // default: inf each
  std::vector<std::vector<double>> splits;          // default: none
  std::vector<std::optional<double>> hints;         // default: none
};

// Iterated integral of f over (0, upper_0) x ... x (0, upper_{m-1}) with
// m <= 3. Inner levels run at geometrically tighter tolerances than outer
// ones so each level's target stays above the noise floor it inherits from
// below; converged reports whether the aggregated error estimate (outer
// estimate plus inherited inner error) met cfg.rel_tol/abs_tol.
IntegralResult integrate_nested(const IntegrandND& f, int m,
                                const QuadratureConfig& cfg,
                                const NestedOptions& opts = {});

namespace detail {
// Tolerance for level j (0 = innermost) of an m-level iterated integral.
double nested_level_rel_tol(double rel_tol, int m, int j);
}  // namespace detail

// Importance sampler for one coordinate on (0, inf) (or a finite interval).
class ImportanceMap {
 public:
  static ImportanceMap uniform(double lo, double hi);
  // Normalized density proportional to r^alpha on (0,1] and r^tau on [1,inf);
  // requires alpha > -1 (integrable head) and tau < -1 (integrable tail).
  static ImportanceMap power_law(double alpha, double tau);

  double sample(double u01) const;  // maps u in (0,1) to a radius
  double density(double r) const;   // normalized pdf at r

 private:
  enum class Kind { Uniform, PowerLaw };
  Kind kind_ = Kind::Uniform;
  double lo_ = 0.0, hi_ = 1.0;        // uniform
  double alpha_ = 0.0, tau_ = -2.0;   // power law
  double head_mass_ = 0.5, norm_ = 1.0;
};

// Seeded importance-sampled Monte Carlo estimate of the integral of f >= 0
// over the product domain, one independent RNG stream per coordinate.
// error_estimate is the standard error of the mean; converged reports
// whether it met the tolerance (usually false at tight tolerances).
IntegralResult integrate_mc(const IntegrandND& f, int m,
                            std::span<const ImportanceMap> maps,
                            const QuadratureConfig& cfg);

}  // namespace hlplab

#endif  // HLPLAB_QUAD_HPP
