#ifndef HLPLAB_OPERATORS_HPP
#define HLPLAB_OPERATORS_HPP

#include <functional>
#include <span>
#include <vector>

#include "hlplab/quad.hpp"
#include "hlplab/radialfn.hpp"

namespace hlplab {

enum class KernelForm {
  HardyIndicator,  // indicator of the joint unit ball in per-block radii
  HlpMax,          // 1 / max(1, s_1^n, ..., s_m^n)^m
  HilbertSum,      // 1 / (1 + s_1^n + ... + s_m^n)^m
  Custom,          // user radial profile K_rad(s_1, ..., s_m)
};

// How HardyIndicator combines the m block radii into one constraint.
enum class HardyRadius {
  Euclidean,  // s_1^2 + ... + s_m^2 <= 1 (default)
  MaxBlocks,  // max_i s_i <= 1 (escape hatch)
};

struct RadialKernel {
  KernelForm form = KernelForm::HlpMax;
  int arity = 1;  // m
  int n = 1;      // ambient dimension of each block
  HardyRadius hardy_radius = HardyRadius::Euclidean;
  std::function<double(std::span<const double>)> custom;

  void validate() const;
  // Radial profile K_rad(s_1,...,s_m); s must have arity entries.
  double evaluate(std::span<const double> s) const;
};

// omega_n [ r^{-n} int_0^r f(s)s^{n-1}ds + int_r^inf f(s)s^{-1}ds ],
// both pieces exact via integrate_weighted. A non-decaying tail raises
// DivergenceError.
double apply_hlp(const PiecewisePowerLog& f, int n, double r);

// The same operator evaluated once for all radii: the exact image as a
// PiecewisePowerLog (log terms appear when exponents collide with the
// kernel's homogeneity). Agrees with apply_hlp pointwise to ~1e-12 relative.
PiecewisePowerLog apply_hlp_symbolic(const PiecewisePowerLog& f, int n);

// omega_n^m int...int K_rad(s) prod_i f_i(r s_i) s_i^{n-1} ds. Nested
// quadrature for m <= 3 (kernel kinks and support breakpoints pre-split,
// ConvergenceError if any level fails); seeded Monte Carlo for m > 3 (the
// estimate is returned as-is — inspect *detail for the standard error).
double apply_kernel_operator(const RadialKernel& K,
                             const std::vector<PiecewisePowerLog>& fs,
                             double r, const QuadratureConfig& cfg,
                             IntegralResult* detail = nullptr);

}  // namespace hlplab

#endif  // HLPLAB_OPERATORS_HPP
