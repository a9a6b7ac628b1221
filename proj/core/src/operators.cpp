#include "hlplab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hlplab/errors.hpp"
#include "hlplab/spaces.hpp"

namespace hlplab {

namespace {

constexpr double kCollisionTol = 1e-12;
const double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void diverge(const char* what, const PowerLogTerm& t,
                          const char* where) {
  std::ostringstream msg;
  msg << what << ": integral of term coeff=" << t.coeff << " power=" << t.power
      << " log_order=" << t.log_order << " diverges at " << where;
  throw DivergenceError(msg.str());
}

}  // namespace

void RadialKernel::validate() const {
  if (arity < 1) throw DomainError("RadialKernel: arity must be >= 1");
  if (n < 1) throw DomainError("RadialKernel: dimension n must be >= 1");
  if (form == KernelForm::Custom && !custom)
    throw DomainError("RadialKernel: Custom form requires a callable");
}

double RadialKernel::evaluate(std::span<const double> s) const {
  if (static_cast<int>(s.size()) != arity)
    throw DomainError("RadialKernel::evaluate: wrong number of radii");
  switch (form) {
    case KernelForm::HardyIndicator: {
      if (hardy_radius == HardyRadius::Euclidean) {
        double sum = 0.0;
        for (double v : s) sum += v * v;
        return sum <= 1.0 ? 1.0 : 0.0;
      }
      for (double v : s)
        if (v > 1.0) return 0.0;
      return 1.0;
    }
    case KernelForm::HlpMax: {
      double mx = 1.0;
      for (double v : s) mx = std::max(mx, std::pow(v, n));
      return std::pow(mx, -arity);
    }
    case KernelForm::HilbertSum: {
      double sum = 1.0;
      for (double v : s) sum += std::pow(v, n);
      return std::pow(sum, -arity);
    }
    case KernelForm::Custom:
      return custom(s);
  }
  throw DomainError("RadialKernel::evaluate: unknown form");
}

double apply_hlp(const PiecewisePowerLog& f, int n, double r) {
  if (n < 1) throw DomainError("apply_hlp: dimension n must be >= 1");
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError("apply_hlp: radius must be positive and finite");
  const double wn = unit_sphere_area(n);
  const double head = integrate_weighted(f, 0.0, r, static_cast<double>(n - 1));
  const double tail = integrate_weighted(f, r, kInf, -1.0);
  return wn * (std::pow(r, -n) * head + tail);
}

PiecewisePowerLog apply_hlp_symbolic(const PiecewisePowerLog& f, int n) {
  if (n < 1) throw DomainError("apply_hlp_symbolic: dimension n must be >= 1");
  if (f.is_zero()) return PiecewisePowerLog();
  const double wn = unit_sphere_area(n);
  const std::size_t np = f.pieces().size();

  std::vector<double> bps;
  std::vector<std::vector<PowerLogTerm>> pieces;

  for (std::size_t j = 0; j < np; ++j) {
    const RadiusInterval iv = f.interval(j);
    const double L = iv.lo, U = iv.hi;
    const auto& terms = f.pieces()[j];
    std::vector<PowerLogTerm> img;

    // Head part: r^{-n} * (F(L) + A(r) - A(L)) with A the antiderivative of
    // f(s) s^{n-1} inside this piece.
    double c_rinvn = integrate_weighted(f, 0.0, L, static_cast<double>(n - 1));
    for (const auto& t : terms) {
      const double aa = t.power + n;  // exponent of the antiderivative
      if (std::fabs(aa) < kCollisionTol) {
        // int c s^{-1} (log s)^k ds
        if (t.log_order == 1)
          throw UnsupportedShapeError(
              "apply_hlp_symbolic: head integral of a log term collides to "
              "log^2, outside the power-log algebra");
        img.push_back({wn * t.coeff, -static_cast<double>(n), 1});
        if (L == 0.0) diverge("apply_hlp_symbolic (head)", t, "r=0");
        c_rinvn -= t.coeff * std::log(L);
      } else if (t.log_order == 0) {
        img.push_back({wn * t.coeff / aa, t.power, 0});
        if (L == 0.0) {
          if (aa < 0.0) diverge("apply_hlp_symbolic (head)", t, "r=0");
          // limit 0
        } else {
          c_rinvn -= t.coeff * std::pow(L, aa) / aa;
        }
      } else {
        img.push_back({wn * t.coeff / aa, t.power, 1});
        img.push_back({-wn * t.coeff / (aa * aa), t.power, 0});
        if (L == 0.0) {
          if (aa < 0.0) diverge("apply_hlp_symbolic (head)", t, "r=0");
        } else {
          c_rinvn -=
              t.coeff * std::pow(L, aa) * (std::log(L) / aa - 1.0 / (aa * aa));
        }
      }
    }
    if (c_rinvn != 0.0)
      img.push_back({wn * c_rinvn, -static_cast<double>(n), 0});

    // Tail part: G(U) + B(U) - B(r) with B the antiderivative of f(s)/s.
    double c_const = integrate_weighted(f, std::isinf(U) ? kInf : U, kInf, -1.0);
    for (const auto& t : terms) {
      const double a = t.power;
      if (std::fabs(a) < kCollisionTol) {
        if (t.log_order == 1)
          throw UnsupportedShapeError(
              "apply_hlp_symbolic: tail integral of a log term collides to "
              "log^2, outside the power-log algebra");
        img.push_back({-wn * t.coeff, 0.0, 1});
        if (std::isinf(U)) diverge("apply_hlp_symbolic (tail)", t, "r=inf");
        c_const += t.coeff * std::log(U);
      } else if (t.log_order == 0) {
        img.push_back({-wn * t.coeff / a, a, 0});
        if (std::isinf(U)) {
          if (a > 0.0) diverge("apply_hlp_symbolic (tail)", t, "r=inf");
        } else {
          c_const += t.coeff * std::pow(U, a) / a;
        }
      } else {
        img.push_back({-wn * t.coeff / a, a, 1});
        img.push_back({wn * t.coeff / (a * a), a, 0});
        if (std::isinf(U)) {
          if (a > 0.0) diverge("apply_hlp_symbolic (tail)", t, "r=inf");
        } else {
          c_const +=
              t.coeff * std::pow(U, a) * (std::log(U) / a - 1.0 / (a * a));
        }
      }
    }
    if (c_const != 0.0) img.push_back({wn * c_const, 0.0, 0});

    bps.push_back(U);
    pieces.push_back(detail::merge_terms(std::move(img)));
  }

  // Beyond the support only the head term survives: omega_n F_total r^{-n}.
  const double last = f.breakpoints().back();
  if (!std::isinf(last)) {
    const double f_total =
        integrate_weighted(f, 0.0, last, static_cast<double>(n - 1));
    bps.push_back(kInf);
    pieces.push_back({{wn * f_total, -static_cast<double>(n), 0}});
  }
  return PiecewisePowerLog(std::move(bps), std::move(pieces));
}

namespace {

// Smallest power appearing in the first piece of f (head behavior), used as
// a singularity hint for the integrand f(r s) s^{n-1}.
std::optional<double> head_power(const PiecewisePowerLog& f) {
  if (f.pieces().empty()) return std::nullopt;
  const auto merged = detail::merge_terms(f.pieces().front());
  if (merged.empty()) return std::nullopt;
  return merged.front().power;
}

double kernel_operator_nested(const RadialKernel& K,
                              const std::vector<PiecewisePowerLog>& fs,
                              double r, const QuadratureConfig& cfg,
                              IntegralResult* detail_out) {
  const int m = K.arity;
  const double wn = unit_sphere_area(K.n);
  const double scale = std::pow(wn, m);

  QuadratureConfig level_cfg = cfg;
  // The levels integrate the unscaled integrand while the aggregate below
  // compares scale * error against cfg.abs_tol, so hand each level an
  // absolute budget that survives the scaling (halved so the sum of outer
  // and inherited error still fits).
  level_cfg.abs_tol = 0.5 * cfg.abs_tol / scale;
  level_cfg.singularity_exponent_hint.reset();

  std::vector<double> s(static_cast<std::size_t>(m), 0.0);
  std::vector<double> max_err(static_cast<std::size_t>(m), 0.0);
  std::vector<double> max_val(static_cast<std::size_t>(m), 0.0);
  long long subdivisions = 0;
  IntegralResult outer;

  std::function<double(int)> level = [&](int j) -> double {
    const auto ju = static_cast<std::size_t>(j);
    // Upper limit: the Hardy indicator support is baked into the bounds so
    // the integrand stays smooth inside each panel.
    double up = kInf;
    if (K.form == KernelForm::HardyIndicator) {
      if (K.hardy_radius == HardyRadius::MaxBlocks) {
        up = 1.0;
      } else {
        double used = 0.0;
        for (int k = j + 1; k < m; ++k)
          used += s[static_cast<std::size_t>(k)] * s[static_cast<std::size_t>(k)];
        if (used >= 1.0) return 0.0;
        up = std::sqrt(1.0 - used);
      }
    }

    std::vector<double> cuts;
    cuts.push_back(1.0);  // max-kernel switch at s_j = 1
    // Panel edges at the scales the outer coordinates impose (each value
    // and their sum): the tail map can only track decay that starts at a
    // segment edge.
    double outer_scale = 0.0;
    for (int k = j + 1; k < m; ++k) {
      const double sk = s[static_cast<std::size_t>(k)];
      if (sk > 0.0 && std::isfinite(sk)) {
        outer_scale += sk;
        cuts.push_back(sk);
      }
    }
    if (outer_scale > 0.0 && std::isfinite(outer_scale))
      cuts.push_back(outer_scale);
    for (double b : fs[ju].breakpoints())
      if (std::isfinite(b)) cuts.push_back(b / r);

    QuadratureConfig c = level_cfg;
    c.rel_tol = detail::nested_level_rel_tol(cfg.rel_tol, m, j);
    if (auto a = head_power(fs[ju])) {
      const double h = *a + K.n - 1;
      if (h > -1.0 && h < 0.0) c.singularity_exponent_hint = h;
    }

    Integrand1D g = [&, j, ju](double x) -> double {
      s[ju] = x;
      if (j > 0) return level(j - 1);
      // Hardy's indicator support is already encoded in the upper limits;
      // re-evaluating it at panel-edge nodes would only add fp jitter.
      double prod = K.form == KernelForm::HardyIndicator ? 1.0 : K.evaluate(s);
      if (prod == 0.0) return 0.0;
      for (int i = 0; i < m; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const double fi = evaluate(fs[iu], r * s[iu]);
        if (fi == 0.0) return 0.0;
        prod *= fi * std::pow(s[iu], K.n - 1);
      }
      return prod;
    };

    const IntegralResult res = integrate_1d(g, 0.0, up, c, cuts);
    subdivisions += res.subdivisions_used;
    if (j < m - 1) {
      max_err[ju] = std::max(max_err[ju], res.error_estimate);
      max_val[ju] = std::max(max_val[ju], std::fabs(res.value));
    } else {
      outer = res;
    }
    return res.value;
  };

  const double value = scale * level(m - 1);

  // Inner errors weighted by each level's value scale; negligible inner
  // results cannot move the outer integral however poor their own relative
  // accuracy (they exit through the abs_tol gate).
  double inherited_rel = 0.0;
  for (int j = 0; j + 1 < m; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    inherited_rel += max_err[ju] / std::max(max_val[ju], 1e-300);
  }
  IntegralResult agg;
  agg.value = value;
  agg.error_estimate =
      scale * outer.error_estimate + inherited_rel * std::fabs(value);
  agg.subdivisions_used =
      static_cast<int>(std::min<long long>(subdivisions, INT32_MAX));
  agg.converged = agg.error_estimate <=
                  std::max(cfg.rel_tol * std::fabs(value), cfg.abs_tol);
  if (detail_out) *detail_out = agg;
  if (!agg.converged && !detail_out) {
    std::ostringstream msg;
    msg << "apply_kernel_operator: nested quadrature did not converge at r="
        << r << " (error estimate " << agg.error_estimate << ")";
    throw ConvergenceError(msg.str());
  }
  return value;
}

double kernel_operator_mc(const RadialKernel& K,
                          const std::vector<PiecewisePowerLog>& fs, double r,
                          const QuadratureConfig& cfg,
                          IntegralResult* detail_out) {
  const int m = K.arity;
  const double wn = unit_sphere_area(K.n);

  // Importance maps: head exponent from f_i's first piece, generic -2 tail
  // (f_i with compact support contribute nothing out there anyway).
  std::vector<ImportanceMap> maps;
  maps.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double alpha = 0.0;
    if (auto a = head_power(fs[static_cast<std::size_t>(i)]))
      alpha = std::clamp(*a + K.n - 1, -0.99, 0.0);
    maps.push_back(ImportanceMap::power_law(alpha, -2.0));
  }

  IntegrandND g = [&](std::span<const double> s) -> double {
    double prod = K.evaluate(s);
    if (prod == 0.0) return 0.0;
    for (int i = 0; i < m; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      const double fi = evaluate(fs[iu], r * s[iu]);
      if (fi == 0.0) return 0.0;
      prod *= fi * std::pow(s[iu], K.n - 1);
    }
    return prod;
  };

  IntegralResult res = integrate_mc(g, m, maps, cfg);
  const double scale = std::pow(wn, m);
  res.value *= scale;
  res.error_estimate *= scale;
  if (detail_out) *detail_out = res;
  return res.value;
}

}  // namespace

double apply_kernel_operator(const RadialKernel& K,
                             const std::vector<PiecewisePowerLog>& fs,
                             double r, const QuadratureConfig& cfg,
                             IntegralResult* detail) {
  K.validate();
  cfg.validate();
  if (static_cast<int>(fs.size()) != K.arity)
    throw DomainError("apply_kernel_operator: need one input per kernel slot");
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError("apply_kernel_operator: radius must be positive and finite");
  if (K.arity <= 3) return kernel_operator_nested(K, fs, r, cfg, detail);
  return kernel_operator_mc(K, fs, r, cfg, detail);
}

}  // namespace hlplab
