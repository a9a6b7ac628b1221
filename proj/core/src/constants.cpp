#include "hlplab/constants.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "hlplab/errors.hpp"

namespace hlplab {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::string json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  if (std::isnan(v)) return "\"nan\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const char* formula_id_name(FormulaId id) {
  switch (id) {
    case FormulaId::Thm21Statement: return "Thm21Statement";
    case FormulaId::Thm21Proof: return "Thm21Proof";
    case FormulaId::Thm22: return "Thm22";
    case FormulaId::Thm31Bound: return "Thm31Bound";
    case FormulaId::M1: return "M1";
    case FormulaId::M2: return "M2";
    case FormulaId::M3: return "M3";
    case FormulaId::MGeneric: return "MGeneric";
  }
  return "unknown";
}

std::string SharpConstant::to_json() const {
  std::ostringstream out;
  out << "{\"formula_id\":\"" << formula_id_name(formula_id) << "\",\"value\":"
      << json_number(value) << ",\"error_estimate\":"
      << json_number(error_estimate) << ",\"components\":{";
  bool first = true;
  for (const auto& [name, v] : components) {
    if (!first) out << ",";
    first = false;
    out << "\"" << name << "\":" << json_number(v);
  }
  out << "}}";
  return out.str();
}

double hlp_constant_C(double p, double beta, int n) {
  if (n < 1) throw DomainError("hlp_constant_C: dimension n must be >= 1");
  if (!(p > 1.0)) throw DomainError("hlp_constant_C: need p > 1");
  const double wn = unit_sphere_area(n);
  const double b_over = beta / (p - 1.0);
  if (b_over >= n)
    throw DomainError(
        "hlp_constant_C: beta/(p-1) >= n — the second denominator of "
        "C_{p,n,beta} is singular");
  if (!(beta + n > 0.0))
    throw DomainError("hlp_constant_C: need beta + n > 0");
  return (p - 1.0) * wn / (beta + n) + wn / (n - b_over);
}

Thm21Constants thm21_constant(double p, double q, double beta, double gamma,
                              int n) {
  if (!(q >= 1.0)) throw DomainError("thm21_constant: need q >= 1");
  const double wn = unit_sphere_area(n);
  const double C = hlp_constant_C(p, beta, n);
  const ConjugateExponent pe(p);
  if (!(n + gamma > 0.0))
    throw DomainError("thm21_constant: need n + gamma > 0");
  if (!(n + beta > 0.0)) throw DomainError("thm21_constant: need n + beta > 0");

  const double holder = std::pow(C, 1.0 / pe.p_prime);

  Thm21Constants out;
  out.statement.formula_id = FormulaId::Thm21Statement;
  out.statement.value = std::pow(wn / (n + beta), 1.0 / q) * holder;
  out.statement.components = {{"omega_n", wn},
                              {"C_pnb", C},
                              {"prefactor", std::pow(wn / (n + beta), 1.0 / q)},
                              {"holder_factor", holder},
                              {"p_prime", pe.p_prime}};
  out.proof_variant.formula_id = FormulaId::Thm21Proof;
  out.proof_variant.value = std::pow(wn / (n + gamma), 1.0 / q) * holder;
  out.proof_variant.components = {
      {"omega_n", wn},
      {"C_pnb", C},
      {"prefactor", std::pow(wn / (n + gamma), 1.0 / q)},
      {"holder_factor", holder},
      {"p_prime", pe.p_prime}};

  const double denom = std::max(std::fabs(out.proof_variant.value), 1e-300);
  out.rel_difference =
      std::fabs(out.statement.value - out.proof_variant.value) / denom;
  out.discrepancy_flagged = out.rel_difference > 1e-12;
  out.hypotheses = check_thm21_hypotheses(p, q, beta, gamma, n);
  return out;
}

SharpConstant thm22_constant(double gamma, int n) {
  if (n < 1) throw DomainError("thm22_constant: dimension n must be >= 1");
  if (!(n + gamma > 0.0))
    throw DomainError("thm22_constant: need n + gamma > 0");
  const double wn = unit_sphere_area(n);
  SharpConstant c;
  c.formula_id = FormulaId::Thm22;
  c.value = std::pow(wn / (n + gamma), n / (n + gamma));
  c.components = {{"omega_n", wn},
                  {"exponent", n / (n + gamma)},
                  {"base", wn / (n + gamma)}};
  return c;
}

SharpConstant m_branch_constant(FormulaId which, double p, double q,
                                double beta, double gamma, int n) {
  if (which != FormulaId::M1 && which != FormulaId::M2)
    throw DomainError("m_branch_constant: formula must be M1 or M2");
  if (!(n + gamma > 0.0))
    throw DomainError("m_branch_constant: need n + gamma > 0");
  const double wn = unit_sphere_area(n);
  const double C = hlp_constant_C(p, beta, n);
  SharpConstant c;
  c.formula_id = which;
  c.value = std::pow(wn / (n + gamma), 1.0 / q) * C;
  c.components = {{"omega_n", wn},
                  {"C_pnb", C},
                  {"prefactor", std::pow(wn / (n + gamma), 1.0 / q)}};
  return c;
}

SharpConstant m3_constant(double gamma, int n) {
  const SharpConstant base = thm22_constant(gamma, n);
  const double wn = unit_sphere_area(n);
  const double cn = wn / (2.0 * n);
  SharpConstant c;
  c.formula_id = FormulaId::M3;
  c.value = base.value * cn;
  c.components = {{"omega_n", wn},
                  {"C_n", cn},
                  {"weight_factor", base.value}};
  return c;
}

// --------------------------------------------------------------------------
// nested kernel constant
// --------------------------------------------------------------------------

SharpConstant kernel_constant_M(const RadialKernel& K,
                                const std::vector<double>& beta,
                                const std::vector<double>& p, int n, int m,
                                const QuadratureConfig& cfg) {
  K.validate();
  cfg.validate();
  if (m < 1 || m > 3)
    throw DomainError(
        "kernel_constant_M: m must be 1..3 (iterated mixed norms have no "
        "single-integral Monte Carlo form)");
  if (K.arity != m) throw DomainError("kernel_constant_M: kernel arity != m");
  if (K.n != n) throw DomainError("kernel_constant_M: kernel dimension != n");
  if (static_cast<int>(beta.size()) != m || static_cast<int>(p.size()) != m)
    throw DomainError("kernel_constant_M: need one (beta_i, p_i) per slot");

  std::vector<double> p_prime(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    if (!(p[iu] > 1.0))
      throw DomainError("kernel_constant_M: every p_i must exceed 1");
    p_prime[iu] = p[iu] / (p[iu] - 1.0);
    // Weight integrability at 0: the kernel is bounded near the origin, so
    // the level-k integral needs -beta_k p_k'/p_k + n > 0.
    const double head_exp = -beta[iu] * p_prime[iu] / p[iu] + n;
    if (head_exp <= 0.0) {
      std::ostringstream msg;
      msg << "kernel_constant_M: level " << i + 1
          << " diverges at 0 (weight exponent " << head_exp - 1.0
          << "); M is infinite";
      throw DivergenceError(msg.str());
    }
  }

  // Level-1 tail check for the analytically known kernels: K^{p_1'} decays
  // like s^{-n m p_1'} for the max/sum forms and has compact support for the
  // indicator.
  if (K.form == KernelForm::HlpMax || K.form == KernelForm::HilbertSum) {
    const double tail_exp =
        -n * m * p_prime[0] - beta[0] * p_prime[0] / p[0] + n - 1.0;
    if (tail_exp >= -1.0) {
      std::ostringstream msg;
      msg << "kernel_constant_M: level 1 diverges at inf (tail exponent "
          << tail_exp << "); M is infinite";
      throw DivergenceError(msg.str());
    }
  }

  const double wn = unit_sphere_area(n);
  QuadratureConfig level_cfg = cfg;
  level_cfg.singularity_exponent_hint.reset();

  std::vector<double> s(static_cast<std::size_t>(m), 0.0);
  std::vector<double> max_err(static_cast<std::size_t>(m), 0.0);
  std::vector<double> max_val(static_cast<std::size_t>(m), 0.0);
  long long subdivisions = 0;
  IntegralResult outer;

  // G(k) integrates coordinate s_{k} (0-indexed: s[k]) with s[k+1..m-1]
  // fixed by the outer levels.
  std::function<double(int)> G = [&](int k) -> double {
    const auto ku = static_cast<std::size_t>(k);

    double up = kInf;
    if (K.form == KernelForm::HardyIndicator) {
      if (K.hardy_radius == HardyRadius::MaxBlocks) {
        up = 1.0;
      } else {
        double used = 0.0;
        for (int j = k + 1; j < m; ++j)
          used += s[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(j)];
        if (used >= 1.0) return 0.0;
        up = std::sqrt(1.0 - used);
      }
    }

    std::vector<double> cuts;
    cuts.push_back(1.0);
    // Panel edges at the outer coordinates' scales (each value and their
    // sum) keep the kernel's turnover visible to the tail map.
    double outer_scale = 0.0;
    for (int j = k + 1; j < m; ++j) {
      const double sj = s[static_cast<std::size_t>(j)];
      if (sj > 0.0 && std::isfinite(sj)) {
        outer_scale += sj;
        cuts.push_back(sj);
      }
    }
    if (outer_scale > 0.0 && std::isfinite(outer_scale))
      cuts.push_back(outer_scale);

    QuadratureConfig c = level_cfg;
    c.rel_tol = detail::nested_level_rel_tol(cfg.rel_tol, m, k);
    const double weight_exp = -beta[ku] * p_prime[ku] / p[ku] + n - 1.0;
    if (weight_exp < 0.0) c.singularity_exponent_hint = weight_exp;

    Integrand1D w = [&, k, ku](double x) -> double {
      s[ku] = x;
      const double weight = std::pow(x, weight_exp);
      if (k == 0) {
        const double kv =
            K.form == KernelForm::HardyIndicator ? 1.0 : K.evaluate(s);
        return std::pow(kv, p_prime[0]) * weight;
      }
      const double inner = G(k - 1);
      return std::pow(inner, p_prime[ku] / p_prime[ku - 1]) * weight;
    };

    const IntegralResult res = integrate_1d(w, 0.0, up, c, cuts);
    subdivisions += res.subdivisions_used;
    if (k < m - 1) {
      max_err[ku] = std::max(max_err[ku], res.error_estimate);
      max_val[ku] = std::max(max_val[ku], std::fabs(res.value));
    } else {
      outer = res;
    }
    return wn * res.value;
  };

  const double nested = G(m - 1);
  if (!(nested > 0.0) || std::isinf(nested) || std::isnan(nested))
    throw DivergenceError("kernel_constant_M: nested norm is not finite/positive");

  // Inner errors weighted by each level's value scale (see integrate_nested).
  double inherited_rel = 0.0;
  for (int k = 0; k + 1 < m; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    inherited_rel += max_err[ku] / std::max(max_val[ku], 1e-300);
  }
  const double nested_rel =
      (wn * outer.error_estimate) / std::max(nested, 1e-300) + inherited_rel;
  if (nested_rel > 10.0 * cfg.rel_tol) {
    std::ostringstream msg;
    msg << "kernel_constant_M: nested norm quadrature did not converge "
           "(aggregate relative error "
        << nested_rel << ")";
    throw ConvergenceError(msg.str());
  }

  const auto mu = static_cast<std::size_t>(m - 1);
  const double root = 1.0 / p_prime[mu];
  const double value = std::pow(nested, root);

  SharpConstant out;
  out.formula_id = FormulaId::MGeneric;
  out.value = value;
  out.error_estimate = value * root * nested_rel;
  out.components = {{"omega_n", wn},
                    {"nested_value", nested},
                    {"final_root", root}};
  out.components["subdivisions"] = static_cast<double>(subdivisions);
  return out;
}

SharpConstant thm31_bound(const RadialKernel& K,
                          const std::vector<double>& beta,
                          const std::vector<double>& p, double q, double gamma,
                          int n, int m, const QuadratureConfig& cfg) {
  if (!(q >= 1.0)) throw DomainError("thm31_bound: need q >= 1");
  if (!(n + gamma > 0.0)) throw DomainError("thm31_bound: need n + gamma > 0");
  const double wn = unit_sphere_area(n);
  const SharpConstant M = kernel_constant_M(K, beta, p, n, m, cfg);
  const double pref = std::pow(wn / (n + gamma), 1.0 / q);

  SharpConstant out;
  out.formula_id = FormulaId::Thm31Bound;
  out.value = pref * M.value;
  out.error_estimate = pref * M.error_estimate;
  out.components = {{"omega_n", wn},
                    {"weight_prefactor", pref},
                    {"M", M.value},
                    {"nested_value", M.components.at("nested_value")}};
  return out;
}

}  // namespace hlplab
