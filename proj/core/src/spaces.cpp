#include "hlplab/spaces.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hlplab/errors.hpp"

namespace hlplab {

namespace {

constexpr double kEqTol = 1e-12;  // absolute tolerance for equality hypotheses

bool finite(double x) { return std::isfinite(x); }

HypothesisCheck make_check(std::string name, std::string relation, double lhs,
                           double rhs, bool pass) {
  HypothesisCheck c;
  c.name = std::move(name);
  c.relation = std::move(relation);
  c.lhs = lhs;
  c.rhs = rhs;
  c.pass = pass;
  return c;
}

}  // namespace

void SpaceSpec::validate() const {
  if (n < 1) throw DomainError("SpaceSpec: dimension n must be >= 1");
  if (!(exponent > 0.0) || !finite(exponent))
    throw DomainError("SpaceSpec: exponent must be positive and finite");
  if (kind == SpaceKind::Weak && exponent < 1.0)
    throw DomainError("SpaceSpec: weak spaces require exponent >= 1");
  if (kind == SpaceKind::Weak && !(weight_exp + n > 0.0))
    throw DomainError("SpaceSpec: weak targets require weight_exp + n > 0");
  if (!finite(weight_exp))
    throw DomainError("SpaceSpec: weight_exp must be finite");
}

ConjugateExponent::ConjugateExponent(double p_value) : p(p_value) {
  if (!(p_value > 1.0) || !finite(p_value))
    throw DomainError("ConjugateExponent: p must lie in (1, inf)");
  p_prime = p_value / (p_value - 1.0);
}

void HypothesisReport::finalize() {
  overall = true;
  for (const auto& c : checks) overall = overall && c.pass;
}

double unit_sphere_area(int n) {
  if (n < 1) throw DomainError("unit_sphere_area: n must be >= 1");
  // Gamma(n/2) by exact recursion from Gamma(1) = 1 and Gamma(1/2) = sqrt(pi).
  const double pi = 4.0 * std::atan(1.0);
  double gamma_half;
  if (n % 2 == 0) {
    gamma_half = 1.0;  // Gamma(1)
    for (int k = 1; k < n / 2; ++k) gamma_half *= static_cast<double>(k);
  } else {
    gamma_half = std::sqrt(pi);  // Gamma(1/2)
    for (int j = 1; j <= (n - 1) / 2; ++j)
      gamma_half *= (2.0 * j - 1.0) / 2.0;  // Gamma(x+1) = x Gamma(x)
  }
  return 2.0 * std::pow(pi, 0.5 * n) / gamma_half;
}

HypothesisReport check_thm21_hypotheses(double p, double q, double beta,
                                        double gamma, int n) {
  HypothesisReport rep;
  const double nd = n;

  rep.checks.push_back(make_check("p_range", "1 < p < inf", p, 1.0,
                                  finite(p) && p > 1.0));
  rep.checks.push_back(make_check("q_range", "1 <= q < inf", q, 1.0,
                                  finite(q) && q >= 1.0));
  rep.checks.push_back(make_check("beta_lower", "0 < beta", beta, 0.0,
                                  finite(beta) && beta > 0.0));
  rep.checks.push_back(make_check("beta_upper", "beta < n(p-1)", beta,
                                  nd * (p - 1.0), beta < nd * (p - 1.0)));

  // The proof's two ">= 2" conditions; denominators guarded against the
  // singular configurations that the earlier checks already flag.
  const double denom1 = (p > 1.0) ? (beta / (p - 1.0)) * q : 0.0;
  const double lhs1 = (denom1 > 0.0)
                          ? (gamma + nd) / denom1
                          : std::numeric_limits<double>::quiet_NaN();
  rep.checks.push_back(make_check("ratio_one", "(gamma+n)/((beta/(p-1)) q) >= 2",
                                  lhs1, 2.0, finite(lhs1) && lhs1 >= 2.0 - kEqTol));

  const double denom2 =
      (p > 1.0) ? (nd - (beta + nd) / (p - 1.0)) * q : 0.0;
  const double lhs2 = (denom2 != 0.0)
                          ? (gamma + nd) / denom2
                          : std::numeric_limits<double>::quiet_NaN();
  rep.checks.push_back(make_check(
      "ratio_two", "(gamma+n)/((n-(beta+n)/(p-1)) q) >= 2", lhs2, 2.0,
      denom2 > 0.0 && finite(lhs2) && lhs2 >= 2.0 - kEqTol));

  const double tail_exp =
      (p > 1.0) ? (beta + nd) / (p - 1.0) - nd
                : std::numeric_limits<double>::quiet_NaN();
  rep.checks.push_back(make_check("image_tail", "(beta+n)/(p-1) - n < 0",
                                  tail_exp, 0.0, finite(tail_exp) && tail_exp < 0.0));

  const double left = (q != 0.0) ? (gamma + nd) / q
                                 : std::numeric_limits<double>::quiet_NaN();
  const double mid = (p != 0.0) ? (beta + nd) / p
                                : std::numeric_limits<double>::quiet_NaN();
  rep.checks.push_back(make_check("balance_left", "(gamma+n)/q = (beta+n)/p",
                                  left, mid,
                                  finite(left) && finite(mid) &&
                                      std::fabs(left - mid) <= kEqTol));
  rep.checks.push_back(make_check("balance_right", "(beta+n)/p = n/2", mid,
                                  nd / 2.0,
                                  finite(mid) && std::fabs(mid - nd / 2.0) <= kEqTol));

  rep.finalize();
  return rep;
}

HypothesisReport check_thm31_hypotheses(const std::vector<double>& p,
                                        const std::vector<double>& beta,
                                        double q, double gamma, int n, int m) {
  if (m < 1) throw DomainError("check_thm31_hypotheses: m must be >= 1");
  if (p.size() != static_cast<std::size_t>(m) ||
      beta.size() != static_cast<std::size_t>(m)) {
    std::ostringstream msg;
    msg << "check_thm31_hypotheses: expected " << m
        << " entries, got p:" << p.size() << " beta:" << beta.size();
    throw DomainError(msg.str());
  }

  HypothesisReport rep;
  const double nd = n;
  double balance = 0.0;
  for (int i = 0; i < m; ++i) {
    const std::string idx = std::to_string(i + 1);
    rep.checks.push_back(make_check("p" + idx + "_range", "1 < p_i < inf",
                                    p[i], 1.0, finite(p[i]) && p[i] > 1.0));
    rep.checks.push_back(make_check("beta" + idx + "_lower", "0 < beta_i",
                                    beta[i], 0.0,
                                    finite(beta[i]) && beta[i] > 0.0));
    rep.checks.push_back(make_check("beta" + idx + "_upper",
                                    "beta_i < n(p_i-1)", beta[i],
                                    nd * (p[i] - 1.0),
                                    beta[i] < nd * (p[i] - 1.0)));
    balance += (beta[i] + nd) / p[i];
  }
  rep.checks.push_back(make_check("q_range", "1 <= q < inf", q, 1.0,
                                  finite(q) && q >= 1.0));
  rep.checks.push_back(make_check("weight", "n + gamma > 0", nd + gamma, 0.0,
                                  finite(gamma) && nd + gamma > 0.0));
  const double rhs = (q != 0.0) ? (gamma + nd) / q
                                : std::numeric_limits<double>::quiet_NaN();
  rep.checks.push_back(make_check("balance",
                                  "sum (beta_i+n)/p_i = (gamma+n)/q", balance,
                                  rhs,
                                  finite(balance) && finite(rhs) &&
                                      std::fabs(balance - rhs) <= kEqTol));
  rep.finalize();
  return rep;
}

}  // namespace hlplab
