#pragma once

#include <string>
#include <vector>

namespace hlplab {

enum class SpaceKind { Strong, Weak };

// A power-weighted Lebesgue space on R^n: L^p(|x|^w dx) when kind == Strong,
// the weak space L^{p,inf}(|x|^w dx) when kind == Weak.
struct SpaceSpec {
  int n = 1;               // ambient dimension
  double exponent = 1.0;   // the p (or q) of the space
  double weight_exp = 0.0; // power-weight exponent (beta or gamma)
  SpaceKind kind = SpaceKind::Strong;

  // Throws DomainError when an invariant is violated: n >= 1, exponent > 0
  // (>= 1 for Weak), and weight_exp + n > 0 for weak targets.
  void validate() const;
};

// Conjugate pair p, p' with 1/p + 1/p' = 1.
struct ConjugateExponent {
  double p;
  double p_prime;

  explicit ConjugateExponent(double p_value);
};

// One evaluated hypothesis: the relation as text plus both evaluated sides.
struct HypothesisCheck {
  std::string name;
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  bool overall = false;

  // Recomputes overall as the conjunction of all pass flags.
  void finalize();
};

// Surface area of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
// Gamma(n/2) is evaluated by exact half-integer recursion (no Lanczos), so
// downstream constants carry no gamma-approximation error.
// Throws DomainError for n < 1.
double unit_sphere_area(int n);

// Evaluates every hypothesis of the two-exponent weak-bound theorem:
//   1 < p < inf;  1 <= q < inf;  0 < beta < n(p-1);
//   (gamma+n) / ((beta/(p-1)) q) >= 2;
//   (gamma+n) / ((n - (beta+n)/(p-1)) q) >= 2;
//   (beta+n)/(p-1) - n < 0;
//   (gamma+n)/q = (beta+n)/p = n/2   (absolute tolerance 1e-12).
// Failures are reported, never thrown.
HypothesisReport check_thm21_hypotheses(double p, double q, double beta,
                                        double gamma, int n);

// Hypotheses of the multilinear kernel bound: 1 < p_i < inf,
// 0 < beta_i < n(p_i - 1), 1 <= q < inf, n + gamma > 0, and the balance
// equality sum_i (beta_i + n)/p_i = (gamma + n)/q within 1e-12.
// Throws DomainError when the vectors do not both have length m >= 1.
HypothesisReport check_thm31_hypotheses(const std::vector<double>& p,
                                        const std::vector<double>& beta,
                                        double q, double gamma, int n, int m);

}  // namespace hlplab
