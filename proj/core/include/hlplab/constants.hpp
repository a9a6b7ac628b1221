#ifndef HLPLAB_CONSTANTS_HPP
#define HLPLAB_CONSTANTS_HPP

#include <map>
#include <string>
#include <vector>

#include "hlplab/operators.hpp"
#include "hlplab/quad.hpp"
#include "hlplab/spaces.hpp"

namespace hlplab {

enum class FormulaId {
  Thm21Statement,  // (omega_n/(n+beta))^{1/q} C^{1/p'}
  Thm21Proof,      // (omega_n/(n+gamma))^{1/q} C^{1/p'}
  Thm22,           // (omega_n/(n+gamma))^{n/(n+gamma)}
  Thm31Bound,      // (omega_n/(n+gamma))^{1/q} M
  M1,              // sup over 0 < lambda < C branch: (omega_n/(n+gamma))^{1/q} C
  M2,              // sup over lambda >= C branch: same value
  M3,              // (omega_n/(n+gamma))^{n/(n+gamma)} C_n
  MGeneric,        // nested kernel constant M for arbitrary (K, beta, p)
};

const char* formula_id_name(FormulaId id);

struct SharpConstant {
  double value = 0.0;
  FormulaId formula_id = FormulaId::MGeneric;
  std::map<std::string, double> components;  // named sub-values
  double error_estimate = 0.0;               // 0 for closed forms

  std::string to_json() const;
};

// C_{p,n,beta} = (p-1) omega_n/(beta+n) + omega_n/(n - beta/(p-1)).
// beta/(p-1) >= n makes the second denominator vanish or flip: DomainError.
double hlp_constant_C(double p, double beta, int n);

struct Thm21Constants {
  SharpConstant statement;      // prefactor uses n + beta
  SharpConstant proof_variant;  // prefactor uses n + gamma
  bool discrepancy_flagged = false;  // rel difference > 1e-12
  double rel_difference = 0.0;
  HypothesisReport hypotheses;  // informational; failures do not throw
};

Thm21Constants thm21_constant(double p, double q, double beta, double gamma,
                              int n);

SharpConstant thm22_constant(double gamma, int n);

// The proof-side branch suprema: M1/M2 for the first theorem (identical
// closed forms), M3 for the second.
SharpConstant m_branch_constant(FormulaId which, double p, double q,
                                double beta, double gamma, int n);
SharpConstant m3_constant(double gamma, int n);

// Nested iterated norm of the kernel:
//   G_1(s_2..s_m) = omega_n int K_rad^{p_1'} s_1^{-beta_1 p_1'/p_1 + n-1} ds_1,
//   G_{k+1}       = omega_n int G_k^{p_{k+1}'/p_k'} s^{-beta_{k+1} p_{k+1}'/p_{k+1} + n-1} ds,
//   M             = G_m^{1/p_m'}.
// Divergence of any level is an error (the kernel is then inadmissible),
// never a sentinel. Deterministic path only: m <= 3.
SharpConstant kernel_constant_M(const RadialKernel& K,
                                const std::vector<double>& beta,
                                const std::vector<double>& p, int n, int m,
                                const QuadratureConfig& cfg);

// (omega_n/(n+gamma))^{1/q} * kernel_constant_M(...)
SharpConstant thm31_bound(const RadialKernel& K,
                          const std::vector<double>& beta,
                          const std::vector<double>& p, double q, double gamma,
                          int n, int m, const QuadratureConfig& cfg);

}  // namespace hlplab

#endif  // HLPLAB_CONSTANTS_HPP
