#ifndef HLPLAB_EXTREMALS_HPP
#define HLPLAB_EXTREMALS_HPP

#include <map>
#include <string>

#include "hlplab/radialfn.hpp"

namespace hlplab {

// The power-weighted spaces an extremal lives in: source L^p(r^beta),
// target L^{q,inf}(r^gamma), ambient dimension n.
struct SpaceParams {
  double p = 1.0;
  double q = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  int n = 1;
};

enum class ExtremalId {
  Thm21,        // (r^{(beta+n)/(p-1)-n} + r^{-beta/(p-1)}) chi_(0,1]
  Thm22,        // r^n chi_(0,1]
  PowerCutoff,  // r^a chi_(0,1]
};

struct ExtremalFamily {
  ExtremalId id = ExtremalId::Thm22;
  // PowerCutoff: "a" fixes the exponent; leaving it out makes a the free
  // search parameter for sharpness_probe. Thm21/Thm22 have no parameters.
  std::map<std::string, double> params;
};

// Builds the family member as a one-piece power function on (0,1].
// When the two Thm21 exponents collide (they do whenever the theorem's
// hypotheses hold) the terms are merged into a single doubled-coefficient
// power so the level sets stay in the supported two-power class.
// Throws DomainError when the member falls outside L^p(r^beta).
PiecewisePowerLog make_extremal(const ExtremalFamily& family,
                                const SpaceParams& space);

// The piecewise image the corresponding proof prints, verbatim:
//   Thm21: C_{p,n,beta} * { r^{(beta+n)/(p-1)-n} + r^{-beta/(p-1)} - 1  (r<1)
//                         ; r^{-n}                                     (r>=1) }
//   Thm22: C_n * { 2 - r^n (r<1) ; r^{-n} (r>=1) },  C_n = omega_n/(2n)
// Only Thm21/Thm22 have printed images; PowerCutoff raises DomainError.
PiecewisePowerLog closed_form_image(const ExtremalFamily& family,
                                    const SpaceParams& space);

struct ProbeSearchConfig {
  double param_lo = -0.9;  // search window for the free exponent
  double param_hi = 1.0;
  double param_tol = 1e-9;     // golden-section termination width
  int max_evaluations = 240;   // hard cap on ratio evaluations
};

struct ProbeResult {
  std::map<std::string, double> best_params;
  double best_ratio = 0.0;
  double bound = 0.0;
  double gap = 0.0;  // 1 - best_ratio/bound
  long long evaluations = 0;

  std::string to_json() const;
};

// Maximizes weak_norm(H f) / strong_norm(f) over the family against a
// claimed upper bound. Families with the exponent fixed (Thm21, Thm22,
// PowerCutoff with "a") are evaluated once; PowerCutoff with a free
// exponent is searched by a deterministic coarse grid followed by
// golden-section refinement (ties break toward the smallest parameter).
// Members outside the source space are skipped with a note on stderr.
ProbeResult sharpness_probe(const ExtremalFamily& family,
                            const SpaceParams& space, double bound,
                            const ProbeSearchConfig& cfg = {});

}  // namespace hlplab

#endif  // HLPLAB_EXTREMALS_HPP
