#include "hlplab/extremals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

#include "hlplab/constants.hpp"
#include "hlplab/errors.hpp"
#include "hlplab/norms.hpp"
#include "hlplab/operators.hpp"
#include "hlplab/spaces.hpp"

namespace hlplab {

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kCollisionTol = 1e-12;

std::string json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  if (std::isnan(v)) return "\"nan\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_space(const SpaceParams& sp, const char* where) {
  if (sp.n < 1) {
    std::ostringstream msg;
    msg << where << ": dimension n must be >= 1";
    throw DomainError(msg.str());
  }
  if (!(sp.p >= 1.0)) {
    std::ostringstream msg;
    msg << where << ": source exponent p must be >= 1";
    throw DomainError(msg.str());
  }
}

// r^a chi_(0,1] lies in L^p(r^beta) iff a p + beta + n > 0.
void require_in_source_space(double a_min, const SpaceParams& sp,
                             const char* family) {
  const double e = a_min * sp.p + sp.beta + sp.n;
  if (e <= 0.0) {
    std::ostringstream msg;
    msg << "make_extremal: the " << family << " member has a term r^" << a_min
        << " with p*a + beta + n = " << e
        << " <= 0, so its strong norm is infinite";
    throw DomainError(msg.str());
  }
}

}  // namespace

PiecewisePowerLog make_extremal(const ExtremalFamily& family,
                                const SpaceParams& sp) {
  check_space(sp, "make_extremal");
  switch (family.id) {
    case ExtremalId::Thm21: {
      if (!(sp.p > 1.0))
        throw DomainError("make_extremal: the Thm21 family needs p > 1");
      const double A = (sp.beta + sp.n) / (sp.p - 1.0) - sp.n;
      const double B = sp.beta / (sp.p - 1.0);
      require_in_source_space(std::min(A, -B), sp, "Thm21");
      std::vector<PowerLogTerm> terms;
      if (std::fabs(A + B) <= kCollisionTol) {
        terms.push_back({2.0, -B, 0});
      } else {
        terms.push_back({1.0, A, 0});
        terms.push_back({1.0, -B, 0});
      }
      return PiecewisePowerLog({1.0}, {terms});
    }
    case ExtremalId::Thm22: {
      require_in_source_space(static_cast<double>(sp.n), sp, "Thm22");
      return PiecewisePowerLog({1.0},
                               {{{1.0, static_cast<double>(sp.n), 0}}});
    }
    case ExtremalId::PowerCutoff: {
      const auto it = family.params.find("a");
      if (it == family.params.end())
        throw DomainError(
            "make_extremal: PowerCutoff needs the exponent params[\"a\"]");
      require_in_source_space(it->second, sp, "PowerCutoff");
      return PiecewisePowerLog({1.0}, {{{1.0, it->second, 0}}});
    }
  }
  throw DomainError("make_extremal: unknown family");
}

PiecewisePowerLog closed_form_image(const ExtremalFamily& family,
                                    const SpaceParams& sp) {
  check_space(sp, "closed_form_image");
  const double nn = static_cast<double>(sp.n);
  switch (family.id) {
    case ExtremalId::Thm21: {
      if (!(sp.p > 1.0))
        throw DomainError("closed_form_image: the Thm21 family needs p > 1");
      const double A = (sp.beta + sp.n) / (sp.p - 1.0) - sp.n;
      const double B = sp.beta / (sp.p - 1.0);
      const double C = hlp_constant_C(sp.p, sp.beta, sp.n);
      return PiecewisePowerLog(
          {1.0, kInf},
          {{{C, A, 0}, {C, -B, 0}, {-C, 0.0, 0}}, {{C, -nn, 0}}});
    }
    case ExtremalId::Thm22: {
      const double cn = unit_sphere_area(sp.n) / (2.0 * nn);
      return PiecewisePowerLog({1.0, kInf},
                               {{{2.0 * cn, 0.0, 0}, {-cn, nn, 0}},
                                {{cn, -nn, 0}}});
    }
    case ExtremalId::PowerCutoff:
      break;
  }
  throw DomainError(
      "closed_form_image: only the Thm21/Thm22 families have a printed "
      "image");
}

std::string ProbeResult::to_json() const {
  std::ostringstream out;
  out << "{\"best_params\":{";
  bool first = true;
  for (const auto& [key, v] : best_params) {
    if (!first) out << ",";
    first = false;
    out << "\"" << key << "\":" << json_number(v);
  }
  out << "},\"best_ratio\":" << json_number(best_ratio)
      << ",\"bound\":" << json_number(bound) << ",\"gap\":" << json_number(gap)
      << ",\"evaluations\":" << evaluations << "}";
  return out.str();
}

ProbeResult sharpness_probe(const ExtremalFamily& family,
                            const SpaceParams& sp, double bound,
                            const ProbeSearchConfig& cfg) {
  check_space(sp, "sharpness_probe");
  if (!(bound > 0.0))
    throw DomainError("sharpness_probe: bound must be positive");
  if (!(cfg.param_hi > cfg.param_lo))
    throw DomainError("sharpness_probe: empty search window");
  if (cfg.max_evaluations < 8)
    throw DomainError("sharpness_probe: max_evaluations must be >= 8");

  long long evals = 0;
  const auto ratio_of = [&](const ExtremalFamily& member) -> double {
    ++evals;
    try {
      const PiecewisePowerLog f = make_extremal(member, sp);
      const PiecewisePowerLog image = apply_hlp_symbolic(f, sp.n);
      const double weak = weak_norm(image, sp.q, sp.gamma, sp.n);
      const double strong = strong_norm(f, sp.p, sp.beta, sp.n);
      if (!(strong > 0.0) || !std::isfinite(weak / strong)) return kNan;
      return weak / strong;
    } catch (const DomainError& err) {
      std::cerr << "sharpness_probe: skipping member: " << err.what() << "\n";
    } catch (const DivergenceError& err) {
      std::cerr << "sharpness_probe: skipping member: " << err.what() << "\n";
    } catch (const UnboundedNormError& err) {
      std::cerr << "sharpness_probe: skipping member: " << err.what() << "\n";
    }
    return kNan;
  };

  ProbeResult out;
  out.bound = bound;

  const bool free_exponent = family.id == ExtremalId::PowerCutoff &&
                             family.params.find("a") == family.params.end();
  if (!free_exponent) {
    const double r = ratio_of(family);
    if (std::isnan(r))
      throw DomainError(
          "sharpness_probe: the family's only member lies outside its "
          "source space");
    out.best_params = family.params;
    out.best_ratio = r;
    out.gap = 1.0 - r / bound;
    out.evaluations = evals;
    return out;
  }

  const auto ratio_at = [&](double a) -> double {
    ExtremalFamily member = family;
    member.params["a"] = a;
    const double r = ratio_of(member);
    return std::isnan(r) ? -kInf : r;
  };

  // Deterministic coarse grid; ties break toward the smaller exponent.
  const int grid = 33;
  std::vector<double> xs(grid), rs(grid);
  int best = -1;
  for (int i = 0; i < grid; ++i) {
    xs[static_cast<std::size_t>(i)] =
        cfg.param_lo + (cfg.param_hi - cfg.param_lo) * i / (grid - 1);
    rs[static_cast<std::size_t>(i)] = ratio_at(xs[static_cast<std::size_t>(i)]);
    if (std::isinf(rs[static_cast<std::size_t>(i)])) continue;
    if (best < 0 || rs[static_cast<std::size_t>(i)] >
                        rs[static_cast<std::size_t>(best)])
      best = i;
  }
  if (best < 0)
    throw DomainError(
        "sharpness_probe: no family member lies in the source space");

  double best_a = xs[static_cast<std::size_t>(best)];
  double best_r = rs[static_cast<std::size_t>(best)];
  double lo = xs[static_cast<std::size_t>(std::max(best - 1, 0))];
  double hi = xs[static_cast<std::size_t>(std::min(best + 1, grid - 1))];

  // Golden-section refinement around the grid maximum.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = ratio_at(x1);
  double f2 = ratio_at(x2);
  while (hi - lo > cfg.param_tol && evals < cfg.max_evaluations) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = ratio_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = ratio_at(x2);
    }
  }
  for (const auto& [a, r] : {std::pair<double, double>{x1, f1},
                             std::pair<double, double>{x2, f2}}) {
    if (r > best_r || (r == best_r && a < best_a)) {
      best_r = r;
      best_a = a;
    }
  }

  out.best_params = family.params;
  out.best_params["a"] = best_a;
  out.best_ratio = best_r;
  out.gap = 1.0 - best_r / bound;
  out.evaluations = evals;
  return out;
}

}  // namespace hlplab
