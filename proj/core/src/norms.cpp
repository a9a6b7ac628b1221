#include "hlplab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "hlplab/errors.hpp"
#include "hlplab/spaces.hpp"

namespace hlplab {

namespace {

const double kInf = std::numeric_limits<double>::infinity();
constexpr double kGoldenTol = 1e-10;  // bracket width on log(lambda)
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

bool effectively_zero(const PiecewisePowerLog& f) {
  for (const auto& piece : f.pieces())
    if (!detail::merge_terms(piece).empty()) return false;
  return true;
}

// |f|^p as a PiecewisePowerLog when the algebra allows it.
std::optional<PiecewisePowerLog> abs_power(const PiecewisePowerLog& f,
                                           double p) {
  const double rounded = std::round(p);
  const bool integer_p = std::fabs(p - rounded) < 1e-12 && rounded >= 1.0 &&
                         rounded <= 12.0;
  std::vector<std::vector<PowerLogTerm>> pieces;
  for (const auto& raw : f.pieces()) {
    const auto piece = detail::merge_terms(raw);
    if (piece.empty()) {
      pieces.push_back({});
      continue;
    }
    if (piece.size() == 1 && piece[0].log_order == 0) {
      pieces.push_back(
          {{std::pow(std::fabs(piece[0].coeff), p), piece[0].power * p, 0}});
      continue;
    }
    bool expandable = integer_p;
    for (const auto& t : piece)
      if (t.log_order != 0 || t.coeff < 0.0) expandable = false;
    if (!expandable) return std::nullopt;
    // nonnegative pure powers: |sum|^p = sum^p, expand by repeated product
    const int ip = static_cast<int>(rounded);
    std::vector<PowerLogTerm> acc = {{1.0, 0.0, 0}};
    for (int k = 0; k < ip; ++k) {
      std::vector<PowerLogTerm> next;
      next.reserve(acc.size() * piece.size());
      for (const auto& x : acc)
        for (const auto& t : piece)
          next.push_back({x.coeff * t.coeff, x.power + t.power, 0});
      acc = detail::merge_terms(std::move(next));
    }
    pieces.push_back(std::move(acc));
  }
  return PiecewisePowerLog(f.breakpoints(), std::move(pieces));
}

}  // namespace

std::string DistributionCurve::to_csv() const {
  std::string out = "lambda,measure,exactness\n";
  const char* tag = exactness == Exactness::ClosedForm ? "closed_form" : "numeric";
  char row[128];
  for (const auto& s : samples) {
    if (std::isinf(s.measure))
      std::snprintf(row, sizeof row, "%.17g,inf,%s\n", s.lambda, tag);
    else
      std::snprintf(row, sizeof row, "%.17g,%.17g,%s\n", s.lambda, s.measure, tag);
    out += row;
  }
  return out;
}

double strong_norm(const PiecewisePowerLog& f, double p, double beta, int n) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw DomainError("strong_norm: need 1 <= p < inf");
  if (n < 1) throw DomainError("strong_norm: dimension n must be >= 1");
  if (effectively_zero(f)) return 0.0;
  const double wn = unit_sphere_area(n);
  const double extra = beta + n - 1.0;

  if (auto powered = abs_power(f, p)) {
    double total;
    try {
      total = integrate_weighted(*powered, 0.0, kInf, extra);
    } catch (const DivergenceError& e) {
      throw DivergenceError(std::string("strong_norm: ") + e.what());
    }
    return std::pow(wn * total, 1.0 / p);
  }

  // Numeric path. Rule out divergence analytically first: the smallest
  // (largest) surviving power decides integrability at 0 (at inf).
  const auto head = detail::merge_terms(f.pieces().front());
  if (!head.empty() && f.interval(0).lo == 0.0) {
    const double e0 = head.front().power * p + beta + n;
    if (e0 <= 0.0) {
      std::ostringstream msg;
      msg << "strong_norm: |f|^p r^{beta+n-1} diverges at 0 (first piece, "
             "exponent "
          << e0 - 1.0 << ")";
      throw DivergenceError(msg.str());
    }
  }
  const bool unbounded_support = std::isinf(f.breakpoints().back());
  if (unbounded_support) {
    const auto tail = detail::merge_terms(f.pieces().back());
    if (!tail.empty()) {
      const double einf = tail.back().power * p + beta + n;
      if (einf >= 0.0) {
        std::ostringstream msg;
        msg << "strong_norm: |f|^p r^{beta+n-1} diverges at inf (last piece, "
               "exponent "
            << einf - 1.0 << ")";
        throw DivergenceError(msg.str());
      }
    }
  }

  QuadratureConfig cfg;
  cfg.rel_tol = 1e-11;
  if (!head.empty()) {
    const double e0 = head.front().power * p + extra;
    if (e0 < 0.0) cfg.singularity_exponent_hint = e0;
  }
  std::vector<double> cuts;
  for (double b : f.breakpoints())
    if (std::isfinite(b)) cuts.push_back(b);
  const double hi = unbounded_support ? kInf : f.breakpoints().back();
  const IntegralResult res = integrate_1d(
      [&](double r) {
        return std::pow(std::fabs(evaluate(f, r)), p) * std::pow(r, extra);
      },
      0.0, hi, cfg, cuts);
  if (!res.converged)
    throw ConvergenceError("strong_norm: numeric |f|^p integral did not converge");
  return std::pow(wn * res.value, 1.0 / p);
}

// --------------------------------------------------------------------------
// distribution function
// --------------------------------------------------------------------------

namespace {

// Numeric fallback when superlevel_set cannot classify a piece shape: sample
// each piece on a geometric grid, bisect |g|-lambda sign changes, and sum the
// same closed-form weight over the bracketed intervals.
double numeric_measure(const PiecewisePowerLog& g, double lambda, double ng) {
  double total = 0.0;
  auto absg = [&](double r) { return std::fabs(evaluate(g, r)); };

  for (std::size_t j = 0; j < g.pieces().size(); ++j) {
    const auto terms = detail::merge_terms(g.pieces()[j]);
    if (terms.empty()) continue;
    const RadiusInterval iv = g.interval(j);
    const bool tail_piece = std::isinf(iv.hi);
    double b = iv.hi;
    if (tail_piece) {
      double fin = 0.0;
      const int code = detail::limit_sign_at_inf(terms, 0.0, &fin);
      if (code != 0 || std::fabs(fin) > lambda)
        return kInf;  // |g| stays above lambda out to infinity
      // |g| -> limit < lambda: push the grid out until the piece is under it
      b = std::max(2.0, 2.0 * iv.lo);
      while (absg(b) > lambda && b < 1e28) b *= 10.0;
      b *= 10.0;
    }
    const double a = std::max(iv.lo, 1e-14);
    if (!(b > a)) continue;

    constexpr int kGrid = 512;
    std::vector<double> xs(kGrid + 1);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i <= kGrid; ++i)
      xs[static_cast<std::size_t>(i)] =
          std::exp(la + (lb - la) * i / static_cast<double>(kGrid));
    xs.front() = a;
    xs.back() = b;

    double seg_lo = xs[0];
    bool inside = absg(xs[0]) > lambda;
    // head of the piece: if it starts at 0, extend the first state down
    if (iv.lo == 0.0 && inside) seg_lo = 0.0;
    for (int i = 1; i <= kGrid; ++i) {
      const bool now = absg(xs[static_cast<std::size_t>(i)]) > lambda;
      if (now == inside) continue;
      // bisect the crossing
      double lo = xs[static_cast<std::size_t>(i - 1)];
      double hi = xs[static_cast<std::size_t>(i)];
      for (int it = 0; it < 100 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = (hi / lo > 4.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if ((absg(mid) > lambda) == inside)
          lo = mid;
        else
          hi = mid;
      }
      const double root = 0.5 * (lo + hi);
      if (inside)
        total += (std::pow(root, ng) - std::pow(seg_lo, ng)) / ng;
      else
        seg_lo = root;
      inside = now;
    }
    if (inside) total += (std::pow(b, ng) - std::pow(seg_lo, ng)) / ng;
  }
  return total;
}

}  // namespace

double distribution_measure(const PiecewisePowerLog& g, double lambda,
                            double gamma, int n, Exactness* exactness) {
  if (n < 1) throw DomainError("distribution_measure: dimension n must be >= 1");
  const double ng = n + gamma;
  if (!(ng > 0.0)) throw DomainError("distribution_measure: need n + gamma > 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw DomainError("distribution_measure: lambda must be positive and finite");
  const double wn = unit_sphere_area(n);
  if (exactness) *exactness = Exactness::ClosedForm;

  try {
    const auto set = superlevel_set(g, lambda);
    double total = 0.0;
    for (const auto& iv : set) {
      if (std::isinf(iv.hi)) return kInf;
      total += (std::pow(iv.hi, ng) - std::pow(iv.lo, ng)) / ng;
    }
    return wn * total;
  } catch (const UnsupportedShapeError&) {
    if (exactness) *exactness = Exactness::Numeric;
    const double total = numeric_measure(g, lambda, ng);
    return std::isinf(total) ? kInf : wn * total;
  }
}

// --------------------------------------------------------------------------
// weak norm
// --------------------------------------------------------------------------

namespace {

struct PhiEval {
  const PiecewisePowerLog* g;
  double q, gamma;
  int n;
  DistributionCurve* curve;
  bool any_numeric = false;
  double best = 0.0;
  double best_lambda = 0.0;

  // lambda * mu(lambda)^{1/q}; infinite measure means the supremum is +inf.
  double operator()(double lambda) {
    Exactness ex;
    const double mu = distribution_measure(*g, lambda, gamma, n, &ex);
    if (ex == Exactness::Numeric) any_numeric = true;
    if (std::isinf(mu)) {
      std::ostringstream msg;
      msg << "weak_norm: level set at lambda=" << lambda
          << " has infinite weighted measure";
      throw UnboundedNormError(msg.str());
    }
    if (curve) curve->samples.push_back({lambda, mu});
    const double phi = lambda * std::pow(mu, 1.0 / q);
    if (phi > best) {
      best = phi;
      best_lambda = lambda;
    }
    return phi;
  }
};

// golden-section maximization on log(lambda) in [lo, hi]
void golden_refine(PhiEval& phi, double lam_lo, double lam_hi) {
  if (!(lam_hi > lam_lo)) return;
  double a = std::log(lam_lo), b = std::log(lam_hi);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = phi(std::exp(c));
  double fd = phi(std::exp(d));
  int guard = 0;
  while (b - a > kGoldenTol && guard++ < 400) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = phi(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = phi(std::exp(d));
    }
  }
}

// Candidate levels: |g| at piece endpoints (including one-sided limits at 0
// and inf) and at interior critical points — exactly the case boundaries
// where superlevel sets change shape.
std::vector<double> lambda_candidates(const PiecewisePowerLog& g) {
  std::set<double> cand;
  auto add = [&](double v) {
    v = std::fabs(v);
    if (v > 0.0 && std::isfinite(v)) cand.insert(v);
  };
  for (std::size_t j = 0; j < g.pieces().size(); ++j) {
    const auto terms = detail::merge_terms(g.pieces()[j]);
    if (terms.empty()) continue;
    const RadiusInterval iv = g.interval(j);
    if (iv.lo == 0.0) {
      double fin = 0.0;
      if (detail::limit_sign_at_zero(terms, 0.0, &fin) == 0) add(fin);
    } else {
      add(evaluate(g, iv.lo));
    }
    if (std::isinf(iv.hi)) {
      double fin = 0.0;
      if (detail::limit_sign_at_inf(terms, 0.0, &fin) == 0) add(fin);
    } else {
      double acc = 0.0;
      const double lr = std::log(iv.hi);
      for (const auto& t : terms)
        acc += t.coeff * std::pow(iv.hi, t.power) * (t.log_order ? lr : 1.0);
      add(acc);
    }
    try {
      for (double c : detail::critical_points(terms))
        if (c > iv.lo && c < iv.hi) add(evaluate(g, c));
    } catch (const UnsupportedShapeError&) {
      // fall back to a coarse value scan inside the piece
      const double a = std::max(iv.lo, 1e-9);
      const double b = std::isinf(iv.hi) ? 1e9 : iv.hi;
      for (int i = 1; i < 16; ++i)
        add(evaluate(g, a * std::pow(b / a, i / 16.0)));
    }
  }
  return {cand.begin(), cand.end()};
}

}  // namespace

double weak_norm(const PiecewisePowerLog& g, double q, double gamma, int n,
                 DistributionCurve* curve_out) {
  if (!(q >= 1.0)) throw DomainError("weak_norm: need q >= 1");
  if (n < 1) throw DomainError("weak_norm: dimension n must be >= 1");
  if (!(n + gamma > 0.0)) throw DomainError("weak_norm: need n + gamma > 0");
  if (effectively_zero(g)) {
    if (curve_out) curve_out->exactness = Exactness::ClosedForm;
    return 0.0;
  }

  PhiEval phi{&g, q, gamma, n, curve_out};
  const std::vector<double> cand = lambda_candidates(g);

  double lam_lo, lam_hi;
  if (cand.empty()) {
    lam_lo = lam_hi = 1.0;
    phi(1.0);
  } else {
    for (double lam : cand) phi(lam);
    for (std::size_t i = 0; i + 1 < cand.size(); ++i)
      golden_refine(phi, cand[i], cand[i + 1]);
    lam_lo = cand.front();
    lam_hi = cand.back();
  }

  // Extend past the largest candidate (g may blow up near 0, pushing the
  // supremum to lambda -> inf) and below the smallest.
  double lam = lam_hi, prev = phi(lam_hi);
  bool settled = false;
  for (int k = 0; k < 80; ++k) {
    lam *= 2.0;
    const double cur = phi(lam);
    if (cur <= prev * (1.0 + 1e-14)) {
      golden_refine(phi, lam / 4.0, lam);
      settled = true;
      break;
    }
    prev = cur;
  }
  if (!settled)
    throw UnboundedNormError(
        "weak_norm: lambda*mu^{1/q} keeps growing as lambda -> inf");

  lam = lam_lo;
  prev = phi(lam_lo);
  settled = false;
  for (int k = 0; k < 80; ++k) {
    lam *= 0.5;
    const double cur = phi(lam);
    if (cur <= prev * (1.0 + 1e-14)) {
      golden_refine(phi, lam, lam * 4.0);
      settled = true;
      break;
    }
    prev = cur;
  }
  if (!settled)
    throw UnboundedNormError(
        "weak_norm: lambda*mu^{1/q} keeps growing as lambda -> 0");

  if (curve_out) {
    curve_out->exactness =
        phi.any_numeric ? Exactness::Numeric : Exactness::ClosedForm;
    std::sort(curve_out->samples.begin(), curve_out->samples.end(),
              [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
    curve_out->samples.erase(
        std::unique(curve_out->samples.begin(), curve_out->samples.end(),
                    [](const auto& a, const auto& b) {
                      return a.lambda == b.lambda;
                    }),
        curve_out->samples.end());
  }
  return phi.best;
}

// --------------------------------------------------------------------------
// black-box weak norm
// --------------------------------------------------------------------------

namespace {

struct GridMax {
  double r = 0.0;
  double value = -kInf;
  bool at_low_edge = false;
  bool at_high_edge = false;
};

GridMax scan_log_grid(const std::function<double(double)>& h, double lo,
                      double hi, int points) {
  GridMax gm;
  const double llo = std::log(lo), lhi = std::log(hi);
  int arg = 0;
  for (int i = 0; i <= points; ++i) {
    const double r = std::exp(llo + (lhi - llo) * i / static_cast<double>(points));
    const double v = h(r);
    if (v > gm.value) {
      gm.value = v;
      gm.r = r;
      arg = i;
    }
  }
  gm.at_low_edge = arg == 0;
  gm.at_high_edge = arg == points;
  return gm;
}

double golden_max_log(const std::function<double(double)>& h, double lo,
                      double hi, double log_tol) {
  double a = std::log(lo), b = std::log(hi);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = h(std::exp(c)), fd = h(std::exp(d));
  int guard = 0;
  while (b - a > log_tol && guard++ < 300) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = h(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = h(std::exp(d));
    }
  }
  const double mid = std::exp(0.5 * (a + b));
  return std::max(h(mid), std::max(fc, fd));
}

}  // namespace

double weak_norm_numeric(const std::function<double(double)>& g, double q,
                         double gamma, int n, ShapeHint hint, double r_lo,
                         double r_hi) {
  if (!(q >= 1.0)) throw DomainError("weak_norm_numeric: need q >= 1");
  if (n < 1) throw DomainError("weak_norm_numeric: dimension n must be >= 1");
  const double ng = n + gamma;
  if (!(ng > 0.0)) throw DomainError("weak_norm_numeric: need n + gamma > 0");
  const double wn = unit_sphere_area(n);
  const double pref = std::pow(wn / ng, 1.0 / q);

  if (hint == ShapeHint::Decreasing) {
    // sup_lambda lambda mu^{1/q} = pref * sup_R g(R) R^{ng/q} for g
    // non-increasing: the level set {g > g(R)} is (0, R') with R' >= R.
    auto big_lambda = [&](double r) { return g(r) * std::pow(r, ng / q); };
    double lo = r_lo, hi = r_hi;
    GridMax gm = scan_log_grid(big_lambda, lo, hi, 256);
    int expand = 0;
    while ((gm.at_low_edge || gm.at_high_edge) && expand++ < 8) {
      if (gm.at_low_edge) lo = std::max(lo * 1e-3, 1e-30);
      if (gm.at_high_edge) hi = std::min(hi * 1e3, 1e30);
      gm = scan_log_grid(big_lambda, lo, hi, 256);
    }
    if (gm.at_low_edge || gm.at_high_edge)
      throw UnboundedNormError(
          "weak_norm_numeric: g(R) R^{(n+gamma)/q} keeps growing at the "
          "window edge");
    const double step = std::pow(hi / lo, 1.0 / 256.0);
    const double peak =
        golden_max_log(big_lambda, gm.r / step, gm.r * step, 1e-8);
    return pref * peak;
  }

  // Unimodal profile: locate the peak, then maximize phi(lambda) with level
  // sets bisected on both flanks.
  GridMax gm = scan_log_grid(g, r_lo, r_hi, 128);
  const double step = std::pow(r_hi / r_lo, 1.0 / 128.0);
  double peak_lo = std::max(gm.r / step, r_lo);
  double peak_hi = std::min(gm.r * step, r_hi);
  const double g_max = golden_max_log(g, peak_lo, peak_hi, 1e-8);
  const double r_peak = std::sqrt(peak_lo * peak_hi);
  if (!(g_max > 0.0)) return 0.0;

  auto bisect_flank = [&](double a, double b, double lambda,
                          bool rising) -> double {
    // rising: g increasing on [a,b] (left flank); else decreasing
    for (int it = 0; it < 80 && b - a > 1e-7 * std::max(1.0, b); ++it) {
      const double mid = (b / a > 4.0) ? std::sqrt(a * b) : 0.5 * (a + b);
      const bool above = g(mid) > lambda;
      if (above == rising)
        b = mid;
      else
        a = mid;
    }
    return 0.5 * (a + b);
  };

  auto phi = [&](double lambda) -> double {
    if (!(lambda < g_max)) return 0.0;
    double lo_edge;
    if (g(r_lo) > lambda) {
      lo_edge = 0.0;  // contribution below r_lo is r_lo^{ng}, negligible
    } else {
      lo_edge = bisect_flank(r_lo, r_peak, lambda, true);
    }
    double hi_window = r_hi;
    while (g(hi_window) > lambda) {
      hi_window *= 100.0;
      if (hi_window > 1e30)
        throw UnboundedNormError(
            "weak_norm_numeric: level set extends past r=1e30");
    }
    const double hi_edge = bisect_flank(r_peak, hi_window, lambda, false);
    const double mu =
        wn * (std::pow(hi_edge, ng) - std::pow(lo_edge, ng)) / ng;
    return lambda * std::pow(mu, 1.0 / q);
  };

  double best = 0.0;
  double best_lambda = g_max * 0.5;
  for (int i = 0; i <= 32; ++i) {
    const double u = std::pow(10.0, -6.0 + 6.0 * i / 32.0);  // 1e-6 .. 1
    const double lambda = g_max * std::min(u, 1.0 - 1e-9);
    const double v = phi(lambda);
    if (v > best) {
      best = v;
      best_lambda = lambda;
    }
  }
  const double refined = golden_max_log(
      phi, best_lambda * std::pow(10.0, -6.0 / 32.0) * 0.999,
      std::min(best_lambda * std::pow(10.0, 6.0 / 32.0) * 1.001, g_max * (1.0 - 1e-9)),
      1e-7);
  return std::max(best, refined);
}

double distribution_measure_mc(const PiecewisePowerLog& g, double lambda,
                               double gamma, int n,
                               const QuadratureConfig& cfg) {
  if (n < 1) throw DomainError("distribution_measure_mc: dimension n must be >= 1");
  const double ng = n + gamma;
  if (!(ng > 0.0)) throw DomainError("distribution_measure_mc: need n + gamma > 0");
  if (!(lambda > 0.0))
    throw DomainError("distribution_measure_mc: lambda must be positive");
  const double wn = unit_sphere_area(n);

  // Find a proposal window that covers the level set: grow until the whole
  // band (R, 4R] sits below lambda (a plain endpoint test would be fooled by
  // a peak past the endpoint).
  auto band_clear = [&](double R) {
    for (int i = 1; i <= 64; ++i) {
      const double r = R + 3.0 * R * i / 64.0;
      if (std::fabs(evaluate(g, r)) > lambda) return false;
    }
    return true;
  };
  double r_max = 1.0;
  while (!band_clear(r_max) && r_max < 1e12) r_max *= 4.0;
  if (r_max >= 1e12)
    throw UnboundedNormError(
        "distribution_measure_mc: level set extends past r=1e12");
  r_max *= 4.0;

  const ImportanceMap maps[1] = {ImportanceMap::uniform(0.0, r_max)};
  const IntegralResult est = integrate_mc(
      [&](std::span<const double> x) -> double {
        const double r = x[0];
        if (!(r > 0.0)) return 0.0;
        return std::fabs(evaluate(g, r)) > lambda ? std::pow(r, ng - 1.0) : 0.0;
      },
      1, maps, cfg);
  return wn * est.value;
}

}  // namespace hlplab
