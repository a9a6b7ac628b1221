#include "hlplab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hlplab/errors.hpp"
#include "hlplab/rng.hpp"

namespace hlplab {

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const double kEps = std::numeric_limits<double>::epsilon();

// 15-point Kronrod abscissae on [-1,1] (positive half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes. Values are the
// classical double-precision QUADPACK tables.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

// One integration segment in a transformed variable t; r_of_t/drdt encode the
// change of variables (identity, tail map, or singularity-flattening map).
struct Segment {
  double t0 = 0.0, t1 = 1.0;
  std::function<double(double)> r_of_t;
  std::function<double(double)> drdt;
};

struct Panel {
  int seg = 0;
  double a = 0.0, b = 0.0;
  double value = 0.0;
  double err = 0.0;
};

[[noreturn]] void bad_eval(double r, double v) {
  std::ostringstream msg;
  msg << "integrate_1d: integrand returned " << v << " at r=" << r;
  throw EvaluationError(msg.str());
}

// Gauss7/Kronrod15 on one panel of one segment. Returns (value, error).
Panel gk15(const Integrand1D& f, const Segment& seg, int seg_id, double a,
           double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  auto eval = [&](double t) {
    const double r = seg.r_of_t(t);
    // A node this close to the tail map's pole rounds to r = inf; any
    // integrable tail has vanished there, so the node contributes nothing
    // (f(inf) * drdt(inf) would otherwise produce 0 * inf).
    if (!std::isfinite(r)) return 0.0;
    const double v = f(r) * seg.drdt(t);
    if (std::isnan(v) || std::isinf(v)) bad_eval(r, v);
    return v;
  };

  double fv1[8], fv2[8];
  const double fc = eval(c);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    fv1[jtw] = eval(c - h * kXgk[jtw]);
    fv2[jtw] = eval(c + h * kXgk[jtw]);
    const double fsum = fv1[jtw] + fv2[jtw];
    resg += kWg[j] * fsum;
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::fabs(fv1[jtw]) + std::fabs(fv2[jtw]));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtw = 2 * j;
    fv1[jtw] = eval(c - h * kXgk[jtw]);
    fv2[jtw] = eval(c + h * kXgk[jtw]);
    const double fsum = fv1[jtw] + fv2[jtw];
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::fabs(fv1[jtw]) + std::fabs(fv2[jtw]));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] *
              (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

  Panel p;
  p.seg = seg_id;
  p.a = a;
  p.b = b;
  p.value = resk * h;
  resabs *= std::fabs(h);
  resasc *= std::fabs(h);
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(err, 50.0 * kEps * resabs);
  p.err = err;
  return p;
}

// Splits stop paying off once the G7/K15 panel differences are dominated by
// noise in the integrand itself (e.g. when f is a numerical integral): the
// total error estimate then plateaus instead of decreasing. Cap how many
// consecutive non-improving splits we tolerate before giving up on the
// remaining budget.
constexpr int kStallLimit = 40;

double kahan_total(std::vector<Panel>& panels) {
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) {
    if (x.seg != y.seg) return x.seg < y.seg;
    return x.a < y.a;
  });
  double sum = 0.0, comp = 0.0;
  for (const Panel& p : panels) {
    const double y = p.value - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0))
    throw DomainError("QuadratureConfig: rel_tol must be positive");
  if (!(abs_tol >= 0.0))
    throw DomainError("QuadratureConfig: abs_tol must be nonnegative");
  if (max_subdivisions < 1)
    throw DomainError("QuadratureConfig: max_subdivisions must be >= 1");
  if (mc_samples < 1)
    throw DomainError("QuadratureConfig: mc_samples must be >= 1");
  if (singularity_exponent_hint && !(*singularity_exponent_hint > -1.0))
    throw DomainError(
        "QuadratureConfig: singularity_exponent_hint must exceed -1 "
        "(an r^a endpoint with a <= -1 is not integrable)");
}

IntegralResult integrate_1d(const Integrand1D& f, double lo, double hi,
                            const QuadratureConfig& cfg,
                            std::span<const double> splits) {
  cfg.validate();
  if (!(lo >= 0.0) || std::isnan(hi) || hi < lo)
    throw DomainError("integrate_1d: need 0 <= lo <= hi");
  IntegralResult res;
  if (lo == hi) {
    res.converged = true;
    return res;
  }

  // interior breakpoints: caller-supplied kinks, sorted and clipped
  std::vector<double> cuts(splits.begin(), splits.end());
  std::erase_if(cuts, [&](double s) { return !(s > lo) || !(s < hi); });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> edges;
  edges.push_back(lo);
  for (double s : cuts) edges.push_back(s);
  const bool infinite = std::isinf(hi);
  if (infinite) {
    // The tail map takes over from the last finite edge. If that edge is 0
    // (whole-axis integral, no kinks), cut at 1 so an endpoint singularity
    // at 0 stays in a finite head segment where the t^s substitution works.
    if (edges.back() == 0.0) edges.push_back(1.0);
    edges.push_back(kInf);
  } else {
    edges.push_back(hi);
  }

  std::vector<Segment> segments;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    Segment seg;
    if (std::isinf(b)) {
      // r = a + c t/(1-t), t in [0,1), with c matched to the segment's own
      // scale: a unit-scale map squeezes scale-a tail features into a
      // width-1/a sliver at t=1 that every panel node misses, so the
      // estimate stays blind to their mass.
      const double c = std::clamp(a, 1.0, 1e12);
      seg.t0 = 0.0;
      seg.t1 = 1.0;
      seg.r_of_t = [a, c](double t) { return a + c * t / (1.0 - t); };
      seg.drdt = [c](double t) {
        const double d = 1.0 - t;
        return c / (d * d);
      };
    } else if (a == 0.0 && cfg.singularity_exponent_hint &&
               *cfg.singularity_exponent_hint < 0.0 &&
               *cfg.singularity_exponent_hint > -1.0) {
      // r = b * t^s flattens an r^alpha endpoint singularity
      const double alpha = *cfg.singularity_exponent_hint;
      const double s = std::clamp(2.0 / (1.0 + alpha), 1.0, 40.0);
      seg.t0 = 0.0;
      seg.t1 = 1.0;
      seg.r_of_t = [b, s](double t) { return b * std::pow(t, s); };
      seg.drdt = [b, s](double t) { return b * s * std::pow(t, s - 1.0); };
    } else {
      seg.t0 = a;
      seg.t1 = b;
      seg.r_of_t = [](double t) { return t; };
      seg.drdt = [](double) { return 1.0; };
    }
    segments.push_back(std::move(seg));
  }

  std::vector<Panel> panels;
  panels.reserve(64);
  for (std::size_t i = 0; i < segments.size(); ++i)
    panels.push_back(gk15(f, segments[i], static_cast<int>(i),
                          segments[i].t0, segments[i].t1));

  int splits_done = 0;
  double total_err = 0.0;
  auto recompute = [&]() {
    double value = 0.0;
    total_err = 0.0;
    for (const Panel& p : panels) {
      value += p.value;
      total_err += p.err;
    }
    return value;
  };
  double value = recompute();

  double best_err = total_err;
  int stalled = 0;
  while (total_err > std::max(cfg.rel_tol * std::fabs(value), cfg.abs_tol) &&
         splits_done < cfg.max_subdivisions) {
    // deterministic worst-panel selection: largest error, lowest index wins
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].err > panels[worst].err) worst = i;
    const Panel chosen = panels[worst];
    const double mid = 0.5 * (chosen.a + chosen.b);
    if (mid <= chosen.a || mid >= chosen.b) break;  // panel exhausted in fp
    const Segment& seg = segments[static_cast<std::size_t>(chosen.seg)];
    panels[worst] = gk15(f, seg, chosen.seg, chosen.a, mid);
    panels.push_back(gk15(f, seg, chosen.seg, mid, chosen.b));
    ++splits_done;
    value = recompute();
    if (total_err < 0.999 * best_err) {
      best_err = total_err;
      stalled = 0;
    } else if (++stalled >= kStallLimit) {
      break;  // estimate has hit a noise floor; more panels cannot help
    }
  }

  IntegralResult res2;
  res2.value = kahan_total(panels);
  res2.error_estimate = total_err;
  res2.subdivisions_used = splits_done;
  res2.converged =
      total_err <= std::max(cfg.rel_tol * std::fabs(res2.value), cfg.abs_tol);
  return res2;
}

namespace detail {

double nested_level_rel_tol(double rel_tol, int m, int j) {
  // An outer level integrates values that are themselves numerical
  // integrals, so it can never resolve error below the noise it inherits
  // from the levels underneath. Tightening each inner level by a fixed
  // factor keeps every level's own target comfortably above that floor.
  // The outermost level gets only half the total budget: the aggregate
  // (outer estimate + inherited inner error) must still fit under rel_tol
  // even when the outer level genuinely needs all of its share.
  constexpr double kLevelTighten = 0.05;
  if (m == 1) return std::max(rel_tol, 1e-14);
  double t = 0.5 * rel_tol;
  for (int k = j; k < m - 1; ++k) t *= kLevelTighten;
  return std::max(t, 1e-14);
}

}  // namespace detail

IntegralResult integrate_nested(const IntegrandND& f, int m,
                                const QuadratureConfig& cfg,
                                const NestedOptions& opts) {
  cfg.validate();
  if (m < 1 || m > 3)
    throw DomainError("integrate_nested: m must be 1..3 (use integrate_mc beyond)");

  QuadratureConfig level_cfg = cfg;
  // Half the absolute budget per level, so the aggregate (outer estimate
  // plus inherited inner error) still fits under cfg.abs_tol when values
  // are tiny and every level exits through the absolute gate.
  level_cfg.abs_tol = 0.5 * cfg.abs_tol;
  level_cfg.singularity_exponent_hint.reset();

  auto upper = [&](int j) -> double {
    if (j < static_cast<int>(opts.upper.size())) return opts.upper[j];
    return kInf;
  };
  auto level_splits = [&](int j) -> std::span<const double> {
    if (j < static_cast<int>(opts.splits.size())) return opts.splits[j];
    return {};
  };
  auto level_hint = [&](int j) -> std::optional<double> {
    if (j < static_cast<int>(opts.hints.size())) return opts.hints[j];
    return std::nullopt;
  };

  std::vector<double> coords(static_cast<std::size_t>(m), 0.0);
  std::vector<double> max_err(static_cast<std::size_t>(m), 0.0);
  std::vector<double> max_val(static_cast<std::size_t>(m), 0.0);
  long long subdivisions = 0;
  IntegralResult outer;

  // coords[j]; level m-1 is outermost
  std::function<double(int)> run = [&](int j) -> double {
    const auto ju = static_cast<std::size_t>(j);
    QuadratureConfig c = level_cfg;
    c.rel_tol = detail::nested_level_rel_tol(cfg.rel_tol, m, j);
    c.singularity_exponent_hint = level_hint(j);
    Integrand1D g = [&, j](double x) -> double {
      coords[static_cast<std::size_t>(j)] = x;
      if (j == 0) return f(coords);
      return run(j - 1);
    };
    // The outer coordinates set the scales at which kernel-type integrands
    // turn over in this variable; a panel edge at each scale lets the tail
    // map track the decay beyond it.
    const auto fixed = level_splits(j);
    std::vector<double> cuts(fixed.begin(), fixed.end());
    double outer_scale = 0.0;
    for (int k = j + 1; k < m; ++k) {
      const double v = std::fabs(coords[static_cast<std::size_t>(k)]);
      if (v > 0.0 && std::isfinite(v)) {
        outer_scale += v;
        cuts.push_back(v);
      }
    }
    if (outer_scale > 0.0 && std::isfinite(outer_scale))
      cuts.push_back(outer_scale);
    const IntegralResult r = integrate_1d(g, 0.0, upper(j), c, cuts);
    subdivisions += r.subdivisions_used;
    if (j < m - 1) {
      max_err[ju] = std::max(max_err[ju], r.error_estimate);
      max_val[ju] = std::max(max_val[ju], std::fabs(r.value));
    } else {
      outer = r;
    }
    return r.value;
  };

  const double value = run(m - 1);
  // Weight each inner level's worst error by that level's value scale: a
  // call whose result is negligible against the scale cannot move the outer
  // integral, however poor its own relative accuracy (it exits via abs_tol).
  double inherited_rel = 0.0;
  for (int j = 0; j + 1 < m; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    inherited_rel += max_err[ju] / std::max(max_val[ju], 1e-300);
  }
  IntegralResult res;
  res.value = value;
  res.error_estimate =
      outer.error_estimate + inherited_rel * std::fabs(value);
  res.subdivisions_used =
      static_cast<int>(std::min<long long>(subdivisions, INT32_MAX));
  res.converged =
      res.error_estimate <= std::max(cfg.rel_tol * std::fabs(value), cfg.abs_tol);
  return res;
}

// --------------------------------------------------------------------------
// Monte Carlo
// --------------------------------------------------------------------------

ImportanceMap ImportanceMap::uniform(double lo, double hi) {
  if (!(hi > lo))
    throw DomainError(
        "ImportanceMap::uniform: zero-variance degenerate sampler (hi <= lo)");
  if (!(lo >= 0.0) || !std::isfinite(hi))
    throw DomainError("ImportanceMap::uniform: need 0 <= lo < hi < inf");
  ImportanceMap map;
  map.kind_ = Kind::Uniform;
  map.lo_ = lo;
  map.hi_ = hi;
  return map;
}

ImportanceMap ImportanceMap::power_law(double alpha, double tau) {
  if (!(alpha > -1.0))
    throw DomainError("ImportanceMap::power_law: need alpha > -1 near 0");
  if (!(tau < -1.0))
    throw DomainError("ImportanceMap::power_law: need tau < -1 in the tail");
  ImportanceMap map;
  map.kind_ = Kind::PowerLaw;
  map.alpha_ = alpha;
  map.tau_ = tau;
  const double head = 1.0 / (alpha + 1.0);
  const double tail = 1.0 / (-tau - 1.0);
  map.norm_ = 1.0 / (head + tail);
  map.head_mass_ = head * map.norm_;
  return map;
}

double ImportanceMap::sample(double u01) const {
  if (kind_ == Kind::Uniform) return lo_ + (hi_ - lo_) * u01;
  if (u01 < head_mass_) {
    const double v = u01 / head_mass_;
    return std::pow(v, 1.0 / (alpha_ + 1.0));
  }
  const double v = (u01 - head_mass_) / (1.0 - head_mass_);
  return std::pow(1.0 - v, 1.0 / (tau_ + 1.0));
}

double ImportanceMap::density(double r) const {
  if (kind_ == Kind::Uniform)
    return (r >= lo_ && r <= hi_) ? 1.0 / (hi_ - lo_) : 0.0;
  if (!(r > 0.0)) return 0.0;
  return r <= 1.0 ? norm_ * std::pow(r, alpha_) : norm_ * std::pow(r, tau_);
}

IntegralResult integrate_mc(const IntegrandND& f, int m,
                            std::span<const ImportanceMap> maps,
                            const QuadratureConfig& cfg) {
  cfg.validate();
  if (m < 1) throw DomainError("integrate_mc: m must be >= 1");
  if (static_cast<int>(maps.size()) != m)
    throw DomainError("integrate_mc: one importance map per coordinate required");

  std::vector<CounterRng> streams;
  streams.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    streams.emplace_back(cfg.mc_seed, static_cast<std::uint64_t>(j));

  const long long n = cfg.mc_samples;
  std::vector<double> x(static_cast<std::size_t>(m), 0.0);
  double mean = 0.0, m2 = 0.0;  // Welford
  for (long long i = 0; i < n; ++i) {
    double density = 1.0;
    for (int j = 0; j < m; ++j) {
      const double r = maps[static_cast<std::size_t>(j)].sample(
          streams[static_cast<std::size_t>(j)].next_u01());
      x[static_cast<std::size_t>(j)] = r;
      density *= maps[static_cast<std::size_t>(j)].density(r);
    }
    const double fv = f(x);
    if (std::isnan(fv) || std::isinf(fv)) {
      std::ostringstream msg;
      msg << "integrate_mc: integrand returned " << fv << " at (";
      for (int j = 0; j < m; ++j) msg << (j ? "," : "") << x[static_cast<std::size_t>(j)];
      msg << ")";
      throw EvaluationError(msg.str());
    }
    const double w = fv / density;
    const double delta = w - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (w - mean);
  }

  IntegralResult res;
  res.value = mean;
  const double variance = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  res.error_estimate = std::sqrt(std::max(variance, 0.0) / static_cast<double>(n));
  res.subdivisions_used = 0;
  res.converged = res.error_estimate <=
                  std::max(cfg.rel_tol * std::fabs(res.value), cfg.abs_tol);
  return res;
}

}  // namespace hlplab
