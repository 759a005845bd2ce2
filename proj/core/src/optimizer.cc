#include "primeshape/optimizer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "primeshape/shaping.h"

namespace primeshape {

namespace {

double to_db(double x) { return 10.0 * std::log10(x); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Largest nu at which the high-SNR rate limit asymptote(nu) still exceeds the
// target. asymptote must be non-increasing in nu.
double feasible_nu_limit(const std::function<double(double)>& asymptote, double target) {
  if (asymptote(0.0) <= target) {
    throw UnreachableRate("target rate " + format_double(target) +
                          " is not below the high-SNR limit even without shaping");
  }
  double lo = 0.0;
  double hi = 1.0;
  while (asymptote(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) return kInf;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (asymptote(mid) > target ? lo : hi) = mid;
  }
  return lo;
}

struct Minimum {
  double x;
  double f;
};

Minimum golden_section(const std::function<double(double)>& f, double a, double b, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

struct NuOptimum {
  double nu = 0.0;
  double gamma_db = 0.0;
  std::vector<std::string> warnings;
};

// Minimizes the SNR (dB) at which rate_at(nu, gamma) reaches target.
NuOptimum minimize_snr_over_nu(const std::function<double(double, double)>& rate_at,
                               const std::function<double(double)>& asymptote, double target,
                               const OptimizerOptions& options) {
  SnrSearch search;
  search.rate_tol = options.rate_tol;

  auto gamma_db_at = [&](double nu) {
    auto rate = [&](double gamma) { return rate_at(nu, gamma); };
    const double g = snr_for_rate(rate, target, search);
    search.hint_db = to_db(g);
    return search.hint_db;
  };

  NuOptimum out;
  if (options.fixed_nu) {
    out.nu = *options.fixed_nu;
    out.gamma_db = gamma_db_at(out.nu);
    return out;
  }

  const double nu_limit = feasible_nu_limit(asymptote, target);
  auto objective = [&](double nu) {
    if (nu >= nu_limit) return kInf;
    try {
      return gamma_db_at(nu);
    } catch (const UnreachableRate&) {
      return kInf;
    }
  };

  double upper = std::min(options.nu_max, nu_limit);
  Minimum best{0.0, kInf};
  for (int round = 0; round < 40; ++round) {
    const double tol = options.nu_rel_tol * upper;
    best = golden_section(objective, 0.0, upper, tol);
    if (upper < nu_limit && best.x > upper - 3.0 * tol) {
      upper = std::min(2.0 * upper, nu_limit);
      out.warnings.push_back("optimum at nu bracket edge; widened to " + format_double(upper));
      continue;
    }
    if (best.x < 3.0 * tol) {
      const double at_zero = objective(0.0);
      if (at_zero <= best.f) best = {0.0, at_zero};
      out.warnings.push_back("optimum at nu = 0 boundary");
    }
    break;
  }
  if (!std::isfinite(best.f)) throw UnreachableRate("no nu reaches the target rate");
  out.nu = best.x;
  out.gamma_db = best.f;
  return out;
}

void fill_gaps(ShapingSolution& s) {
  s.gap_db = s.gamma_A_db - s.gamma_cap_db;
  s.potential_gain_db = s.gamma_unif_db - s.gamma_cap_db;
  s.effective_gain_db = s.gamma_unif_db - s.gamma_A_db;
}

std::vector<double> ask_points(Prime p) {
  std::vector<double> xs(p.value());
  for (std::uint32_t s = 0; s < p.value(); ++s) xs[s] = ask_point(p, s);
  return xs;
}

}  // namespace

double snr_for_rate(const std::function<double(double)>& rate_fn, double target,
                    const SnrSearch& search) {
  auto f = [&](double db) { return rate_fn(from_db(db)) - target; };
  const double hint = std::clamp(search.hint_db, search.min_db, search.max_db);
  double step = 1.0;
  double lo = std::max(search.min_db, hint - step);
  double hi = std::min(search.max_db, hint + step);
  double flo = f(lo);
  double fhi = f(hi);
  if (std::abs(flo) < search.rate_tol) return from_db(lo);
  if (std::abs(fhi) < search.rate_tol) return from_db(hi);

  while (flo > 0.0) {
    if (lo <= search.min_db) {
      throw NonConvergence("rate exceeds target even at the minimum SNR");
    }
    hi = lo;
    fhi = flo;
    step *= 2.0;
    lo = std::max(search.min_db, lo - step);
    flo = f(lo);
  }
  while (fhi < 0.0) {
    if (hi >= search.max_db) {
      throw UnreachableRate("target rate " + format_double(target) +
                            " unreachable below " + format_double(search.max_db) + " dB");
    }
    lo = hi;
    flo = fhi;
    step *= 2.0;
    hi = std::min(search.max_db, hi + step);
    fhi = f(hi);
  }

  // Illinois variant of regula falsi on the dB axis.
  int side = 0;
  for (int it = 0; it < 300; ++it) {
    if (std::abs(flo) < search.rate_tol) return from_db(lo);
    if (std::abs(fhi) < search.rate_tol) return from_db(hi);
    double x = hi - fhi * (hi - lo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double fx = f(x);
    if (std::abs(fx) < search.rate_tol || hi - lo < 1e-13) return from_db(x);
    if (fx < 0.0) {
      lo = x;
      flo = fx;
      if (side == -1) fhi /= 2.0;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) flo /= 2.0;
      side = 1;
    }
  }
  throw NonConvergence("SNR search did not converge");
}

std::string to_string(EnergyConvention c) {
  switch (c) {
    case EnergyConvention::kPerComponent: return "per-component";
    case EnergyConvention::kTimeAveraged: return "time-averaged";
    case EnergyConvention::kShapedOnly: return "shaped-only";
  }
  return "unknown";
}

EnergyConvention parse_energy_convention(std::string_view s) {
  if (s == "per-component") return EnergyConvention::kPerComponent;
  if (s == "time-averaged") return EnergyConvention::kTimeAveraged;
  if (s == "shaped-only") return EnergyConvention::kShapedOnly;
  throw InvalidArgument("unknown energy convention '" + std::string(s) + "'");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::kTimeSharing: return "time-sharing";
    case Scheme::kAskSquare: return "ask-square";
    case Scheme::kCqam: return "cqam";
  }
  return "unknown";
}

ShapingSolution optimize_time_sharing(Prime p, Rational rc, EnergyConvention convention,
                                      const OptimizerOptions& options) {
  require_odd(p);
  const double r = rc.value();
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("time sharing needs 0 < Rc < 1");

  ShapingSolution s;
  s.p = p.value();
  s.rc = rc;
  s.scheme = Scheme::kTimeSharing;
  s.convention = convention;
  s.target_rate = r * std::log2(static_cast<double>(p.value()));

  const std::vector<double> xs = ask_points(p);
  const std::vector<double> uniform(p.value(), 1.0 / p.value());
  const double e_unif = (static_cast<double>(p.value()) * p.value() - 1.0) / 12.0;
  const int nodes = options.quadrature_nodes;

  s.gamma_cap_db = to_db(capacity_gamma(s.target_rate, Dimension::kReal));
  {
    SnrSearch search;
    search.rate_tol = options.rate_tol;
    auto rate = [&](double g) { return mi_real_at_noise(xs, uniform, e_unif / g / 2.0, nodes); };
    s.gamma_unif_db = to_db(snr_for_rate(rate, s.target_rate, search));
  }

  auto rate_at = [&](double nu, double g) {
    const MaxwellBoltzmann mb = mb_ask_prior(p, nu);
    const double e_shaped = ask_energy(mb, p);
    double n0_shaped = 0.0;
    double n0_unif = 0.0;
    switch (convention) {
      case EnergyConvention::kPerComponent:
        n0_shaped = e_shaped / g;
        n0_unif = e_unif / g;
        break;
      case EnergyConvention::kTimeAveraged:
        n0_shaped = n0_unif = (r * e_shaped + (1.0 - r) * e_unif) / g;
        break;
      case EnergyConvention::kShapedOnly:
        n0_shaped = n0_unif = e_shaped / g;
        break;
    }
    return r * mi_real_at_noise(xs, mb.probs, n0_shaped / 2.0, nodes) +
           (1.0 - r) * mi_real_at_noise(xs, uniform, n0_unif / 2.0, nodes);
  };
  const double log2p = std::log2(static_cast<double>(p.value()));
  auto asymptote = [&](double nu) {
    return r * entropy_bits(mb_ask_prior(p, nu).probs) + (1.0 - r) * log2p;
  };

  NuOptimum opt = minimize_snr_over_nu(rate_at, asymptote, s.target_rate, options);
  s.nu_star = opt.nu;
  s.gamma_A_db = opt.gamma_db;
  s.warnings = std::move(opt.warnings);
  fill_gaps(s);
  return s;
}

ShapingSolution optimize_ask_square(Prime p, Rational rc, const OptimizerOptions& options) {
  require_odd(p);
  const double r = rc.value();
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("needs 0 < Rc < 1");

  ShapingSolution s;
  s.p = p.value();
  s.rc = rc;
  s.scheme = Scheme::kAskSquare;
  s.target_rate = r * std::log2(static_cast<double>(p.value()));
  const std::vector<double> xs = ask_points(p);
  const int nodes = options.quadrature_nodes;

  s.gamma_cap_db = to_db(capacity_gamma(s.target_rate, Dimension::kReal));
  auto rate_at = [&](double nu, double g) {
    const MaxwellBoltzmann mb = mb_ask_prior(p, nu);
    return mi_real_at_noise(xs, mb.probs, ask_energy(mb, p) / g / 2.0, nodes);
  };
  {
    SnrSearch search;
    search.rate_tol = options.rate_tol;
    auto rate = [&](double g) { return rate_at(0.0, g); };
    s.gamma_unif_db = to_db(snr_for_rate(rate, s.target_rate, search));
  }
  auto asymptote = [&](double nu) { return entropy_bits(mb_ask_prior(p, nu).probs); };
  NuOptimum opt = minimize_snr_over_nu(rate_at, asymptote, s.target_rate, options);
  s.nu_star = opt.nu;
  s.gamma_A_db = opt.gamma_db;
  s.warnings = std::move(opt.warnings);
  fill_gaps(s);
  return s;
}

ShapingSolution optimize_cqam(Prime p, Rational rc, const CqamParams& geometry,
                              const OptimizerOptions& options) {
  require_odd(p);
  const double r = rc.value();
  if (!(r >= 0.5)) throw InvalidArgument("CQAM shaping needs Rc >= 1/2");
  if (!(r < 1.0)) throw InvalidArgument("CQAM shaping needs Rc < 1");

  ShapingSolution s;
  s.p = p.value();
  s.rc = rc;
  s.scheme = Scheme::kCqam;
  s.target_rate = r * std::log2(static_cast<double>(p.value()));
  const double target = 2.0 * s.target_rate;
  const int nodes = options.quadrature_nodes;

  const Constellation shaped_geometry = build_cqam_any(p, geometry);
  CqamParams base_params = geometry;
  base_params.stretch.reset();
  const Constellation base_geometry =
      geometry.stretch ? build_cqam(p, base_params) : shaped_geometry;

  auto rate_for = [&](const Constellation& geo, double nu, double g) {
    const std::vector<double>& radii = geo.shells()->radii;
    const MaxwellBoltzmann mb = mb_prior(radii, nu);
    const Constellation c = geo.with_priors(cqam_prior(mb, p));
    return mi_complex_cqam_at_noise(c, c.energy() / g, nodes);
  };

  s.gamma_cap_db = to_db(capacity_gamma(s.target_rate, Dimension::kComplex));
  {
    SnrSearch search;
    search.rate_tol = options.rate_tol;
    auto rate = [&](double g) { return rate_for(base_geometry, 0.0, g); };
    s.gamma_unif_db = to_db(snr_for_rate(rate, target, search));
  }

  const double log2p = std::log2(static_cast<double>(p.value()));
  auto rate_at = [&](double nu, double g) { return rate_for(shaped_geometry, nu, g); };
  auto asymptote = [&](double nu) {
    return entropy_bits(mb_prior(shaped_geometry.shells()->radii, nu).probs) + log2p;
  };
  NuOptimum opt = minimize_snr_over_nu(rate_at, asymptote, target, options);
  s.nu_star = opt.nu;
  s.gamma_A_db = opt.gamma_db;
  s.warnings = std::move(opt.warnings);
  fill_gaps(s);
  return s;
}

ShapingSolution solve_row(const TableRequest& request) {
  try {
    const Prime p(request.p);
    switch (request.scheme) {
      case Scheme::kTimeSharing:
        return optimize_time_sharing(p, request.rc, request.convention, request.options);
      case Scheme::kAskSquare:
        return optimize_ask_square(p, request.rc, request.options);
      case Scheme::kCqam:
        return optimize_cqam(p, request.rc, request.geometry, request.options);
    }
  } catch (const UnreachableRate& e) {
    ShapingSolution s;
    s.p = request.p;
    s.rc = request.rc;
    s.scheme = request.scheme;
    if (request.scheme == Scheme::kTimeSharing) s.convention = request.convention;
    s.target_rate = request.rc.value() * std::log2(static_cast<double>(request.p));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.nu_star = s.gamma_A_db = s.gamma_cap_db = s.gamma_unif_db = nan;
    s.gap_db = s.potential_gain_db = s.effective_gain_db = nan;
    s.reachable = false;
    s.warnings.push_back(e.what());
    return s;
  }
  throw InvalidArgument("unknown scheme");
}

std::vector<ShapingSolution> solve_rows(std::span<const TableRequest> requests, unsigned threads) {
  std::vector<ShapingSolution> out(requests.size());
  std::vector<std::exception_ptr> errors(requests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < requests.size(); i = next++) {
      try {
        out[i] = solve_row(requests[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(requests.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::optional<CqamStretch> default_stretch(std::uint32_t p) {
  if (p == 7) return CqamStretch{4.8, 0.76};
  if (p == 13) return CqamStretch{6.0, 0.80};
  return std::nullopt;
}

}  // namespace primeshape
