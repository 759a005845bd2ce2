#include "primeshape/constellation.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "primeshape/error.h"

namespace primeshape {

namespace {

constexpr double kPi = std::numbers::pi;

// Radius search gives up past this bound; the construction never needs it.
constexpr double kRadiusBound = 1.0 + 2.0 * kPi;

void check_priors(std::span<const double> priors, std::size_t n) {
  if (priors.size() != n) throw InvalidArgument("prior count does not match point count");
  double total = 0.0;
  for (double v : priors) {
    if (!(v >= 0.0)) throw InvalidArgument("negative prior");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw InvalidArgument("priors sum to " + std::to_string(total));
  }
}

std::vector<Point> shell_points(const ShellStructure& s) {
  const std::size_t q = s.points_per_shell;
  std::vector<Point> pts;
  pts.reserve(q * s.radii.size());
  for (std::size_t i = 0; i < s.radii.size(); ++i) {
    for (std::size_t l = 0; l < q; ++l) {
      const double angle =
          s.phases[i] + 2.0 * kPi * static_cast<double>(l) / static_cast<double>(q);
      pts.push_back(std::polar(s.radii[i], angle));
    }
  }
  return pts;
}

// Wraps an angle into [-pi/q, pi/q].
double wrap_to_sector(double angle, std::size_t q) {
  const double sector = 2.0 * kPi / static_cast<double>(q);
  double r = std::remainder(angle, sector);
  return r;
}

// Smallest radius rho >= floor at phase phi whose point stays at least d_min
// from every point of the already placed shells.
double required_radius(double phi, double floor, double d_min_sq, std::size_t q,
                       std::span<const double> radii, std::span<const double> phases) {
  double rho = floor;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double delta = wrap_to_sector(phi - phases[j], q);
    const double r = radii[j];
    const double s = r * std::sin(delta);
    const double disc = d_min_sq - s * s;
    if (disc <= 0.0) continue;
    // |rho e^{j phi} - r e^{j phases[j]}|^2 >= d^2 holds for rho outside the
    // roots r cos(delta) -/+ sqrt(disc); the lower root sits below floor.
    rho = std::max(rho, r * std::cos(delta) + std::sqrt(disc));
  }
  return rho;
}

}  // namespace

Constellation::Constellation(std::vector<Point> points, std::optional<ShellStructure> shells)
    : Constellation(std::vector<Point>(points),
                    std::vector<double>(points.size(),
                                        points.empty() ? 0.0 : 1.0 / static_cast<double>(points.size())),
                    std::move(shells)) {}

Constellation::Constellation(std::vector<Point> points, std::vector<double> priors,
                             std::optional<ShellStructure> shells)
    : points_(std::move(points)), priors_(std::move(priors)), shells_(std::move(shells)) {
  if (points_.empty()) throw InvalidArgument("constellation has no points");
  check_priors(priors_, points_.size());
  if (shells_) {
    if (shells_->points_per_shell == 0 ||
        shells_->radii.size() != shells_->phases.size() ||
        shells_->radii.size() * shells_->points_per_shell != points_.size()) {
      throw InvalidArgument("shell structure does not match point count");
    }
  }
}

std::size_t Constellation::shell_of(std::size_t index) const {
  if (!shells_) throw InvalidArgument("constellation has no shell structure");
  return index / shells_->points_per_shell;
}

bool Constellation::is_real() const {
  return std::all_of(points_.begin(), points_.end(),
                     [](const Point& x) { return x.imag() == 0.0; });
}

Constellation Constellation::with_priors(std::vector<double> priors) const {
  return Constellation(points_, std::move(priors), shells_);
}

double Constellation::energy() const {
  double e = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) e += priors_[i] * std::norm(points_[i]);
  return e;
}

double Constellation::uniform_energy() const {
  double e = 0.0;
  for (const auto& x : points_) e += std::norm(x);
  return e / static_cast<double>(points_.size());
}

Point Constellation::centroid() const {
  Point c{0.0, 0.0};
  for (const auto& x : points_) c += x;
  return c / static_cast<double>(points_.size());
}

void CqamParams::validate() const {
  if (!(delta_rho > 0.0)) throw InvalidArgument("delta_rho must be > 0");
  if (phase_steps < 2) throw InvalidArgument("phase_steps must be >= 2");
  if (stretch) {
    if (!(stretch->rho_max > 1.0)) throw InvalidArgument("rho_max must be > 1");
    if (!(stretch->beta > 0.0)) throw InvalidArgument("beta must be > 0");
  }
}

Constellation build_ask(Prime p) {
  if (!p.is_odd()) throw InvalidArgument("p-ASK needs an odd prime");
  std::vector<Point> pts(p.value());
  for (std::uint32_t s = 0; s < p.value(); ++s) pts[s] = {static_cast<double>(ask_point(p, s)), 0.0};
  return Constellation(std::move(pts));
}

Constellation build_ask_square(Prime p) {
  if (!p.is_odd()) throw InvalidArgument("p-ASK needs an odd prime");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(p.value()) * p.value());
  for (std::uint32_t a = 0; a < p.value(); ++a) {
    for (std::uint32_t b = 0; b < p.value(); ++b) {
      pts.emplace_back(ask_point(p, a), ask_point(p, b));
    }
  }
  return Constellation(std::move(pts));
}

Constellation build_cqam(Prime p, const CqamParams& params) {
  require_odd(p);
  params.validate();
  if (params.stretch) throw InvalidArgument("build_cqam takes no stretch; use build_cqam_stretched");

  const std::size_t q = p.value();
  const double d_min = 2.0 * std::sin(kPi / static_cast<double>(q));
  const double d_min_sq = d_min * d_min;
  const double half_sector = kPi / static_cast<double>(q);
  const auto steps = static_cast<std::size_t>(params.phase_steps);
  const double phase_step = 2.0 * half_sector / static_cast<double>(steps);

  ShellStructure shells;
  shells.points_per_shell = q;
  shells.radii.push_back(1.0);
  shells.phases.push_back(0.0);

  std::vector<double> need(steps + 1);
  for (std::size_t i = 1; i < q; ++i) {
    const double floor = shells.radii.back();
    // Phase grid swept from +pi/p down to -pi/p.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= steps; ++k) {
      const double phi = half_sector - static_cast<double>(k) * phase_step;
      need[k] = required_radius(phi, floor, d_min_sq, q, shells.radii, shells.phases);
      best = std::min(best, need[k]);
    }
    // Incremental radius grid: the first increment of delta_rho at which some
    // grid phase becomes feasible.
    const double increments = std::max(1.0, std::ceil((best - floor) / params.delta_rho - 1e-9));
    const double grid_rho = floor + increments * params.delta_rho;
    if (grid_rho > kRadiusBound) {
      throw NonConvergence("CQAM shell search exceeded radius bound 1 + 2*pi");
    }
    std::size_t hit = 0;
    while (hit <= steps && need[hit] > grid_rho) ++hit;

    // Refinement: the smallest radius over the grid below grid_rho, preferring
    // the first hit of the sweep among equal minima...
    std::size_t arg = hit;
    for (std::size_t k = hit; k <= steps; ++k) {
      if (need[k] < need[arg] - 1e-12) arg = k;
    }
    // ...then a local golden-section search in phase around that grid point.
    double lo = std::max(-half_sector, half_sector - (static_cast<double>(arg) + 1.0) * phase_step);
    double hi = std::min(half_sector, half_sector - (static_cast<double>(arg) - 1.0) * phase_step);
    auto f = [&](double phi) {
      return required_radius(phi, floor, d_min_sq, q, shells.radii, shells.phases);
    };
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = f(x2);
      }
    }
    double phi = 0.5 * (lo + hi);
    double rho = f(phi);
    const double grid_phi = half_sector - static_cast<double>(arg) * phase_step;
    if (need[arg] <= rho) {
      phi = grid_phi;
      rho = need[arg];
    }
    shells.radii.push_back(rho);
    shells.phases.push_back(phi);
  }

  return Constellation(shell_points(shells), shells);
}

Constellation build_cqam_stretched(Prime p, const CqamParams& params) {
  params.validate();
  if (!params.stretch) throw InvalidArgument("build_cqam_stretched needs stretch parameters");
  CqamParams base = params;
  base.stretch.reset();
  ShellStructure shells = *build_cqam(p, base).shells();
  const auto q = static_cast<double>(p.value());
  for (std::size_t i = 0; i < shells.radii.size(); ++i) {
    const double t = static_cast<double>(i) / (q - 1.0);
    shells.radii[i] = 1.0 + (params.stretch->rho_max - 1.0) * std::pow(t, params.stretch->beta);
  }
  return Constellation(shell_points(shells), shells);
}

Constellation build_cqam_any(Prime p, const CqamParams& params) {
  return params.stretch ? build_cqam_stretched(p, params) : build_cqam(p, params);
}

double min_distance(const Constellation& c) {
  const auto& pts = c.points();
  if (pts.size() < 2) throw InvalidArgument("minimum distance needs at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      best = std::min(best, std::norm(pts[a] - pts[b]));
    }
  }
  return std::sqrt(best);
}

double figure_of_merit(const Constellation& c) {
  const double e = c.uniform_energy();
  if (std::abs(c.centroid()) > 1e-9 * std::max(1.0, std::sqrt(e))) {
    throw InvalidArgument("figure of merit assumes a zero-centroid constellation");
  }
  const double d = min_distance(c);
  if (d == 0.0) throw InvalidArgument("duplicate points: minimum distance is zero");
  return d * d / e * std::log2(static_cast<double>(c.size()));
}

double rotation_residual(const Constellation& c) {
  if (!c.shells()) throw InvalidArgument("rotation residual needs shell structure");
  const Point rot = std::polar(1.0, 2.0 * kPi / static_cast<double>(c.shells()->points_per_shell));
  double worst = 0.0;
  for (const auto& x : c.points()) {
    const Point y = x * rot;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& z : c.points()) nearest = std::min(nearest, std::abs(y - z));
    worst = std::max(worst, nearest);
  }
  return worst;
}

void write_points_csv(std::ostream& os, const Constellation& c) {
  os << "index,shell,re,im,prior\n";
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const long shell = c.shells() ? static_cast<long>(c.shell_of(i)) : -1L;
    os << i << ',' << shell << ',' << c.points()[i].real() << ',' << c.points()[i].imag()
       << ',' << c.priors()[i] << '\n';
  }
  os.precision(old);
}

}  // namespace primeshape
