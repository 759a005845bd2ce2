#include "primeshape/awgn_mi.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "primeshape/error.h"
#include "primeshape/quadrature.h"

namespace primeshape {

namespace {

// Product-rule nodes whose normalized weight falls below this floor are
// dropped; their total contribution is far below 1e-15 bits.
constexpr double kNodeWeightFloor = 1e-24;

struct Rule1d {
  std::vector<double> t;
  std::vector<double> w;  // normalized to sum 1
};

struct Rule2d {
  std::vector<double> tx;
  std::vector<double> ty;
  std::vector<double> w;
};

const Rule1d& rule_1d(int n) {
  static std::mutex mu;
  static std::map<int, Rule1d> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const GaussHermite gh = gauss_hermite(n);
  Rule1d r;
  const double norm = 1.0 / std::sqrt(std::numbers::pi);
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    const double w = gh.weights[i] * norm;
    if (w < kNodeWeightFloor) continue;
    r.t.push_back(gh.nodes[i]);
    r.w.push_back(w);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

const Rule2d& rule_2d(int n) {
  static std::mutex mu;
  static std::map<int, Rule2d> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  const Rule1d& r1 = rule_1d(n);
  Rule2d r;
  for (std::size_t a = 0; a < r1.t.size(); ++a) {
    for (std::size_t b = 0; b < r1.t.size(); ++b) {
      const double w = r1.w[a] * r1.w[b];
      if (w < kNodeWeightFloor) continue;
      r.tx.push_back(r1.t[a]);
      r.ty.push_back(r1.t[b]);
      r.w.push_back(w);
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(r)).first->second;
}

// -log(sum_j exp(e_j) * prior_j) given exponents and log priors.
double neg_log_mixture(std::span<const double> exponents) {
  double m = -std::numeric_limits<double>::infinity();
  for (double e : exponents) m = std::max(m, e);
  double s = 0.0;
  for (double e : exponents) s += std::exp(e - m);
  return -(m + std::log(s));
}

}  // namespace

void ChannelSnr::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("SNR gamma must be finite and > 0");
  }
}

double mi_real_at_noise(std::span<const double> points, std::span<const double> priors,
                        double sigma2, int nodes) {
  if (points.size() != priors.size()) throw InvalidArgument("points/priors size mismatch");
  if (!(sigma2 > 0.0)) throw InvalidArgument("noise variance must be > 0");
  const Rule1d& rule = rule_1d(nodes);

  // Keep only points with nonzero prior; their log priors enter the exponent.
  std::vector<double> xs;
  std::vector<double> lp;
  std::vector<double> pr;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (priors[j] > 0.0) {
      xs.push_back(points[j]);
      lp.push_back(std::log(priors[j]));
      pr.push_back(priors[j]);
    }
  }
  const std::size_t m = xs.size();
  const double sigma = std::sqrt(sigma2);
  const double scale = std::sqrt(2.0) / sigma;  // n / sigma^2 with n = sqrt(2) sigma t
  std::vector<double> a(m);
  std::vector<double> b(m);
  std::vector<double> ex(m);

  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = xs[i] - xs[j];
      a[j] = lp[j] - d * d / (2.0 * sigma2);
      b[j] = -d * scale;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.t.size(); ++k) {
      const double t = rule.t[k];
      for (std::size_t j = 0; j < m; ++j) ex[j] = a[j] + b[j] * t;
      acc += rule.w[k] * neg_log_mixture(ex);
    }
    total += pr[i] * acc;
  }
  return std::max(0.0, total / std::numbers::ln2);
}

double mi_real(const Constellation& c, ChannelSnr snr, int nodes) {
  snr.validate();
  if (!c.is_real()) throw InvalidArgument("mi_real needs a real constellation");
  const double es = c.energy();
  if (!(es > 0.0)) throw InvalidArgument("zero-energy constellation has no defined SNR");
  std::vector<double> xs(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) xs[i] = c.points()[i].real();
  const double n0 = es / snr.gamma;
  return mi_real_at_noise(xs, c.priors(), n0 / 2.0, nodes);
}

double mi_complex_cqam_at_noise(const Constellation& c, double n0, int nodes) {
  if (!(n0 > 0.0)) throw InvalidArgument("noise variance must be > 0");
  if (!c.shells()) throw InvalidArgument("mi_complex_cqam needs shell structure");
  const ShellStructure& sh = *c.shells();
  const std::size_t q = sh.points_per_shell;
  const std::size_t shells = sh.radii.size();
  const auto& pri = c.priors();
  for (std::size_t i = 0; i < shells; ++i) {
    const double ref = pri[i * q];
    for (std::size_t l = 1; l < q; ++l) {
      if (std::abs(pri[i * q + l] - ref) > 1e-12 * std::max(ref, 1e-300)) {
        throw InvalidArgument("priors are not uniform within each shell");
      }
    }
  }
  const Rule2d& rule = rule_2d(nodes);
  const auto& pts = c.points();

  std::vector<Point> xs;
  std::vector<double> lp;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (pri[j] > 0.0) {
      xs.push_back(pts[j]);
      lp.push_back(std::log(pri[j]));
    }
  }
  const std::size_t m = xs.size();
  const double sq = std::sqrt(n0);
  std::vector<double> a(m);
  std::vector<double> bx(m);
  std::vector<double> by(m);
  std::vector<double> ex(m);

  double total = 0.0;
  for (std::size_t i = 0; i < shells; ++i) {
    const double shell_prob = pri[i * q] * static_cast<double>(q);
    if (shell_prob <= 0.0) continue;
    const Point x = pts[i * q];
    for (std::size_t j = 0; j < m; ++j) {
      const Point d = x - xs[j];
      a[j] = lp[j] - std::norm(d) / n0;
      // -2 Re(d * conj(n)) / n0 with n = sqrt(n0) (tx + j ty)
      bx[j] = -2.0 * d.real() / sq;
      by[j] = -2.0 * d.imag() / sq;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.w.size(); ++k) {
      const double tx = rule.tx[k];
      const double ty = rule.ty[k];
      for (std::size_t j = 0; j < m; ++j) ex[j] = a[j] + bx[j] * tx + by[j] * ty;
      acc += rule.w[k] * neg_log_mixture(ex);
    }
    total += shell_prob * acc;
  }
  return std::max(0.0, total / std::numbers::ln2);
}

double mi_complex_cqam(const Constellation& c, ChannelSnr snr, int nodes) {
  snr.validate();
  const double es = c.energy();
  if (!(es > 0.0)) throw InvalidArgument("zero-energy constellation has no defined SNR");
  return mi_complex_cqam_at_noise(c, es / snr.gamma, nodes);
}

double capacity_gamma(double rate, Dimension dimension) {
  if (!(rate >= 0.0)) throw InvalidArgument("rate must be >= 0");
  const double v = std::exp2(2.0 * rate) - 1.0;
  return dimension == Dimension::kReal ? v / 2.0 : v;
}

}  // namespace primeshape
