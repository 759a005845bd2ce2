#ifndef PRIMESHAPE_CONSTELLATION_H_
#define PRIMESHAPE_CONSTELLATION_H_

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "primeshape/field.h"

namespace primeshape {

using Point = std::complex<double>;

// Shell structure of a circular constellation: shell i holds the points
// i*points_per_shell + l = radii[i] * exp(j*(phases[i] + 2*pi*l/points_per_shell)).
struct ShellStructure {
  std::size_t points_per_shell = 0;
  std::vector<double> radii;
  std::vector<double> phases;
};

class Constellation {
 public:
  // Uniform priors.
  explicit Constellation(std::vector<Point> points,
                         std::optional<ShellStructure> shells = std::nullopt);
  Constellation(std::vector<Point> points, std::vector<double> priors,
                std::optional<ShellStructure> shells = std::nullopt);

  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& priors() const { return priors_; }
  const std::optional<ShellStructure>& shells() const { return shells_; }
  std::size_t size() const { return points_.size(); }

  // Index of the shell holding point `index`; requires shell structure.
  std::size_t shell_of(std::size_t index) const;

  // True if every point has zero imaginary part.
  bool is_real() const;

  Constellation with_priors(std::vector<double> priors) const;

  // Prior-weighted average energy.
  double energy() const;
  // Average energy with equiprobable points.
  double uniform_energy() const;
  Point centroid() const;

 private:
  std::vector<Point> points_;
  std::vector<double> priors_;
  std::optional<ShellStructure> shells_;
};

struct CqamStretch {
  double rho_max = 0.0;
  double beta = 0.0;
};

struct CqamParams {
  double delta_rho = 1e-4;
  int phase_steps = 4096;
  std::optional<CqamStretch> stretch;

  void validate() const;
};

// p-ASK, point index equal to the field symbol value.
Constellation build_ask(Prime p);

// (p-ASK)^2 square grid; point a*p + b = ask(a) + j*ask(b).
Constellation build_ask_square(Prime p);

// p^2-CQAM by incremental shell search with minimum distance 2 sin(pi/p).
// params.stretch must be absent.
Constellation build_cqam(Prime p, const CqamParams& params = {});

// Phase offsets from build_cqam, radii 1 + (rho_max - 1)((i-1)/(p-1))^beta.
Constellation build_cqam_stretched(Prime p, const CqamParams& params);

// Dispatches on params.stretch.
Constellation build_cqam_any(Prime p, const CqamParams& params);

// Exact pairwise scan.
double min_distance(const Constellation& c);

// d_min^2 / E_s * log2|A| with E_s under equiprobable points.
double figure_of_merit(const Constellation& c);

// Largest distance from a point of the set rotated by 2*pi/points_per_shell
// to its nearest original point.
double rotation_residual(const Constellation& c);

// CSV with header index,shell,re,im,prior. Shell is -1 when absent.
void write_points_csv(std::ostream& os, const Constellation& c);

}  // namespace primeshape

#endif  // PRIMESHAPE_CONSTELLATION_H_
