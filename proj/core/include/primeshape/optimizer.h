#ifndef PRIMESHAPE_OPTIMIZER_H_
#define PRIMESHAPE_OPTIMIZER_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "primeshape/awgn_mi.h"
#include "primeshape/constellation.h"
#include "primeshape/error.h"
#include "primeshape/field.h"
#include "primeshape/rational.h"

namespace primeshape {

// The target rate is not reachable at any SNR.
class UnreachableRate : public NonConvergence {
 public:
  using NonConvergence::NonConvergence;
};

struct SnrSearch {
  double rate_tol = 1e-9;
  // Initial bracket center; the bracket grows geometrically from +-1 dB.
  double hint_db = 10.0;
  double min_db = -100.0;
  double max_db = 150.0;
};

// gamma (linear) with |rate_fn(gamma) - target| < rate_tol. rate_fn must be
// increasing in gamma. Throws UnreachableRate past search.max_db.
double snr_for_rate(const std::function<double(double)>& rate_fn, double target,
                    const SnrSearch& search = {});

// How the SNR of a time-sharing transmission is normalized.
//  kPerComponent: shaped and parity symbols each see E_s/N_0 = gamma with
//    their own energy; equivalently both are scaled to a common energy.
//  kTimeAveraged: a single N_0 with gamma = (Rc E_s(pi) + (1-Rc) E_s(unif)) / N_0.
//  kShapedOnly: a single N_0 with gamma = E_s(pi) / N_0.
enum class EnergyConvention { kPerComponent, kTimeAveraged, kShapedOnly };

std::string to_string(EnergyConvention c);
EnergyConvention parse_energy_convention(std::string_view s);

enum class Scheme { kTimeSharing, kAskSquare, kCqam };

std::string to_string(Scheme s);

struct OptimizerOptions {
  int quadrature_nodes = kDefaultQuadratureNodes;
  double rate_tol = 1e-9;
  // Initial upper end of the nu bracket; widened until the optimum is interior.
  double nu_max = 1.0;
  // Golden-section stops at this width relative to the bracket.
  double nu_rel_tol = 1e-4;
  // Skip the search and evaluate at this nu.
  std::optional<double> fixed_nu;
};

struct ShapingSolution {
  std::uint32_t p = 0;
  Rational rc;
  Scheme scheme = Scheme::kTimeSharing;
  std::optional<EnergyConvention> convention;
  double target_rate = 0.0;  // bits per real dimension
  double nu_star = 0.0;
  double gamma_A_db = 0.0;
  double gamma_cap_db = 0.0;
  double gamma_unif_db = 0.0;
  double gap_db = 0.0;
  double potential_gain_db = 0.0;
  double effective_gain_db = 0.0;
  bool reachable = true;
  std::vector<std::string> warnings;
};

// Shaped information symbols (fraction Rc) and uniform parity symbols on
// p-ASK; target Rc*log2(p) bits per real dimension.
ShapingSolution optimize_time_sharing(Prime p, Rational rc,
                                      EnergyConvention convention = EnergyConvention::kPerComponent,
                                      const OptimizerOptions& options = {});

// Every symbol MB-shaped on p-ASK, one real dimension of a (p-ASK)^2 grid.
// Not a valid PAS scheme over F_p; kept as a reference row.
ShapingSolution optimize_ask_square(Prime p, Rational rc, const OptimizerOptions& options = {});

// Full shaping on the p^2-CQAM with shell priors MB over the shell radii.
// The potential gain is measured against the uniform unstretched CQAM.
// Requires rc >= 1/2.
ShapingSolution optimize_cqam(Prime p, Rational rc, const CqamParams& geometry,
                              const OptimizerOptions& options = {});

struct TableRequest {
  Scheme scheme = Scheme::kTimeSharing;
  std::uint32_t p = 7;
  Rational rc{2, 3};
  EnergyConvention convention = EnergyConvention::kPerComponent;
  CqamParams geometry;
  OptimizerOptions options;
};

// Unreachable rows come back with reachable == false instead of throwing.
ShapingSolution solve_row(const TableRequest& request);

// Rows evaluated on up to `threads` workers; output order equals input order.
std::vector<ShapingSolution> solve_rows(std::span<const TableRequest> requests,
                                        unsigned threads = 1);

// Stretch used for the shaped CQAM table rows, if one is known for p.
std::optional<CqamStretch> default_stretch(std::uint32_t p);

}  // namespace primeshape

#endif  // PRIMESHAPE_OPTIMIZER_H_
