#ifndef PRIMESHAPE_AWGN_MI_H_
#define PRIMESHAPE_AWGN_MI_H_

#include <span>

#include "primeshape/constellation.h"

namespace primeshape {

enum class Dimension { kReal, kComplex };

// gamma = E_s / N_0 (linear). Real channels add noise of variance N_0/2;
// complex channels add circular noise of total variance N_0.
struct ChannelSnr {
  double gamma = 1.0;
  Dimension dimension = Dimension::kReal;

  void validate() const;
};

inline constexpr int kDefaultQuadratureNodes = 96;

// I(X;Y) in bits per real dimension for a real constellation. Noise is scaled
// so that the prior-weighted energy over N_0 equals snr.gamma.
double mi_real(const Constellation& c, ChannelSnr snr, int nodes = kDefaultQuadratureNodes);

// I(X;Y) for real points with priors under noise variance sigma2.
double mi_real_at_noise(std::span<const double> points, std::span<const double> priors,
                        double sigma2, int nodes = kDefaultQuadratureNodes);

// I(X;Y) in bits per complex symbol for a circular constellation with
// shell-uniform priors. One 2-D conditional integral per shell.
double mi_complex_cqam(const Constellation& c, ChannelSnr snr,
                       int nodes = kDefaultQuadratureNodes);

// Same at complex noise variance n0.
double mi_complex_cqam_at_noise(const Constellation& c, double n0,
                                int nodes = kDefaultQuadratureNodes);

// Gaussian-capacity SNR for a rate in bits per real dimension:
// real (2^{2R} - 1)/2, complex 2^{2R} - 1.
double capacity_gamma(double rate, Dimension dimension);

}  // namespace primeshape

#endif  // PRIMESHAPE_AWGN_MI_H_
