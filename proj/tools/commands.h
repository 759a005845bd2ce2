#ifndef PRIMESHAPE_TOOLS_COMMANDS_H_
#define PRIMESHAPE_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace primeshape::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNonConvergence = 3;

struct SumDistArgs {
  std::uint32_t p = 0;
  std::string factors_file;
  std::vector<std::string> inline_factors;
  bool uniform_factor = false;
  int repeat = 1;
  std::string format = "csv";
  std::string output;
};

struct ConstructArgs {
  std::uint32_t p = 0;
  std::vector<double> stretch;  // empty or {rho_max, beta}
  double delta_rho = 1e-4;
  int phase_steps = 4096;
  double nu = 0.0;
  std::string output;
};

struct TableArgs {
  std::string mode = "time-sharing";
  std::vector<std::uint32_t> primes{7, 13};
  std::vector<std::string> rates;
  std::string convention = "per-component";
  std::string format = "csv";
  unsigned threads = 1;
  int quadrature_nodes = 96;
  std::optional<double> fixed_nu;
  std::string output;
};

struct PasArgs {
  std::uint32_t p = 7;
  std::string rc = "2/3";
  std::uint64_t seed = 1;
  std::size_t frames = 100000;
  std::size_t n = 0;  // 0: smallest even multiple of the rate denominator >= 100
  std::string code = "dense";
  double nu = 0.1;
  std::size_t dm_block = 1024;
  std::vector<double> stretch;
  std::string dump;
  std::string output;
};

// Each returns an exit code; InvalidArgument and NonConvergence propagate.
int run_sum_dist(const SumDistArgs& args);
int run_construct(const ConstructArgs& args);
int run_table(const TableArgs& args);
int run_pas(const PasArgs& args);

}  // namespace primeshape::cli

#endif  // PRIMESHAPE_TOOLS_COMMANDS_H_
