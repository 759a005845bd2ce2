#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "commands.h"
#include "primeshape/error.h"

namespace cli = primeshape::cli;

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic amplitude shaping over prime fields"};
  app.set_version_flag("--version", PRIMESHAPE_VERSION);
  app.require_subcommand(1);

  cli::SumDistArgs sd;
  auto* sum_dist = app.add_subcommand("sum-dist", "Distribution of a sum of independent F_p symbols");
  sum_dist->add_option("-p", sd.p, "Field size (prime)")->required();
  sum_dist->add_option("--factors", sd.factors_file, "CSV file, one PMF per line");
  sum_dist->add_option("--factor", sd.inline_factors, "Inline PMF, comma separated (repeatable)");
  sum_dist->add_flag("--uniform-factor", sd.uniform_factor, "Add one uniform summand");
  sum_dist->add_option("--repeat", sd.repeat, "Repeat the factor list m times");
  sum_dist->add_option("--format", sd.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sum_dist->add_option("-o,--output", sd.output, "Output file (default stdout)");

  cli::ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build the p^2-CQAM and emit its points");
  construct->add_option("-p", ca.p, "Odd prime")->required();
  construct->add_option("--stretch", ca.stretch, "RHO_MAX BETA")->expected(2);
  construct->add_option("--delta-rho", ca.delta_rho, "Radius grid step");
  construct->add_option("--phase-steps", ca.phase_steps, "Phase sweep resolution");
  construct->add_option("--nu", ca.nu, "MB parameter for the emitted priors");
  construct->add_option("-o,--output", ca.output, "Point CSV (default stdout)");

  cli::TableArgs ta;
  auto* table = app.add_subcommand("table", "Gap and gain tables");
  table->add_option("--mode", ta.mode, "time-sharing or cqam")
      ->check(CLI::IsMember({"time-sharing", "cqam"}));
  table->add_option("-p", ta.primes, "Odd primes");
  table->add_option("--rc", ta.rates, "Code rates a/b");
  table->add_option("--convention", ta.convention,
                    "per-component, time-averaged, shaped-only or all");
  table->add_option("--format", ta.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--threads", ta.threads, "Worker threads for independent rows");
  table->add_option("--nodes", ta.quadrature_nodes, "Gauss-Hermite nodes per dimension");
  table->add_option("--nu", ta.fixed_nu, "Evaluate at this nu instead of optimizing");
  table->add_option("-o,--output", ta.output, "Output file (default stdout)");

  cli::PasArgs pa;
  auto* pas = app.add_subcommand("pas", "Monte Carlo run of the shaping chain");
  pas->add_option("-p", pa.p, "Odd prime");
  pas->add_option("--rc", pa.rc, "Code rate a/b, at least 1/2");
  pas->add_option("--seed", pa.seed, "PRNG seed");
  pas->add_option("--frames", pa.frames, "Number of frames");
  pas->add_option("--n", pa.n, "Code length (even)");
  pas->add_option("--code", pa.code, "dense or single-tap")
      ->check(CLI::IsMember({"dense", "single-tap"}));
  pas->add_option("--nu", pa.nu, "MB parameter of the shell prior");
  pas->add_option("--dm-block", pa.dm_block, "CCDM block length");
  pas->add_option("--stretch", pa.stretch, "RHO_MAX BETA")->expected(2);
  pas->add_option("--dump", pa.dump, "Frame CSV dump");
  pas->add_option("-o,--output", pa.output, "JSON report (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    if (*sum_dist) return cli::run_sum_dist(sd);
    if (*construct) return cli::run_construct(ca);
    if (*table) return cli::run_table(ta);
    if (*pas) return cli::run_pas(pa);
  } catch (const primeshape::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const primeshape::NonConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return cli::kExitUsage;
}
