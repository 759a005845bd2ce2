#include "commands.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>

#include "primeshape/awgn_mi.h"
#include "primeshape/constellation.h"
#include "primeshape/error.h"
#include "primeshape/optimizer.h"
#include "primeshape/pas.h"
#include "primeshape/rational.h"
#include "primeshape/report.h"
#include "primeshape/shaping.h"
#include "primeshape/sum_dist.h"

namespace primeshape::cli {

namespace {

constexpr double kInputPmfTolerance = 1e-9;

// Writes to a file, or to stdout when path is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidArgument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool is_stdout() const { return !file_; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

// Shortest round-trip decimal form.
std::string num(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

SymbolDistribution parse_pmf(Prime p, std::string_view text, const std::string& where) {
  std::vector<double> probs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string field =
        trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw InvalidArgument(where + ": malformed probability '" + field + "'");
    }
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument(where + ": negative or non-finite probability");
    probs.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (probs.size() != p.value()) {
    throw InvalidArgument(where + ": expected " + std::to_string(p.value()) + " probabilities, got " +
                          std::to_string(probs.size()));
  }
  double total = 0.0;
  for (double v : probs) total += v;
  if (std::abs(total - 1.0) > kInputPmfTolerance) {
    throw InvalidArgument(where + ": probabilities sum to " + num(total) + ", not 1");
  }
  for (double& v : probs) v /= total;
  return SymbolDistribution(p, std::move(probs));
}

std::vector<SymbolDistribution> read_factor_file(Prime p, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open factor file '" + path + "'");
  std::vector<SymbolDistribution> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.push_back(parse_pmf(p, t, path + ":" + std::to_string(lineno)));
  }
  return out;
}

std::optional<CqamStretch> stretch_from(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  if (v.size() != 2) throw InvalidArgument("--stretch takes RHO_MAX BETA");
  return CqamStretch{v[0], v[1]};
}

void print_warnings(const ShapingSolution& s) {
  for (const auto& w : s.warnings) {
    std::cerr << "warning: p=" << s.p << " Rc=" << s.rc.to_string() << " " << to_string(s.scheme)
              << ": " << w << '\n';
  }
}

}  // namespace

int run_sum_dist(const SumDistArgs& args) {
  const Prime p(args.p);
  if (args.repeat < 1) throw InvalidArgument("--repeat must be >= 1");
  std::vector<SymbolDistribution> base;
  if (!args.factors_file.empty()) base = read_factor_file(p, args.factors_file);
  for (std::size_t i = 0; i < args.inline_factors.size(); ++i) {
    base.push_back(parse_pmf(p, args.inline_factors[i], "--factor #" + std::to_string(i + 1)));
  }
  if (args.uniform_factor) base.push_back(SymbolDistribution::uniform(p));
  if (base.empty()) throw InvalidArgument("no factor distributions given");

  std::vector<SymbolDistribution> factors;
  for (int r = 0; r < args.repeat; ++r) factors.insert(factors.end(), base.begin(), base.end());
  const SymbolDistribution d = sum_distribution_dft(factors);

  Provenance prov{"sum-dist",
                  {{"p", std::to_string(args.p)},
                   {"factors_file", args.factors_file},
                   {"inline_factors", std::to_string(args.inline_factors.size())},
                   {"uniform_factor", args.uniform_factor ? "true" : "false"},
                   {"repeat", std::to_string(args.repeat)},
                   {"summands", std::to_string(factors.size())}},
                  {{"input_pmf_sum", num(kInputPmfTolerance)}, {"dft_imaginary_residue", "1e-10"}}};
  Output out(args.output);
  write_sum_distribution(out.stream(), d, prov, parse_output_format(args.format));
  return kExitOk;
}

int run_construct(const ConstructArgs& args) {
  const Prime p(args.p);
  require_odd(p);
  CqamParams params;
  params.delta_rho = args.delta_rho;
  params.phase_steps = args.phase_steps;
  params.stretch = stretch_from(args.stretch);
  Constellation c = build_cqam_any(p, params);
  if (args.nu != 0.0) c = c.with_priors(cqam_prior(mb_prior(c.shells()->radii, args.nu), p));

  Provenance prov{"construct",
                  {{"p", std::to_string(args.p)},
                   {"delta_rho", num(args.delta_rho)},
                   {"phase_steps", std::to_string(args.phase_steps)},
                   {"rho_max", params.stretch ? num(params.stretch->rho_max) : "none"},
                   {"beta", params.stretch ? num(params.stretch->beta) : "none"},
                   {"nu", num(args.nu)}},
                  {{"delta_rho", num(args.delta_rho)}}};
  Output out(args.output);
  write_provenance_csv(out.stream(), prov);
  write_points_csv(out.stream(), c);

  const auto& radii = c.shells()->radii;
  std::ostream& summary = out.is_stdout() ? std::cerr : std::cout;
  summary << "points=" << c.size() << " shells=" << radii.size() << '\n'
          << "rho_in=" << num(radii.front()) << '\n'
          << "rho_out=" << num(radii.back()) << '\n'
          << "d_Emin=" << num(min_distance(c))
          << " target=" << num(2.0 * std::sin(std::numbers::pi / args.p)) << '\n'
          << "F_M=" << num(figure_of_merit(c)) << '\n'
          << "F_M_ask_square=" << num(figure_of_merit(build_ask_square(p))) << '\n'
          << "rotation_residual=" << num(rotation_residual(c)) << '\n';
  return kExitOk;
}

int run_table(const TableArgs& args) {
  if (args.mode != "time-sharing" && args.mode != "cqam") {
    throw InvalidArgument("--mode must be time-sharing or cqam");
  }
  const bool cqam = args.mode == "cqam";
  std::vector<std::string> rates = args.rates;
  if (rates.empty()) {
    rates = cqam ? std::vector<std::string>{"2/3"}
                 : std::vector<std::string>{"2/3", "3/4", "4/5", "17/20", "9/10", "19/20"};
  }
  std::vector<EnergyConvention> conventions;
  if (args.convention == "all") {
    conventions = {EnergyConvention::kPerComponent, EnergyConvention::kTimeAveraged,
                   EnergyConvention::kShapedOnly};
  } else {
    conventions = {parse_energy_convention(args.convention)};
  }
  const OutputFormat format = parse_output_format(args.format);

  OptimizerOptions opts;
  opts.quadrature_nodes = args.quadrature_nodes;
  opts.fixed_nu = args.fixed_nu;

  std::vector<TableRequest> requests;
  for (std::uint32_t pv : args.primes) {
    const Prime p(pv);
    require_odd(p);
    for (const auto& text : rates) {
      const Rational rc = Rational::parse(text);
      TableRequest req;
      req.p = pv;
      req.rc = rc;
      req.options = opts;
      if (cqam) {
        req.scheme = Scheme::kAskSquare;
        requests.push_back(req);
        req.scheme = Scheme::kCqam;
        req.geometry.stretch = default_stretch(pv);
        if (!req.geometry.stretch) {
          std::cerr << "warning: no stretch known for p=" << pv << "; using the unstretched CQAM\n";
        }
        requests.push_back(req);
      } else {
        for (auto conv : conventions) {
          req.scheme = Scheme::kTimeSharing;
          req.convention = conv;
          requests.push_back(req);
        }
      }
    }
  }

  const auto rows = solve_rows(requests, std::max(1u, args.threads));
  for (const auto& r : rows) print_warnings(r);

  std::string primes;
  for (auto pv : args.primes) primes += (primes.empty() ? "" : " ") + std::to_string(pv);
  std::string rc_list;
  for (const auto& r : rates) rc_list += (rc_list.empty() ? "" : " ") + r;
  Provenance prov{"table",
                  {{"mode", args.mode},
                   {"p", primes},
                   {"rc", rc_list},
                   {"convention", cqam ? "n/a" : args.convention},
                   {"quadrature_nodes", std::to_string(args.quadrature_nodes)},
                   {"fixed_nu", args.fixed_nu ? num(*args.fixed_nu) : "auto"},
                   {"threads", std::to_string(args.threads)}},
                  {{"rate_tol_bits", num(opts.rate_tol)}, {"nu_rel_tol", num(opts.nu_rel_tol)}}};
  if (cqam) {
    for (auto pv : args.primes) {
      const auto s = default_stretch(pv);
      prov.parameters.emplace_back("stretch_p" + std::to_string(pv),
                                   s ? num(s->rho_max) + " " + num(s->beta) : "none");
    }
  }
  Output out(args.output);
  write_table(out.stream(), rows, prov, format);
  return kExitOk;
}

int run_pas(const PasArgs& args) {
  const Prime p(args.p);
  require_odd(p);
  const Rational rc = Rational::parse(args.rc);
  if (!(rc.value() >= 0.5)) throw InvalidArgument("PAS needs Rc >= 1/2");
  if (!(rc.value() < 1.0)) throw InvalidArgument("PAS needs Rc < 1 so that parity exists");

  std::size_t n = args.n;
  const auto den = static_cast<std::size_t>(rc.den);
  const auto numer = static_cast<std::size_t>(rc.num);
  if (n == 0) {
    const std::size_t step = den % 2 == 0 ? den : 2 * den;
    n = step * ((100 + step - 1) / step);
  }
  if (n % 2 != 0 || (n * numer) % den != 0) {
    throw InvalidArgument("--n must be even and make n*Rc an integer");
  }
  const std::size_t k = n * numer / den;
  if (args.frames < kMinReportFrames) {
    throw InvalidArgument("--frames must be at least " + std::to_string(kMinReportFrames));
  }

  CqamParams geometry;
  geometry.stretch = stretch_from(args.stretch);
  const Constellation base = build_cqam_any(p, geometry);
  const Constellation cqam = base.with_priors(cqam_prior(mb_prior(base.shells()->radii, args.nu), p));

  const std::uint64_t code_seed = args.seed ^ 0x636f646573656564ULL;
  CodeSpec code = args.code == "dense"        ? CodeSpec::random_dense(p, n, k, code_seed)
                  : args.code == "single-tap" ? CodeSpec::single_tap(p, n, k)
                                              : throw InvalidArgument("--code must be dense or single-tap");

  PasRunConfig cfg;
  cfg.frames = args.frames;
  cfg.seed = args.seed;
  cfg.dm_block_length = args.dm_block;
  const auto frames = generate_frames(code, cqam, cfg);
  const auto report = empirical_distributions(frames, cqam, code);

  if (!args.dump.empty()) {
    Output dump(args.dump);
    write_frames_csv(dump.stream(), frames);
  }
  Provenance prov{"pas",
                  {{"p", std::to_string(args.p)},
                   {"rc", rc.to_string()},
                   {"n", std::to_string(n)},
                   {"k", std::to_string(k)},
                   {"code", args.code},
                   {"seed", std::to_string(args.seed)},
                   {"frames", std::to_string(args.frames)},
                   {"nu", num(args.nu)},
                   {"dm_block", std::to_string(args.dm_block)},
                   {"rho_max", geometry.stretch ? num(geometry.stretch->rho_max) : "none"},
                   {"beta", geometry.stretch ? num(geometry.stretch->beta) : "none"}},
                  {{"chi_square_quantile", "0.99"}}};
  Output out(args.output);
  write_pas_report(out.stream(), report, prov);
  return kExitOk;
}

}  // namespace primeshape::cli
