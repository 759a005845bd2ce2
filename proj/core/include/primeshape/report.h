#ifndef PRIMESHAPE_REPORT_H_
#define PRIMESHAPE_REPORT_H_

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "primeshape/optimizer.h"
#include "primeshape/pas.h"
#include "primeshape/sum_dist.h"

namespace primeshape {

// Every emitted file starts with this: '#'-prefixed lines in CSV, a
// "provenance" object in JSON.
struct Provenance {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::pair<std::string, std::string>> tolerances;
};

enum class OutputFormat { kCsv, kJson };
OutputFormat parse_output_format(std::string_view s);

// Fixed leading columns, then scheme, convention, status. dB values rounded
// to 3 decimals in CSV; JSON carries full precision.
inline constexpr const char* kTableColumns[] = {
    "p", "Rc", "target_rate", "potential_gain_db", "gap_db", "effective_gain_db",
    "nu_star", "gamma_A_db", "scheme", "convention", "status"};

void write_table(std::ostream& os, std::span<const ShapingSolution> rows,
                 const Provenance& provenance, OutputFormat format);

void write_sum_distribution(std::ostream& os, const SymbolDistribution& d,
                            const Provenance& provenance, OutputFormat format);

void write_pas_report(std::ostream& os, const EmpiricalReport& report,
                      const Provenance& provenance);

void write_provenance_csv(std::ostream& os, const Provenance& provenance);

}  // namespace primeshape

#endif  // PRIMESHAPE_REPORT_H_
