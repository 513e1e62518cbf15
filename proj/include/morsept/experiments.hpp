#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace morsept {

inline constexpr std::string_view kToolName = "morsept";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Experiment {
  potential_curve,
  spectrum,
  isospectral,
  gamma_sweep,
  riccati,
  hankel_verify,
  wavefunction_map,
  energy_shift,
  potential_term_map,
};

enum class FamilySelection { morse, pt, both };
enum class OutputFormat { csv, json };

std::string_view to_string(Experiment experiment);
std::string_view to_string(FamilySelection family);
/// Every experiment in declaration order.
const std::vector<Experiment>& all_experiments();

/// One validated invocation.
struct RunConfig {
  Experiment experiment = Experiment::spectrum;
  FamilySelection family = FamilySelection::morse;
  double lambda = 4.5;
  double mu = 4.0;
  double gamma = 1.0;
  std::vector<double> gammas{0.5, 1.0, 10.0};
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<std::size_t> grid_n;
  std::optional<int> order_m;
  std::string output;  // empty writes to standard output
  OutputFormat format = OutputFormat::csv;
  bool reproducible = false;
};

/// Raw key=value settings. Keys use the long flag names without dashes
/// ("lambda", "grid-min", ...); underscores are accepted in place of hyphens.
using Settings = std::map<std::string, std::string>;

/// Parses a flat key=value file body. Blank lines and lines starting with '#'
/// are skipped. Throws UsageError naming the line for malformed input and for
/// unknown or repeated keys.
Settings parse_settings(std::string_view text);
Settings read_settings_file(const std::string& path);

/// Validates every field. Throws UsageError naming the offending key.
RunConfig make_run_config(const Settings& settings);

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Verdict {
  std::string name;
  bool pass;
  std::string detail;
};

struct RunResult {
  std::vector<std::pair<std::string, Cell>> meta;
  Table table;
  std::vector<Verdict> verdicts;
};

/// Column names emitted by each experiment.
const std::vector<std::string>& schema(Experiment experiment);

/// Runs the experiment. Library errors propagate unchanged.
RunResult run_experiment(const RunConfig& config);

/// Shortest round-trip decimal form.
std::string format_double(double value);

/// RFC 4180 table preceded by '#'-prefixed "key: value" metadata lines.
std::string render_csv(const RunResult& result);
/// {"meta": {...}, "rows": [{column: value, ...}, ...]}
std::string render_json(const RunResult& result);

/// Runs, renders and writes the result; verdicts and errors go to `diagnostics`.
/// No file is written unless the run succeeds. Returns the process exit code:
/// 0 on success, 2 for usage errors, 3 for numerical failures.
int run(const RunConfig& config, std::ostream& out, std::ostream& diagnostics);

}  // namespace morsept
