#include "morsept/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "morsept/analysis.hpp"
#include "morsept/coordinates.hpp"
#include "morsept/error.hpp"
#include "morsept/potentials.hpp"
#include "morsept/transforms.hpp"

namespace morsept {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr double kLevelTolerance = 2e-3;
constexpr double kRiccatiTolerance = 1e-6;
constexpr double kRiccatiSpacing = 1e-3;
constexpr double kBesselIntegralTolerance = 1e-6;
constexpr double kConnectionTolerance = 1e-3;
constexpr double kSandwichTolerance = 1e-3;

struct ExperimentInfo {
  Experiment id;
  std::string_view name;
  std::vector<std::string> columns;
};

const std::vector<ExperimentInfo>& experiment_table() {
  static const std::vector<ExperimentInfo> table{
      {Experiment::potential_curve, "potential-curve",
       {"family", "rho", "shifted", "partner", "generalized", "q"}},
      {Experiment::spectrum, "spectrum",
       {"family", "variant", "n", "eigenvalue", "analytic", "deviation"}},
      {Experiment::isospectral, "isospectral",
       {"family", "comparison", "n", "left", "right", "delta"}},
      {Experiment::gamma_sweep, "gamma-sweep",
       {"family", "gamma", "rho_min", "n", "eigenvalue", "base", "delta"}},
      {Experiment::riccati, "riccati",
       {"family", "gamma", "grid_min", "grid_max", "grid_spacing", "max_residual"}},
      {Experiment::hankel_verify, "hankel-verify", {"p", "nu", "integral", "deviation", "evaluations"}},
      {Experiment::wavefunction_map, "wavefunction-map",
       {"n", "m", "rho", "t_prime", "mapped", "direct"}},
      {Experiment::energy_shift, "energy-shift", {"n", "e_morse", "e_pt", "shift", "delta"}},
      {Experiment::potential_term_map, "potential-term-map", {"t_prime", "lhs", "rhs", "residual"}},
  };
  return table;
}

const ExperimentInfo& info(Experiment e) {
  for (const auto& entry : experiment_table())
    if (entry.id == e) return entry;
  throw UsageError("unknown experiment");
}

}  // namespace

std::string_view to_string(Experiment experiment) { return info(experiment).name; }

std::string_view to_string(FamilySelection family) {
  switch (family) {
    case FamilySelection::morse:
      return "morse";
    case FamilySelection::pt:
      return "pt";
    case FamilySelection::both:
      return "both";
  }
  return "unknown";
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> list = [] {
    std::vector<Experiment> out;
    for (const auto& entry : experiment_table()) out.push_back(entry.id);
    return out;
  }();
  return list;
}

const std::vector<std::string>& schema(Experiment experiment) { return info(experiment).columns; }

// --- settings ----------------------------------------------------------------

namespace {

const std::vector<std::string_view> kKnownKeys{
    "experiment", "family", "lambda", "mu",     "gamma",  "gammas",      "grid-min",
    "grid-max",   "grid-n", "order-m", "output", "format", "reproducible",
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string canonical_key(std::string_view key) {
  std::string out(key);
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

[[noreturn]] void bad_field(std::string_view key, std::string_view why) {
  throw UsageError(std::string(key) + ": " + std::string(why));
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || std::isnan(value))
    bad_field(key, "expected a number, got '" + std::string(text) + "'");
  return value;
}

long long parse_integer(std::string_view key, std::string_view text) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    bad_field(key, "expected an integer, got '" + std::string(text) + "'");
  return value;
}

double parse_finite(std::string_view key, std::string_view text) {
  const double v = parse_double(key, text);
  if (!std::isfinite(v)) bad_field(key, "must be finite");
  return v;
}

double parse_gamma(std::string_view key, std::string_view text) {
  const double v = parse_double(key, text);
  if (!(v > 0.0)) bad_field(key, "must be positive (inf selects the undeformed potential)");
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  bad_field(key, "expected true or false, got '" + std::string(text) + "'");
}

}  // namespace

Settings parse_settings(std::string_view text) {
  Settings settings;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = canonical_key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
      throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (!settings.emplace(key, std::string(value)).second)
      throw UsageError("config line " + std::to_string(line_no) + ": repeated key '" + key + "'");
  }
  return settings;
}

Settings read_settings_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("config: cannot read '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  const Settings settings = parse_settings(body.str());
  if (settings.empty()) throw UsageError("config: '" + path + "' holds no settings");
  return settings;
}

RunConfig make_run_config(const Settings& raw) {
  Settings settings;
  for (const auto& [key, value] : raw) {
    const std::string k = canonical_key(key);
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), k) == kKnownKeys.end())
      throw UsageError("unknown setting '" + key + "'");
    settings[k] = value;
  }
  const auto get = [&settings](std::string_view key) -> std::optional<std::string_view> {
    const auto it = settings.find(std::string(key));
    if (it == settings.end()) return std::nullopt;
    return std::string_view(it->second);
  };

  RunConfig c;
  const auto experiment = get("experiment");
  if (!experiment || experiment->empty()) bad_field("experiment", "no experiment selected");
  const auto& table = experiment_table();
  const auto match = std::find_if(table.begin(), table.end(),
                                  [&](const ExperimentInfo& e) { return e.name == *experiment; });
  if (match == table.end()) bad_field("experiment", "unknown experiment '" + std::string(*experiment) + "'");
  c.experiment = match->id;

  if (const auto v = get("family")) {
    if (*v == "morse")
      c.family = FamilySelection::morse;
    else if (*v == "pt")
      c.family = FamilySelection::pt;
    else if (*v == "both")
      c.family = FamilySelection::both;
    else
      bad_field("family", "expected morse, pt or both, got '" + std::string(*v) + "'");
  }
  if (const auto v = get("lambda")) {
    c.lambda = parse_finite("lambda", *v);
    if (!(c.lambda > 0.5)) bad_field("lambda", "must be greater than 1/2");
  }
  if (const auto v = get("mu")) {
    c.mu = parse_finite("mu", *v);
    if (!(c.mu > 0.0)) bad_field("mu", "must be positive");
  }
  if (const auto v = get("gamma")) c.gamma = parse_gamma("gamma", *v);
  if (const auto v = get("gammas")) {
    c.gammas.clear();
    std::string_view rest = *v;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      c.gammas.push_back(parse_gamma("gammas", item));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  if (const auto v = get("grid-min")) c.grid_min = parse_finite("grid-min", *v);
  if (const auto v = get("grid-max")) c.grid_max = parse_finite("grid-max", *v);
  if (c.grid_min && c.grid_max && !(*c.grid_max > *c.grid_min))
    bad_field("grid-max", "must exceed grid-min");
  if (const auto v = get("grid-n")) {
    const long long n = parse_integer("grid-n", *v);
    if (n < 16) bad_field("grid-n", "must be at least 16");
    c.grid_n = static_cast<std::size_t>(n);
  }
  if (const auto v = get("order-m")) {
    const long long m = parse_integer("order-m", *v);
    if (m < 0 || m > 1000) bad_field("order-m", "must lie in [0, 1000]");
    c.order_m = static_cast<int>(m);
  }
  if (const auto v = get("output")) {
    if (v->empty()) bad_field("output", "empty path");
    c.output = std::string(*v);
  }
  if (const auto v = get("format")) {
    if (*v == "csv")
      c.format = OutputFormat::csv;
    else if (*v == "json")
      c.format = OutputFormat::json;
    else
      bad_field("format", "expected csv or json, got '" + std::string(*v) + "'");
  }
  if (const auto v = get("reproducible")) c.reproducible = parse_bool("reproducible", *v);
  return c;
}

// --- experiments ---------------------------------------------------------------

namespace {

std::vector<FamilyKind> selected(FamilySelection s) {
  switch (s) {
    case FamilySelection::morse:
      return {FamilyKind::morse};
    case FamilySelection::pt:
      return {FamilyKind::pt};
    case FamilySelection::both:
      return {FamilyKind::morse, FamilyKind::pt};
  }
  return {};
}

double strength(const RunConfig& c, FamilyKind kind) {
  return kind == FamilyKind::morse ? c.lambda : c.mu;
}

Grid resolve_grid(const RunConfig& c, const Grid& fallback) {
  return Grid(c.grid_min.value_or(fallback.min()), c.grid_max.value_or(fallback.max()),
              c.grid_n.value_or(fallback.size()));
}

std::string describe_grid(const Grid& g) {
  return "[" + format_double(g.min()) + ", " + format_double(g.max()) + "] n=" + std::to_string(g.size());
}

std::string name_of(FamilyKind kind) { return std::string(to_string(kind)); }

void add_family_meta(RunResult& r, const PotentialFamily& family, const Grid& grid) {
  const std::string name(family.name());
  r.meta.emplace_back("grid." + name, describe_grid(grid));
  r.meta.emplace_back("rho_min." + name, family.rho_min());
}

void potential_curve(const RunConfig& c, RunResult& r) {
  for (FamilyKind kind : selected(c.family)) {
    const auto family = make_family(kind, strength(c, kind), c.gamma);
    const Grid grid = resolve_grid(c, family->default_grid());
    add_family_meta(r, *family, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double rho = grid.node(i);
      r.table.rows.push_back({name_of(kind), rho, family->shifted(rho), family->partner(rho),
                              family->generalized(rho), family->q(rho)});
    }
  }
}

void spectrum(const RunConfig& c, RunResult& r) {
  for (FamilyKind kind : selected(c.family)) {
    const auto family = make_family(kind, strength(c, kind), c.gamma);
    const Grid grid = resolve_grid(c, family->default_grid());
    add_family_meta(r, *family, grid);
    r.meta.emplace_back("continuum_threshold." + name_of(kind), family->continuum_threshold());
    double worst = 0.0;
    double ground = kInf;
    for (Variant variant : {Variant::shifted, Variant::partner, Variant::generalized}) {
      const Spectrum s = solve_family(*family, variant, grid);
      const int offset = variant == Variant::partner ? 1 : 0;
      for (std::size_t n = 0; n < s.eigenvalues.size(); ++n) {
        const double exact = family->analytic_level(static_cast<int>(n) + offset);
        const double dev = s.eigenvalues[n] - exact;
        worst = std::max(worst, std::abs(dev));
        r.table.rows.push_back({name_of(kind), std::string(to_string(variant)),
                                static_cast<std::int64_t>(n), s.eigenvalues[n], exact, dev});
      }
      if (variant == Variant::shifted && !s.eigenvalues.empty()) ground = s.eigenvalues.front();
    }
    r.verdicts.push_back({name_of(kind) + " zero ground state", std::abs(ground) < kLevelTolerance,
                          "E0 = " + format_double(ground)});
    r.verdicts.push_back({name_of(kind) + " analytic levels", worst < kLevelTolerance,
                          "max |E - E_exact| = " + format_double(worst)});
  }
}

void isospectral(const RunConfig& c, RunResult& r) {
  for (FamilyKind kind : selected(c.family)) {
    const auto family = make_family(kind, strength(c, kind), c.gamma);
    const Grid grid = resolve_grid(c, family->default_grid());
    add_family_meta(r, *family, grid);
    const Spectrum base = solve_family(*family, Variant::shifted, grid);
    const Spectrum partner = solve_family(*family, Variant::partner, grid);
    const Spectrum generalized = solve_family(*family, Variant::generalized, grid);
    const std::pair<std::string, SpectralReport> reports[] = {
        {"shifted-vs-partner", isospectral_check(base, partner, true)},
        {"shifted-vs-generalized", isospectral_check(base, generalized, false)},
    };
    for (const auto& [label, report] : reports) {
      for (std::size_t n = 0; n < report.pairs.size(); ++n) {
        const auto& p = report.pairs[n];
        r.table.rows.push_back(
            {name_of(kind), label, static_cast<std::int64_t>(n), p.left, p.right, p.delta});
      }
      r.verdicts.push_back({name_of(kind) + " " + label, report.pass, report.detail});
    }
  }
}

void gamma_sweep_experiment(const RunConfig& c, RunResult& r) {
  std::string gammas;
  for (double g : c.gammas) gammas += (gammas.empty() ? "" : ",") + format_double(g);
  r.meta.emplace_back("gammas", gammas);
  for (FamilyKind kind : selected(c.family)) {
    const GammaSweep sweep = gamma_sweep(kind, strength(c, kind), c.gammas);
    for (const auto& entry : sweep.entries) {
      const auto& levels = entry.spectrum.eigenvalues;
      for (std::size_t n = 0; n < levels.size(); ++n) {
        const bool has_base = n < sweep.base.eigenvalues.size();
        const double base = has_base ? sweep.base.eigenvalues[n] : std::nan("");
        r.table.rows.push_back({name_of(kind), entry.gamma, entry.rho_min,
                                static_cast<std::int64_t>(n), levels[n], base, levels[n] - base});
      }
    }
    r.verdicts.push_back({name_of(kind) + " gamma invariance", sweep.pass,
                          "max spread across gamma = " + format_double(sweep.max_spread)});
  }
}

void riccati(const RunConfig& c, RunResult& r) {
  for (FamilyKind kind : selected(c.family)) {
    const auto family = make_family(kind, strength(c, kind), c.gamma);
    const Grid box = family->default_grid();
    const auto n = static_cast<std::size_t>(std::lround((box.max() - box.min()) / kRiccatiSpacing)) + 1;
    const Grid grid = resolve_grid(c, Grid(box.min(), box.max(), n));
    add_family_meta(r, *family, grid);
    const PotentialFamily& f = *family;
    const double residual = riccati_residual([&f](double x) { return f.superpotential(x); },
                                             [&f](double x) { return f.w_prime(x); },
                                             [&f](double x) { return f.w_second(x); }, grid);
    r.table.rows.push_back(
        {name_of(kind), c.gamma, grid.min(), grid.max(), grid.spacing(), residual});
    r.verdicts.push_back({name_of(kind) + " riccati residual", residual < kRiccatiTolerance,
                          "max residual = " + format_double(residual)});
  }
}

void hankel_verify(const RunConfig&, RunResult& r) {
  double worst = 0.0;
  for (double p : {0.5, 1.0, 2.0, 5.0}) {
    for (int nu = 0; nu <= 2; ++nu) {
      const QuadratureResult q = integrate_oscillatory_bessel([](double) { return 1.0; }, nu, p, 1e-10);
      const double deviation = p * q.value - 1.0;
      worst = std::max(worst, std::abs(deviation));
      r.table.rows.push_back({p, static_cast<std::int64_t>(nu), q.value, deviation,
                              static_cast<std::int64_t>(q.evaluations)});
    }
  }
  r.verdicts.push_back({"bessel integral", worst < kBesselIntegralTolerance,
                        "max |p I - 1| = " + format_double(worst)});
}

void wavefunction_map_experiment(const RunConfig& c, RunResult& r) {
  const MorseFamily morse(MorseParams(c.lambda, kInf));
  const PoschlTellerFamily pt(PTParams(c.mu, kInf));
  add_family_meta(r, morse, morse.default_grid());
  add_family_meta(r, pt, pt.default_grid());
  r.meta.emplace_back("hankel.t_max", kDefaultHankelTMax);
  r.meta.emplace_back("hankel.nodes", static_cast<std::int64_t>(kDefaultHankelNodes));

  const double a = c.lambda - 0.5;
  if (std::abs(a - std::round(a)) > 1e-12 || a < 1.0)
    throw DomainError("wavefunction-map needs lambda - 1/2 to be a positive integer");
  const int levels = static_cast<int>(std::lround(a));
  std::vector<int> states;
  if (c.order_m) {
    if (*c.order_m < 1 || *c.order_m > levels)
      bad_field("order-m", "must lie in [1, lambda - 1/2] for wavefunction-map");
    states.push_back(levels - *c.order_m);
  } else {
    for (int n = 0; n < levels; ++n) states.push_back(n);
  }

  auto morse_job = std::async(std::launch::async, [&] { return solve_family(morse, Variant::shifted); });
  const Spectrum pt_spectrum = solve_family(pt, Variant::shifted);
  const Spectrum morse_spectrum = morse_job.get();

  std::vector<std::future<WavefunctionConnection>> jobs;
  for (int n : states)
    jobs.push_back(std::async(std::launch::async, [&, n] {
      return wavefunction_connection(morse_spectrum, c.lambda, pt_spectrum, n);
    }));
  for (auto& job : jobs) {
    const WavefunctionConnection w = job.get();
    for (std::size_t i = 0; i < w.rho.size(); ++i)
      r.table.rows.push_back({static_cast<std::int64_t>(w.n), static_cast<std::int64_t>(w.m), w.rho[i],
                              t_pt_from_rho(w.rho[i]), w.mapped[i], w.direct[i]});
    r.verdicts.push_back({"wavefunction connection n=" + std::to_string(w.n) + " m=" + std::to_string(w.m),
                          w.discrepancy < kConnectionTolerance && !w.truncated,
                          "L2 discrepancy = " + format_double(w.discrepancy) +
                              (w.truncated ? " (plan truncated)" : "")});
  }
}

void energy_shift(const RunConfig& c, RunResult& r) {
  const MorseFamily morse(MorseParams(c.lambda, c.gamma));
  const PoschlTellerFamily pt(PTParams(c.mu, c.gamma));
  const Grid morse_grid = resolve_grid(c, morse.default_grid());
  const Grid pt_grid = resolve_grid(c, pt.default_grid());
  add_family_meta(r, morse, morse_grid);
  add_family_meta(r, pt, pt_grid);

  auto morse_job = std::async(std::launch::async,
                              [&] { return solve_family(morse, Variant::generalized, morse_grid); });
  const Spectrum e_pt = solve_family(pt, Variant::generalized, pt_grid);
  const Spectrum e_morse = morse_job.get();
  const SpectralReport report = energy_shift_check(e_morse, e_pt, c.lambda, c.mu);
  const double shift = c.lambda - c.mu - 0.5;
  r.meta.emplace_back("shift", shift);
  r.meta.emplace_back("levels.morse", static_cast<std::int64_t>(report.left_count));
  r.meta.emplace_back("levels.pt", static_cast<std::int64_t>(report.right_count));
  for (std::size_t n = 0; n < report.pairs.size(); ++n) {
    const auto& p = report.pairs[n];
    r.table.rows.push_back({static_cast<std::int64_t>(n), p.left, p.right, shift, p.delta});
  }
  const bool coincident = std::abs(shift) < 1e-12;
  r.verdicts.push_back({coincident ? "energy relation" : "energy relation (off-point, data only)",
                        report.pass, report.detail});
}

void potential_term(const RunConfig& c, RunResult& r) {
  const double a = c.lambda - 0.5;
  const bool integer_a = std::abs(a - std::round(a)) <= 1e-12;
  int m = 0;
  if (c.order_m)
    m = *c.order_m;
  else if (integer_a)
    m = static_cast<int>(std::lround(a));
  else
    bad_field("order-m", "required when lambda - 1/2 is not an integer");

  const double lo = c.grid_min.value_or(0.1);
  const double hi = c.grid_max.value_or(3.0);
  const std::size_t count = c.grid_n.value_or(59);
  if (!(lo > 0.0)) bad_field("grid-min", "t' nodes must be positive for potential-term-map");
  if (!(hi > lo)) bad_field("grid-max", "must exceed grid-min");
  std::vector<double> nodes(count);
  for (std::size_t i = 0; i < count; ++i)
    nodes[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);

  const MorseParams morse(c.lambda, c.gamma);
  const PTParams pt(c.mu, c.gamma);
  const HankelPlan plan = HankelPlan::uniform(m, kDefaultHankelTMax, kDefaultHankelNodes);
  const PotentialTermReport report = potential_term_map(morse, pt, m, plan, nodes);
  r.meta.emplace_back("order_m", static_cast<std::int64_t>(m));
  r.meta.emplace_back("t_prime_nodes", "[" + format_double(lo) + ", " + format_double(hi) +
                                           "] n=" + std::to_string(count));
  r.meta.emplace_back("hankel.t_max", plan.t_max());
  for (const auto& level : report.refinement)
    r.meta.emplace_back("max_residual.nodes=" + std::to_string(level.nodes), level.max_residual);
  r.meta.emplace_back("truncated", report.truncated);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    r.table.rows.push_back({nodes[i], report.lhs[i], report.rhs[i], report.residual[i]});

  const int n = static_cast<int>(std::lround(a)) - m;
  if (!integer_a || n < 0) return;
  const MorseFamily morse_family(morse);
  const PoschlTellerFamily pt_family(pt);
  const MorseFamily base(MorseParams(c.lambda, kInf));
  const Spectrum states = solve_family(base, Variant::shifted);
  if (static_cast<std::size_t>(n) >= states.eigenfunctions.size()) return;
  const SandwichedTerm s = sandwiched_potential_term(
      morse_family, pt_family, states.eigenfunctions[static_cast<std::size_t>(n)], plan,
      HankelPlan::uniform(m, kDefaultHankelTMax, 2048));
  r.meta.emplace_back("sandwiched.n", static_cast<std::int64_t>(n));
  r.meta.emplace_back("sandwiched.lhs", s.lhs);
  r.meta.emplace_back("sandwiched.rhs", s.rhs);
  r.meta.emplace_back("sandwiched.relative_difference", s.relative_difference);
  r.verdicts.push_back({"sandwiched potential term n=" + std::to_string(n),
                        s.relative_difference < kSandwichTolerance,
                        "lhs = " + format_double(s.lhs) + ", rhs = " + format_double(s.rhs) +
                            ", relative difference = " + format_double(s.relative_difference)});
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunResult run_experiment(const RunConfig& c) {
  RunResult r;
  r.table.columns = schema(c.experiment);
  r.meta.emplace_back("tool", std::string(kToolName));
  r.meta.emplace_back("version", std::string(kToolVersion));
  r.meta.emplace_back("experiment", std::string(to_string(c.experiment)));
  r.meta.emplace_back("family", std::string(to_string(c.family)));
  r.meta.emplace_back("lambda", c.lambda);
  r.meta.emplace_back("mu", c.mu);
  r.meta.emplace_back("gamma", c.gamma);
  if (!c.reproducible) r.meta.emplace_back("timestamp", utc_timestamp());

  switch (c.experiment) {
    case Experiment::potential_curve:
      potential_curve(c, r);
      break;
    case Experiment::spectrum:
      spectrum(c, r);
      break;
    case Experiment::isospectral:
      isospectral(c, r);
      break;
    case Experiment::gamma_sweep:
      gamma_sweep_experiment(c, r);
      break;
    case Experiment::riccati:
      riccati(c, r);
      break;
    case Experiment::hankel_verify:
      hankel_verify(c, r);
      break;
    case Experiment::wavefunction_map:
      wavefunction_map_experiment(c, r);
      break;
    case Experiment::energy_shift:
      energy_shift(c, r);
      break;
    case Experiment::potential_term_map:
      potential_term(c, r);
      break;
  }
  return r;
}

// --- rendering -------------------------------------------------------------------

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

namespace {

std::string plain(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, cell);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json to_json(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

}  // namespace

std::string render_csv(const RunResult& result) {
  std::string out;
  for (const auto& [key, value] : result.meta) out += "# " + key + ": " + plain(value) + "\n";
  for (std::size_t i = 0; i < result.table.columns.size(); ++i)
    out += (i ? "," : "") + csv_field(result.table.columns[i]);
  out += "\r\n";
  for (const auto& row : result.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(plain(row[i]));
    out += "\r\n";
  }
  return out;
}

std::string render_json(const RunResult& result) {
  nlohmann::ordered_json doc;
  doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : result.meta) doc["meta"][key] = to_json(value);
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : result.table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[result.table.columns[i]] = to_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& diagnostics) {
  std::string text;
  RunResult result;
  try {
    result = run_experiment(config);
    text = config.format == OutputFormat::csv ? render_csv(result) : render_json(result);
  } catch (const UsageError& e) {
    diagnostics << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    diagnostics << "error: " << e.what() << '\n';
    return 3;
  }

  if (config.output.empty()) {
    out << text;
  } else {
    std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text) || !file.flush()) {
      diagnostics << "usage error: output: cannot write '" << config.output << "'\n";
      return 2;
    }
  }
  for (const auto& v : result.verdicts)
    diagnostics << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << '\n';
  return 0;
}

}  // namespace morsept
