#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "morsept/error.hpp"
#include "morsept/experiments.hpp"

namespace {

const std::vector<std::pair<std::string, std::string>> kValueFlags{
    {"family", "morse, pt or both"},
    {"lambda", "Morse depth parameter (> 1/2)"},
    {"mu", "Poschl-Teller strength (> 0)"},
    {"gamma", "deformation constant (> 0; inf for the undeformed potential)"},
    {"gammas", "comma-separated gamma values for gamma-sweep"},
    {"grid-min", "lower end of the rho box (t' nodes for potential-term-map)"},
    {"grid-max", "upper end of the rho box (t' nodes for potential-term-map)"},
    {"grid-n", "number of grid nodes"},
    {"order-m", "Bessel order m"},
    {"output", "output file (standard output when omitted)"},
    {"format", "csv or json"},
};

const std::vector<std::pair<std::string, std::string>> kSubcommands{
    {"potential-curve", "tabulate shifted, partner and generalized potentials"},
    {"spectrum", "bound-state spectra against the exact levels"},
    {"isospectral", "partner and gamma-family spectra against the base spectrum"},
    {"gamma-sweep", "generalized spectra over several gamma values"},
    {"riccati", "Riccati residual of the deformed superpotential"},
    {"hankel-verify", "p * int_0^inf J_nu(p x) dx = 1 checks"},
    {"wavefunction-map", "Hankel-mapped Morse states against Poschl-Teller states"},
    {"energy-shift", "generalized Morse and Poschl-Teller level comparison"},
    {"potential-term-map", "Hankel-mapped Morse q-term against the Poschl-Teller q-term"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Morse and Poschl-Teller potentials: spectra and Hankel maps", "morsept_cli"};
  app.set_version_flag("--version", std::string(morsept::kToolVersion));
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "key=value settings file; flags take precedence");
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& [name, help] : kValueFlags)
    options[name] = app.add_option("--" + name, values[name], help);
  bool reproducible = false;
  CLI::Option* reproducible_flag =
      app.add_flag("--reproducible", reproducible, "omit the timestamp so reruns are byte-identical");
  for (const auto& [name, help] : kSubcommands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  morsept::RunConfig config;
  try {
    morsept::Settings settings;
    if (!config_path.empty()) settings = morsept::read_settings_file(config_path);
    for (const auto& [name, option] : options)
      if (option->count() > 0) settings[name] = values[name];
    if (reproducible_flag->count() > 0) settings["reproducible"] = "true";
    for (const CLI::App* sub : app.get_subcommands()) settings["experiment"] = sub->get_name();
    config = morsept::make_run_config(settings);
  } catch (const morsept::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }
  return morsept::run(config, std::cout, std::cerr);
}
