#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "drms/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Weierstrass data validation, synthesis and verification of minimal surfaces in "
               "4-dimensional Lorentzian Damek-Ricci spaces"};
  app.require_subcommand(1);
  drms::cli::Options opt;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "INI run configuration");
    sub->add_option("--preset", opt.preset, "built-in example (see 'examples')");
    sub->add_option("--grid", opt.grid, "resolution override, NUxNV");
  };

  auto* validate = app.add_subcommand("validate", "check conditions (i), (ii) and harmonicity");
  add_config(validate);
  validate->add_option("--out", opt.out, "per-node residual CSV");

  auto* synth = app.add_subcommand("synthesize", "integrate the data into a mesh");
  add_config(synth);
  synth->add_option("--out", opt.out, "mesh CSV path");
  synth->add_flag("--force", opt.force, "integrate even if validation fails");

  auto* verify = app.add_subcommand("verify", "check a mesh: conformality, causal character, tension");
  verify->add_option("mesh,--mesh", opt.mesh, "mesh CSV")->required();
  add_config(verify);
  verify->add_option("--out", opt.out, "per-node verification CSV");

  auto* exp = app.add_subcommand("export", "convert a mesh to CSV or OBJ");
  exp->add_option("mesh,--mesh", opt.mesh, "mesh CSV")->required();
  exp->add_option("--format", opt.format, "csv or obj");
  exp->add_option("--projection", opt.projection, "three axes for OBJ positions, e.g. x,z,t");
  exp->add_option("--out", opt.out, "output path");

  auto* examples = app.add_subcommand("examples", "list the built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : drms::cli::kInputError;
  }

  if (*validate) return drms::cli::cmd_validate(opt, std::cout, std::cerr);
  if (*synth) return drms::cli::cmd_synthesize(opt, std::cout, std::cerr);
  if (*verify) return drms::cli::cmd_verify(opt, std::cout, std::cerr);
  if (*exp) return drms::cli::cmd_export(opt, std::cout, std::cerr);
  if (*examples) return drms::cli::cmd_examples(std::cout);
  return drms::cli::kInputError;
}
