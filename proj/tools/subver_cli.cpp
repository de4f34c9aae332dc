// subver: command-line front end for the verification suites.
// Exit codes: 0 = all criteria pass, 1 = at least one criterion failed,
// 2 = input / configuration / degeneracy error.

#include <subver/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

int write_output(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return 2;
  }
  out << body;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subver: numeric verification of semi-Riemannian submersions from Lorentzian "
               "(para)Sasakian manifolds"};
  app.require_subcommand(1);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites on an input");
  std::string input;
  subver::verify::RunConfig cfg;
  std::string out_path;
  int model_n = 2, model_eps = -1;
  bool model_n_given = false, model_eps_given = false;
  verify_cmd->add_option("input", input, "catalog name or JSON input file")->required();
  verify_cmd
      ->add_option("--suites", cfg.suites,
                   "suites: structure submersion antiinv lemmas theorems decomposition all")
      ->delimiter(',');
  verify_cmd->add_option("--samples", cfg.samples, "number of sample points")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", cfg.seed, "PRNG seed");
  verify_cmd->add_option("--tol", cfg.tol, "residual tolerance");
  verify_cmd->add_option("--kappa", cfg.kappa, "d eta convention factor (0.5 or 1)");
  verify_cmd->add_option("--format", cfg.format, "report format: json or md");
  verify_cmd->add_option("--out", out_path, "write the report to a file instead of stdout");
  verify_cmd->add_option("--n", model_n, "model-r2n1 parameter n")
      ->trigger_on_parse()
      ->each([&](const std::string&) { model_n_given = true; });
  verify_cmd->add_option("--epsilon", model_eps, "model-r2n1 structure sign (+1 or -1)")
      ->trigger_on_parse()
      ->each([&](const std::string&) { model_eps_given = true; });

  // list
  auto* list_cmd = app.add_subcommand("list", "list catalog entry names");

  // export
  auto* export_cmd = app.add_subcommand("export", "export a catalog entry to a JSON file");
  std::string export_name, export_out;
  export_cmd->add_option("name", export_name, "catalog entry name")->required();
  export_cmd->add_option("--out", export_out, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& name : subver::catalog::catalog_names()) std::cout << name << "\n";
      return 0;
    }
    if (export_cmd->parsed()) {
      auto entry = subver::catalog::load_example(export_name);
      return write_output(subver::io::entry_to_json(*entry).dump(2) + "\n", export_out);
    }
    // verify
    if (input == "model-r2n1" && (model_n_given || model_eps_given))
      input = "model-r2n1(" + std::to_string(model_n) + "," + std::to_string(model_eps) + ")";
    cfg.input = input;
    cfg.validate();
    auto entry = subver::io::resolve_input(input);
    subver::verify::Report report = subver::verify::run_suites(*entry, cfg);
    std::string body = cfg.format == "md" ? subver::verify::report_to_markdown(report)
                                          : subver::verify::report_to_json(report);
    int wrc = write_output(body, out_path);
    if (wrc != 0) return wrc;
    return subver::verify::exit_code(report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
