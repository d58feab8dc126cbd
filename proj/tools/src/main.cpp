#include <iostream>

#include "CLI11.hpp"
#include "cavity_tools/commands.hpp"

namespace {

using namespace cavity;
using namespace cavity::tools;

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse:
    case ErrorKind::schema:
    case ErrorKind::validation:
    case ErrorKind::unsupported:
    case ErrorKind::io:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering by layered cavities in a ground plane"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  auto* solve = app.add_subcommand("solve", "solve and write aperture coefficients");
  solve->add_option("--spec", solve_opt.spec, "problem JSON")->required();
  solve->add_option("--out", solve_opt.out, "output directory")->required();

  FieldOptions field_opt;
  std::vector<int> grid{41, 41};
  auto* field = app.add_subcommand("field", "sample the field inside every cavity");
  field->add_option("--spec", field_opt.spec, "problem JSON")->required();
  field->add_option("--out", field_opt.out, "output directory")->required();
  field->add_option("--grid", grid, "samples per cavity in x and y")->expected(2);
  field->add_flag("--diagonal", field_opt.diagonal, "also write |u| along each cavity diagonal");
  field->add_option("--trace-samples", field_opt.trace_samples, "samples per diagonal");

  RcsOptions rcs_opt;
  auto* rcs = app.add_subcommand("rcs", "monostatic backscatter sweep (TM)");
  rcs->add_option("--spec", rcs_opt.spec, "problem JSON")->required();
  rcs->add_option("--out", rcs_opt.out, "output directory")->required();
  rcs->add_option("--angles", rcs_opt.angles, "number of observation angles");
  rcs->add_option("--phi-min", rcs_opt.phi_min, "lower end of the open angle range (rad)");
  rcs->add_option("--phi-max", rcs_opt.phi_max, "upper end of the open angle range (rad)");

  EnhanceOptions enh_opt;
  auto* enhance = app.add_subcommand("enhance", "enhancement factor spectrum");
  enhance->add_option("--spec", enh_opt.spec, "problem JSON")->required();
  enhance->add_option("--out", enh_opt.out, "output directory")->required();
  enhance->add_option("--kappa-min", enh_opt.kappa_min, "first free-space wavenumber");
  enhance->add_option("--kappa-max", enh_opt.kappa_max, "last free-space wavenumber");
  enhance->add_option("--kappa-steps", enh_opt.kappa_steps, "number of samples");
  enhance->add_option("--cavity", enh_opt.cavity, "only this cavity (0-based)");

  ConvergenceOptions conv_opt;
  auto* conv = app.add_subcommand("convergence", "self-convergence under panel doubling");
  conv->add_option("--spec", conv_opt.spec, "problem JSON")->required();
  conv->add_option("--out", conv_opt.out, "output directory")->required();
  conv->add_option("--levels", conv_opt.levels, "refinement levels");
  conv->add_option("--base-panels", conv_opt.base_panels, "panels on the coarsest level");

  ValidateOptions val_opt;
  std::string profile = "default";
  auto* val = app.add_subcommand("validate", "run the oracle suites");
  val->add_option("--out", val_opt.out, "output directory")->required();
  val->add_option("--tolerance-profile", profile, "strict or default")
      ->check(CLI::IsMember({"strict", "default"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return cmd_solve(solve_opt);
    if (*field) {
      field_opt.nx = grid[0];
      field_opt.ny = grid[1];
      return cmd_field(field_opt);
    }
    if (*rcs) return cmd_rcs(rcs_opt);
    if (*enhance) return cmd_enhance(enh_opt);
    if (*conv) return cmd_convergence(conv_opt);
    if (*val) {
      val_opt.profile = profile == "strict" ? ToleranceProfile::strict : ToleranceProfile::standard;
      return cmd_validate(val_opt);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_input_error(e.kind()) ? kInputError : kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kInputError;
}
