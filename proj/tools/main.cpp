#include "specneumann/cases.hpp"
#include "specneumann/config.hpp"
#include "specneumann/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace {

using namespace specneumann;

struct CommonArgs {
  std::string config_path;
  std::string case_name;
  std::string mode;
  std::string degrees;
  std::string quad;
  std::string out;
  double a = -1.0;
  int es = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "config file (flat key = value text)");
  cmd->add_option("--case", args.case_name,
                  "built-in case: planar-quadratic | ellipsoid | star | custom");
  cmd->add_option("--mode", args.mode, "helmholtz | pure-poisson");
  cmd->add_option("--degrees", args.degrees, "comma-separated polynomial degrees");
  cmd->add_option("--quad", args.quad, "quadrature order q, or 'auto' (degree + 4)");
  cmd->add_option("--out", args.out, "output CSV path (default: stdout)");
  cmd->add_option("--a", args.a, "planar-quadratic map parameter in (0,1)");
  cmd->add_option("--es", args.es, "star map smoothness parameter (>= 2)");
}

RunConfig resolve_config(const CommonArgs& args) {
  RunConfig config;
  if (!args.config_path.empty()) config = load_config_file(args.config_path);
  if (!args.case_name.empty()) config.case_name = args.case_name;
  if (!args.mode.empty()) config.mode = args.mode;
  if (!args.degrees.empty()) config.degrees = parse_degree_list(args.degrees);
  if (!args.quad.empty()) config.quad = args.quad == "auto" ? -1 : std::stoi(args.quad);
  if (!args.out.empty()) config.out = args.out;
  if (args.a >= 0.0) config.a = args.a;
  if (args.es >= 0) config.es = args.es;
  validate_config(config);
  return config;
}

int emit_reports(const RunConfig& config, const std::vector<RunReport>& reports) {
  if (config.out.empty())
    std::cout << format_csv(reports);
  else
    write_csv_file(config.out, reports);
  return 0;
}

int run_solve(const CommonArgs& args) {
  RunConfig config = resolve_config(args);
  if (config.degrees.size() != 1)
    throw std::invalid_argument("degrees: 'solve' expects exactly one degree (use 'sweep')");
  const CaseDefinition problem = case_from_config(config);
  return emit_reports(config, {run_single(problem, config.degrees.front(), config.quad)});
}

int run_sweep_cmd(const CommonArgs& args) {
  RunConfig config = resolve_config(args);
  const CaseDefinition problem = case_from_config(config);
  return emit_reports(config, run_sweep(problem, config.degrees, config.quad));
}

int run_summary(const std::string& csv_path, bool check) {
  const std::vector<RunReport> reports = read_csv_file(csv_path);
  const ConvergenceSummary summary = convergence_summary(reports);
  std::printf("error fit:     log10(max_error) = %+.4f * n %+.4f   (R^2 = %.4f, rows = %d)\n",
              summary.error_fit.slope, summary.error_fit.intercept,
              summary.error_fit.r_squared, summary.rows_used_error);
  std::printf("condition fit: log(cond) = %+.4f * log(N) %+.4f   (R^2 = %.4f, rows = %d)\n",
              summary.cond_fit.slope, summary.cond_fit.intercept, summary.cond_fit.r_squared,
              summary.rows_used_cond);
  if (!check) return 0;
  const bool error_ok = summary.error_fit.slope < 0.0;
  const bool cond_ok = summary.cond_fit.slope >= 1.6 && summary.cond_fit.slope <= 2.4;
  std::printf("check: error slope %s, condition exponent %s\n",
              error_ok ? "decreasing" : "NOT decreasing",
              cond_ok ? "within [1.6, 2.4]" : "outside [1.6, 2.4]");
  return error_ok && cond_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Galerkin solver for Neumann problems on mapped disk/ball domains"};
  app.require_subcommand(1);

  CommonArgs solve_args, sweep_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run a single degree and report one CSV row");
  add_common(solve_cmd, solve_args);
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a list of degrees and emit a CSV table");
  add_common(sweep_cmd, sweep_args);

  std::string summary_in;
  bool check = false;
  CLI::App* summary_cmd =
      app.add_subcommand("summary", "fit convergence and conditioning slopes from a sweep CSV");
  summary_cmd->add_option("csv", summary_in, "input CSV produced by 'sweep'")->required();
  summary_cmd->add_flag("--check", check,
                        "exit 2 unless the error slope is negative and the condition "
                        "exponent lies in [1.6, 2.4]");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_args);
    return run_summary(summary_in, check);
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
