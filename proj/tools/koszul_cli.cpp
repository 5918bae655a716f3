// koszul: command-line front end for the matrix corona toolkit.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "koszul/commands.hpp"

namespace {

using namespace koszul;

struct Outputs {
  std::string report_path;
  std::string solution_path;
  std::string csv_path;
};

int emit(const CommandResult &res, const Outputs &out) {
  const std::string text = res.report.dump(2) + "\n";
  if (out.report_path.empty())
    std::cout << text;
  else
    write_text_file(out.report_path, text);
  if (!out.solution_path.empty() && res.solution)
    write_text_file(out.solution_path, res.solution->dump(2) + "\n");
  if (!out.csv_path.empty() && res.csv)
    write_text_file(out.csv_path, *res.csv);
  return res.exit_code;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Matrix corona / Wolff construction toolkit"};
  app.require_subcommand(1);

  GlobalOptions opts;
  std::vector<double> radii;
  int angles = 0;
  double tol = 0.0;
  int degree_cap = -1;
  std::string norm_mode;
  bool reduce_rows = false;
  bool no_timestamp = false;
  Outputs outputs;

  app.add_option("--grid-radii", radii, "Grid radii, each in [0, 1)")->delimiter(',');
  app.add_option("--grid-angles", angles, "Angles per grid circle");
  app.add_option("--tol", tol, "Scalar solve residual tolerance");
  app.add_option("--degree-cap", degree_cap, "Degree cap for the v-solves");
  app.add_option("--norm-mode", norm_mode, "Hypothesis (ii) mode: equal | at_most");
  app.add_option("--alpha-c", opts.alpha_c, "Parameter c of alpha(t)");
  app.add_flag("--reduce-rows", reduce_rows,
               "Assemble on a full-rank k-row subsystem when k < m");
  app.add_flag("--no-timestamp", no_timestamp, "Leave the timestamp field empty");
  app.add_option("--report", outputs.report_path, "Write the report here instead of stdout");

  IdentityConfig id_cfg;
  auto *identities = app.add_subcommand("identities", "Randomized identity suites");
  identities->add_option("--seed", id_cfg.seed);
  identities->add_option("--max-m", id_cfg.max_m);
  identities->add_option("--max-d", id_cfg.max_d);

  std::string fixture_path, fixture_b_path, g_path;
  int power = 1;
  auto *check = app.add_subcommand("check", "Check the theorem hypotheses on a fixture");
  check->add_option("fixture", fixture_path)->required();

  auto *solve = app.add_subcommand("solve", "Solve F G = H for a fixture");
  solve->add_option("fixture", fixture_path)->required();
  solve->add_option("--out", outputs.solution_path, "Solution file for G");
  solve->add_option("--csv", outputs.csv_path, "Per-point residual CSV");

  auto *radical = app.add_subcommand("radical", "Radical necessary condition");
  radical->add_option("fixture", fixture_path)->required();
  radical->add_option("--n", power)->required();
  radical->add_option("--g", g_path, "Solution file with F G = H^n")->required();

  auto *concat = app.add_subcommand("concat", "Solve F1 G1 + F2 G2 = H");
  concat->add_option("fixtureA", fixture_path)->required();
  concat->add_option("fixtureB", fixture_b_path)->required();
  concat->add_option("--out", outputs.solution_path);
  concat->add_option("--csv", outputs.csv_path);

  double t = 0.0;
  auto *alpha_cmd = app.add_subcommand("alpha", "Evaluate alpha(t)");
  alpha_cmd->add_option("--t", t)->required();
  alpha_cmd->add_option("--c", opts.alpha_c);

  int bm = 0, bk = 0;
  auto *bound = app.add_subcommand("bound", "Evaluate m C(m-1,k-1) K");
  bound->add_option("--m", bm)->required();
  bound->add_option("--k", bk)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_pass : exit_invalid_input;
  }

  try {
    if (!radii.empty())
      opts.grid_radii = radii;
    if (angles > 0)
      opts.grid_angles = angles;
    if (tol > 0.0)
      opts.tol = tol;
    if (degree_cap >= 0)
      opts.degree_cap = degree_cap;
    if (norm_mode == "equal")
      opts.norm_mode = NormMode::equal;
    else if (norm_mode == "at_most")
      opts.norm_mode = NormMode::at_most;
    else if (!norm_mode.empty())
      throw input_error("--norm-mode must be 'equal' or 'at_most'");
    if (reduce_rows)
      opts.strategy = AssemblyStrategy::row_subset;
    opts.timestamp = !no_timestamp;

    if (*identities)
      return emit(cmd_identities(id_cfg, opts), outputs);
    if (*check)
      return emit(cmd_check(load_fixture(fixture_path), opts), outputs);
    if (*solve)
      return emit(cmd_solve(load_fixture(fixture_path), opts), outputs);
    if (*radical)
      return emit(cmd_radical(load_fixture(fixture_path),
                              solution_from_json(read_json_file(g_path)), power,
                              opts),
                  outputs);
    if (*concat)
      return emit(cmd_concat(load_fixture(fixture_path),
                             load_fixture(fixture_b_path), opts),
                  outputs);
    if (*alpha_cmd)
      return emit(cmd_alpha(t, opts), outputs);
    if (*bound)
      return emit(cmd_bound(bm, bk, opts), outputs);
  } catch (const input_error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_invalid_input;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_invalid_input;
  } catch (const precondition_failed &e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return exit_check_failed;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_invalid_input;
  }
  return exit_invalid_input;
}
