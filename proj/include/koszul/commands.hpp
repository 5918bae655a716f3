#pragma once

// The command layer behind the CLI: each command turns inputs into a report
// tree and an exit status (0 pass, 1 check failed, 2 invalid input).

#include <chrono>
#include <ctime>
#include <optional>
#include <string>
#include <vector>

#include "assemble.hpp"
#include "corona.hpp"
#include "estimates.hpp"
#include "identities.hpp"
#include "io.hpp"

namespace koszul {

inline constexpr const char *kToolVersion = "0.1.0";

enum ExitCode : int { exit_pass = 0, exit_check_failed = 1, exit_invalid_input = 2 };

struct GlobalOptions {
  std::optional<std::vector<double>> grid_radii;
  std::optional<int> grid_angles;
  std::optional<double> tol;
  std::optional<int> degree_cap;
  std::optional<NormMode> norm_mode;
  AssemblyStrategy strategy = AssemblyStrategy::direct;
  double alpha_c = 16.0;
  bool timestamp = true;
};

struct CommandResult {
  json report;
  int exit_code = exit_pass;
  std::optional<json> solution;  // written by solve/concat when requested
  std::optional<std::string> csv;
};

namespace cmd_detail {

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline json header(const std::string &command, const std::string &fixture_id,
                   const GlobalOptions &opts) {
  json j;
  j["command"] = command;
  j["fixture"] = fixture_id;
  j["tool_version"] = kToolVersion;
  j["timestamp"] = opts.timestamp ? utc_timestamp() : std::string{};
  return j;
}

inline GridSpec resolve_grid(const GlobalOptions &opts,
                             const std::optional<GridSpec> &fixture_grid) {
  GridSpec g = fixture_grid.value_or(GridSpec{});
  if (opts.grid_radii)
    g.radii = *opts.grid_radii;
  if (opts.grid_angles)
    g.angles = *opts.grid_angles;
  return g;
}

inline json z_json(cd z) { return json::array({z.real(), z.imag()}); }

inline json stats(const std::vector<double> &v, const DiscGrid &grid) {
  json j;
  if (v.empty())
    return j;
  std::size_t arg = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    sum += v[i];
    if (v[i] > v[arg])
      arg = i;
  }
  j["max"] = v[arg];
  j["mean"] = sum / static_cast<double>(v.size());
  j["argmax"] = {{"index", arg}, {"z", z_json(grid.points()[arg])}};
  return j;
}

inline json scalar_stat(double value, std::optional<std::size_t> at,
                        const DiscGrid &grid) {
  json j;
  j["max"] = value;
  j["mean"] = value;
  if (at)
    j["argmax"] = {{"index", *at}, {"z", z_json(grid.points()[*at])}};
  return j;
}

inline json grid_json(const GridSpec &g, const DiscGrid &grid) {
  return {{"radii", g.radii}, {"angles", g.angles}, {"points", grid.size()}};
}

inline AssemblyOptions assembly_options(const Fixture &fx,
                                        const GlobalOptions &opts) {
  AssemblyOptions a;
  a.degree_cap = opts.degree_cap.value_or(2 * fx.degree_cap + 4);
  a.tol = opts.tol.value_or(1e-8);
  a.norm_mode = opts.norm_mode.value_or(fx.norm_mode);
  a.expected_k = fx.k;
  a.strategy = opts.strategy;
  return a;
}

inline json hypotheses_json(const HypothesisReport &rep, const DiscGrid &grid,
                            json &stats_block) {
  std::vector<double> neg_margin, range;
  for (const auto &pt : rep.points) {
    neg_margin.push_back(-pt.margin);
    range.push_back(pt.range_residual);
  }
  stats_block["margin_deficit"] = stats(neg_margin, grid);
  stats_block["range_residual"] = stats(range, grid);

  json j;
  j["k"] = rep.k;
  if (rep.expected_k)
    j["expected_k"] = *rep.expected_k;
  j["k_mismatch_warning"] = rep.k_mismatch;
  j["min_margin"] = rep.min_margin;
  j["min_margin_z"] = z_json(grid.points()[rep.min_margin_at]);
  j["norm_mode"] = to_string(rep.norm_mode);
  j["norm_estimate"] = rep.norm_estimate;
  j["max_range_residual"] = rep.max_range_residual;
  json failing = json::array();
  for (std::size_t i = 0; i < rep.range_failures.size() && i < 20; ++i) {
    const auto idx = rep.range_failures[i];
    failing.push_back({{"index", idx}, {"z", z_json(grid.points()[idx])},
                       {"residual", rep.points[idx].range_residual}});
  }
  j["range_failures"] = rep.range_failures.size();
  j["range_failure_points"] = failing;
  return j;
}

inline json bundle_json(const SolutionBundle &b, const DiscGrid &grid,
                        json &verdicts, json &stats_block) {
  stats_block["solution_residual"] = stats(b.residuals, grid);
  double off = 0.0, target = 0.0;
  std::size_t excluded = 0;
  json parts = json::array();
  for (const auto &p : b.parts) {
    off = std::max(off, p.annihilation.max_offdiagonal);
    target = std::max(target, p.annihilation.max_target_error);
    excluded = std::max(excluded, p.annihilation.excluded.size());
    parts.push_back({{"row", p.row + 1},
                     {"scalar_solve_success", p.solve.success},
                     {"scalar_residual", p.solve.residual},
                     {"coefficient_residual", p.solve.coefficient_residual},
                     {"v_sup_norm", p.solve.v_sup_norm},
                     {"g_sup_norm", p.g_sup_norm},
                     {"chain_bound", p.chain_bound},
                     {"chain_ok", p.chain_ok},
                     {"offdiagonal", p.annihilation.max_offdiagonal},
                     {"offdiagonal_including_excluded",
                      p.annihilation.max_offdiagonal_all},
                     {"target_error", p.annihilation.max_target_error},
                     {"excluded_points", p.annihilation.excluded.size()}});
  }
  stats_block["offdiagonal_annihilation"] = scalar_stat(off, std::nullopt, grid);
  stats_block["target_row_error"] = scalar_stat(target, std::nullopt, grid);

  verdicts["scalar_solves"] = b.all_solves_succeeded;
  verdicts["solution_residual"] = b.residual_ok;
  verdicts["offdiagonal_annihilation"] = b.annihilation_ok;
  verdicts["norm_chain"] = b.chain_ok;

  json rows = json::array();
  for (int r : b.assembled_rows)
    rows.push_back(r + 1);
  json j;
  j["m"] = b.m;
  j["d"] = b.d;
  j["k"] = b.k;
  j["strategy"] = to_string(b.strategy);
  j["assembled_rows"] = rows;
  j["parts"] = parts;
  j["residual_threshold"] = kEndToEndTolerance * b.h_scale;
  j["excluded_points_max"] = excluded;
  return j;
}

inline json bounds_json(const SolutionBundle &b) {
  return {{"K", b.K},
          {"binomial_m1_k1", b.binom},
          {"bound_m_binom_K", b.bound_binom_K},
          {"bound_m_kfact_binom_K", b.bound_k_factorial},
          {"bound_data_driven", b.bound_data}};
}

inline bool all_true(const json &verdicts) {
  for (const auto &[key, v] : verdicts.items())
    if (!v.get<bool>())
      return false;
  return true;
}

} // namespace cmd_detail

inline CommandResult cmd_identities(const IdentityConfig &cfg,
                                    const GlobalOptions &opts = {}) {
  CommandResult out;
  out.report = cmd_detail::header("identities", "", opts);
  out.report["parameters"] = {{"seed", cfg.seed},
                              {"max_m", cfg.max_m},
                              {"max_d", cfg.max_d},
                              {"instances", cfg.instances},
                              {"detk_instances", cfg.detk_instances}};
  IdentityRunner runner(cfg);
  json verdicts, stats;
  for (const auto &s : runner.run_all()) {
    verdicts[s.name] = s.pass;
    stats[s.name] = {{"instances", s.instances},
                     {s.lower_bound ? "min" : "max", s.worst},
                     {"threshold", s.threshold}};
  }
  out.report["verdicts"] = verdicts;
  out.report["statistics"] = stats;
  out.exit_code = cmd_detail::all_true(verdicts) ? exit_pass : exit_check_failed;
  return out;
}

inline CommandResult cmd_check(const Fixture &fx, const GlobalOptions &opts = {}) {
  CommandResult out;
  out.report = cmd_detail::header("check", fx.id, opts);
  const GridSpec gs = cmd_detail::resolve_grid(opts, fx.grid);
  const DiscGrid grid = gs.build();
  const NormMode mode = opts.norm_mode.value_or(fx.norm_mode);
  const AlphaParams ap(opts.alpha_c);
  out.report["parameters"] = {
      {"grid", cmd_detail::grid_json(gs, grid)},
      {"tolerances",
       {{"margin", kMarginTolerance},
        {"norm", kNormTolerance},
        {"range_relative", kRangeTolerance}}},
      {"alpha_c", ap.c()}};

  const auto rep = check_hypotheses(fx.f, fx.h, grid, mode, fx.k);
  json verdicts, stats;
  out.report["hypotheses"] = cmd_detail::hypotheses_json(rep, grid, stats);
  verdicts["i_detk_margin"] = rep.margin_ok;
  verdicts["ii_multiplier_norm"] = rep.norm_ok;
  verdicts["iii_range"] = rep.range_ok;

  json alpha_block;
  if (fx.m == 1 && rep.norm_estimate <= 1.0 + 1e-9) {
    const auto ar = alpha_hypothesis_check(fx.f, fx.h, grid, ap);
    alpha_block = {{"applicable", true},
                   {"min_margin", ar.min_margin},
                   {"min_margin_z", cmd_detail::z_json(grid.points()[ar.argmin])},
                   {"pass", ar.pass}};
  } else {
    alpha_block = {{"applicable", false}};
  }
  out.report["alpha_hypothesis"] = alpha_block;
  out.report["verdicts"] = verdicts;
  out.report["statistics"] = stats;
  out.report["norms"] = {{"multiplier_norm_estimate", rep.norm_estimate}};
  out.exit_code = cmd_detail::all_true(verdicts) ? exit_pass : exit_check_failed;
  return out;
}

inline CommandResult cmd_solve(const Fixture &fx, const GlobalOptions &opts = {},
                               const std::string &command = "solve") {
  CommandResult out;
  out.report = cmd_detail::header(command, fx.id, opts);
  const GridSpec gs = cmd_detail::resolve_grid(opts, fx.grid);
  const DiscGrid grid = gs.build();
  const auto aopts = cmd_detail::assembly_options(fx, opts);
  out.report["parameters"] = {
      {"grid", cmd_detail::grid_json(gs, grid)},
      {"degree_cap", aopts.degree_cap},
      {"tolerances",
       {{"scalar_solve", aopts.tol}, {"end_to_end_relative", kEndToEndTolerance}}},
      {"strategy", to_string(aopts.strategy)}};
  json verdicts, stats;
  SolutionBundle b;
  try {
    b = solve_full(fx.f, fx.h, grid, aopts);
  } catch (const precondition_failed &e) {
    verdicts["iii_range"] = false;
    out.report["error"] = e.what();
    out.report["verdicts"] = verdicts;
    out.exit_code = exit_check_failed;
    return out;
  }
  out.report["solution"] = cmd_detail::bundle_json(b, grid, verdicts, stats);
  out.report["verdicts"] = verdicts;
  out.report["statistics"] = stats;
  out.report["norms"] = {{"g_sup_norm", b.g_sup_norm},
                         {"h_sup_norm", b.h_scale},
                         {"f_multiplier_norm_estimate", b.hypotheses.norm_estimate}};
  out.report["bounds"] = cmd_detail::bounds_json(b);
  out.solution = solution_to_json(fx.id, b.g);
  out.csv = residual_csv(grid, b.residuals);
  out.exit_code = cmd_detail::all_true(verdicts) ? exit_pass : exit_check_failed;
  return out;
}

inline CommandResult cmd_radical(const Fixture &fx, const PolyMatrix &g, int n,
                                 const GlobalOptions &opts = {}) {
  CommandResult out;
  out.report = cmd_detail::header("radical", fx.id, opts);
  const GridSpec gs = cmd_detail::resolve_grid(opts, fx.grid);
  const DiscGrid grid = gs.build();
  out.report["parameters"] = {
      {"grid", cmd_detail::grid_json(gs, grid)},
      {"n", n},
      {"tolerances",
       {{"power_relative", kEndToEndTolerance}, {"margin", kRadicalTolerance}}}};
  json verdicts, stats;
  if (g.rows() != fx.f.cols())
    throw input_error("radical: G has " + std::to_string(g.rows()) +
                      " rows, expected d = " + std::to_string(fx.f.cols()));
  try {
    const auto rep = radical_necessary_check(fx.f, g, fx.h, n, grid);
    verdicts["power_identity"] = true;
    verdicts["radical_margin"] = rep.pass;
    stats["power_residual"] = cmd_detail::scalar_stat(rep.power_residual, std::nullopt, grid);
    stats["radical_margin_deficit"] =
        cmd_detail::scalar_stat(-rep.min_margin, rep.min_margin_at, grid);
    out.report["radical"] = {{"C_implemented", rep.c_implemented},
                             {"C_stated_2m", rep.c_stated},
                             {"min_margin", rep.min_margin},
                             {"min_margin_row", rep.min_margin_row + 1},
                             {"min_margin_with_stated_C", rep.min_margin_stated}};
    out.report["norms"] = {{"g_sup_norm", rep.g_sup_norm}};
  } catch (const precondition_failed &e) {
    verdicts["power_identity"] = false;
    out.report["error"] = e.what();
  }
  out.report["verdicts"] = verdicts;
  out.report["statistics"] = stats;
  out.exit_code = cmd_detail::all_true(verdicts) ? exit_pass : exit_check_failed;
  return out;
}

inline CommandResult cmd_concat(const Fixture &a, const Fixture &b,
                                const GlobalOptions &opts = {}) {
  if (a.m != b.m)
    throw input_error("concat: fixtures must have the same row count");
  CommandResult out;
  out.report = cmd_detail::header("concat", a.id + "+" + b.id, opts);
  const GridSpec gs = cmd_detail::resolve_grid(opts, a.grid);
  const DiscGrid grid = gs.build();
  Fixture merged = a;
  merged.d = a.d + b.d;
  merged.f = PolyMatrix::hcat(a.f, b.f);
  merged.degree_cap = std::max(a.degree_cap, b.degree_cap);
  const auto aopts = cmd_detail::assembly_options(merged, opts);
  out.report["parameters"] = {
      {"grid", cmd_detail::grid_json(gs, grid)},
      {"degree_cap", aopts.degree_cap},
      {"split", {a.d, b.d}},
      {"tolerances",
       {{"scalar_solve", aopts.tol}, {"end_to_end_relative", kEndToEndTolerance}}},
      {"strategy", to_string(aopts.strategy)}};
  json verdicts, stats;
  ConcatResult res;
  try {
    res = concat_solve(a.f, b.f, a.h, grid, aopts);
  } catch (const precondition_failed &e) {
    verdicts["iii_range"] = false;
    out.report["error"] = e.what();
    out.report["verdicts"] = verdicts;
    out.exit_code = exit_check_failed;
    return out;
  }
  out.report["solution"] = cmd_detail::bundle_json(res.bundle, grid, verdicts, stats);
  verdicts["split_identity"] = res.split_difference <= 1e-12;
  stats["split_difference"] = cmd_detail::scalar_stat(res.split_difference, std::nullopt, grid);
  out.report["verdicts"] = verdicts;
  out.report["statistics"] = stats;
  out.report["norms"] = {{"g_sup_norm", res.bundle.g_sup_norm},
                         {"g1_sup_norm", a.d ? sup_operator_norm(res.g1, grid) : 0.0},
                         {"g2_sup_norm", b.d ? sup_operator_norm(res.g2, grid) : 0.0}};
  out.report["bounds"] = cmd_detail::bounds_json(res.bundle);
  json sol = solution_to_json(out.report["fixture"].get<std::string>(), res.bundle.g);
  sol["G1"] = matrix_to_json(res.g1);
  sol["G2"] = matrix_to_json(res.g2);
  out.solution = sol;
  out.csv = residual_csv(grid, res.bundle.residuals);
  out.exit_code = cmd_detail::all_true(verdicts) ? exit_pass : exit_check_failed;
  return out;
}

inline CommandResult cmd_alpha(double t, const GlobalOptions &opts = {}) {
  CommandResult out;
  out.report = cmd_detail::header("alpha", "", opts);
  const AlphaParams ap(opts.alpha_c);
  out.report["parameters"] = {{"t", t}, {"c", ap.c()}};
  out.report["alpha"] = {{"A0", ap.a0()}, {"value", alpha(t, ap)}};
  return out;
}

inline CommandResult cmd_bound(int m, int k, const GlobalOptions &opts = {}) {
  CommandResult out;
  out.report = cmd_detail::header("bound", "", opts);
  const double bound = norm_bound(m, k);
  out.report["parameters"] = {{"m", m}, {"k", k}};
  const double K = K_constant();
  out.report["bounds"] = {
      {"K", K},
      {"binomial_m1_k1", binomial(m - 1, k - 1)},
      {"bound_m_binom_K", bound},
      {"bound_m_kfact_binom_K",
       m * factorial(k) * static_cast<double>(binomial(m - 1, k - 1)) * K}};
  return out;
}

} // namespace koszul
