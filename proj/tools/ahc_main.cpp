#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "ahc/campaign.hpp"
#include "ahc/errors.hpp"

namespace {

std::string iso_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

int run_verify(const ahc::CampaignConfig &cfg, const std::string &json_out,
               int replay_index, bool has_replay) {
  using namespace ahc;
  validate_config(cfg);

  if (has_replay)
    return replay_trial(cfg, replay_index, std::cout) ? 0 : 1;

  const auto t0 = std::chrono::steady_clock::now();
  const CampaignReport report = run_campaign(cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const std::string json = report_to_json(report, cfg);
  std::string dest = json_out.empty() ? cfg.output_path : json_out;
  if (!dest.empty()) {
    std::ofstream out(dest, std::ios::binary);
    if (!out)
      throw ConfigError("cannot write report to " + dest);
    out << json;
  } else {
    std::cout << json;
  }

  // Sidecar line: anything wall-clock stays out of the JSON body.
  std::cerr << "[" << iso_timestamp() << "] trials=" << report.trials.size()
            << " identities=" << report.total << " passed=" << report.passed
            << " failed=" << report.failed
            << " max_residual_rel=" << report.max_residual_rel
            << " wall=" << wall << "s";
  if (!dest.empty())
    std::cerr << " report=" << dest;
  std::cerr << "\n";
  return report.failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exterior-calculus verification harness for almost "
               "Hermitian fibers with first-order jets"};
  app.require_subcommand(1);

  auto *verify = app.add_subcommand(
      "verify", "Run identity-verification campaigns and emit a JSON report");

  std::string config_path;
  std::vector<std::string> presets, suites;
  std::vector<int> n_list;
  int trials = -1;
  std::uint64_t seed = 0;
  double tol_rel = 0.0, tol_abs = 0.0;
  int jet_order = 0;
  std::string json_out;
  int replay_index = 0;
  bool inject_bug = false;
  int threads = 0;

  verify->add_option("--config", config_path,
                     "JSON config file (CLI flags override it)");
  verify->add_option("--preset", presets, "Preset name (repeatable)");
  verify->add_option("--n", n_list, "Complex dimension (repeatable)");
  verify->add_option("--trials", trials,
                     "Random structures per dimension");
  auto *seed_opt =
      verify->add_option("--seed", seed, "Campaign seed");
  auto *tr_opt = verify->add_option("--tol-rel", tol_rel,
                                    "Relative tolerance");
  auto *ta_opt = verify->add_option("--tol-abs", tol_abs,
                                    "Absolute tolerance");
  auto *jo_opt = verify->add_option("--jet-order", jet_order,
                                    "Jet order of the structures (1 or 2)");
  verify->add_option("--suite", suites, "Identity suite (repeatable)");
  verify->add_option("--json-out", json_out, "Report destination file");
  auto *rp_opt = verify->add_option(
      "--replay", replay_index,
      "Re-run one trial from the campaign grid, verbosely");
  verify->add_flag("--inject-bug", inject_bug,
                   "Self-test: flip one RHS sign; the run must then fail");
  verify->add_option("--threads", threads, "OpenMP thread count (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    ahc::CampaignConfig cfg;
    if (!config_path.empty())
      cfg = ahc::load_config(config_path);
    if (!presets.empty())
      cfg.presets = presets;
    if (!n_list.empty())
      cfg.n_list = n_list;
    if (trials >= 0)
      cfg.random_trials = trials;
    if (seed_opt->count() > 0)
      cfg.campaign_seed = seed;
    if (tr_opt->count() > 0)
      cfg.tol_rel = tol_rel;
    if (ta_opt->count() > 0)
      cfg.tol_abs = tol_abs;
    if (jo_opt->count() > 0)
      cfg.jet_order = jet_order;
    if (!suites.empty())
      cfg.suites = suites;
    cfg.inject_bug = inject_bug;
#ifdef _OPENMP
    if (threads > 0)
      omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    return run_verify(cfg, json_out, replay_index, rp_opt->count() > 0);
  } catch (const ahc::ConfigError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "verification aborted: " << e.what() << "\n";
    return 1;
  }
}
