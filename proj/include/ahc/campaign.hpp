#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ahc/identities.hpp"

namespace ahc {

/// Which identity families a campaign runs.  Order here is execution
/// order inside a trial; the set is validated against suite_names().
const std::vector<std::string> &suite_names();

/// A verification campaign: a deterministic grid of structures, each
/// exercised by the configured identity suites.  Every numeric knob is
/// validated before a campaign runs (ConfigError otherwise).
struct CampaignConfig {
  std::vector<int> n_list = {1, 2, 3};
  std::vector<std::string> presets = {"flat_kahler", "generic",
                                      "hermitian_nonkahler",
                                      "almost_kahler_nonintegrable"};
  int random_trials = 50;       ///< random structures per complex dimension
  std::uint64_t campaign_seed = 2024;
  double tol_rel = 1e-8;
  double tol_abs = 1e-10;
  int jet_order = 1; ///< 1 or 2
  std::vector<std::string> suites = suite_names();
  std::string output_path; ///< optional JSON report destination
  bool inject_bug = false; ///< harness self-test: flip one RHS sign
};

/// Parse a JSON config file (strict keys) and merge it over defaults.
CampaignConfig load_config(const std::string &path);

/// Throw ConfigError if any field is out of contract.
void validate_config(const CampaignConfig &cfg);

/// One structure instance in the grid.  trial_seed = campaign_seed +
/// index seeds the germ generator; random structures additionally carry
/// the seed that built them.
struct TrialSpec {
  int index = 0;
  std::string kind;    ///< "preset" or "random"
  std::string name;    ///< preset name, or "random" for seeded draws
  std::uint64_t structure_seed = 0; ///< 0 for presets
  int n = 1;
  std::uint64_t trial_seed = 0;
};

struct TrialRecord {
  TrialSpec spec;
  std::vector<IdentityResidual> results;
  std::string error; ///< nonempty if the trial threw; counts as a failure
};

struct CampaignReport {
  std::vector<TrialRecord> trials;
  long total = 0;
  long passed = 0;
  long failed = 0;
  double max_residual_rel = 0.0;
};

/// The deterministic trial grid for a config (presets first, then seeded
/// random structures; inapplicable preset/dimension pairs are skipped).
std::vector<TrialSpec> enumerate_trials(const CampaignConfig &cfg);

/// Run one trial serially.  Never throws: failures inside identities are
/// recorded, unexpected exceptions land in TrialRecord::error.
TrialRecord run_trial(const TrialSpec &spec, const CampaignConfig &cfg);

/// Run the whole grid (OpenMP across trials; output independent of the
/// thread count) and aggregate the summary.
CampaignReport run_campaign(const CampaignConfig &cfg);

/// Deterministic JSON serialization: config echo, one row per residual,
/// summary block.  Byte-identical for identical configs; wall-clock data
/// never enters this string.
std::string report_to_json(const CampaignReport &report,
                           const CampaignConfig &cfg);

/// Re-run a single trial verbosely (one line per identity) for debugging
/// a failure from a report.  Returns true if every residual passed.
bool replay_trial(const CampaignConfig &cfg, int trial_index,
                  std::ostream &os);

} // namespace ahc
