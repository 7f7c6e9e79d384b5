#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spider/io.hpp"
#include "spider/samplers.hpp"
#include "spider/suites.hpp"
#include "spider/walk.hpp"

namespace spider {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr std::uint64_t kDefaultSeed = 20261018;

/// `runs/a.csv` -> `runs/a.manifest.json`.
std::filesystem::path manifest_for_file(const std::filesystem::path& output);
/// `figs/fig1` -> `figs/fig1.manifest.json`.
std::filesystem::path manifest_for_prefix(const std::filesystem::path& prefix);

/// Law names accepted by `sample --law`.
SampleRequest parse_sample_law(const std::string& name, double mu, int n,
                               const std::string& representation);

struct SampleOutcome {
  RunManifest manifest;
  std::optional<GofReport> diagnostic;  ///< KS against the closed-form CDF when one exists
};

SampleOutcome cmd_sample(const SampleRequest& request, std::size_t count, std::uint64_t seed,
                         const std::filesystem::path& out, unsigned threads, bool deterministic);

/// Without a rule: full-horizon path summaries. With a rule: one stopped
/// occupation vector per path.
RunManifest cmd_simulate(const SpiderConfig& config, const std::optional<StoppingRule>& rule,
                         WalkEngine engine, const std::filesystem::path& out, unsigned threads,
                         bool deterministic);

RunManifest cmd_figure1(std::span<const double> mu_list, int grid,
                        const std::filesystem::path& out_prefix, bool deterministic);
RunManifest cmd_figure2(std::span<const int> n_list, int grid,
                        const std::filesystem::path& out_prefix, bool deterministic);

struct VerifyOutcome {
  RunManifest manifest;
  std::vector<GofReport> reports;
  bool pass = false;
};

VerifyOutcome cmd_verify(Suite suite, const SuiteOptions& options, const std::filesystem::path& out,
                         bool deterministic);

/// Full command line (args[0] is the program name). Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spider
