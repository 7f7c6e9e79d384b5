#include "spider/cli.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "CLI11.hpp"
#include "spider/closed_form.hpp"
#include "spider/errors.hpp"
#include "spider/figures.hpp"
#include "spider/special.hpp"

namespace spider {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start, bool deterministic) {
  if (deterministic) return 0.0;
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void ensure_parent(const std::filesystem::path& path) {
  const auto parent = path.parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
}

// Closed-form CDF for coordinate 1 of the request, if there is one.
std::optional<CdfFunction> reference_cdf(const SampleRequest& r) {
  switch (r.law) {
    case SampleLaw::ArcSine:
      return CdfFunction(arcsine_cdf);
    case SampleLaw::RatioA:
      return CdfFunction([mu = r.mu](double z) { return ratio_A_cdf(z, mu); });
    case SampleLaw::RatioPower:
      return CdfFunction([mu = r.mu](double y) { return ratio_power_cdf(y, mu); });
    case SampleLaw::RatioX:
      return CdfFunction([mu = r.mu](double x) { return ratio_power_cdf(std::pow(x, mu), mu); });
    case SampleLaw::OccupationExact:
    case SampleLaw::CauchySpiderMarginal:
      return CdfFunction([n = r.n](double z) { return spider_cdf(z, n); });
    case SampleLaw::StableHalf:
      return CdfFunction([](double t) { return t <= 0.0 ? 0.0 : std::erfc(0.5 / std::sqrt(t)); });
    case SampleLaw::CMu:
      return CdfFunction([mu = r.mu](double c) {
        const double s = std::sin(kPi * mu);
        const double co = std::cos(kPi * mu);
        return 0.5 + std::atan((c + co) / s) / kPi;
      });
    case SampleLaw::PositiveStable:
      return std::nullopt;
  }
  return std::nullopt;
}

ArcsineRepresentation parse_representation(const std::string& name) {
  if (name == "normal-ratio") return ArcsineRepresentation::NormalRatio;
  if (name == "cosine-square") return ArcsineRepresentation::CosineSquare;
  if (name == "stable-ratio") return ArcsineRepresentation::StableRatio;
  if (name == "cauchy") return ArcsineRepresentation::Cauchy;
  throw UsageError("unknown arc-sine representation '" + name +
                   "' (expected normal-ratio, cosine-square, stable-ratio or cauchy)");
}

StoppingRule parse_rule(const std::string& name, double level, int ray) {
  if (name == "fixed-time") return StoppingRule::fixed_time(level);
  if (name == "inverse-occupation") return StoppingRule::inverse_occupation(ray, level);
  if (name == "inverse-local-time") return StoppingRule::inverse_local_time(level);
  throw UsageError("unknown stopping rule '" + name +
                   "' (expected fixed-time, inverse-occupation or inverse-local-time)");
}

WalkEngine parse_engine(const std::string& name) {
  if (name == "auto") return WalkEngine::Auto;
  if (name == "stepwise") return WalkEngine::Stepwise;
  if (name == "excursion") return WalkEngine::Excursion;
  throw UsageError("unknown engine '" + name + "' (expected auto, stepwise or excursion)");
}

void finish_manifest(RunManifest& m, Clock::time_point start, bool deterministic,
                     const std::filesystem::path& manifest_path) {
  m.finished = timestamp_now(deterministic);
  m.extra["wall_time_seconds"] = elapsed_seconds(start, deterministic);
  m.outputs.push_back(manifest_path.string());
  m.write(manifest_path);
}

}  // namespace

std::filesystem::path manifest_for_file(const std::filesystem::path& output) {
  auto p = output;
  p.replace_extension(".manifest.json");
  return p;
}

std::filesystem::path manifest_for_prefix(const std::filesystem::path& prefix) {
  return prefix.parent_path() / (prefix.filename().string() + ".manifest.json");
}

SampleRequest parse_sample_law(const std::string& name, double mu, int n,
                               const std::string& representation) {
  SampleRequest r;
  r.mu = mu;
  r.n = n;
  r.representation = parse_representation(representation);
  if (name == "arcsine") r.law = SampleLaw::ArcSine;
  else if (name == "ratio-power") r.law = SampleLaw::RatioPower;
  else if (name == "ratio-a") r.law = SampleLaw::RatioA;
  else if (name == "occupation" || name == "spider") r.law = SampleLaw::OccupationExact;
  else if (name == "stable") r.law = SampleLaw::PositiveStable;
  else if (name == "stable-half") r.law = SampleLaw::StableHalf;
  else if (name == "ratio-x") r.law = SampleLaw::RatioX;
  else if (name == "c-mu") r.law = SampleLaw::CMu;
  else if (name == "cauchy-spider") r.law = SampleLaw::CauchySpiderMarginal;
  else
    throw UsageError("unknown law '" + name +
                     "' (expected arcsine, ratio-power, ratio-a, occupation, stable, stable-half, "
                     "ratio-x, c-mu or cauchy-spider)");
  try {
    r.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return r;
}

SampleOutcome cmd_sample(const SampleRequest& request, std::size_t count, std::uint64_t seed,
                         const std::filesystem::path& out, unsigned threads, bool deterministic) {
  if (count == 0) throw UsageError("sample: --count must be positive");
  const auto start = Clock::now();
  SampleOutcome result;
  RunManifest& m = result.manifest;
  m.command = "sample";
  m.seed = seed;
  m.started = timestamp_now(deterministic);
  m.parameters = request_to_json(request);
  m.parameters["count"] = count;

  ensure_parent(out);
  const SampleBatch batch = sample_batch(request, count, seed, 64, threads);
  write_sample_batch(batch, out);
  m.outputs = {out.string(), sidecar_path(out).string()};
  m.extra["redraw_count"] = batch.redraw_count;

  if (auto cdf = reference_cdf(request); cdf && count >= 10) {
    result.diagnostic = ks_one_sample(batch.column(0), *cdf,
                                      "sample " + request.label() + " coord1 vs closed-form cdf", seed);
    m.extra["diagnostic"] = report_to_json(*result.diagnostic);
  }
  finish_manifest(m, start, deterministic, manifest_for_file(out));
  return result;
}

RunManifest cmd_simulate(const SpiderConfig& config, const std::optional<StoppingRule>& rule,
                         WalkEngine engine, const std::filesystem::path& out, unsigned threads,
                         bool deterministic) {
  config.validate();
  if (rule) rule->validate(config.n);
  const auto start = Clock::now();
  RunManifest m;
  m.command = "simulate";
  m.seed = config.seed;
  m.started = timestamp_now(deterministic);
  m.parameters = {{"n", config.n},
                  {"steps", config.steps},
                  {"paths", config.paths},
                  {"cap_factor", config.cap_factor}};
  ensure_parent(out);
  if (rule) {
    m.parameters["rule"] = rule->label();
    const StopBatch batch = run_stopping_batch(config, *rule, engine, threads);
    write_stop_batch(batch, config.n, out);
    m.extra["discarded"] = batch.discarded;
    m.extra["discard_fraction"] = batch.discard_fraction();
  } else {
    m.parameters["rule"] = "full_horizon";
    write_path_summaries(simulate_batch(config, threads), out);
  }
  m.outputs = {out.string()};
  finish_manifest(m, start, deterministic, manifest_for_file(out));
  return m;
}

RunManifest cmd_figure1(std::span<const double> mu_list, int grid,
                        const std::filesystem::path& out_prefix, bool deterministic) {
  const auto start = Clock::now();
  RunManifest m;
  m.command = "figure1";
  m.started = timestamp_now(deterministic);
  m.parameters = {{"mu_list", std::vector<double>(mu_list.begin(), mu_list.end())},
                  {"grid", grid}};
  ensure_parent(out_prefix);
  const FigureResult fig = emit_figure1(mu_list, grid, out_prefix, deterministic);
  for (const auto& f : fig.files) m.outputs.push_back(f.string());
  finish_manifest(m, start, deterministic, manifest_for_prefix(out_prefix));
  return m;
}

RunManifest cmd_figure2(std::span<const int> n_list, int grid,
                        const std::filesystem::path& out_prefix, bool deterministic) {
  const auto start = Clock::now();
  RunManifest m;
  m.command = "figure2";
  m.started = timestamp_now(deterministic);
  m.parameters = {{"n_list", std::vector<int>(n_list.begin(), n_list.end())}, {"grid", grid}};
  ensure_parent(out_prefix);
  const FigureResult fig = emit_figure2(n_list, grid, out_prefix, deterministic);
  for (const auto& f : fig.files) m.outputs.push_back(f.string());
  finish_manifest(m, start, deterministic, manifest_for_prefix(out_prefix));
  return m;
}

VerifyOutcome cmd_verify(Suite suite, const SuiteOptions& options, const std::filesystem::path& out,
                         bool deterministic) {
  const auto start = Clock::now();
  VerifyOutcome result;
  RunManifest& m = result.manifest;
  m.command = "verify";
  m.seed = options.seed;
  m.started = timestamp_now(deterministic);
  m.parameters = {{"suite", suite_name(suite)},
                  {"transform_draws", options.transform_draws},
                  {"theorem_paths", options.theorem_paths},
                  {"theorem_steps", options.theorem_steps},
                  {"lattice_paths", options.lattice_paths}};
  result.reports = run_suite(suite, options);
  result.pass = all_pass(result.reports);
  ensure_parent(out);
  write_reports_jsonl(result.reports, out);
  m.outputs = {out.string()};
  m.extra["pass"] = result.pass;
  m.extra["report_count"] = result.reports.size();
  finish_manifest(m, start, deterministic, manifest_for_file(out));
  return result;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Walsh Brownian motion occupation laws: sampling, densities, figures, verification",
               "spider"};
  app.require_subcommand(1);

  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  bool deterministic = false;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "64-bit seed")->envname("SPIDER_SEED");
    cmd->add_option("--threads", threads, "worker threads (outputs do not depend on it)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--deterministic", deterministic, "zero timestamps and wall times");
  };

  std::string law = "arcsine";
  std::string representation = "stable-ratio";
  double mu = 0.5;
  int n = 2;
  std::size_t count = 1000;
  std::string sample_out = "samples.csv";
  auto* sample = app.add_subcommand("sample", "draw from an exact law into CSV + JSON sidecar");
  sample->add_option("--law", law,
                     "arcsine | ratio-power | ratio-a | occupation | stable | stable-half | ratio-x "
                     "| c-mu | cauchy-spider");
  sample->add_option("--mu", mu, "stability index in (0,1)");
  sample->add_option("--n", n, "number of rays");
  sample->add_option("--count", count, "number of draws");
  sample->add_option("--representation", representation,
                     "arc-sine representation: normal-ratio | cosine-square | stable-ratio | cauchy");
  sample->add_option("--out", sample_out, "CSV path");
  add_common(sample);

  SpiderConfig config;
  std::string rule_name;
  double level = 1.0;
  int ray = 1;
  std::string engine_name = "auto";
  std::string simulate_out = "paths.csv";
  auto* simulate = app.add_subcommand("simulate", "simple random walk on the n-ray spider");
  simulate->add_option("--n", config.n, "number of rays");
  simulate->add_option("--steps", config.steps, "walk length N (>= 1000)");
  simulate->add_option("--paths", config.paths, "number of paths");
  simulate->add_option("--rule", rule_name,
                       "fixed-time | inverse-occupation | inverse-local-time (default: full paths)");
  simulate->add_option("--level", level, "t, s or l of the stopping rule");
  simulate->add_option("--ray", ray, "ray watched by inverse-occupation (1-based)");
  simulate->add_option("--engine", engine_name, "auto | stepwise | excursion");
  simulate->add_option("--cap-factor", config.cap_factor, "step cap as a multiple of N");
  simulate->add_option("--out", simulate_out, "CSV path");
  add_common(simulate);

  std::vector<double> mu_list(std::begin(kFigure1DefaultMus), std::end(kFigure1DefaultMus));
  std::vector<int> n_list(std::begin(kFigure2DefaultRays), std::end(kFigure2DefaultRays));
  int grid = 999;
  std::string fig1_out = "figure1";
  std::string fig2_out = "figure2";
  auto* figure1 = app.add_subcommand("figure1", "density of A for several mu");
  figure1->add_option("--mu", mu_list, "comma-separated mu values")->delimiter(',');
  figure1->add_option("--grid", grid, "interior grid points");
  figure1->add_option("--out", fig1_out, "output prefix");
  add_common(figure1);
  auto* figure2 = app.add_subcommand("figure2", "density of one occupation coordinate for several n");
  figure2->add_option("--n", n_list, "comma-separated ray counts")->delimiter(',');
  figure2->add_option("--grid", grid, "interior grid points");
  figure2->add_option("--out", fig2_out, "output prefix");
  add_common(figure2);

  std::string suite_arg = "all";
  std::string verify_out = "verify.jsonl";
  SuiteOptions suite_options;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite_arg, "transforms | densities | theorem1 | corollary | all");
  verify->add_option("--paths", suite_options.theorem_paths, "paths for the stopping-rule checks");
  verify->add_option("--steps", suite_options.theorem_steps, "steps for the stopping-rule checks");
  verify->add_option("--count", suite_options.transform_draws, "draws per transform check");
  verify->add_option("--out", verify_out, "JSON-lines report path");
  add_common(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "spider: " << e.what() << "\n" << "run 'spider --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (*sample) {
      const SampleRequest request = parse_sample_law(law, mu, n, representation);
      const SampleOutcome r = cmd_sample(request, count, seed, sample_out, threads, deterministic);
      out << "wrote " << count << " draws of " << request.label() << " to " << sample_out << "\n";
      if (r.diagnostic) print_report_table(std::span(&*r.diagnostic, 1), out);
    } else if (*simulate) {
      config.seed = seed;
      std::optional<StoppingRule> rule;
      if (!rule_name.empty()) rule = parse_rule(rule_name, level, ray);
      const RunManifest m =
          cmd_simulate(config, rule, parse_engine(engine_name), simulate_out, threads, deterministic);
      out << "wrote " << config.paths << " paths to " << simulate_out;
      if (m.extra.contains("discarded")) out << " (discarded " << m.extra["discarded"] << ")";
      out << "\n";
    } else if (*figure1) {
      const RunManifest m = cmd_figure1(mu_list, grid, fig1_out, deterministic);
      for (const auto& f : m.outputs) out << "wrote " << f << "\n";
    } else if (*figure2) {
      const RunManifest m = cmd_figure2(n_list, grid, fig2_out, deterministic);
      for (const auto& f : m.outputs) out << "wrote " << f << "\n";
    } else if (*verify) {
      suite_options.seed = seed;
      suite_options.threads = threads;
      const Suite suite = parse_suite(suite_arg);
      const VerifyOutcome r = cmd_verify(suite, suite_options, verify_out, deterministic);
      print_report_table(r.reports, out);
      if (!r.pass) {
        err << "spider: verification failed:\n";
        for (const auto& rep : r.reports) {
          if (!rep.pass) err << "  " << rep.test_name << "\n";
        }
        return kExitVerificationFailed;
      }
    }
  } catch (const UsageError& e) {
    err << "spider: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "spider: invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "spider: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace spider
