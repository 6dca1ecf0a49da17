// Copyright 2026 The Secrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run, sweep, fit, validate, serve.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "secrl/core/error.h"
#include "secrl/core/kernel_json.h"
#include "secrl/core/random.h"
#include "secrl/core/validate.h"
#include "secrl/debugger/server.h"
#include "secrl/debugger/session.h"
#include "secrl/experiment/config.h"
#include "secrl/experiment/runner.h"
#include "secrl/sysid/empirical.h"
#include "secrl/sysid/mixture.h"
#include "secrl/sysid/trace.h"

namespace {

using nlohmann::json;
using secrl::Error;
using secrl::ErrorCode;

constexpr int kOk = 0;
constexpr int kConfigFailure = 2;
constexpr int kRuntimeFailure = 3;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kUnknownModel:
    case ErrorCode::kDimensionCap:
    case ErrorCode::kFileFormat:
    case ErrorCode::kInvalidDiscount:
      return kConfigFailure;
    default:
      return kRuntimeFailure;
  }
}

struct CommonFlags {
  std::string seeds;
  std::string out;
  int jobs = 0;
  bool override_pairing = false;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seeds", f.seeds, "Comma-separated seed list, e.g. 0,1,2,3,4");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--jobs", f.jobs, "Parallel seed workers")->check(CLI::PositiveNumber);
  cmd->add_flag("--override-pairing", f.override_pairing,
                "Accept a non-recommended model/algorithm pairing without a warning");
}

int Run(const std::string& path, const CommonFlags& f) {
  secrl::experiment::RunOptions opts;
  opts.override_pairing = f.override_pairing;
  if (!f.seeds.empty()) opts.seeds = secrl::experiment::ParseSeedList(f.seeds);
  if (!f.out.empty()) opts.output_dir = f.out;
  if (f.jobs > 0) opts.jobs = f.jobs;
  const auto config = secrl::experiment::ExperimentConfig::Load(path);
  const auto result = secrl::experiment::RunExperiment(config, opts);
  for (const auto& file : result.files) std::cout << file << "\n";
  return kOk;
}

int Sweep(const std::string& path, const CommonFlags& f) {
  auto config = secrl::experiment::SweepConfig::Load(path);
  if (!f.seeds.empty()) {
    const auto seeds = secrl::experiment::ParseSeedList(f.seeds);
    config.seeds = static_cast<int>(seeds.size());
    config.base_seed = seeds.front();
  }
  std::optional<std::string> out;
  if (!f.out.empty()) out = f.out;
  const auto result = secrl::experiment::RunSweep(config, out);
  for (const auto& file : result.files) std::cout << file << "\n";
  std::cout << "spearman(misspecification, sim_mean) = " << result.spearman_sim << "\n";
  return kOk;
}

int Fit(const std::string& path, const CommonFlags& f, const std::string& channel_name,
        int k_safe, int k_intrusion) {
  namespace sysid = secrl::sysid;
  const sysid::Trace trace = sysid::IngestTraces(path, sysid::FormatFromPath(path));
  const sysid::Channel channel = sysid::ParseChannel(channel_name);
  const uint64_t seed = f.seeds.empty() ? 0 : secrl::experiment::ParseSeedList(f.seeds).front();
  json doc = {{"channel", std::string(sysid::ChannelName(channel))},
              {"records", trace.records.size()}};
  json flow_obs = {{"bins", 100}};
  for (int label : {0, 1}) {
    const auto samples = sysid::ChannelSamples(trace, channel, label);
    const std::string key = std::to_string(label);
    if (samples.empty()) {
      doc["empirical"][key] = nullptr;
      doc["mixture"][key] = nullptr;
      continue;
    }
    doc["empirical"][key] = sysid::ToJson(sysid::FitEmpirical(samples));
    std::vector<double> xs(samples.begin(), samples.end());
    const sysid::GmmFit fit =
        sysid::FitGmm(xs, label == 0 ? k_safe : k_intrusion, secrl::DeriveSeed(seed, {static_cast<uint64_t>(label)}));
    doc["mixture"][key] = {{"model", sysid::ToJson(fit.model)},
                           {"log_likelihood", fit.log_likelihood.back()},
                           {"iterations", fit.iterations},
                           {"converged", fit.converged},
                           {"warnings", fit.warnings}};
    flow_obs[label == 0 ? "no_intrusion" : "intrusion"] = sysid::ToJson(fit.model);
  }
  // Ready to paste into a flow model's model_params.obs block.
  if (flow_obs.contains("no_intrusion") && flow_obs.contains("intrusion")) {
    doc["flow_obs"] = flow_obs;
  }
  const std::string text = doc.dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << text;
  } else {
    std::filesystem::create_directories(f.out);
    const auto file = std::filesystem::path(f.out) / "fitted.json";
    std::ofstream(file) << text;
    std::cout << file.string() << "\n";
  }
  return kOk;
}

int Validate(const std::string& path) {
  const secrl::ModelKernel kernel = secrl::LoadKernel(path);
  const secrl::ValidationReport report = secrl::ValidateKernel(kernel);
  if (report.ok()) {
    std::cout << "ok: " << kernel.num_states() << " states, " << kernel.num_defender_actions()
              << " defender actions, " << kernel.num_attacker_actions() << " attacker actions, "
              << kernel.num_observations() << " observations\n";
    return kOk;
  }
  std::cout << report.ToString();
  return kRuntimeFailure;
}

secrl::debugger::DebuggerServer* g_server = nullptr;

int Serve(const std::string& host, int port, int ttl_minutes) {
  secrl::debugger::SessionManager sessions{std::chrono::minutes(ttl_minutes)};
  secrl::debugger::DebuggerServer server(sessions);
  const int bound = server.Bind(host, port);
  if (bound < 0) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return kRuntimeFailure;
  }
  g_server = &server;
  std::signal(SIGINT, [](int) { if (g_server) g_server->Stop(); });
  std::signal(SIGTERM, [](int) { if (g_server) g_server->Stop(); });
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  const bool ok = server.Serve();
  g_server = nullptr;
  return ok ? kOk : kRuntimeFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Security decision models: experiments, sweeps, identification, debugger"};
  app.require_subcommand(1);
  CommonFlags flags;
  std::string path;

  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", path, "Experiment config (JSON)")->required();
  AddCommonFlags(run, flags);

  auto* sweep = app.add_subcommand("sweep", "Run a misspecification sensitivity sweep");
  sweep->add_option("config", path, "Sweep config (JSON)")->required();
  AddCommonFlags(sweep, flags);

  std::string channel = "severe";
  int k_safe = 1, k_intrusion = 3;
  auto* fit = app.add_subcommand("fit", "Fit observation models from labeled traces");
  fit->add_option("traces", path, "Trace file (.jsonl or .csv)")->required();
  fit->add_option("--channel", channel, "severe | warning | logins");
  fit->add_option("--components-safe", k_safe, "Mixture components for label 0")
      ->check(CLI::PositiveNumber);
  fit->add_option("--components-intrusion", k_intrusion, "Mixture components for label 1")
      ->check(CLI::PositiveNumber);
  AddCommonFlags(fit, flags);

  auto* validate = app.add_subcommand("validate", "Validate a kernel file");
  validate->add_option("kernel", path, "Kernel (canonical JSON)")->required();
  AddCommonFlags(validate, flags);

  std::string host = "127.0.0.1";
  int port = 8080, ttl = 30;
  auto* serve = app.add_subcommand("serve", "Start the debugger HTTP service");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_option("--ttl-minutes", ttl, "Idle session lifetime")->check(CLI::PositiveNumber);
  AddCommonFlags(serve, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigFailure;
  }
  try {
    if (*run) return Run(path, flags);
    if (*sweep) return Sweep(path, flags);
    if (*fit) return Fit(path, flags, channel, k_safe, k_intrusion);
    if (*validate) return Validate(path);
    if (*serve) return Serve(host, port, ttl);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kRuntimeFailure;
}
