// speclearn: experiment runner for group harmonic analysis and symmetry
// discovery. Subcommands: transform, train, sweep, verify, recover.
//
// Exit codes: 0 success, 1 invariant failure, 2 usage/parse error,
// 3 runtime divergence.

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>

#include "speclearn/io.hpp"
#include "speclearn/recover.hpp"
#include "speclearn/selfcheck.hpp"
#include "speclearn/train.hpp"

namespace fs = std::filesystem;
using namespace speclearn;
using io::json;

namespace {

struct SweepConfig {
  double sigma_min = 0.0, sigma_max = 0.8, sigma_step = 0.1;
  int runs_per_sigma = 20;
};

struct ExperimentConfig {
  std::string group_spec = "C6";
  int order = 1;
  bool capsule = true;
  TrainConfig train;
  std::optional<SweepConfig> sweep;
  std::string output_dir = ".";
};

ExperimentConfig load_config(const std::string& path) {
  ExperimentConfig cfg;
  if (path.empty()) return cfg;
  json j = io::load_json_file(path);
  cfg.group_spec = j.value("group", cfg.group_spec);
  if (j.contains("model")) {
    cfg.order = j["model"].value("order", cfg.order);
    cfg.capsule = j["model"].value("capsule", cfg.capsule);
  }
  if (j.contains("train")) {
    const json& t = j["train"];
    cfg.train.eta = t.value("eta", cfg.train.eta);
    cfg.train.lr = t.value("lr", cfg.train.lr);
    cfg.train.steps = t.value("steps", cfg.train.steps);
    cfg.train.batch = t.value("batch", cfg.train.batch);
    cfg.train.dataset_size = t.value("dataset_size", cfg.train.dataset_size);
    cfg.train.noise_sigma = t.value("noise_sigma", cfg.train.noise_sigma);
    cfg.train.seed = t.value("seed", cfg.train.seed);
    cfg.train.fix_identity_slice =
        t.value("fix_identity_slice", cfg.train.fix_identity_slice);
  }
  if (j.contains("sweep")) {
    SweepConfig s;
    const json& sj = j["sweep"];
    s.sigma_min = sj.value("sigma_min", s.sigma_min);
    s.sigma_max = sj.value("sigma_max", s.sigma_max);
    s.sigma_step = sj.value("sigma_step", s.sigma_step);
    s.runs_per_sigma = sj.value("runs_per_sigma", s.runs_per_sigma);
    cfg.sweep = s;
  }
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  return cfg;
}

std::vector<int> dims_for(const FiniteGroup& G, bool capsule) {
  if (capsule) return model_dims(G);
  return std::vector<int>(G.order(), 1);
}

int run_train(const ExperimentConfig& cfg) {
  FiniteGroup G = parse_group_spec(cfg.group_spec);
  fs::create_directories(cfg.output_dir);
  TrainReport rep = train(G, dims_for(G, cfg.capsule), cfg.train, cfg.order);

  RecoveryReport rec = recover_table(rep.final_weights, G.table());
  io::save_text_file(
      (fs::path(cfg.output_dir) / "train_report.json").string(),
      io::train_report_to_json(rep, G.spec_string()).dump(2) + "\n");
  io::save_text_file((fs::path(cfg.output_dir) / "loss.csv").string(),
                     io::loss_curve_csv(rep.curve));
  io::save_text_file(
      (fs::path(cfg.output_dir) / "weights.json").string(),
      io::weights_to_json(rep.final_weights, G.spec_string()).dump(2) + "\n");
  io::save_text_file((fs::path(cfg.output_dir) / "recovery.json").string(),
                     io::recovery_to_json(rec).dump(2) + "\n");

  if (rep.diverged) {
    std::cerr << "training diverged after " << rep.steps_completed
              << " steps; partial artifacts written\n";
    return 3;
  }
  bool iso = rec.vs_truth.has_value() && rec.vs_truth->isomorphic;
  std::cout << "group=" << G.spec_string()
            << " final_invariance="
            << (rep.curve.empty() ? 0.0 : rep.curve.back().invariance)
            << " recovered_isomorphic=" << (iso ? "yes" : "no") << "\n";
  return iso ? 0 : 1;
}

int run_sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep.has_value())
    throw Error(ErrorKind::Parse, "sweep requires a sweep block in the config");
  FiniteGroup G = parse_group_spec(cfg.group_spec);
  const SweepConfig& sw = *cfg.sweep;
  if (sw.sigma_step <= 0 || sw.sigma_max < sw.sigma_min ||
      sw.runs_per_sigma < 1)
    throw Error(ErrorKind::Parse, "empty sweep range");

  std::vector<double> sigmas;
  for (double s = sw.sigma_min; s <= sw.sigma_max + 1e-12; s += sw.sigma_step)
    sigmas.push_back(s);

  std::vector<int> dims = dims_for(G, cfg.capsule);
  Eigen::MatrixXi truth = G.table();
  std::vector<std::vector<int>> ok(
      sigmas.size(), std::vector<int>(sw.runs_per_sigma, 0));
  std::vector<std::vector<int>> failed = ok;

  // Independent runs on a worker pool; results keyed by (sigma, run).
  std::atomic<std::size_t> next{0};
  std::size_t total = sigmas.size() * static_cast<std::size_t>(sw.runs_per_sigma);
  unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  auto worker = [&]() {
    while (true) {
      std::size_t t = next.fetch_add(1);
      if (t >= total) return;
      std::size_t si = t / sw.runs_per_sigma;
      int run = static_cast<int>(t % sw.runs_per_sigma);
      TrainConfig tc = cfg.train;
      tc.noise_sigma = sigmas[si];
      tc.seed = cfg.train.seed + static_cast<std::uint64_t>(run) +
                1000000ull * si;
      try {
        TrainReport rep = train(G, dims, tc, cfg.order);
        if (rep.diverged) {
          failed[si][run] = 1;
          continue;
        }
        RecoveryReport rec = recover_table(rep.final_weights, truth);
        ok[si][run] = rec.vs_truth->isomorphic ? 1 : 0;
      } catch (const std::exception& e) {
        failed[si][run] = 1;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<io::SweepRow> rows;
  for (std::size_t si = 0; si < sigmas.size(); ++si) {
    int hits = 0, errs = 0;
    for (int r = 0; r < sw.runs_per_sigma; ++r) {
      hits += ok[si][r];
      errs += failed[si][r];
    }
    if (errs > 0)
      std::cerr << "sigma=" << sigmas[si] << ": " << errs
                << " run(s) failed and count as misses\n";
    rows.push_back({sigmas[si],
                    static_cast<double>(hits) / sw.runs_per_sigma,
                    sw.runs_per_sigma});
  }
  fs::create_directories(cfg.output_dir);
  std::string csv = io::sweep_csv(rows);
  io::save_text_file((fs::path(cfg.output_dir) / "sweep.csv").string(), csv);
  std::cout << csv;
  return 0;
}

int run_verify(const std::string& group_spec) {
  FiniteGroup G = parse_group_spec(group_spec);
  std::vector<CheckResult> checks = run_selfchecks(G);
  for (const CheckResult& c : checks)
    std::printf("[%s] %-26s residual=%.3e tolerance=%.1e\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.residual,
                c.tolerance);
  if (!all_pass(checks)) {
    for (const CheckResult& c : checks)
      if (!c.pass) std::printf("violated invariant: %s\n", c.name.c_str());
    return 1;
  }
  return 0;
}

int run_transform(const std::string& group_spec, const std::string& input,
                  const std::string& out, bool roundtrip) {
  FiniteGroup G = parse_group_spec(group_spec);
  Signal x = io::signal_from_json(io::load_json_file(input));
  if (x.size() != G.order())
    throw Error(ErrorKind::Parse,
                "signal length " + std::to_string(x.size()) +
                    " does not match group order " + std::to_string(G.order()));
  IrrepSet irr = irreps(G);
  FourierCoefficients c = fourier_transform(G, irr, x);
  json j = io::fourier_to_json(c);
  if (roundtrip) {
    double err = (inverse_fourier(G, irr, c) - x).norm();
    j["roundtrip_max_error"] = err;
    std::cout << "roundtrip_max_error=" << err << "\n";
  }
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    io::save_text_file(out, j.dump(2) + "\n");
  return 0;
}

int run_recover(const std::string& weights_path, const std::string& out,
                const std::string& group_override) {
  auto [W, spec] = io::weights_from_json(io::load_json_file(weights_path));
  std::string truth_spec = group_override.empty() ? spec : group_override;
  RecoveryReport rep;
  if (!truth_spec.empty()) {
    FiniteGroup G = parse_group_spec(truth_spec);
    rep = recover_table(W, G.table());
  } else {
    rep = recover_table(W);
  }
  json j = io::recovery_to_json(rep);
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    io::save_text_file(out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"harmonic analysis on finite groups and symmetry discovery"};
  app.require_subcommand(1);

  std::string config_path, group_flag, out_flag, input_path, weights_path;
  std::optional<std::uint64_t> seed_flag;
  std::optional<double> sigma_flag;
  std::optional<int> runs_flag;
  bool roundtrip = false;

  auto* t_transform = app.add_subcommand("transform", "group Fourier transform of a signal file");
  t_transform->add_option("--group", group_flag, "group spec, e.g. C6 or D3")->required();
  t_transform->add_option("--input", input_path, "signal JSON file")->required();
  t_transform->add_option("--out", out_flag, "output file (stdout if omitted)");
  t_transform->add_flag("--roundtrip", roundtrip, "re-invert and report max error");

  auto* t_train = app.add_subcommand("train", "train a spectral network and recover the table");
  t_train->add_option("--config", config_path, "experiment config JSON");
  t_train->add_option("--group", group_flag, "override group spec");
  t_train->add_option("--seed", seed_flag, "override seed");
  t_train->add_option("--sigma", sigma_flag, "override noise sigma");
  t_train->add_option("--out", out_flag, "override output directory");

  auto* t_sweep = app.add_subcommand("sweep", "noise sweep with table-accuracy CSV");
  t_sweep->add_option("--config", config_path, "experiment config JSON")->required();
  t_sweep->add_option("--group", group_flag, "override group spec");
  t_sweep->add_option("--seed", seed_flag, "override seed");
  t_sweep->add_option("--runs", runs_flag, "override runs per sigma");
  t_sweep->add_option("--out", out_flag, "override output directory");

  auto* t_verify = app.add_subcommand("verify", "run the invariant self-test suites");
  t_verify->add_option("--group", group_flag, "group spec")->required();

  auto* t_recover = app.add_subcommand("recover", "recover the multiplication table from weights");
  t_recover->add_option("--weights", weights_path, "weights JSON file")->required();
  t_recover->add_option("--group", group_flag, "compare against this group's table");
  t_recover->add_option("--out", out_flag, "output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (t_verify->parsed()) return run_verify(group_flag);
    if (t_transform->parsed())
      return run_transform(group_flag, input_path, out_flag, roundtrip);
    if (t_recover->parsed())
      return run_recover(weights_path, out_flag, group_flag);

    ExperimentConfig cfg = load_config(config_path);
    if (!group_flag.empty()) cfg.group_spec = group_flag;
    if (seed_flag.has_value()) cfg.train.seed = *seed_flag;
    if (sigma_flag.has_value()) cfg.train.noise_sigma = *sigma_flag;
    if (runs_flag.has_value() && cfg.sweep.has_value())
      cfg.sweep->runs_per_sigma = *runs_flag;
    if (!out_flag.empty()) cfg.output_dir = out_flag;

    if (t_train->parsed()) return run_train(cfg);
    if (t_sweep->parsed()) return run_sweep(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::TrainingDiverged: return 3;
      case ErrorKind::Parse:
      case ErrorKind::InvalidOrder:
      case ErrorKind::SizeLimit:
      case ErrorKind::UnsupportedGroup: return 2;
      default: return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
