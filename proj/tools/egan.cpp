/*
 * Copyright 2026 The egan authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "egan/belief.hpp"
#include "egan/csv.hpp"
#include "egan/harness.hpp"
#include "egan/svg.hpp"

namespace {

namespace fs = std::filesystem;
using egan::harness::TrainConfig;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// All randomness flows from --seed; when omitted we pick one and print it.
std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t seed) {
  if (opt->count() > 0) return seed;
  std::random_device rd;
  const std::uint64_t chosen =
      (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cout << "seed " << chosen << " (generated; pass --seed to reproduce)\n";
  return chosen;
}

fs::path output_root() {
  if (const char* env = std::getenv("EGAN_OUT_ROOT")) return fs::path(env);
  return fs::path("runs");
}

std::vector<std::size_t> parse_hidden(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    out.push_back(std::stoull(cell));
  }
  if (out.empty()) throw std::invalid_argument("--hidden: empty layer list");
  return out;
}

struct TrainFlags {
  std::string config_path;
  std::string mode;
  std::string dataset;
  std::string hidden;
  std::string out;
  double lambda = 0, beta = 0, gamma = 0, lr = 0;
  std::uint64_t seed = 0;
  std::size_t epochs = 0, steps = 0, batch_size = 0, eval_every = 0;
  std::size_t sample_count = 0, vendi_count = 0, dataset_size = 0;
  std::size_t latent_dim = 0, regions = 0;
};

// Flags mirror config-file keys one-to-one; a set flag wins over the file.
void add_train_flags(CLI::App* cmd, TrainFlags& f) {
  cmd->add_option("--config", f.config_path, "key = value config file");
  cmd->add_option("--mode", f.mode,
                  "standard|epistemic|evid_d_only|evid_g_only");
  cmd->add_option("--dataset", f.dataset, "ring8|grid25|shapes16 or CSV path");
  cmd->add_option("--lambda", f.lambda, "belief-constraint weight");
  cmd->add_option("--beta", f.beta, "Dirichlet-variance weight");
  cmd->add_option("--gamma", f.gamma, "interval-width weight");
  cmd->add_option("--seed", f.seed, "master PRNG seed");
  cmd->add_option("--epochs", f.epochs, "epoch budget (when steps = 0)");
  cmd->add_option("--steps", f.steps, "generator-step budget (0 = derive)");
  cmd->add_option("--batch-size", f.batch_size, "samples per batch");
  cmd->add_option("--lr", f.lr, "Adam learning rate");
  cmd->add_option("--eval-every", f.eval_every,
                  "steps between metric evaluations (0 = final only)");
  cmd->add_option("--sample-count", f.sample_count,
                  "generated samples per evaluation");
  cmd->add_option("--vendi-count", f.vendi_count,
                  "sample cap for the Vendi eigendecomposition");
  cmd->add_option("--dataset-size", f.dataset_size,
                  "synthetic dataset size");
  cmd->add_option("--latent-dim", f.latent_dim, "latent prior dimension");
  cmd->add_option("--hidden", f.hidden, "hidden widths, e.g. 64,64");
  cmd->add_option("--regions", f.regions, "Dirichlet regions");
}

TrainConfig build_config(const CLI::App* cmd, const TrainFlags& f) {
  TrainConfig cfg;
  if (!f.config_path.empty())
    cfg = TrainConfig::from_kv(egan::io::KeyValueConfig::from_file(f.config_path));
  auto set = [&](const char* flag) { return cmd->count(flag) > 0; };
  if (set("--mode")) cfg.mode = egan::nets::parse_mode(f.mode);
  if (set("--dataset")) cfg.dataset = f.dataset;
  if (set("--lambda")) cfg.weights.lambda = f.lambda;
  if (set("--beta")) cfg.weights.beta = f.beta;
  if (set("--gamma")) cfg.weights.gamma = f.gamma;
  if (set("--seed")) cfg.seed = f.seed;
  if (set("--epochs")) cfg.epochs = f.epochs;
  if (set("--steps")) cfg.steps = f.steps;
  if (set("--batch-size")) cfg.batch_size = f.batch_size;
  if (set("--lr")) cfg.adam.lr = f.lr;
  if (set("--eval-every")) cfg.eval_every = f.eval_every;
  if (set("--sample-count")) cfg.sample_count = f.sample_count;
  if (set("--vendi-count")) cfg.vendi_count = f.vendi_count;
  if (set("--dataset-size")) cfg.dataset_size = f.dataset_size;
  if (set("--latent-dim")) cfg.latent_dim = f.latent_dim;
  if (set("--hidden")) cfg.hidden = parse_hidden(f.hidden);
  if (set("--regions")) cfg.regions = f.regions;
  return cfg;
}

void print_report(const egan::metrics::MetricsReport& r,
                  double reference_vendi) {
  std::cout << "fd (desk-scale)       = " << egan::io::format_double(r.fd)
            << "\n"
            << "vendi                 = " << egan::io::format_double(r.vendi)
            << "\n"
            << "reference_vendi       = "
            << egan::io::format_double(reference_vendi) << "\n"
            << "modes_covered         = " << r.modes_covered << "\n"
            << "high_quality_fraction = "
            << egan::io::format_double(r.high_quality_fraction) << "\n"
            << "kernel_bandwidth      = "
            << egan::io::format_double(r.kernel_bandwidth) << "\n"
            << "projection_seed       = " << r.projection_seed << "\n";
}

int run_belief_demo() {
  using namespace egan::ds;
  const Frame frame{3};  // atoms: flu = bit 0, cold = bit 1, allergy = bit 2
  constexpr std::uint32_t kFlu = 0b001, kCold = 0b010, kAllergy = 0b100;

  MassFunction m(frame, {{kFlu, 0.5}, {kAllergy, 0.2}, {kFlu | kCold, 0.3}});
  const BeliefFunction bel = belief_from_mass(m);

  std::cout << "frame = {flu, cold, allergy}\n"
            << "m({flu}) = 0.5\n"
            << "m({allergy}) = 0.2\n"
            << "m({flu,cold}) = 0.3\n"
            << "Bel({flu,cold}) = m({flu}) + m({cold}) + m({flu,cold}) = 0.5 "
               "+ 0.0 + 0.3\n"
            << "Bel({flu,cold}) = " << bel.value(kFlu | kCold) << "\n"
            << "Bel({flu}) = " << bel.value(kFlu) << "\n"
            << "Bel({allergy}) = " << bel.value(kAllergy) << "\n"
            << "Bel(frame) = " << bel.value(frame.full_set()) << "\n";

  // Moebius inversion recovers the assignment.
  const MassFunction back = mass_from_belief(bel);
  std::cout << "moebius round-trip: m({flu}) = " << back.mass(kFlu)
            << ", m({flu,cold}) = " << back.mass(kFlu | kCold) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evidential GAN workbench"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // train
  auto* train_cmd = app.add_subcommand("train", "train a model");
  TrainFlags tf;
  add_train_flags(train_cmd, tf);
  train_cmd->add_option("--out", tf.out, "run directory");

  // eval
  auto* eval_cmd =
      app.add_subcommand("eval", "score a checkpoint against a dataset");
  std::string ev_checkpoint, ev_dataset = "ring8";
  std::size_t ev_n = 5000, ev_vendi = 1000, ev_dataset_size = 20000;
  std::uint64_t ev_seed = 0;
  eval_cmd->add_option("--checkpoint", ev_checkpoint, "checkpoint manifest")
      ->required();
  eval_cmd->add_option("--dataset", ev_dataset, "dataset name or CSV path");
  eval_cmd->add_option("-n,--sample-count", ev_n, "generated sample count")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--vendi-count", ev_vendi, "Vendi sample cap");
  eval_cmd->add_option("--dataset-size", ev_dataset_size,
                       "synthetic dataset size");
  auto* ev_seed_opt = eval_cmd->add_option("--seed", ev_seed, "PRNG seed");

  // ablate
  auto* ablate_cmd =
      app.add_subcommand("ablate", "run a weight or architecture grid");
  TrainFlags af;
  add_train_flags(ablate_cmd, af);
  std::string ab_grid, ab_out;
  std::size_t ab_seeds = 3, ab_workers = 0;
  ablate_cmd->add_option("--grid", ab_grid, "beta-gamma|lambda|arch")
      ->required();
  ablate_cmd->add_option("--out", ab_out, "output directory")->required();
  ablate_cmd->add_option("--seeds", ab_seeds, "seeds per cell")
      ->check(CLI::PositiveNumber);
  ablate_cmd->add_option("--workers", ab_workers,
                         "worker threads (0 = hardware)");

  // sample
  auto* sample_cmd =
      app.add_subcommand("sample", "draw samples from a checkpoint");
  std::string sm_checkpoint, sm_out;
  std::size_t sm_n = 0;
  std::uint64_t sm_seed = 0;
  bool sm_uncertainty = false;
  sample_cmd->add_option("--checkpoint", sm_checkpoint, "checkpoint manifest")
      ->required();
  sample_cmd->add_option("-n,--sample-count", sm_n, "samples to draw")
      ->required()
      ->check(CLI::PositiveNumber);
  sample_cmd->add_flag("--with-uncertainty", sm_uncertainty,
                       "also export per-region interval widths");
  sample_cmd->add_option("--out", sm_out, "output directory");
  auto* sm_seed_opt = sample_cmd->add_option("--seed", sm_seed, "PRNG seed");

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "time standard vs epistemic training epochs");
  TrainFlags bf;
  add_train_flags(bench_cmd, bf);
  std::size_t bench_epochs = 3;
  bench_cmd->add_option("--bench-epochs", bench_epochs, "epochs to time")
      ->check(CLI::PositiveNumber);

  // belief-demo
  app.add_subcommand("belief-demo",
                     "worked finite belief-function example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (train_cmd->parsed()) {
      TrainConfig cfg;
      try {
        cfg = build_config(train_cmd, tf);
        if (cfg.dataset.size() <= 4 ||
            cfg.dataset.substr(cfg.dataset.size() - 4) != ".csv") {
          const auto names = egan::data::dataset_names();
          if (std::find(names.begin(), names.end(), cfg.dataset) ==
              names.end())
            throw std::invalid_argument("unknown dataset '" + cfg.dataset +
                                        "'");
        }
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
      }
      cfg.seed = resolve_seed(train_cmd->get_option("--seed"), cfg.seed);
      cfg.out_dir = tf.out.empty()
                        ? output_root() / (cfg.dataset + "_" +
                                           egan::nets::mode_name(cfg.mode) +
                                           "_seed" + std::to_string(cfg.seed))
                        : fs::path(tf.out);
      const auto result = egan::harness::train(cfg);
      std::cout << "run_dir " << result.run_dir.string() << "\n"
                << "steps " << result.steps_run << "\n"
                << "seconds_per_epoch "
                << egan::io::format_double(result.seconds_per_epoch) << "\n";
      print_report(result.report, result.reference_vendi);
      return kExitOk;
    }

    if (eval_cmd->parsed()) {
      const std::uint64_t seed = resolve_seed(ev_seed_opt, ev_seed);
      const auto ds = egan::harness::make_dataset(
          ev_dataset, ev_dataset_size, egan::Rng(seed).fork_seed(1));
      const auto result =
          egan::harness::evaluate(ev_checkpoint, ds, ev_n, ev_vendi, seed);
      print_report(result.report, result.reference_vendi);
      return kExitOk;
    }

    if (ablate_cmd->parsed()) {
      egan::harness::GridKind kind;
      TrainConfig base;
      try {
        kind = egan::harness::parse_grid(ab_grid);
        base = build_config(ablate_cmd, af);
        base.validate();
      } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
      }
      base.seed = resolve_seed(ablate_cmd->get_option("--seed"), base.seed);
      std::vector<std::uint64_t> seeds;
      for (std::size_t i = 0; i < ab_seeds; ++i)
        seeds.push_back(base.seed + i);
      const auto result =
          egan::harness::ablate(base, kind, seeds, ab_out, ab_workers);
      std::cout << "wrote " << result.csv_path.string() << " ("
                << result.cells.size() << " cells)\n";
      for (std::size_t r = 0; r < result.row_labels.size(); ++r) {
        for (std::size_t c = 0; c < result.col_labels.size(); ++c) {
          const auto& cell =
              result.cells[r * result.col_labels.size() + c];
          std::cout << result.row_labels[r] << " x " << result.col_labels[c]
                    << ": ";
          if (cell.failed)
            std::cout << "failed";
          else
            std::cout << "fd " << egan::io::format_double(cell.fd_median)
                      << ", vendi "
                      << egan::io::format_double(cell.vendi_median);
          std::cout << " [n=" << cell.seeds_ok << "/" << cell.seeds_total
                    << "]\n";
        }
      }
      return kExitOk;
    }

    if (sample_cmd->parsed()) {
      const std::uint64_t seed = resolve_seed(sm_seed_opt, sm_seed);
      const auto ckpt = egan::io::Checkpoint::load(sm_checkpoint);
      auto [gen, net_cfg] = egan::harness::load_generator(ckpt);
      egan::Rng rng(seed);

      const fs::path out = sm_out.empty() ? output_root() : fs::path(sm_out);
      fs::create_directories(out);

      egan::metrics::SampleSet samples;
      samples.n = sm_n;
      samples.dim = net_cfg.data_dim;
      samples.points.resize(sm_n * net_cfg.data_dim);
      std::vector<double> lows, highs, widths;
      constexpr std::size_t kChunk = 256;
      for (std::size_t done = 0; done < sm_n; done += kChunk) {
        const std::size_t take = std::min(kChunk, sm_n - done);
        const auto z = egan::nets::sample_latent(take, net_cfg.latent_dim, rng);
        const auto gout = gen.generate(z, rng);
        const auto vals = gout.sample.values();
        std::copy(vals.begin(), vals.end(),
                  samples.points.begin() + done * net_cfg.data_dim);
        if (sm_uncertainty && gout.intervals.width.defined()) {
          const auto lv = gout.intervals.lo.values();
          const auto hv = gout.intervals.hi.values();
          const auto wv = gout.intervals.width.values();
          lows.insert(lows.end(), lv.begin(), lv.end());
          highs.insert(highs.end(), hv.begin(), hv.end());
          widths.insert(widths.end(), wv.begin(), wv.end());
        }
      }

      std::vector<std::string> header(net_cfg.data_dim);
      for (std::size_t d = 0; d < net_cfg.data_dim; ++d)
        header[d] = "x" + std::to_string(d);
      egan::io::CsvWriter csv(out / "samples.csv", header);
      std::vector<double> row(net_cfg.data_dim);
      for (std::size_t i = 0; i < sm_n; ++i) {
        std::copy(samples.row(i), samples.row(i) + samples.dim, row.begin());
        csv.row(row);
      }
      csv.flush();
      std::cout << "wrote " << (out / "samples.csv").string() << "\n";

      if (sm_uncertainty) {
        if (!gen.dirichlet_stage())
          throw std::runtime_error(
              "checkpoint has a plain generator; no uncertainty maps");
        egan::io::CsvWriter ucsv(out / "uncertainty.csv",
                                 {"region", "lo", "hi", "width"});
        // per-region means over everything drawn
        const std::size_t regions = gen.regions();
        const std::size_t rows = widths.size() / regions;
        const double inv = 1.0 / static_cast<double>(rows);
        for (std::size_t r = 0; r < regions; ++r) {
          double mlo = 0.0, mhi = 0.0, mw = 0.0;
          for (std::size_t b = 0; b < rows; ++b) {
            mlo += lows[b * regions + r];
            mhi += highs[b * regions + r];
            mw += widths[b * regions + r];
          }
          ucsv.row({static_cast<double>(r), mlo * inv, mhi * inv, mw * inv});
        }
        ucsv.flush();
        const std::size_t strip_rows = std::min<std::size_t>(32, rows);
        std::vector<double> strip(widths.begin(),
                                  widths.begin() + strip_rows * regions);
        egan::plot::write_width_strip_svg(
            out / "uncertainty.svg", strip, regions,
            "per-region interval widths (dark = wide)");
        std::cout << "wrote " << (out / "uncertainty.csv").string() << "\n"
                  << "wrote " << (out / "uncertainty.svg").string() << "\n";
      }
      return kExitOk;
    }

    if (bench_cmd->parsed()) {
      TrainConfig base;
      try {
        base = build_config(bench_cmd, bf);
        base.validate();
      } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
      }
      base.seed = resolve_seed(bench_cmd->get_option("--seed"), base.seed);
      const auto r = egan::harness::bench(base, bench_epochs);
      std::cout << "steps_per_epoch " << r.steps_per_epoch << "\n"
                << "standard  " << egan::io::format_double(
                                       r.standard_seconds_per_epoch)
                << " s/epoch\n"
                << "epistemic " << egan::io::format_double(
                                       r.epistemic_seconds_per_epoch)
                << " s/epoch\n"
                << "overhead  " << egan::io::format_double(r.overhead_ratio)
                << "x\n";
      return kExitOk;
    }

    if (app.get_subcommand("belief-demo")->parsed()) return run_belief_demo();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
