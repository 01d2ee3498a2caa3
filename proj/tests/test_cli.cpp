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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

int run_counter = 0;

struct CliOutput {
  int exit_code = -1;
  std::string text;  // stdout and stderr combined

  bool contains(const std::string& needle) const {
    return text.find(needle) != std::string::npos;
  }
};

const std::string& binary() {
  static const std::string bin = [] {
    const char* env = std::getenv("EGAN_BIN");
    REQUIRE_MESSAGE(env != nullptr, "EGAN_BIN must point at the cli binary");
    return std::string(env);
  }();
  return bin;
}

fs::path scratch_root() {
  static const fs::path root = [] {
    fs::path dir = fs::temp_directory_path() /
                   ("egan_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
  }();
  return root;
}

fs::path fresh_dir(const char* tag) {
  fs::path dir =
      scratch_root() / (std::string(tag) + "_" + std::to_string(run_counter++));
  fs::remove_all(dir);
  return dir;
}

CliOutput run_cli(const std::string& args) {
  const fs::path log =
      scratch_root() / ("log_" + std::to_string(run_counter++) + ".txt");
  const std::string cmd =
      binary() + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliOutput out;
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  out.text.assign(std::istreambuf_iterator<char>(in), {});
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), p.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

/// Shared tiny training budget so each spawned run stays in milliseconds.
std::string tiny_train_flags() {
  return "--dataset ring8 --steps 12 --batch-size 32 --dataset-size 600 "
         "--sample-count 250 --vendi-count 64 --latent-dim 8 --hidden 16,16 "
         "--regions 4";
}

}  // namespace

TEST_CASE("belief demo walks the worked example") {
  const CliOutput out = run_cli("belief-demo");
  CHECK(out.exit_code == 0);
  CHECK(out.contains("Bel({flu,cold}) = 0.8"));
  CHECK(out.contains("Bel({flu}) = 0.5"));
  CHECK(out.contains("moebius round-trip"));
}

TEST_CASE("help is available for every subcommand") {
  CHECK(run_cli("--help").exit_code == 0);
  for (const char* sub :
       {"train", "eval", "ablate", "sample", "bench", "belief-demo"}) {
    const CliOutput out = run_cli(std::string(sub) + " --help");
    CHECK_MESSAGE(out.exit_code == 0, sub);
  }
  // No subcommand at all is a usage error.
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("training from the command line emits a run directory") {
  const fs::path dir = fresh_dir("train");
  const CliOutput out = run_cli("train " + tiny_train_flags() + " --seed 3" +
                                " --out " + dir.string());
  CHECK(out.exit_code == 0);
  CHECK(out.contains("run_dir " + dir.string()));
  CHECK(out.contains("steps 12"));
  CHECK(out.contains("modes_covered"));
  CHECK(!out.contains("generated"));  // seed was given explicitly
  for (const char* name :
       {"config.txt", "losses.csv", "metrics.csv", "samples.csv",
        "checkpoint.manifest", "checkpoint.blob", "timing.txt"}) {
    CHECK_MESSAGE(fs::exists(dir / name), name);
  }
}

TEST_CASE("bad flag values exit with the usage code") {
  CHECK(run_cli("train --mode bogus").exit_code == 2);
  CHECK(run_cli("train --dataset bogus").exit_code == 2);
  CHECK(run_cli("train --batch-size 0 --seed 1").exit_code == 2);
  CHECK(run_cli("ablate --grid lambda").exit_code == 2);  // --out is required
  CHECK(run_cli("sample --checkpoint x.manifest -n 0").exit_code == 2);
  CHECK(run_cli("eval").exit_code == 2);  // --checkpoint is required
}

TEST_CASE("an omitted seed is generated and reported") {
  const fs::path dir = fresh_dir("noseed");
  const CliOutput out =
      run_cli("train " + tiny_train_flags() + " --out " + dir.string());
  CHECK(out.exit_code == 0);
  CHECK(out.contains("(generated; pass --seed to reproduce)"));
}

TEST_CASE("command-line flags override config-file keys") {
  const fs::path dir = fresh_dir("cfgfile");
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  {
    std::ofstream out(cfg);
    out << "# sweep base\n"
        << "dataset = ring8\n"
        << "lambda = 0\n"
        << "beta = 0.25\n"
        << "steps = 12\n"
        << "batch_size = 32\n"
        << "dataset_size = 600\n"
        << "sample_count = 250\n"
        << "vendi_count = 64\n"
        << "latent_dim = 8\n"
        << "hidden = 16,16\n"
        << "regions = 4\n";
  }
  const fs::path run = dir / "run";
  const CliOutput out = run_cli("train --config " + cfg.string() +
                                " --lambda 0.5 --seed 3 --out " +
                                run.string());
  CHECK(out.exit_code == 0);

  // The run snapshot echoes the effective values: the flag wins, untouched
  // file keys survive.
  const std::string snapshot = slurp(run / "config.txt");
  CHECK(snapshot.find("lambda = 0.5") != std::string::npos);
  CHECK(snapshot.find("beta = 0.25") != std::string::npos);
  CHECK(snapshot.find("dataset = ring8") != std::string::npos);
}

TEST_CASE("identical seeds reproduce identical csv artifacts") {
  const fs::path dir1 = fresh_dir("repeat1");
  const fs::path dir2 = fresh_dir("repeat2");
  const std::string flags = "train " + tiny_train_flags() + " --seed 21 --out ";
  CHECK(run_cli(flags + dir1.string()).exit_code == 0);
  CHECK(run_cli(flags + dir2.string()).exit_code == 0);
  for (const char* name :
       {"losses.csv", "metrics.csv", "samples.csv", "checkpoint.manifest",
        "checkpoint.blob"}) {
    CHECK_MESSAGE(slurp(dir1 / name) == slurp(dir2 / name), name);
  }
}

TEST_CASE("eval scores a saved checkpoint") {
  const fs::path dir = fresh_dir("evaltrain");
  REQUIRE(run_cli("train " + tiny_train_flags() + " --seed 5 --out " +
                  dir.string())
              .exit_code == 0);
  const CliOutput out = run_cli(
      "eval --checkpoint " + (dir / "checkpoint.manifest").string() +
      " --dataset ring8 --dataset-size 600 -n 250 --vendi-count 64 --seed 9");
  CHECK(out.exit_code == 0);
  CHECK(out.contains("fd (desk-scale)"));
  CHECK(out.contains("vendi"));
  CHECK(out.contains("modes_covered"));
  CHECK(out.contains("high_quality_fraction"));

  const CliOutput missing =
      run_cli("eval --checkpoint /nonexistent.manifest --dataset ring8 "
              "--dataset-size 600 -n 50 --seed 9");
  CHECK(missing.exit_code == 1);
  CHECK(missing.contains("error:"));
}

TEST_CASE("sample exports generated rows and optional uncertainty maps") {
  const fs::path train_dir = fresh_dir("sampletrain");
  REQUIRE(run_cli("train " + tiny_train_flags() + " --seed 6 --out " +
                  train_dir.string())
              .exit_code == 0);
  const std::string manifest = (train_dir / "checkpoint.manifest").string();

  const fs::path out1 = fresh_dir("samples1");
  const CliOutput s1 = run_cli("sample --checkpoint " + manifest +
                               " -n 100 --seed 4 --with-uncertainty --out " +
                               out1.string());
  CHECK(s1.exit_code == 0);
  CHECK(fs::exists(out1 / "samples.csv"));
  CHECK(fs::exists(out1 / "uncertainty.csv"));
  CHECK(fs::exists(out1 / "uncertainty.svg"));
  // Header plus one line per requested sample.
  std::size_t lines = 0;
  for (char c : slurp(out1 / "samples.csv"))
    if (c == '\n') ++lines;
  CHECK(lines == 101);

  // Same checkpoint, same seed: identical bytes.
  const fs::path out2 = fresh_dir("samples2");
  const CliOutput s2 = run_cli("sample --checkpoint " + manifest +
                               " -n 100 --seed 4 --with-uncertainty --out " +
                               out2.string());
  CHECK(s2.exit_code == 0);
  CHECK(slurp(out1 / "samples.csv") == slurp(out2 / "samples.csv"));
  CHECK(slurp(out1 / "uncertainty.csv") == slurp(out2 / "uncertainty.csv"));
}

TEST_CASE("uncertainty export requires a two-stage generator") {
  const fs::path train_dir = fresh_dir("plain");
  REQUIRE(run_cli("train " + tiny_train_flags() +
                  " --mode standard --seed 6 --out " + train_dir.string())
              .exit_code == 0);
  const fs::path out_dir = fresh_dir("plainsamples");
  const CliOutput out = run_cli(
      "sample --checkpoint " + (train_dir / "checkpoint.manifest").string() +
      " -n 50 --seed 4 --with-uncertainty --out " + out_dir.string());
  CHECK(out.exit_code == 1);
  CHECK(out.contains("plain generator"));
  // Plain sampling without the flag still works.
  const CliOutput ok = run_cli(
      "sample --checkpoint " + (train_dir / "checkpoint.manifest").string() +
      " -n 50 --seed 4 --out " + out_dir.string());
  CHECK(ok.exit_code == 0);
}

TEST_CASE("bench prints paired timings") {
  const CliOutput out = run_cli(
      "bench --dataset ring8 --batch-size 32 --dataset-size 320 "
      "--latent-dim 8 --hidden 16,16 --regions 4 --seed 2 --bench-epochs 1");
  CHECK(out.exit_code == 0);
  CHECK(out.contains("steps_per_epoch 10"));
  CHECK(out.contains("standard"));
  CHECK(out.contains("epistemic"));
  CHECK(out.contains("overhead"));
}

TEST_CASE("ablate sweeps a small lambda row from the command line") {
  const fs::path dir = fresh_dir("cli_ablate");
  const CliOutput out = run_cli(
      "ablate --grid lambda --dataset ring8 --steps 8 --batch-size 32 "
      "--dataset-size 600 --sample-count 100 --vendi-count 32 --latent-dim 8 "
      "--hidden 16,16 --regions 4 --seeds 1 --seed 7 --workers 1 --out " +
      dir.string());
  CHECK(out.exit_code == 0);
  CHECK(out.contains("wrote"));
  CHECK(out.contains("4 cells"));
  CHECK(fs::exists(dir / "ablation.csv"));
  const std::string csv = slurp(dir / "ablation.csv");
  CHECK(csv.find("lambda") != std::string::npos);
  CHECK(run_cli("ablate --grid bogus --out " + dir.string()).exit_code == 2);
}
