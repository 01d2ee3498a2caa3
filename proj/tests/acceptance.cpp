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

// Release gate: ten numbered checks, one PASS/FAIL line each.
// Run all with no arguments, or a single check with `--only <k>`.
// Checks 8 and 10 drive the installed binary named by $EGAN_BIN.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "egan/belief.hpp"
#include "egan/harness.hpp"
#include "egan/losses.hpp"
#include "egan/metrics.hpp"
#include "egan/networks.hpp"
#include "egan/ops.hpp"
#include "egan/rng.hpp"
#include "egan/serialize.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace egan;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned gate tolerances.
constexpr double kRoundTripTol = 1e-9;     // check 1
constexpr double kBeliefSeconds = 5.0;     // check 1
constexpr double kContinuousTol = 1e-3;    // check 2
constexpr double kGradRelTol = 1e-4;       // check 3
constexpr double kReductionTol = 1e-9;     // check 3
constexpr double kMomentTol = 1e-3;        // check 4
constexpr double kVendiOneTol = 1e-9;      // check 5
constexpr double kVendiFullTol = 1e-6;     // check 5
constexpr double kFrechetTol = 1e-8;       // check 5
constexpr double kViolationCap = 0.05;     // check 6
constexpr double kVendiSlack = 0.05;       // check 7
constexpr double kPairSeconds = 600.0;     // check 7, per dataset pair
constexpr double kOverheadCap = 1.15;      // check 9

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome ok() { return {true, ""}; }

Outcome fail(const std::string& detail) { return {false, detail}; }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

fs::path scratch_root() {
  static const fs::path root = [] {
    fs::path dir = fs::temp_directory_path() /
                   ("egan_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
  }();
  return root;
}

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  fs::path dir = scratch_root() / (tag + "_" + std::to_string(counter++));
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return "<unreadable:" + p.string() + ">";
  return std::string(std::istreambuf_iterator<char>(in), {});
}

struct CliOutput {
  int exit_code = -1;
  std::string text;
};

CliOutput run_cli(const std::string& args) {
  static int counter = 0;
  const char* bin = std::getenv("EGAN_BIN");
  if (!bin) return {-1, "EGAN_BIN is not set"};
  const fs::path log =
      scratch_root() / ("cli_" + std::to_string(counter++) + ".log");
  const std::string cmd =
      std::string(bin) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliOutput out;
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  out.text = slurp(log);
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

/// Header plus data rows of a CSV, comments skipped, cells kept as text.
std::vector<std::vector<std::string>> read_csv_cells(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// 1. Finite belief calculus: worked example plus Moebius round-trip.

Outcome criterion1() {
  const auto t0 = Clock::now();

  ds::Frame frame(3);  // atoms: flu = bit 0, cold = bit 1, allergy = bit 2
  constexpr std::uint32_t kFlu = 0b001, kCold = 0b010, kAllergy = 0b100;
  ds::MassFunction m(frame,
                     {{kFlu, 0.5}, {kAllergy, 0.2}, {kFlu | kCold, 0.3}});
  const ds::BeliefFunction bel = belief_from_mass(m);
  if (bel.value(kFlu | kCold) != 0.8)
    return fail("Bel({flu,cold}) = " + fmt(bel.value(kFlu | kCold)) +
                ", want exactly 0.8");

  Rng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int atoms = 2 + static_cast<int>(rng.uniform_index(9));  // 2..10
    ds::Frame f(atoms);
    const std::uint32_t full = f.full_set();
    const std::size_t focals =
        1 + rng.uniform_index(std::min<std::uint64_t>(full, 12));
    std::map<std::uint32_t, double> weights;
    double total = 0.0;
    for (std::size_t k = 0; k < focals; ++k) {
      const auto subset =
          static_cast<std::uint32_t>(1 + rng.uniform_index(full));
      const double w = 0.05 + rng.uniform();
      weights[subset] += w;
      total += w;
    }
    for (auto& [subset, w] : weights) w /= total;
    const ds::MassFunction mass(f, weights);
    const ds::MassFunction back = mass_from_belief(belief_from_mass(mass));
    for (std::uint32_t s = 1; s <= full; ++s)
      worst = std::max(worst, std::abs(mass.mass(s) - back.mass(s)));
  }
  if (worst > kRoundTripTol)
    return fail("round-trip error " + fmt(worst) + " > " + fmt(kRoundTripTol));

  const double elapsed = seconds_since(t0);
  if (elapsed >= kBeliefSeconds)
    return fail("took " + fmt(elapsed) + " s, budget " + fmt(kBeliefSeconds));
  return ok();
}

// ---------------------------------------------------------------------------
// 2. Continuous belief over Borel intervals, uniform triangle density.

Outcome criterion2() {
  const auto density = ds::ContinuousMassDensity::uniform(256);
  const double whole = continuous_belief(density, ds::BorelInterval(0.0, 1.0));
  const double half = continuous_belief(density, ds::BorelInterval(0.0, 0.5));
  if (std::abs(whole - 1.0) > kContinuousTol)
    return fail("Bel([0,1]) = " + fmt(whole));
  if (std::abs(half - 0.25) > kContinuousTol)
    return fail("Bel([0,0.5]) = " + fmt(half) + ", want 0.25");
  return ok();
}

// ---------------------------------------------------------------------------
// 3. Loss gradients against central finite differences, plus the
//    zero-weights reduction to twice the standard losses.

ad::Tensor logit_leaf(const std::vector<double>& values) {
  return ad::Tensor::from_values({values.size(), 1}, values, true);
}

Outcome criterion3() {
  // Belief sums straddle the hinge boundary but stay 0.05 away from the
  // kink so finite differences never cross it.
  const std::vector<double> rl_r = {1.2, -0.4, 0.6, 1.5};
  const std::vector<double> rl_f = {0.8, 0.1, -1.0, 0.9};
  const std::vector<double> fl_r = {-0.7, 0.5, 0.2, -1.3};
  const std::vector<double> fl_f = {0.4, 1.1, -0.6, 0.7};

  const std::vector<losses::LossWeights> d_sets = {
      {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.7, 0.0, 0.0}};
  for (const auto& w : d_sets) {
    ad::Tensor a = logit_leaf(rl_r), b = logit_leaf(rl_f),
               c = logit_leaf(fl_r), d = logit_leaf(fl_f);
    const auto r = oracle::check_gradients({a, b, c, d}, [&] {
      nets::BeliefPair real{ad::sigmoid(a), ad::sigmoid(b)};
      nets::BeliefPair fake{ad::sigmoid(c), ad::sigmoid(d)};
      return losses::discriminator_loss(real, fake, w).total_tensor;
    });
    if (r.max_rel_err > kGradRelTol)
      return fail("discriminator FD error " + fmt(r.max_rel_err) +
                  " at lambda=" + fmt(w.lambda));
  }

  // Generator side: logits plus raw concentrations (2 rows x 3 regions).
  Rng rng(1003);
  std::vector<double> raw(2 * 9);
  for (double& v : raw) v = rng.uniform(-1.0, 1.0);
  const std::vector<double> gl_r = {0.9, -0.6}, gl_f = {-0.3, 0.8};
  const std::vector<losses::LossWeights> g_sets = {{0.0, 0.0, 0.0},
                                                   {0.0, 1.0, 0.0},
                                                   {0.0, 0.0, 1.0},
                                                   {0.0, 0.8, 1.3}};
  for (const auto& w : g_sets) {
    ad::Tensor a = logit_leaf(gl_r), b = logit_leaf(gl_f);
    ad::Tensor raw_alpha = ad::Tensor::from_values({2, 9}, raw, true);
    const auto r = oracle::check_gradients({a, b, raw_alpha}, [&] {
      nets::BeliefPair fake{ad::sigmoid(a), ad::sigmoid(b)};
      nets::DirichletField field;
      field.regions = 3;
      field.alphas = ad::add_scalar(ad::softplus(raw_alpha), 1e-3);
      return losses::generator_loss(fake, field, nets::IntervalMap{}, w)
          .total_tensor;
    });
    if (r.max_rel_err > kGradRelTol)
      return fail("generator FD error " + fmt(r.max_rel_err) + " at beta=" +
                  fmt(w.beta) + ", gamma=" + fmt(w.gamma));
  }

  // Zero weights + adapted scalar pairs (p, 1-p): exactly twice standard.
  const losses::LossWeights zero{0.0, 0.0, 0.0};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> pr(5), pf(5);
    for (double& p : pr) p = rng.uniform(0.05, 0.95);
    for (double& p : pf) p = rng.uniform(0.05, 0.95);
    auto pair_of = [](const std::vector<double>& p) {
      std::vector<double> q(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) q[i] = 1.0 - p[i];
      return nets::BeliefPair{ad::Tensor::from_values({p.size(), 1}, p),
                              ad::Tensor::from_values({p.size(), 1}, q)};
    };
    const auto real = pair_of(pr), fake = pair_of(pf);
    const double d_evid =
        losses::discriminator_loss(real, fake, zero).total;
    const double d_std =
        losses::standard_discriminator_loss(real, fake).total;
    if (std::abs(d_evid - 2.0 * d_std) > kReductionTol)
      return fail("discriminator reduction off by " +
                  fmt(std::abs(d_evid - 2.0 * d_std)));
    const double g_evid =
        losses::generator_loss(fake, nets::DirichletField{},
                               nets::IntervalMap{}, zero)
            .total;
    const double g_std = losses::standard_generator_loss(fake).total;
    if (std::abs(g_evid - 2.0 * g_std) > kReductionTol)
      return fail("generator reduction off by " +
                  fmt(std::abs(g_evid - 2.0 * g_std)));
  }
  return ok();
}

// ---------------------------------------------------------------------------
// 4. Dirichlet moments against Monte Carlo; interval invariants.

Outcome criterion4() {
  const std::vector<std::array<double, 3>> settings = {
      {1.0, 1.0, 1.0}, {2.0, 3.0, 5.0}, {10.0, 1.0, 1.0}};
  Rng rng(1004);
  constexpr std::size_t kDraws = 1000000;
  for (const auto& alpha : settings) {
    double sum[3] = {0, 0, 0}, sq[3] = {0, 0, 0};
    for (std::size_t i = 0; i < kDraws; ++i) {
      const auto x = rng.dirichlet3(alpha[0], alpha[1], alpha[2]);
      for (int k = 0; k < 3; ++k) {
        sum[k] += x[k];
        sq[k] += x[k] * x[k];
      }
    }
    const auto want_means = oracle::dirichlet_mean(alpha[0], alpha[1],
                                                   alpha[2]);
    const auto want_vars = oracle::dirichlet_variance(alpha[0], alpha[1],
                                                      alpha[2]);
    for (int k = 0; k < 3; ++k) {
      const double mc_mean = sum[k] / kDraws;
      const double mc_var = sq[k] / kDraws - mc_mean * mc_mean;
      const double want_mean = want_means[static_cast<std::size_t>(k)];
      const double want_var = want_vars[static_cast<std::size_t>(k)];
      if (std::abs(mc_mean - want_mean) > kMomentTol)
        return fail("mean[" + std::to_string(k) + "] off by " +
                    fmt(std::abs(mc_mean - want_mean)));
      if (std::abs(mc_var - want_var) > kMomentTol)
        return fail("var[" + std::to_string(k) + "] off by " +
                    fmt(std::abs(mc_var - want_var)));
    }
  }

  // Interval invariants on generator draws: lo <= hi, width == m3 bitwise.
  nets::NetConfig cfg;
  cfg.data_dim = 2;
  cfg.latent_dim = 8;
  cfg.hidden = {16, 16};
  cfg.regions = 5;
  cfg.mode = nets::Mode::epistemic;
  Rng init(1005);
  const nets::Generator gen(cfg, init);
  for (int batch = 0; batch < 4; ++batch) {
    const ad::Tensor z = nets::sample_latent(16, cfg.latent_dim, init);
    const nets::GenOutput out = gen.generate(z, init);
    const auto lo = out.intervals.lo.values();
    const auto hi = out.intervals.hi.values();
    const auto width = out.intervals.width.values();
    for (std::size_t b = 0; b < 16; ++b)
      for (std::size_t r = 0; r < cfg.regions; ++r) {
        const std::size_t i = b * cfg.regions + r;
        const auto m = out.masses.triple(b, r);
        if (lo[i] > hi[i])
          return fail("interval lo > hi at (" + std::to_string(b) + "," +
                      std::to_string(r) + ")");
        if (width[i] != m[2])
          return fail("width != m3 at (" + std::to_string(b) + "," +
                      std::to_string(r) + ")");
      }
  }
  return ok();
}

// ---------------------------------------------------------------------------
// 5. Metric identities.

Outcome criterion5() {
  metrics::SampleSet dup;
  dup.n = 6;
  dup.dim = 2;
  for (std::size_t i = 0; i < 6; ++i) {
    dup.points.push_back(0.4);
    dup.points.push_back(-1.1);
  }
  const double v_dup = metrics::vendi_score(dup);
  if (std::abs(v_dup - 1.0) > kVendiOneTol)
    return fail("vendi(duplicates) = " + fmt(v_dup));

  metrics::SampleSet spread;
  spread.n = 7;
  spread.dim = 1;
  for (std::size_t i = 0; i < 7; ++i)
    spread.points.push_back(1000.0 * static_cast<double>(i));
  const double v_id = metrics::vendi_score(spread, 1.0);
  if (std::abs(v_id - 7.0) > kVendiFullTol)
    return fail("vendi(identity kernel) = " + fmt(v_id));

  Rng rng(1006);
  auto random_spd = [&rng](int dim) {
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
    return Eigen::MatrixXd(a * a.transpose() +
                           0.3 * Eigen::MatrixXd::Identity(dim, dim));
  };

  metrics::GaussianStats s1;
  s1.mean = Eigen::VectorXd::Zero(4);
  s1.cov = random_spd(4);
  const double self = metrics::frechet_distance(s1, s1);
  if (std::abs(self) > kFrechetTol)
    return fail("fd(identical stats) = " + fmt(self));

  metrics::GaussianStats s2 = s1;
  s2.mean = Eigen::VectorXd(4);
  s2.mean << 0.5, -0.25, 1.0, 0.125;
  const double want = s2.mean.squaredNorm();
  const double got = metrics::frechet_distance(s1, s2);
  if (std::abs(got - want) > kFrechetTol)
    return fail("fd(equal covs) = " + fmt(got) + ", want " + fmt(want));

  for (int trial = 0; trial < 5; ++trial) {
    metrics::GaussianStats a, b;
    a.mean = Eigen::VectorXd(4);
    b.mean = Eigen::VectorXd(4);
    for (int i = 0; i < 4; ++i) {
      a.mean(i) = rng.uniform(-1.0, 1.0);
      b.mean(i) = rng.uniform(-1.0, 1.0);
    }
    a.cov = random_spd(4);
    b.cov = random_spd(4);
    const double ab = metrics::frechet_distance(a, b);
    const double ba = metrics::frechet_distance(b, a);
    if (std::abs(ab - ba) > kFrechetTol)
      return fail("fd asymmetry " + fmt(std::abs(ab - ba)));
  }
  return ok();
}

// ---------------------------------------------------------------------------
// 6. Hinge efficacy: trained lambda=1 discriminators respect sub-additivity,
//    lambda=0 ones violate it more (median over 5 seeds).

double trained_violation(std::uint64_t seed, double lambda) {
  harness::TrainConfig cfg;
  cfg.dataset = "ring8";
  cfg.mode = nets::Mode::epistemic;
  cfg.weights.lambda = lambda;
  cfg.steps = 1200;
  cfg.batch_size = 64;
  cfg.dataset_size = 4096;
  cfg.eval_every = 0;
  cfg.sample_count = 64;
  cfg.vendi_count = 64;
  cfg.seed = seed;
  cfg.out_dir = fresh_dir("violation");
  const harness::RunResult run = harness::train(cfg);

  const io::Checkpoint ckpt = io::Checkpoint::load(run.checkpoint_manifest);
  const auto [disc, dcfg] = harness::load_discriminator(ckpt);
  const auto [gen, gcfg] = harness::load_generator(ckpt);

  // 1024-sample evaluation batch: 512 held-out reals, 512 fresh fakes.
  const data::Dataset holdout = harness::make_dataset("ring8", 512, seed + 77);
  const ad::Tensor reals =
      ad::Tensor::from_values({512, 2}, holdout.points);
  Rng eval_rng(seed + 99);
  const ad::Tensor z = nets::sample_latent(512, gcfg.latent_dim, eval_rng);
  const ad::Tensor fakes = gen.generate(z, eval_rng).sample;

  const double v_real = nets::mean_violation(disc.discriminate(reals));
  const double v_fake = nets::mean_violation(disc.discriminate(fakes));
  fs::remove_all(run.run_dir);
  return 0.5 * (v_real + v_fake);
}

Outcome criterion6() {
  std::vector<double> with_hinge, without_hinge;
  for (std::uint64_t seed : {31, 32, 33, 34, 35}) {
    with_hinge.push_back(trained_violation(seed, 1.0));
    without_hinge.push_back(trained_violation(seed, 0.0));
  }
  const double hinge_med = median(with_hinge);
  const double free_med = median(without_hinge);
  if (hinge_med >= kViolationCap)
    return fail("median violation with hinge = " + fmt(hinge_med) +
                ", cap " + fmt(kViolationCap));
  if (free_med <= hinge_med)
    return fail("median violation without hinge (" + fmt(free_med) +
                ") not larger than with (" + fmt(hinge_med) + ")");
  return ok();
}

// ---------------------------------------------------------------------------
// 7. Diversity at matched budgets: epistemic covers at least as many modes
//    as standard and loses at most 0.05 median Vendi, per dataset.

Outcome criterion7() {
  for (const std::string dataset : {"ring8", "grid25"}) {
    const auto t0 = Clock::now();
    std::vector<double> epi_modes, std_modes, epi_vendi, std_vendi;
    for (std::uint64_t seed : {41, 42, 43, 44, 45}) {
      for (const nets::Mode mode :
           {nets::Mode::epistemic, nets::Mode::standard}) {
        harness::TrainConfig cfg;
        cfg.dataset = dataset;
        cfg.mode = mode;
        cfg.steps = 30000;
        cfg.batch_size = 64;
        cfg.adam.lr = 1e-4;
        cfg.dataset_size = 8192;
        cfg.eval_every = 0;
        cfg.sample_count = 4000;
        cfg.vendi_count = 512;
        cfg.seed = seed;
        const harness::RunResult r = harness::train(cfg);
        auto& modes = mode == nets::Mode::epistemic ? epi_modes : std_modes;
        auto& vendi = mode == nets::Mode::epistemic ? epi_vendi : std_vendi;
        modes.push_back(static_cast<double>(r.report.modes_covered));
        vendi.push_back(r.report.vendi);
      }
    }
    const double elapsed = seconds_since(t0);
    if (median(epi_modes) < median(std_modes))
      return fail(dataset + ": median modes epistemic " +
                  fmt(median(epi_modes)) + " < standard " +
                  fmt(median(std_modes)));
    if (median(epi_vendi) < median(std_vendi) - kVendiSlack)
      return fail(dataset + ": median vendi epistemic " +
                  fmt(median(epi_vendi)) + " < standard " +
                  fmt(median(std_vendi)) + " - " + fmt(kVendiSlack));
    if (elapsed >= kPairSeconds)
      return fail(dataset + ": pair took " + fmt(elapsed) + " s, budget " +
                  fmt(kPairSeconds));
  }
  return ok();
}

// ---------------------------------------------------------------------------
// 8. Ablation grids have the documented shape and labels.

const std::string kTinySweepFlags =
    "--dataset ring8 --steps 10 --batch-size 32 --dataset-size 600 "
    "--sample-count 250 --vendi-count 64 --latent-dim 8 --hidden 16,16 "
    "--regions 4 --seeds 1 --seed 5 --workers 1";

Outcome check_grid(const std::string& grid,
                   const std::vector<std::string>& want_header,
                   const std::vector<std::string>& want_row_labels) {
  const fs::path dir = fresh_dir("grid_" + grid);
  const CliOutput out =
      run_cli("ablate --grid " + grid + " " + kTinySweepFlags + " --out " +
              dir.string());
  if (out.exit_code != 0)
    return fail(grid + ": exit " + std::to_string(out.exit_code));
  const auto rows = read_csv_cells(dir / "ablation.csv");
  if (rows.empty()) return fail(grid + ": empty ablation.csv");
  if (rows[0] != want_header) {
    std::string got;
    for (const auto& c : rows[0]) got += c + "|";
    return fail(grid + ": header " + got);
  }
  if (rows.size() != 1 + want_row_labels.size())
    return fail(grid + ": " + std::to_string(rows.size() - 1) + " rows, want " +
                std::to_string(want_row_labels.size()));
  for (std::size_t r = 0; r < want_row_labels.size(); ++r) {
    if (rows[1 + r].empty() || rows[1 + r][0] != want_row_labels[r])
      return fail(grid + ": row " + std::to_string(r) + " labeled '" +
                  rows[1 + r][0] + "'");
    if (rows[1 + r].size() != want_header.size())
      return fail(grid + ": row " + std::to_string(r) + " has " +
                  std::to_string(rows[1 + r].size()) + " cells");
  }
  fs::remove_all(dir);
  return ok();
}

Outcome criterion8() {
  Outcome o = check_grid("beta-gamma", {"gamma\\beta", "0", "0.5", "1", "2"},
                         {"0", "0.5", "1", "2"});
  if (!o.pass) return o;
  o = check_grid("lambda", {"lambda", "0", "0.5", "1", "2"}, {"score"});
  if (!o.pass) return o;
  // The architecture sweep ends with the full model (both components on).
  return check_grid("arch", {"configuration", "fd_vendi"},
                    {"standard", "evid_d_only", "evid_g_only", "epistemic"});
}

// ---------------------------------------------------------------------------
// 9. Epistemic training overhead stays within 1.15x standard.

Outcome criterion9() {
  harness::TrainConfig cfg;
  cfg.dataset = "ring8";
  cfg.batch_size = 128;
  cfg.dataset_size = 4096;
  cfg.hidden = {256, 256};
  cfg.latent_dim = 32;
  cfg.regions = 16;
  cfg.seed = 1;
  const harness::BenchResult r = harness::bench(cfg, 3);
  if (r.overhead_ratio > kOverheadCap)
    return fail("overhead " + fmt(r.overhead_ratio) + "x (standard " +
                fmt(r.standard_seconds_per_epoch) + " s, epistemic " +
                fmt(r.epistemic_seconds_per_epoch) + " s)");
  return ok();
}

// ---------------------------------------------------------------------------
// 10. Byte-identical CSV artifacts on seeded reruns.

const std::string kTinyTrainFlags =
    "--dataset ring8 --steps 12 --batch-size 32 --dataset-size 600 "
    "--sample-count 250 --vendi-count 64 --latent-dim 8 --hidden 16,16 "
    "--regions 4 --seed 77";

Outcome criterion10() {
  const fs::path t1 = fresh_dir("det_train1");
  const fs::path t2 = fresh_dir("det_train2");
  for (const fs::path& dir : {t1, t2}) {
    const CliOutput out =
        run_cli("train " + kTinyTrainFlags + " --out " + dir.string());
    if (out.exit_code != 0)
      return fail("train exit " + std::to_string(out.exit_code) + ": " +
                  out.text.substr(0, 120));
  }
  for (const char* name :
       {"losses.csv", "metrics.csv", "samples.csv", "uncertainty.csv",
        "checkpoint.manifest", "checkpoint.blob"}) {
    if (slurp(t1 / name) != slurp(t2 / name))
      return fail(std::string("train rerun differs in ") + name);
  }

  const std::string manifest = (t1 / "checkpoint.manifest").string();
  const fs::path s1 = fresh_dir("det_sample1");
  const fs::path s2 = fresh_dir("det_sample2");
  for (const fs::path& dir : {s1, s2}) {
    const CliOutput out = run_cli("sample --checkpoint " + manifest +
                                  " -n 200 --seed 8 --with-uncertainty "
                                  "--out " +
                                  dir.string());
    if (out.exit_code != 0)
      return fail("sample exit " + std::to_string(out.exit_code));
  }
  for (const char* name : {"samples.csv", "uncertainty.csv"}) {
    if (slurp(s1 / name) != slurp(s2 / name))
      return fail(std::string("sample rerun differs in ") + name);
  }

  const fs::path a1 = fresh_dir("det_ablate1");
  const fs::path a2 = fresh_dir("det_ablate2");
  for (const fs::path& dir : {a1, a2}) {
    const CliOutput out = run_cli("ablate --grid lambda " + kTinySweepFlags +
                                  " --out " + dir.string());
    if (out.exit_code != 0)
      return fail("ablate exit " + std::to_string(out.exit_code));
  }
  if (slurp(a1 / "ablation.csv") != slurp(a2 / "ablation.csv"))
    return fail("ablate rerun differs in ablation.csv");

  for (const fs::path& dir : {t1, t2, s1, s2, a1, a2}) fs::remove_all(dir);
  return ok();
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--help") {
      std::cout << "usage: acceptance [--only <1..10>]\n";
      return 0;
    } else {
      std::cerr << "unknown argument '" << arg << "'\n";
      return 2;
    }
  }
  if (only < 0 || only > 10) {
    std::cerr << "--only wants a criterion in 1..10\n";
    return 2;
  }

  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};

  int failures = 0;
  for (int k = 1; k <= 10; ++k) {
    if (only != 0 && k != only) continue;
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    if (o.pass) {
      std::cout << "criterion " << k << ": PASS\n";
    } else {
      std::cout << "criterion " << k << ": FAIL (" << o.detail << ")\n";
      ++failures;
    }
    std::cout.flush();
  }
  fs::remove_all(scratch_root());
  return failures == 0 ? 0 : 1;
}
