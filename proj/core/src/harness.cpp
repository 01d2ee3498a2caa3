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

#include "egan/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "egan/csv.hpp"
#include "egan/ops.hpp"
#include "egan/svg.hpp"

namespace egan::harness {

namespace {

namespace fs = std::filesystem;

// Child-stream ids off the master seed; fixed so reruns are bit-identical.
constexpr std::uint64_t kDataStream = 1;
constexpr std::uint64_t kBatchStream = 2;
constexpr std::uint64_t kInitStream = 3;
constexpr std::uint64_t kGenStream = 4;
constexpr std::uint64_t kEvalStream = 5;
constexpr std::uint64_t kExportStream = 6;

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

struct TrainState {
  nets::NetConfig net_cfg;
  nets::Discriminator disc;
  nets::Generator gen;
  ad::Adam d_opt;
  ad::Adam g_opt;
  Rng gen_rng;

  TrainState(const TrainConfig& cfg, std::size_t data_dim, Rng init_rng,
             Rng sampling_rng)
      : net_cfg{data_dim, cfg.latent_dim, cfg.hidden, cfg.regions, cfg.mode},
        disc(net_cfg, init_rng),
        gen(net_cfg, init_rng),
        d_opt(disc.params(), cfg.adam),
        g_opt(gen.params(), cfg.adam),
        gen_rng(sampling_rng) {}
};

std::pair<losses::LossReport, losses::LossReport> train_step(
    TrainState& st, const ad::Tensor& real, const losses::LossWeights& w) {
  const std::size_t batch = real.rows();

  // Discriminator step. The fake batch is generated outside any graph, so
  // it enters the discriminator as a constant.
  losses::LossReport d_report;
  {
    ad::Tensor z = nets::sample_latent(batch, st.net_cfg.latent_dim,
                                       st.gen_rng);
    nets::GenOutput fake = st.gen.generate(z, st.gen_rng);
    ad::Graph graph;
    ad::GraphScope scope(graph);
    st.d_opt.zero_grad();  // clears spill-over from the previous G step
    nets::BeliefPair real_pair = st.disc.discriminate(real);
    nets::BeliefPair fake_pair = st.disc.discriminate(fake.sample);
    d_report = st.disc.belief_head()
                   ? losses::discriminator_loss(real_pair, fake_pair, w)
                   : losses::standard_discriminator_loss(real_pair, fake_pair);
    graph.backward(d_report.total_tensor);
    st.d_opt.step();
  }

  // Generator step.
  losses::LossReport g_report;
  {
    ad::Graph graph;
    ad::GraphScope scope(graph);
    st.g_opt.zero_grad();
    ad::Tensor z = nets::sample_latent(batch, st.net_cfg.latent_dim,
                                       st.gen_rng);
    nets::GenOutput out = st.gen.generate(z, st.gen_rng);
    nets::BeliefPair fake_pair = st.disc.discriminate(out.sample);
    g_report = st.net_cfg.mode == nets::Mode::standard
                   ? losses::standard_generator_loss(fake_pair)
                   : losses::generator_loss(fake_pair, out.field,
                                            out.intervals, w);
    graph.backward(g_report.total_tensor);
    st.g_opt.step();
  }
  return {d_report, g_report};
}

metrics::SampleSet draw_fakes(const nets::Generator& gen,
                              std::size_t latent_dim, std::size_t data_dim,
                              std::size_t n, Rng& rng) {
  metrics::SampleSet s;
  s.n = n;
  s.dim = data_dim;
  s.points.resize(n * data_dim);
  constexpr std::size_t kChunk = 256;
  for (std::size_t done = 0; done < n; done += kChunk) {
    const std::size_t take = std::min(kChunk, n - done);
    ad::Tensor z = nets::sample_latent(take, latent_dim, rng);
    nets::GenOutput out = gen.generate(z, rng);
    const auto vals = out.sample.values();
    std::copy(vals.begin(), vals.end(), s.points.begin() + done * data_dim);
  }
  return s;
}

metrics::SampleSet real_subset(const data::Dataset& ds, std::size_t n,
                               Rng& rng) {
  n = std::min(n, ds.n);
  std::vector<std::size_t> idx(ds.n);
  for (std::size_t i = 0; i < ds.n; ++i) idx[i] = i;
  rng.shuffle(idx.begin(), idx.end());
  metrics::SampleSet s;
  s.n = n;
  s.dim = ds.dim;
  s.points.resize(n * ds.dim);
  for (std::size_t i = 0; i < n; ++i)
    std::copy(ds.row(idx[i]), ds.row(idx[i]) + ds.dim,
              s.points.begin() + i * ds.dim);
  return s;
}

metrics::SampleSet head(const metrics::SampleSet& s, std::size_t n) {
  metrics::SampleSet h;
  h.n = std::min(n, s.n);
  h.dim = s.dim;
  h.points.assign(s.points.begin(), s.points.begin() + h.n * h.dim);
  return h;
}

EvalResult score_samples(const data::Dataset& ds,
                         const metrics::SampleSet& fake,
                         std::size_t vendi_count, Rng& rng) {
  EvalResult r;
  const metrics::SampleSet real = real_subset(ds, fake.n, rng);
  const metrics::Embedding embed = metrics::default_embedding(ds.dim);
  r.report.fd = metrics::frechet_distance(metrics::fit_gaussian(real, embed),
                                          metrics::fit_gaussian(fake, embed));
  r.report.projection_seed = embed.seed;
  r.report.vendi = metrics::vendi_score(head(fake, vendi_count), std::nullopt,
                                        &r.report.kernel_bandwidth);
  r.reference_vendi = metrics::vendi_score(head(real, vendi_count));
  if (ds.normalized_mixture) {
    const auto cov = metrics::mode_coverage(fake, *ds.normalized_mixture);
    r.report.modes_covered = cov.modes_covered;
    r.report.high_quality_fraction = cov.high_quality_fraction;
  }
  return r;
}

void write_samples_csv(const fs::path& path, const metrics::SampleSet& s) {
  std::vector<std::string> header(s.dim);
  for (std::size_t d = 0; d < s.dim; ++d) header[d] = "x" + std::to_string(d);
  io::CsvWriter csv(path, header);
  std::vector<double> row(s.dim);
  for (std::size_t i = 0; i < s.n; ++i) {
    std::copy(s.row(i), s.row(i) + s.dim, row.begin());
    csv.row(row);
  }
  csv.flush();
}

void write_uncertainty_csv(const fs::path& path, const nets::IntervalMap& iv) {
  io::CsvWriter csv(path, {"region", "lo", "hi", "width"});
  const std::size_t batch = iv.lo.rows();
  const auto lo = iv.lo.values();
  const auto hi = iv.hi.values();
  const auto wd = iv.width.values();
  for (std::size_t r = 0; r < iv.regions; ++r) {
    double mlo = 0.0, mhi = 0.0, mw = 0.0;
    for (std::size_t b = 0; b < batch; ++b) {
      mlo += lo[b * iv.regions + r];
      mhi += hi[b * iv.regions + r];
      mw += wd[b * iv.regions + r];
    }
    const double inv = 1.0 / static_cast<double>(batch);
    csv.row({static_cast<double>(r), mlo * inv, mhi * inv, mw * inv});
  }
  csv.flush();
}

void write_plots(const fs::path& plots_dir, const data::Dataset& ds,
                 const metrics::SampleSet& fake,
                 const nets::GenOutput& export_out) {
  if (ds.dim == 2) {
    const std::size_t n_real = std::min<std::size_t>(2000, ds.n);
    const std::size_t n_fake = std::min<std::size_t>(2000, fake.n);
    std::vector<double> real_xy(ds.points.begin(),
                                ds.points.begin() + 2 * n_real);
    std::vector<double> fake_xy(fake.points.begin(),
                                fake.points.begin() + 2 * n_fake);
    plot::write_scatter_svg(plots_dir / "scatter.svg", real_xy, fake_xy,
                            "generated (blue) vs real (gray): " + ds.name);
  } else {
    const auto side = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(ds.dim))));
    if (side * side == ds.dim) {
      const std::size_t count = std::min<std::size_t>(16, fake.n);
      std::vector<double> imgs(fake.points.begin(),
                               fake.points.begin() + count * ds.dim);
      plot::write_image_grid_svg(plots_dir / "samples_grid.svg", imgs, side,
                                 count, 4, "generated samples: " + ds.name);
    }
  }
  if (export_out.intervals.width.defined()) {
    const std::size_t regions = export_out.intervals.regions;
    const std::size_t rows =
        std::min<std::size_t>(32, export_out.intervals.width.rows());
    const auto wv = export_out.intervals.width.values();
    std::vector<double> widths(wv.begin(), wv.begin() + rows * regions);
    plot::write_width_strip_svg(plots_dir / "uncertainty.svg", widths, regions,
                                "per-region interval widths (dark = wide)");
  }
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

void save_checkpoint(const fs::path& stem, const TrainConfig& cfg,
                     std::size_t data_dim, std::size_t steps,
                     const TrainState& st) {
  io::Checkpoint ckpt;
  ckpt.set_meta("mode", nets::mode_name(cfg.mode));
  ckpt.set_meta("dataset", cfg.dataset);
  ckpt.set_meta("data_dim", std::to_string(data_dim));
  ckpt.set_meta("latent_dim", std::to_string(cfg.latent_dim));
  ckpt.set_meta("regions", std::to_string(cfg.regions));
  ckpt.set_meta("hidden", join_sizes(cfg.hidden));
  ckpt.set_meta("seed", std::to_string(cfg.seed));
  ckpt.set_meta("steps", std::to_string(steps));
  ckpt.set_meta("lambda", io::format_double(cfg.weights.lambda));
  ckpt.set_meta("beta", io::format_double(cfg.weights.beta));
  ckpt.set_meta("gamma", io::format_double(cfg.weights.gamma));
  for (const auto& [name, t] : st.disc.named_params()) ckpt.add_tensor(name, t);
  for (const auto& [name, t] : st.gen.named_params()) ckpt.add_tensor(name, t);
  ckpt.save(stem);
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size == 0) throw std::invalid_argument("batch_size must be > 0");
  if (epochs == 0 && steps == 0)
    throw std::invalid_argument("need epochs > 0 or steps > 0");
  if (sample_count < 2)
    throw std::invalid_argument("sample_count must be >= 2");
  if (vendi_count < 2) throw std::invalid_argument("vendi_count must be >= 2");
  if (dataset_size < batch_size)
    throw std::invalid_argument("dataset_size must cover one batch");
  if (latent_dim == 0) throw std::invalid_argument("latent_dim must be > 0");
  if (regions == 0) throw std::invalid_argument("regions must be > 0");
  if (hidden.empty()) throw std::invalid_argument("hidden must be nonempty");
  if (weights.lambda < 0 || weights.beta < 0 || weights.gamma < 0)
    throw std::invalid_argument("loss weights must be nonnegative");
}

io::KeyValueConfig TrainConfig::to_kv() const {
  io::KeyValueConfig kv;
  kv.set("dataset", dataset);
  kv.set("mode", nets::mode_name(mode));
  kv.set_double("lambda", weights.lambda);
  kv.set_double("beta", weights.beta);
  kv.set_double("gamma", weights.gamma);
  kv.set_u64("epochs", epochs);
  kv.set_u64("steps", steps);
  kv.set_u64("batch_size", batch_size);
  kv.set_double("lr", adam.lr);
  kv.set_double("adam_beta1", adam.beta1);
  kv.set_double("adam_beta2", adam.beta2);
  kv.set_u64("seed", seed);
  kv.set_u64("eval_every", eval_every);
  kv.set_u64("sample_count", sample_count);
  kv.set_u64("vendi_count", vendi_count);
  kv.set_u64("dataset_size", dataset_size);
  kv.set_u64("latent_dim", latent_dim);
  kv.set("hidden", join_sizes(hidden));
  kv.set_u64("regions", regions);
  if (!out_dir.empty()) kv.set("out_dir", out_dir.string());
  return kv;
}

TrainConfig TrainConfig::from_kv(const io::KeyValueConfig& kv) {
  TrainConfig cfg;
  cfg.dataset = kv.get_or("dataset", cfg.dataset);
  cfg.mode = nets::parse_mode(kv.get_or("mode", nets::mode_name(cfg.mode)));
  cfg.weights.lambda = kv.get_double("lambda", cfg.weights.lambda);
  cfg.weights.beta = kv.get_double("beta", cfg.weights.beta);
  cfg.weights.gamma = kv.get_double("gamma", cfg.weights.gamma);
  cfg.epochs = kv.get_u64("epochs", cfg.epochs);
  cfg.steps = kv.get_u64("steps", cfg.steps);
  cfg.batch_size = kv.get_u64("batch_size", cfg.batch_size);
  cfg.adam.lr = kv.get_double("lr", cfg.adam.lr);
  cfg.adam.beta1 = kv.get_double("adam_beta1", cfg.adam.beta1);
  cfg.adam.beta2 = kv.get_double("adam_beta2", cfg.adam.beta2);
  cfg.seed = kv.get_u64("seed", cfg.seed);
  cfg.eval_every = kv.get_u64("eval_every", cfg.eval_every);
  cfg.sample_count = kv.get_u64("sample_count", cfg.sample_count);
  cfg.vendi_count = kv.get_u64("vendi_count", cfg.vendi_count);
  cfg.dataset_size = kv.get_u64("dataset_size", cfg.dataset_size);
  cfg.latent_dim = kv.get_u64("latent_dim", cfg.latent_dim);
  cfg.hidden = kv.get_size_list("hidden", cfg.hidden);
  cfg.regions = kv.get_u64("regions", cfg.regions);
  if (kv.has("out_dir")) cfg.out_dir = kv.get("out_dir");
  return cfg;
}

data::Dataset make_dataset(const std::string& name, std::size_t n,
                           std::uint64_t seed) {
  if (name.size() > 4 && name.substr(name.size() - 4) == ".csv")
    return data::load_csv(name);
  return data::make_named_dataset(name, n, seed);
}

RunResult train(const TrainConfig& config) {
  config.validate();
  Rng master(config.seed);
  const data::Dataset ds = make_dataset(config.dataset, config.dataset_size,
                                        master.fork_seed(kDataStream));
  data::BatchStream batches(ds, config.batch_size, master.fork(kBatchStream));
  TrainState st(config, ds.dim, master.fork(kInitStream),
                master.fork(kGenStream));
  Rng eval_rng = master.fork(kEvalStream);

  std::size_t total_steps = config.steps;
  if (total_steps == 0)
    total_steps = ds.normalized_mixture
                      ? 20000
                      : config.epochs * batches.batches_per_epoch();
  if (total_steps == 0)
    throw std::invalid_argument("derived step budget is zero");

  const bool emit = !config.out_dir.empty();
  std::optional<io::CsvWriter> loss_csv;
  std::optional<io::CsvWriter> metrics_csv;
  if (emit) {
    fs::create_directories(config.out_dir / "plots");
    config.to_kv().write(config.out_dir / "config.txt");
    loss_csv.emplace(
        config.out_dir / "losses.csv",
        std::vector<std::string>{
            "step", "d_total", "d_adversarial", "d_constraint_penalty",
            "d_variance_term", "d_width_term", "g_total", "g_adversarial",
            "g_constraint_penalty", "g_variance_term", "g_width_term"});
    metrics_csv.emplace(
        config.out_dir / "metrics.csv",
        std::vector<std::string>{"step", "fd", "vendi", "reference_vendi",
                                 "modes_covered", "high_quality_fraction",
                                 "kernel_bandwidth", "projection_seed"});
  }

  EvalResult last_eval;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t step = 1; step <= total_steps; ++step) {
    const ad::Tensor real = batches.next();
    const auto [d_report, g_report] = train_step(st, real, config.weights);
    if (!std::isfinite(d_report.total) || !std::isfinite(g_report.total))
      throw std::runtime_error(
          "training diverged at step " + std::to_string(step) +
          ": d_total=" + io::format_double(d_report.total) +
          ", g_total=" + io::format_double(g_report.total));
    if (emit)
      loss_csv->row({static_cast<double>(step), d_report.total,
                     d_report.adversarial, d_report.constraint_penalty,
                     d_report.variance_term, d_report.width_term,
                     g_report.total, g_report.adversarial,
                     g_report.constraint_penalty, g_report.variance_term,
                     g_report.width_term});

    const bool periodic =
        config.eval_every != 0 && step % config.eval_every == 0;
    if (periodic || step == total_steps) {
      const metrics::SampleSet fake =
          draw_fakes(st.gen, config.latent_dim, ds.dim, config.sample_count,
                     eval_rng);
      last_eval = score_samples(ds, fake, config.vendi_count, eval_rng);
      if (emit)
        metrics_csv->row(
            {static_cast<double>(step), last_eval.report.fd,
             last_eval.report.vendi, last_eval.reference_vendi,
             static_cast<double>(last_eval.report.modes_covered),
             last_eval.report.high_quality_fraction,
             last_eval.report.kernel_bandwidth,
             static_cast<double>(last_eval.report.projection_seed)});
    }
  }
  const double total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const double seconds_per_epoch =
      total_seconds * static_cast<double>(batches.batches_per_epoch()) /
      static_cast<double>(total_steps);

  RunResult result;
  result.report = last_eval.report;
  result.reference_vendi = last_eval.reference_vendi;
  result.seconds_per_epoch = seconds_per_epoch;
  result.seed = config.seed;
  result.steps_run = total_steps;

  if (emit) {
    loss_csv->flush();
    metrics_csv->flush();
    Rng export_rng = master.fork(kExportStream);
    const metrics::SampleSet fake = draw_fakes(
        st.gen, config.latent_dim, ds.dim, config.sample_count, export_rng);
    write_samples_csv(config.out_dir / "samples.csv", fake);

    nets::GenOutput export_out;
    if (st.gen.dirichlet_stage()) {
      ad::Tensor z = nets::sample_latent(std::min<std::size_t>(256, fake.n),
                                         config.latent_dim, export_rng);
      export_out = st.gen.generate(z, export_rng);
      write_uncertainty_csv(config.out_dir / "uncertainty.csv",
                            export_out.intervals);
    }
    write_plots(config.out_dir / "plots", ds, fake, export_out);
    save_checkpoint(config.out_dir / "checkpoint", config, ds.dim, total_steps,
                    st);

    std::ofstream timing(config.out_dir / "timing.txt");
    timing << "total_seconds " << io::format_double(total_seconds) << "\n"
           << "steps " << total_steps << "\n"
           << "steps_per_epoch " << batches.batches_per_epoch() << "\n"
           << "seconds_per_epoch " << io::format_double(seconds_per_epoch)
           << "\n";

    result.run_dir = config.out_dir;
    result.losses_csv = config.out_dir / "losses.csv";
    result.checkpoint_manifest = config.out_dir / "checkpoint.manifest";
  }
  return result;
}

namespace {

nets::NetConfig net_config_from_meta(const io::Checkpoint& ckpt) {
  nets::NetConfig cfg;
  cfg.mode = nets::parse_mode(ckpt.meta("mode"));
  cfg.data_dim = std::stoull(ckpt.meta("data_dim"));
  cfg.latent_dim = std::stoull(ckpt.meta("latent_dim"));
  cfg.regions = std::stoull(ckpt.meta("regions"));
  cfg.hidden.clear();
  std::stringstream ss(ckpt.meta("hidden"));
  std::string cell;
  while (std::getline(ss, cell, ',')) cfg.hidden.push_back(std::stoull(cell));
  return cfg;
}

}  // namespace

std::pair<nets::Generator, nets::NetConfig> load_generator(
    const io::Checkpoint& ckpt) {
  nets::NetConfig cfg = net_config_from_meta(ckpt);
  Rng init(0);
  nets::Generator gen(cfg, init);
  for (auto& [name, t] : gen.named_params()) ckpt.load_into(name, t);
  return {std::move(gen), cfg};
}

std::pair<nets::Discriminator, nets::NetConfig> load_discriminator(
    const io::Checkpoint& ckpt) {
  nets::NetConfig cfg = net_config_from_meta(ckpt);
  Rng init(0);
  nets::Discriminator disc(cfg, init);
  for (auto& [name, t] : disc.named_params()) ckpt.load_into(name, t);
  return {std::move(disc), cfg};
}

EvalResult evaluate(const std::filesystem::path& checkpoint_manifest,
                    const data::Dataset& dataset, std::size_t sample_count,
                    std::size_t vendi_count, std::uint64_t seed) {
  if (sample_count < 2)
    throw std::invalid_argument("evaluate: sample_count must be >= 2");
  const io::Checkpoint ckpt = io::Checkpoint::load(checkpoint_manifest);
  auto [gen, cfg] = load_generator(ckpt);
  if (cfg.data_dim != dataset.dim)
    throw std::invalid_argument(
        "checkpoint generates dim " + std::to_string(cfg.data_dim) +
        " but dataset '" + dataset.name + "' has dim " +
        std::to_string(dataset.dim));
  Rng rng(seed);
  Rng draw_rng = rng.fork(kEvalStream);
  const metrics::SampleSet fake =
      draw_fakes(gen, cfg.latent_dim, cfg.data_dim, sample_count, draw_rng);
  return score_samples(dataset, fake, vendi_count, draw_rng);
}

GridKind parse_grid(const std::string& name) {
  if (name == "beta-gamma") return GridKind::beta_gamma;
  if (name == "lambda") return GridKind::lambda;
  if (name == "arch") return GridKind::arch;
  throw std::invalid_argument("unknown grid '" + name +
                              "' (expected beta-gamma|lambda|arch)");
}

std::string grid_name(GridKind kind) {
  switch (kind) {
    case GridKind::beta_gamma: return "beta-gamma";
    case GridKind::lambda: return "lambda";
    case GridKind::arch: return "arch";
  }
  throw std::logic_error("unreachable");
}

AblationResult ablate(const TrainConfig& base, GridKind kind,
                      const std::vector<std::uint64_t>& seeds,
                      const std::filesystem::path& out_dir,
                      std::size_t workers) {
  if (seeds.empty()) throw std::invalid_argument("ablate: no seeds");

  const std::vector<double> sweep = {0.0, 0.5, 1.0, 2.0};
  AblationResult result;
  result.kind = kind;

  // Cell layout mirrors the corresponding report table.
  std::vector<TrainConfig> cell_cfgs;
  switch (kind) {
    case GridKind::beta_gamma:
      for (double gamma : sweep) result.row_labels.push_back(io::format_double(gamma));
      for (double beta : sweep) result.col_labels.push_back(io::format_double(beta));
      for (double gamma : sweep) {
        for (double beta : sweep) {
          TrainConfig c = base;
          c.weights.beta = beta;
          c.weights.gamma = gamma;
          cell_cfgs.push_back(c);
        }
      }
      break;
    case GridKind::lambda:
      result.row_labels.push_back("score");
      for (double lambda : sweep) {
        result.col_labels.push_back(io::format_double(lambda));
        TrainConfig c = base;
        c.weights.lambda = lambda;
        cell_cfgs.push_back(c);
      }
      break;
    case GridKind::arch:
      result.col_labels.push_back("fd_vendi");
      for (nets::Mode m :
           {nets::Mode::standard, nets::Mode::evid_d_only,
            nets::Mode::evid_g_only, nets::Mode::epistemic}) {
        result.row_labels.push_back(nets::mode_name(m));
        TrainConfig c = base;
        c.mode = m;
        cell_cfgs.push_back(c);
      }
      break;
  }

  struct Job {
    std::size_t cell;
    TrainConfig cfg;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cell_cfgs.size(); ++c) {
    for (std::uint64_t seed : seeds) {
      Job j{c, cell_cfgs[c]};
      j.cfg.seed = seed;
      j.cfg.out_dir.clear();  // cells run in memory
      jobs.push_back(std::move(j));
    }
  }

  struct JobOutcome {
    bool ok = false;
    double fd = 0.0;
    double vendi = 0.0;
    std::string error;
  };
  std::vector<JobOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto run_jobs = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      try {
        const RunResult r = train(jobs[i].cfg);
        outcomes[i] = {true, r.report.fd, r.report.vendi, ""};
      } catch (const std::exception& e) {
        outcomes[i] = {false, 0.0, 0.0, e.what()};
      }
    }
  };
  std::size_t pool = workers ? workers
                             : std::max(1u, std::thread::hardware_concurrency());
  pool = std::min(pool, jobs.size());
  if (pool <= 1) {
    run_jobs();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(run_jobs);
    for (auto& t : threads) t.join();
  }

  result.cells.resize(cell_cfgs.size());
  for (std::size_t c = 0; c < cell_cfgs.size(); ++c) {
    AblationCell& cell = result.cells[c];
    cell.row_label = result.row_labels[c / result.col_labels.size()];
    cell.col_label = result.col_labels[c % result.col_labels.size()];
    cell.seeds_total = seeds.size();
    std::vector<double> fds, vendis;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].cell != c || !outcomes[j].ok) continue;
      fds.push_back(outcomes[j].fd);
      vendis.push_back(outcomes[j].vendi);
    }
    cell.seeds_ok = fds.size();
    if (fds.empty()) {
      cell.failed = true;
    } else {
      cell.fd_median = median(fds);
      cell.vendi_median = median(vendis);
    }
  }

  fs::create_directories(out_dir);
  result.csv_path = out_dir / "ablation.csv";
  auto cell_text = [&](const AblationCell& c) {
    char buf[96];
    if (c.failed) {
      std::snprintf(buf, sizeof(buf), "failed [n=%zu/%zu]", c.seeds_ok,
                    c.seeds_total);
    } else {
      std::snprintf(buf, sizeof(buf), "%.6g (%.6g) [n=%zu/%zu]", c.fd_median,
                    c.vendi_median, c.seeds_ok, c.seeds_total);
    }
    return std::string(buf);
  };

  std::vector<std::string> header;
  header.push_back(kind == GridKind::beta_gamma ? "gamma\\beta"
                   : kind == GridKind::lambda   ? "lambda"
                                                : "configuration");
  for (const auto& c : result.col_labels) header.push_back(c);
  io::CsvWriter csv(result.csv_path, header);
  csv.comment("grid: " + grid_name(kind) + "; aggregate: median over " +
              std::to_string(seeds.size()) +
              " seed(s); cell = fd (vendi) [n=ok/total]");
  for (std::size_t r = 0; r < result.row_labels.size(); ++r) {
    std::vector<std::string> cells;
    cells.push_back(result.row_labels[r]);
    for (std::size_t c = 0; c < result.col_labels.size(); ++c)
      cells.push_back(cell_text(result.cells[r * result.col_labels.size() + c]));
    csv.row(cells);
  }
  csv.flush();
  return result;
}

BenchResult bench(const TrainConfig& base, std::size_t epochs) {
  if (epochs == 0) throw std::invalid_argument("bench: epochs must be > 0");

  auto run_timed = [&](nets::Mode mode) {
    TrainConfig cfg = base;
    cfg.mode = mode;
    cfg.out_dir.clear();
    cfg.validate();
    Rng master(cfg.seed);
    const data::Dataset ds = make_dataset(cfg.dataset, cfg.dataset_size,
                                          master.fork_seed(kDataStream));
    data::BatchStream batches(ds, cfg.batch_size, master.fork(kBatchStream));
    TrainState st(cfg, ds.dim, master.fork(kInitStream),
                  master.fork(kGenStream));
    const std::size_t per_epoch = batches.batches_per_epoch();
    std::vector<double> seconds;
    for (std::size_t e = 0; e < epochs; ++e) {
      const auto t0 = std::chrono::steady_clock::now();
      for (std::size_t s = 0; s < per_epoch; ++s) {
        const ad::Tensor real = batches.next();
        const auto [d_report, g_report] = train_step(st, real, cfg.weights);
        if (!std::isfinite(d_report.total) || !std::isfinite(g_report.total))
          throw std::runtime_error("bench: training diverged");
      }
      seconds.push_back(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count());
    }
    return std::pair{seconds, per_epoch};
  };

  BenchResult r;
  auto [std_secs, per_epoch] = run_timed(nets::Mode::standard);
  auto [epi_secs, per_epoch2] = run_timed(nets::Mode::epistemic);
  (void)per_epoch2;
  r.steps_per_epoch = per_epoch;
  r.standard_seconds_per_epoch = median(std_secs);
  r.epistemic_seconds_per_epoch = median(epi_secs);
  r.overhead_ratio =
      r.epistemic_seconds_per_epoch / r.standard_seconds_per_epoch;
  return r;
}

}  // namespace egan::harness
