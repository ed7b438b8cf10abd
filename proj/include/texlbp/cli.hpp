#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "texlbp/cache.hpp"
#include "texlbp/crossval.hpp"
#include "texlbp/dataset.hpp"
#include "texlbp/descriptor_io.hpp"
#include "texlbp/extractor.hpp"
#include "texlbp/image_io.hpp"
#include "texlbp/noise_bench.hpp"
#include "texlbp/opcount.hpp"
#include "texlbp/synth.hpp"

namespace texlbp::cli {

// Bad flags, invalid configuration or missing inputs; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr const char* kOutDirEnv = "TEXLBP_OUT_DIR";

struct RunConfig {
  std::string command;
  std::string schedule = "8,1";
  std::string hybrid = "append";  // off | append | only
  bool sps = false;
  std::string lsv = "absolute";   // absolute | signed
  std::string metric = "l2";
  int folds = 10;
  std::vector<int> ks{1};
  std::string protocol = "kfold";  // kfold | sweep | grouped
  std::vector<double> fractions{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  std::vector<double> ratios{0.05, 0.10, 0.20, 0.30, 0.40};
  std::vector<std::string> extractors{"plane", "hclbp+sps"};
  bool noisy_train = true;
  bool permute_labels = false;
  std::uint64_t seed = 1;
  std::string input;
  std::optional<int> crop;
  std::string out_dir;
  std::string format = "json";  // json | csv | both
  std::optional<int> size;  // opcount image side (128), synth sample side (32)
  int classes = 4;
  int per_class = 25;
  int dump_noisy = 0;
  bool dump_masks = false;
  std::string cache_dir;
  int workers = 1;  // execution only; never part of an artifact

  static std::string default_out_dir() {
    const char* env = std::getenv(kOutDirEnv);
    return env && *env ? env : ".";
  }

  HybridBlock hybrid_block() const {
    if (hybrid == "off") return HybridBlock::kOff;
    if (hybrid == "append") return HybridBlock::kAppend;
    if (hybrid == "only") return HybridBlock::kOnly;
    throw UsageError("--hybrid must be off, append or only");
  }

  ResolutionSchedule resolution_schedule() const {
    try {
      return parse_schedule(schedule);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  ExtractorConfig extractor() const {
    ExtractorConfig c;
    c.schedule = resolution_schedule();
    c.hybrid = hybrid_block();
    c.sps = sps;
    c.lsv_mode = lsv_mode();
    return c;
  }

  LsvMode lsv_mode() const {
    if (lsv == "absolute") return LsvMode::kAbsolute;
    if (lsv == "signed") return LsvMode::kSigned;
    throw UsageError("--lsv must be absolute or signed");
  }

  Metric metric_id() const {
    try {
      return parse_metric(metric);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  void validate() const {
    resolution_schedule();
    hybrid_block();
    lsv_mode();
    metric_id();
    if (folds < 2) throw UsageError("--folds must be >= 2");
    if (ks.empty()) throw UsageError("--k needs at least one value");
    for (int k : ks) {
      if (k < 1) throw UsageError("--k values must be >= 1");
    }
    for (double r : ratios) {
      if (!(r >= 0.0 && r <= 1.0)) throw UsageError("noise ratios must be in [0, 1]");
    }
    for (double f : fractions) {
      if (!(f > 0.0 && f < 1.0)) throw UsageError("train fractions must be in (0, 1)");
    }
    if (protocol != "kfold" && protocol != "sweep" && protocol != "grouped") {
      throw UsageError("--protocol must be kfold, sweep or grouped");
    }
    if (format != "json" && format != "csv" && format != "both") {
      throw UsageError("--format must be json, csv or both");
    }
    if (crop && *crop < 1) throw UsageError("--crop must be positive");
    if (size && *size < 8) throw UsageError("--size must be >= 8");
    for (const auto& e : extractors) {
      try {
        ExtractorConfig::from_name(e, resolution_schedule());
      } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
      }
    }
  }

  // Fully-resolved configuration echoed into every artifact.
  nlohmann::json to_json() const {
    nlohmann::json j{{"command", command},
                     {"schedule", schedule},
                     {"hybrid", hybrid},
                     {"sps", sps},
                     {"lsv", lsv},
                     {"metric", metric},
                     {"folds", folds},
                     {"k", ks},
                     {"protocol", protocol},
                     {"fractions", fractions},
                     {"ratios", ratios},
                     {"extractors", extractors},
                     {"noisy_train", noisy_train},
                     {"permute_labels", permute_labels},
                     {"seed", seed},
                     {"input", input},
                     {"crop", crop ? nlohmann::json(*crop) : nlohmann::json(nullptr)},
                     {"format", format},
                     {"size", size ? nlohmann::json(*size) : nlohmann::json(nullptr)},
                     {"classes", classes},
                     {"per_class", per_class}};
    return j;
  }

  // Inverse of to_json; execution-only fields (output directory, workers,
  // cache) keep their current values.
  void load_json(const nlohmann::json& j) {
    try {
      command = j.at("command").get<std::string>();
      schedule = j.at("schedule").get<std::string>();
      hybrid = j.at("hybrid").get<std::string>();
      sps = j.at("sps").get<bool>();
      lsv = j.at("lsv").get<std::string>();
      metric = j.at("metric").get<std::string>();
      folds = j.at("folds").get<int>();
      ks = j.at("k").get<std::vector<int>>();
      protocol = j.at("protocol").get<std::string>();
      fractions = j.at("fractions").get<std::vector<double>>();
      ratios = j.at("ratios").get<std::vector<double>>();
      extractors = j.at("extractors").get<std::vector<std::string>>();
      noisy_train = j.at("noisy_train").get<bool>();
      permute_labels = j.at("permute_labels").get<bool>();
      seed = j.at("seed").get<std::uint64_t>();
      input = j.at("input").get<std::string>();
      crop = j.at("crop").is_null() ? std::nullopt : std::optional<int>(j.at("crop").get<int>());
      format = j.at("format").get<std::string>();
      size = j.at("size").is_null() ? std::nullopt : std::optional<int>(j.at("size").get<int>());
      classes = j.at("classes").get<int>();
      per_class = j.at("per_class").get<int>();
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad embedded config: ") + e.what());
    }
  }
};

// Reads the "config" object embedded in an artifact (or a bare config).
inline RunConfig config_from_artifact(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
  base.load_json(j.contains("config") ? j.at("config") : j);
  return base;
}

namespace detail {

inline std::filesystem::path out_dir(const RunConfig& cfg) {
  std::filesystem::path dir = cfg.out_dir.empty() ? RunConfig::default_out_dir() : cfg.out_dir;
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

inline bool want_json(const RunConfig& c) { return c.format != "csv"; }
inline bool want_csv(const RunConfig& c) { return c.format != "json"; }

inline void require_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  if (!std::filesystem::exists(cfg.input)) throw UsageError("input path does not exist: " + cfg.input);
}

inline DatasetIndex load_index(const RunConfig& cfg) {
  const std::filesystem::path in(cfg.input);
  if (std::filesystem::is_regular_file(in) && in.extension() == ".json") {
    std::ifstream f(in);
    return DatasetIndex::from_json(nlohmann::json::parse(f));
  }
  return build_dataset_index(in, cfg.crop);
}

inline FeatureRows extract_rows(const RunConfig& cfg, const SampleSet& samples, const ExtractorConfig& ex) {
  if (cfg.cache_dir.empty()) return extract_all(samples.images, ex, cfg.workers);
  const DescriptorCache cache(cfg.cache_dir);
  if (auto hit = cache.load(ex, samples.ids)) return *hit;
  auto rows = extract_all(samples.images, ex, cfg.workers);
  cache.store(ex, samples.ids, rows);
  return rows;
}

inline std::string table_label(const ExtractorConfig& ex) {
  return ex.name() + "[" + schedule_text(ex.schedule) + "]";
}

}  // namespace detail

// Descriptors for one image or every sample of a dataset, ordered by id.
inline int cmd_extract(const RunConfig& cfg) {
  cfg.validate();
  detail::require_input(cfg);
  const auto ex = cfg.extractor();
  SampleSet samples;
  std::optional<DatasetIndex> index;
  const std::filesystem::path in(cfg.input);
  if (std::filesystem::is_regular_file(in) && in.extension() != ".json") {
    RgbImage img = load_image(in);
    if (cfg.crop) {
      auto windows = crop_windows(img, *cfg.crop, *cfg.crop);
      for (std::size_t i = 0; i < windows.size(); ++i) {
        samples.add(in.filename().string() + "#" + std::to_string(i), 0, std::move(windows[i]));
      }
    } else {
      samples.add(in.filename().string(), 0, std::move(img));
    }
    samples.class_names = {""};
  } else {
    index = detail::load_index(cfg);
    samples = materialize(*index);
  }
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return samples.ids[a] < samples.ids[b]; });

  std::vector<Descriptor> descs(samples.size());
  parallel_for(samples.size(), cfg.workers, [&](std::size_t i) { descs[i] = extract(samples.images[i], ex); });

  // [sample][schedule entry]
  std::vector<std::vector<SignificanceMask>> masks(samples.size());
  if (ex.sps) {
    parallel_for(samples.size(), cfg.workers, [&](std::size_t i) {
      for (const auto& p : ex.schedule.entries()) {
        masks[i].push_back(significance_mask(samples.images[i], p, {ex.lsv_mode, true}));
      }
    });
  }

  const auto dir = detail::out_dir(cfg);
  if (index) detail::write_json(dir / "index.json", index->to_json());
  if (cfg.dump_masks && ex.sps) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      std::string stem = samples.ids[i];
      for (char& c : stem) {
        if (c == '/' || c == '\\' || c == '#' || c == '.') c = '_';
      }
      for (std::size_t k = 0; k < masks[i].size(); ++k) {
        const auto& p = ex.schedule.entries()[k];
        const auto file = dir / "masks" /
                          (stem + "_P" + std::to_string(p.neighbors) + "_R" + std::to_string(p.radius) + ".pgm");
        std::filesystem::create_directories(file.parent_path());
        write_pgm(file, masks[i][k]);
      }
    }
  }
  if (detail::want_json(cfg)) {
    nlohmann::json rows = nlohmann::json::array();
    for (auto i : order) {
      nlohmann::json row{{"id", samples.ids[i]},
                         {"class", samples.class_names[static_cast<std::size_t>(samples.labels[i])]},
                         {"descriptor", descriptor_to_json(descs[i])}};
      if (ex.sps) {
        nlohmann::json sps = nlohmann::json::array();
        for (std::size_t k = 0; k < masks[i].size(); ++k) {
          const auto& m = masks[i][k];
          const auto& p = ex.schedule.entries()[k];
          sps.push_back({{"P", p.neighbors},
                         {"R", p.radius},
                         {"gsv", round12(m.gsv)},
                         {"selected_count", m.selected_count},
                         {"interior", m.interior_size()},
                         {"fallback_used", m.fallback_used}});
        }
        row["sps"] = sps;
      }
      rows.push_back(row);
    }
    detail::write_json(dir / "descriptors.json", {{"config", cfg.to_json()},
                                                  {"extractor", ex.to_json()},
                                                  {"extractor_hash", ex.hash()},
                                                  {"samples", rows}});
  }
  if (detail::want_csv(cfg)) {
    std::string text;
    if (!descs.empty()) {
      std::vector<std::string> header{"sample_id", "class", "extractor_hash"};
      for (auto& c : descriptor_csv_columns(descs.front())) header.push_back(c);
      text += csv_join(header) + "\n";
    }
    for (auto i : order) {
      text += descriptor_csv_row({samples.ids[i], samples.class_names[static_cast<std::size_t>(samples.labels[i])],
                                  ex.hash()},
                                 descs[i]) +
              "\n";
    }
    detail::write_text(dir / "descriptors.csv", text);
  }
  return 0;
}

inline void permute_labels(SampleSet& samples, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x5045524dull));
  shuffle(samples.labels, rng);
}

// k-fold, grouped or train-size-sweep classification report.
inline int cmd_classify(const RunConfig& cfg) {
  cfg.validate();
  detail::require_input(cfg);
  const auto ex = cfg.extractor();
  const DatasetIndex index = detail::load_index(cfg);
  SampleSet samples = materialize(index);
  if (cfg.permute_labels) permute_labels(samples, cfg.seed);
  const Metric metric = cfg.metric_id();
  const auto rows = detail::extract_rows(cfg, samples, ex);
  const auto dir = detail::out_dir(cfg);
  detail::write_json(dir / "index.json", index.to_json());

  nlohmann::json report{{"config", cfg.to_json()},
                        {"extractor", ex.to_json()},
                        {"classes", samples.class_names},
                        {"samples", samples.size()}};
  std::string csv;
  if (cfg.protocol == "sweep") {
    const auto table = train_size_sweep_rows(rows, samples.labels, samples.num_classes(), cfg.fractions, cfg.ks,
                                             metric, cfg.seed);
    report["sweep"] = table.to_json();
    csv = "classifier";
    for (double f : cfg.fractions) csv += "," + fmt12(100.0 * f) + "%";
    csv += "\n";
    for (std::size_t i = 0; i < cfg.ks.size(); ++i) {
      csv += std::to_string(cfg.ks[i]) + "NN";
      for (double v : table.accuracy[i]) csv += "," + fmt12(v);
      csv += "\n";
    }
  } else {
    std::vector<ClassificationReport> results;
    if (cfg.protocol == "grouped") {
      std::map<std::string, int> gid;
      for (const auto& g : samples.groups) gid.emplace(g, 0);
      if (gid.size() < 2) throw UsageError("grouped protocol needs at least two sample groups");
      int next = 0;
      for (auto& [g, id] : gid) id = next++;
      std::vector<int> part;
      for (const auto& g : samples.groups) part.push_back(gid.at(g));
      for (int k : cfg.ks) {
        results.push_back(evaluate_partition(rows, rows, samples.labels, samples.num_classes(), part, next, k, metric));
      }
    } else {
      CvConfig cv{cfg.folds, cfg.ks, metric, cfg.seed};
      results = kfold_cv_rows(rows, rows, samples.labels, samples.num_classes(), cv);
    }
    nlohmann::json js = nlohmann::json::array();
    csv = "operator";
    for (int k : cfg.ks) csv += "," + std::to_string(k) + "NN";
    csv += "\n" + detail::table_label(ex);
    for (const auto& r : results) {
      js.push_back(r.to_json());
      csv += "," + fmt12(r.accuracy);
    }
    csv += "\n";
    report["results"] = js;
  }
  if (detail::want_json(cfg)) detail::write_json(dir / "classify.json", report);
  if (detail::want_csv(cfg)) detail::write_text(dir / "classify.csv", csv);
  return 0;
}

// Channel-effect statistics and accuracy per (extractor, ratio).
inline int cmd_noise_bench(const RunConfig& cfg) {
  cfg.validate();
  detail::require_input(cfg);
  const DatasetIndex index = detail::load_index(cfg);
  const SampleSet samples = materialize(index);
  NoiseBenchConfig nb;
  nb.ratios = cfg.ratios;
  nb.cv = {cfg.folds, {cfg.ks.front()}, cfg.metric_id(), cfg.seed};
  nb.noisy_train = cfg.noisy_train;
  nb.seed = cfg.seed;
  for (const auto& name : cfg.extractors) {
    auto ex = ExtractorConfig::from_name(name, cfg.resolution_schedule());
    ex.lsv_mode = cfg.lsv_mode();
    nb.extractors.push_back(ex);
  }
  const auto result = noise_benchmark(samples, nb, cfg.workers);
  const auto dir = detail::out_dir(cfg);
  detail::write_json(dir / "index.json", index.to_json());

  if (cfg.dump_noisy > 0) {
    const auto ndir = dir / "noisy";
    std::filesystem::create_directories(ndir);
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(cfg.dump_noisy), samples.size());
    for (double ratio : cfg.ratios) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto img = apply_impulse_noise(samples.images[i], {ratio, noise_seed(cfg.seed, i, ratio)});
        write_png(ndir / ("sample" + std::to_string(i) + "_r" + fmt12(ratio) + ".png"), img);
      }
    }
  }

  nlohmann::json stats = nlohmann::json::array();
  for (const auto& s : result.stats) stats.push_back(s.to_json());
  nlohmann::json acc = nlohmann::json::array();
  for (std::size_t e = 0; e < nb.extractors.size(); ++e) {
    nlohmann::json runs = nlohmann::json::array();
    for (std::size_t r = 0; r < nb.ratios.size(); ++r) {
      auto j = result.runs[e][r].to_json();
      j["ratio"] = nb.ratios[r];
      runs.push_back(j);
    }
    acc.push_back({{"extractor", nb.extractors[e].to_json()}, {"runs", runs}});
  }
  if (detail::want_json(cfg)) {
    detail::write_json(dir / "noise_bench.json", {{"config", cfg.to_json()}, {"stats", stats}, {"accuracy", acc}});
  }
  if (detail::want_csv(cfg)) {
    std::string t = "ratio,total_noisy,k1,k2,k3,expected_k1,expected_k2,expected_k3\n";
    for (const auto& s : result.stats) {
      t += fmt12(s.ratio) + "," + std::to_string(s.stats.total_noisy);
      const auto f = s.stats.fractions();
      for (int k = 0; k < 3; ++k) t += "," + (f ? fmt12((*f)[static_cast<std::size_t>(k)]) : std::string());
      for (int k = 0; k < 3; ++k) t += "," + (s.expected ? fmt12((*s.expected)[static_cast<std::size_t>(k)]) : std::string());
      t += "\n";
    }
    detail::write_text(dir / "noise_stats.csv", t);
    std::string a = "operator";
    for (double r : nb.ratios) a += "," + fmt12(100.0 * r) + "%";
    a += "\n";
    for (std::size_t e = 0; e < nb.extractors.size(); ++e) {
      a += detail::table_label(nb.extractors[e]);
      for (std::size_t r = 0; r < nb.ratios.size(); ++r) a += "," + fmt12(result.accuracy(e, r));
      a += "\n";
    }
    detail::write_text(dir / "noise_accuracy.csv", a);
  }
  return 0;
}

inline nlohmann::json counters_json(const OpCounters& c) {
  return {{"comparisons", c.comparisons},
          {"multiplications", c.multiplications},
          {"divisions", c.divisions},
          {"additions", c.additions},
          {"subtractions", c.subtractions}};
}

// Predicted versus measured operation counts per operator row.
inline int cmd_opcount(const RunConfig& cfg) {
  cfg.validate();
  RgbImage image;
  std::string source;
  if (!cfg.input.empty()) {
    detail::require_input(cfg);
    image = load_image(cfg.input);
    source = cfg.input;
  } else {
    const int side = cfg.size.value_or(128);
    image = synth_sample(3, side, 6, derive_seed(cfg.seed, 3, 0));
    source = "synthetic sinusoid " + std::to_string(side) + "x" + std::to_string(side);
  }
  std::vector<OpReport> rows;
  const ResolutionSchedule schedule = cfg.resolution_schedule();
  for (const auto& p : schedule.entries()) {
    rows.push_back(measure_ops(OperatorKind::kHclbp, image, p));
    rows.push_back(measure_ops(OperatorKind::kPlaneLbp, image, p));
    if (cfg.sps) rows.push_back(measure_ops(OperatorKind::kHclbp, image, p, SpsOptions{cfg.lsv_mode(), true}));
  }
  nlohmann::json jrows = nlohmann::json::array();
  std::string csv = "operator,source,comparisons,multiplications,divisions,additions,subtractions\n";
  for (const auto& r : rows) {
    nlohmann::json aux = nlohmann::json::object();
    for (const auto& [k, v] : r.auxiliary) aux[k] = counters_json(v);
    jrows.push_back({{"operator", r.context.name},
                     {"P", r.context.params.neighbors},
                     {"R", r.context.params.radius},
                     {"width", r.context.width},
                     {"height", r.context.height},
                     {"neighborhoods", r.context.neighborhoods},
                     {"fallback_used", r.fallback_used},
                     {"modeled", counters_json(r.measured)},
                     {"predicted", counters_json(r.predicted)},
                     {"auxiliary", aux}});
    for (const auto& [label, c] : {std::pair{"predicted", r.predicted}, std::pair{"measured", r.measured}}) {
      csv += r.context.name + "," + label + "," + std::to_string(c.comparisons) + "," +
             std::to_string(c.multiplications) + "," + std::to_string(c.divisions) + "," +
             std::to_string(c.additions) + "," + std::to_string(c.subtractions) + "\n";
    }
  }
  const auto dir = detail::out_dir(cfg);
  if (detail::want_json(cfg)) {
    detail::write_json(dir / "opcount.json",
                       {{"config", cfg.to_json()},
                        {"image", source},
                        {"notes",
                         "modeled = per-neighbourhood threshold, difference, bit-weight and AND-product loops; "
                         "no per-neighbourhood division exists for either operator, histogram normalisation "
                         "divisions appear under auxiliary.histogram"},
                        {"rows", jrows}});
  }
  if (detail::want_csv(cfg)) detail::write_text(dir / "opcount.csv", csv);
  return 0;
}

// Writes the synthetic corpus under --out (class per directory).
inline int cmd_synth(const RunConfig& cfg) {
  cfg.validate();
  SynthSpec spec;
  spec.classes = cfg.classes;
  spec.per_class = cfg.per_class;
  spec.size = cfg.size.value_or(spec.size);
  spec.seed = cfg.seed;
  try {
    synth_corpus({spec.classes, 1, spec.size, spec.grain, spec.seed});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto dir = detail::out_dir(cfg);
  write_synth_corpus(dir, spec);
  return 0;
}

}  // namespace texlbp::cli
