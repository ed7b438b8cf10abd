#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <utility>

#include "texlbp/cli.hpp"

namespace texlbp::cli {

inline void add_extractor_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--schedule", cfg.schedule, "Resolution schedule, e.g. \"8,1;16,2\"")->capture_default_str();
  sub->add_option("--hybrid", cfg.hybrid, "HCLBP block: off, append or only")->capture_default_str();
  sub->add_flag("--sps", cfg.sps, "Restrict labelling to significant points");
  sub->add_option("--lsv", cfg.lsv, "LSV mode: absolute or signed")->capture_default_str();
}

inline void add_common_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-i,--input", cfg.input, "Image, dataset root or index.json");
  sub->add_option("--crop", cfg.crop, "Square window side for dataset cropping");
  sub->add_option("-o,--out", cfg.out_dir, "Output directory (default $TEXLBP_OUT_DIR or .)");
  sub->add_option("--format", cfg.format, "json, csv or both")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  sub->add_option("-j,--workers", cfg.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

inline void add_cv_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--metric", cfg.metric, "l2 or chi2")->capture_default_str();
  sub->add_option("--folds", cfg.folds, "Cross-validation folds")->capture_default_str();
  sub->add_option("-k,--k", cfg.ks, "Neighbour counts")->delimiter(',')->capture_default_str();
}

inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Colour texture descriptors: LBP, HCLBP and SPS with noise and k-NN benchmarks", "texlbp"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string replay;

  auto* extract = app.add_subcommand("extract", "Write descriptors for an image or dataset");
  add_common_flags(extract, cfg);
  add_extractor_flags(extract, cfg);
  extract->add_flag("--masks", cfg.dump_masks, "With --sps, write each significance mask as PGM under masks/");

  auto* classify = app.add_subcommand("classify", "k-NN classification report");
  add_common_flags(classify, cfg);
  add_extractor_flags(classify, cfg);
  add_cv_flags(classify, cfg);
  classify->add_option("--protocol", cfg.protocol, "kfold, sweep or grouped")->capture_default_str();
  classify->add_option("--fractions", cfg.fractions, "Training fractions for the sweep")->delimiter(',');
  classify->add_flag("--permute-labels", cfg.permute_labels, "Shuffle class labels (chance baseline)");
  classify->add_option("--cache", cfg.cache_dir, "Descriptor cache directory");

  auto* noise = app.add_subcommand("noise-bench", "Impulse-noise statistics and accuracy per ratio");
  add_common_flags(noise, cfg);
  add_cv_flags(noise, cfg);
  noise->add_option("--schedule", cfg.schedule, "Resolution schedule")->capture_default_str();
  noise->add_option("--lsv", cfg.lsv, "LSV mode for +sps extractors")->capture_default_str();
  noise->add_option("--ratios", cfg.ratios, "Noise ratios in [0, 1]")->delimiter(',')->capture_default_str();
  noise->add_option("--extractors", cfg.extractors, "plane, hclbp, hclbp-only, each with optional +sps")
      ->delimiter(',')
      ->capture_default_str();
  noise->add_flag("!--clean-train", cfg.noisy_train, "Train on clean images, query noisy ones");
  noise->add_option("--dump-noisy", cfg.dump_noisy, "Write the first N noisy samples per ratio as PNG");

  auto* opcount = app.add_subcommand("opcount", "Predicted and measured operation counts");
  opcount->add_option("-i,--input", cfg.input, "Image to instrument (default: synthetic)");
  opcount->add_option("--size", cfg.size, "Side of the synthetic image (default 128)");
  opcount->add_option("--schedule", cfg.schedule, "Resolution schedule")->capture_default_str();
  opcount->add_flag("--sps", cfg.sps, "Add SPS-masked HCLBP rows");
  opcount->add_option("--lsv", cfg.lsv, "LSV mode")->capture_default_str();
  opcount->add_option("-o,--out", cfg.out_dir, "Output directory");
  opcount->add_option("--format", cfg.format, "json, csv or both")->capture_default_str();
  opcount->add_option("--seed", cfg.seed, "Seed for the synthetic image")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Write the synthetic corpus");
  synth->add_option("-o,--out", cfg.out_dir, "Output directory");
  synth->add_option("--classes", cfg.classes, "Number of classes (2-6)")->capture_default_str();
  synth->add_option("--per-class", cfg.per_class, "Samples per class")->capture_default_str();
  synth->add_option("--size", cfg.size, "Sample side in pixels (default 32)");
  std::uint64_t synth_seed = SynthSpec{}.seed;
  synth->add_option("--seed", synth_seed, "Corpus seed")->capture_default_str();

  for (auto* sub : {extract, classify, noise, opcount, synth}) {
    sub->add_option("--replay", replay, "Re-run the config embedded in an output artifact");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const std::pair<CLI::App*, const char*> commands[] = {
        {extract, "extract"}, {classify, "classify"}, {noise, "noise-bench"}, {opcount, "opcount"}, {synth, "synth"}};
    for (const auto& [sub, name] : commands) {
      if (!*sub) continue;
      cfg.command = name;
      if (sub == synth) cfg.seed = synth_seed;
      if (!replay.empty()) {
        cfg = config_from_artifact(replay, cfg);
        if (cfg.command != name) throw UsageError("artifact was produced by '" + cfg.command + "', not '" + name + "'");
      }
      if (cfg.command == "extract") return cmd_extract(cfg);
      if (cfg.command == "classify") return cmd_classify(cfg);
      if (cfg.command == "noise-bench") return cmd_noise_bench(cfg);
      if (cfg.command == "opcount") return cmd_opcount(cfg);
      return cmd_synth(cfg);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "texlbp: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "texlbp: %s\n", e.what());
    return 1;
  }
  return 2;
}

}  // namespace texlbp::cli
