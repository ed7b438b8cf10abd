#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "texlbp/dataset.hpp"
#include "texlbp/extractor.hpp"
#include "texlbp/format.hpp"
#include "texlbp/knn.hpp"
#include "texlbp/parallel.hpp"
#include "texlbp/rng.hpp"

namespace texlbp {

using FeatureRows = std::vector<std::vector<double>>;

inline FeatureRows extract_all(const std::vector<RgbImage>& images, const ExtractorConfig& config,
                               int workers = 1) {
  FeatureRows rows(images.size());
  parallel_for(images.size(), workers,
               [&](std::size_t i) { rows[i] = extract(images[i], config).bins; });
  return rows;
}

struct CvConfig {
  int folds = 10;
  std::vector<int> ks{1};
  Metric metric = Metric::kL2;
  std::uint64_t seed = 1;
};

struct ClassificationReport {
  int k = 1;
  double accuracy = 0.0;  // pooled: trace(confusion) / sum(confusion) * 100
  double mean_fold_accuracy = 0.0;
  std::vector<double> fold_accuracies;
  std::vector<double> per_class_accuracy;
  std::vector<std::vector<std::uint64_t>> confusion;  // [true][predicted]

  nlohmann::json to_json() const {
    std::vector<double> folds, per_class;
    for (double v : fold_accuracies) folds.push_back(round12(v));
    for (double v : per_class_accuracy) per_class.push_back(round12(v));
    return {{"k", k},
            {"accuracy", round12(accuracy)},
            {"mean_fold_accuracy", round12(mean_fold_accuracy)},
            {"fold_accuracies", folds},
            {"per_class_accuracy", per_class},
            {"confusion", confusion}};
  }
};

namespace detail {

inline std::vector<std::vector<std::size_t>> members_by_class(const std::vector<int>& labels,
                                                              int num_classes) {
  std::vector<std::vector<std::size_t>> by(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) throw std::invalid_argument("label out of range");
    by[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  return by;
}

inline void finish_report(ClassificationReport& r) {
  std::uint64_t trace = 0, total = 0;
  r.per_class_accuracy.assign(r.confusion.size(), 0.0);
  for (std::size_t c = 0; c < r.confusion.size(); ++c) {
    std::uint64_t row = 0;
    for (auto v : r.confusion[c]) row += v;
    trace += r.confusion[c][c];
    total += row;
    r.per_class_accuracy[c] = row ? 100.0 * static_cast<double>(r.confusion[c][c]) / static_cast<double>(row) : 0.0;
  }
  r.accuracy = total ? 100.0 * static_cast<double>(trace) / static_cast<double>(total) : 0.0;
  double s = 0.0;
  for (double f : r.fold_accuracies) s += f;
  r.mean_fold_accuracy = r.fold_accuracies.empty() ? 0.0 : s / static_cast<double>(r.fold_accuracies.size());
}

}  // namespace detail

// Stratified fold ids: each class is shuffled and dealt round-robin, with the
// starting fold carried over between classes so fold sizes stay balanced.
inline std::vector<int> stratified_folds(const std::vector<int>& labels, int num_classes, int folds,
                                         std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("fold count must be >= 2");
  auto by = detail::members_by_class(labels, num_classes);
  std::vector<int> fold_of(labels.size(), -1);
  Rng rng(seed);
  std::size_t next = 0;
  for (auto& members : by) {
    if (members.empty()) continue;
    if (members.size() < static_cast<std::size_t>(folds)) {
      throw std::invalid_argument("class smaller than fold count");
    }
    shuffle(members, rng);
    for (auto i : members) {
      fold_of[i] = static_cast<int>(next % static_cast<std::size_t>(folds));
      ++next;
    }
  }
  return fold_of;
}

// Evaluates a fixed partition. Training rows come from `train_rows`, queries
// from `test_rows`; both are indexed by sample and usually the same object.
inline ClassificationReport evaluate_partition(const FeatureRows& train_rows, const FeatureRows& test_rows,
                                               const std::vector<int>& labels, int num_classes,
                                               const std::vector<int>& part_of, int parts, int k,
                                               Metric metric) {
  ClassificationReport r;
  r.k = k;
  r.confusion.assign(static_cast<std::size_t>(num_classes),
                     std::vector<std::uint64_t>(static_cast<std::size_t>(num_classes), 0));
  for (int f = 0; f < parts; ++f) {
    FeatureRows train;
    std::vector<int> train_labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (part_of[i] != f) {
        train.push_back(train_rows[i]);
        train_labels.push_back(labels[i]);
      }
    }
    std::uint64_t hit = 0, n = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (part_of[i] != f) continue;
      const int pred = knn_classify(train, train_labels, test_rows[i], k, metric);
      ++r.confusion[static_cast<std::size_t>(labels[i])][static_cast<std::size_t>(pred)];
      hit += pred == labels[i];
      ++n;
    }
    if (n) r.fold_accuracies.push_back(100.0 * static_cast<double>(hit) / static_cast<double>(n));
  }
  detail::finish_report(r);
  return r;
}

inline std::vector<ClassificationReport> kfold_cv_rows(const FeatureRows& train_rows,
                                                       const FeatureRows& test_rows,
                                                       const std::vector<int>& labels, int num_classes,
                                                       const CvConfig& cv) {
  const auto fold_of = stratified_folds(labels, num_classes, cv.folds, cv.seed);
  std::vector<ClassificationReport> out;
  for (int k : cv.ks) {
    out.push_back(evaluate_partition(train_rows, test_rows, labels, num_classes, fold_of, cv.folds, k,
                                     cv.metric));
  }
  return out;
}

inline std::vector<ClassificationReport> kfold_cv(const SampleSet& samples, const ExtractorConfig& extractor,
                                                  const CvConfig& cv, int workers = 1) {
  const auto rows = extract_all(samples.images, extractor, workers);
  return kfold_cv_rows(rows, rows, samples.labels, samples.num_classes(), cv);
}

// Leave-one-group-out: every distinct group value is the test set once.
inline std::vector<ClassificationReport> grouped_cv(const SampleSet& samples,
                                                    const ExtractorConfig& extractor, const CvConfig& cv,
                                                    int workers = 1) {
  std::map<std::string, int> group_ids;
  for (const auto& g : samples.groups) group_ids.emplace(g, 0);
  if (group_ids.size() < 2) throw std::invalid_argument("grouped split needs at least two sample groups");
  int next = 0;
  for (auto& [g, id] : group_ids) id = next++;
  std::vector<int> part_of;
  for (const auto& g : samples.groups) part_of.push_back(group_ids.at(g));
  const auto rows = extract_all(samples.images, extractor, workers);
  std::vector<ClassificationReport> out;
  for (int k : cv.ks) {
    out.push_back(evaluate_partition(rows, rows, samples.labels, samples.num_classes(), part_of, next, k,
                                     cv.metric));
  }
  return out;
}

struct SweepTable {
  std::vector<double> fractions;
  std::vector<int> ks;
  std::vector<std::vector<double>> accuracy;  // [k index][fraction index]

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < ks.size(); ++i) {
      std::vector<double> acc;
      for (double v : accuracy[i]) acc.push_back(round12(v));
      rows.push_back({{"k", ks[i]}, {"accuracy", acc}});
    }
    return {{"fractions", fractions}, {"rows", rows}};
  }
};

// Per class: round(fraction * n) training samples, at least 1 and at most
// n - 1, taken from one seeded shuffle (so larger fractions extend smaller
// ones); the rest are queries.
inline std::vector<int> train_split(const std::vector<int>& labels, int num_classes, double fraction,
                                    std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("train fraction must be in (0, 1)");
  auto by = detail::members_by_class(labels, num_classes);
  std::vector<int> is_test(labels.size(), 1);
  Rng rng(seed);
  for (auto& members : by) {
    if (members.empty()) continue;
    if (members.size() < 2) throw std::invalid_argument("class needs >= 2 samples for a train/test split");
    shuffle(members, rng);
    auto n = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(members.size())));
    n = std::clamp<std::size_t>(n, 1, members.size() - 1);
    for (std::size_t i = 0; i < n; ++i) is_test[members[i]] = 0;
  }
  return is_test;
}

inline SweepTable train_size_sweep_rows(const FeatureRows& rows, const std::vector<int>& labels,
                                        int num_classes, const std::vector<double>& fractions,
                                        const std::vector<int>& ks, Metric metric, std::uint64_t seed) {
  SweepTable t{fractions, ks, {}};
  t.accuracy.assign(ks.size(), std::vector<double>(fractions.size(), 0.0));
  for (std::size_t f = 0; f < fractions.size(); ++f) {
    const auto is_test = train_split(labels, num_classes, fractions[f], seed);
    FeatureRows train;
    std::vector<int> train_labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!is_test[i]) {
        train.push_back(rows[i]);
        train_labels.push_back(labels[i]);
      }
    }
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      if (static_cast<std::size_t>(ks[ki]) > train.size()) {
        throw std::invalid_argument("k exceeds training set size at fraction " + fmt12(fractions[f]));
      }
      std::uint64_t hit = 0, n = 0;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!is_test[i]) continue;
        hit += knn_classify(train, train_labels, rows[i], ks[ki], metric) == labels[i];
        ++n;
      }
      t.accuracy[ki][f] = 100.0 * static_cast<double>(hit) / static_cast<double>(n);
    }
  }
  return t;
}

inline SweepTable train_size_sweep(const SampleSet& samples, const ExtractorConfig& extractor,
                                   const std::vector<double>& fractions, const std::vector<int>& ks,
                                   Metric metric, std::uint64_t seed, int workers = 1) {
  const auto rows = extract_all(samples.images, extractor, workers);
  return train_size_sweep_rows(rows, samples.labels, samples.num_classes(), fractions, ks, metric, seed);
}

}  // namespace texlbp
