#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace texlbp {

enum class Metric { kL2, kChiSquare };

inline std::string metric_name(Metric m) { return m == Metric::kL2 ? "l2" : "chi2"; }

inline Metric parse_metric(const std::string& s) {
  if (s == "l2") return Metric::kL2;
  if (s == "chi2") return Metric::kChiSquare;
  throw std::invalid_argument("unknown metric: " + s);
}

inline constexpr double kChiSquareEpsilon = 1e-10;

inline double distance(std::span<const double> a, std::span<const double> b, Metric m) {
  if (a.size() != b.size()) throw std::invalid_argument("descriptor dimension mismatch");
  double acc = 0.0;
  if (m == Metric::kL2) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      acc += d * d;
    }
    return std::sqrt(acc);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d / (a[i] + b[i] + kChiSquareEpsilon);
  }
  return acc;
}

// Majority vote among the k nearest training rows. Neighbours are ranked by
// (distance, class) so equidistant rows never depend on training order.
// Vote ties go to the class whose voters have the smaller summed distance,
// then to the smaller class id.
inline int knn_classify(const std::vector<std::vector<double>>& train,
                        std::span<const int> labels, std::span<const double> query, int k,
                        Metric metric) {
  if (train.empty()) throw std::invalid_argument("knn_classify: empty training set");
  if (train.size() != labels.size()) throw std::invalid_argument("knn_classify: label count mismatch");
  if (k < 1 || static_cast<std::size_t>(k) > train.size()) {
    throw std::invalid_argument("knn_classify: k must be in [1, train size]");
  }
  std::vector<std::pair<double, int>> ranked;
  ranked.reserve(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    ranked.emplace_back(distance(train[i], query, metric), labels[i]);
  }
  std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());

  struct Vote {
    int count = 0;
    double dist = 0.0;
  };
  std::map<int, Vote> votes;
  for (int i = 0; i < k; ++i) {
    auto& v = votes[ranked[static_cast<std::size_t>(i)].second];
    ++v.count;
    v.dist += ranked[static_cast<std::size_t>(i)].first;
  }
  int best = votes.begin()->first;
  Vote best_vote = votes.begin()->second;
  for (const auto& [cls, v] : votes) {
    if (v.count > best_vote.count || (v.count == best_vote.count && v.dist < best_vote.dist)) {
      best = cls;
      best_vote = v;
    }
  }
  return best;
}

}  // namespace texlbp
