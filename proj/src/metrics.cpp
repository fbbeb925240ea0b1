#include "cb/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cb {
namespace {

std::array<double, 3> objective_array(const ObjectiveVector& f) {
  return {f.f1_db, f.f2_db, f.f3_j};
}

}  // namespace

double igd(const std::vector<ObjectiveVector>& obtained,
           const std::vector<ObjectiveVector>& reference) {
  if (obtained.empty() || reference.empty())
    throw std::invalid_argument("igd: empty obtained or reference set");

  std::array<double, 3> lo = objective_array(reference.front());
  std::array<double, 3> hi = lo;
  for (const auto& r : reference) {
    const auto v = objective_array(r);
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], v[k]);
      hi[k] = std::max(hi[k], v[k]);
    }
  }
  std::array<double, 3> extent{};
  int kept = 0;
  for (int k = 0; k < 3; ++k) {
    extent[k] = hi[k] - lo[k];
    if (extent[k] > 0.0) ++kept;
  }

  double total = 0.0;
  for (const auto& r : reference) {
    const auto rv = objective_array(r);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : obtained) {
      const auto ov = objective_array(o);
      double d2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        if (kept > 0 && extent[k] <= 0.0) continue;  // degenerate axis carries no information
        const double num = ov[k] - rv[k];
        const double d = kept > 0 ? num / extent[k] : num;
        d2 += d * d;
      }
      best = std::min(best, d2);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

std::array<std::vector<double>, 3> acr(const RunHistory& history, double eps) {
  const std::array<const std::vector<double>*, 3> series{&history.best_f1, &history.best_f2,
                                                         &history.best_f3};
  std::array<std::vector<double>, 3> out;
  for (int k = 0; k < 3; ++k) {
    const auto& b = *series[k];
    if (b.size() < 2) throw std::invalid_argument("acr: history needs at least two iterations");
    const double denom = std::abs(b.front() - b.back()) + eps;
    out[k].reserve(b.size() - 1);
    for (std::size_t t = 1; t < b.size(); ++t)
      out[k].push_back(std::abs(b[t] - b[t - 1]) / denom);
  }
  return out;
}

std::vector<ObjectiveVector> pareto_pool(const std::vector<std::vector<ObjectiveVector>>& sets) {
  std::vector<ObjectiveVector> all;
  for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
  std::vector<ObjectiveVector> pool;
  for (const auto& cand : all) {
    bool skip = false;
    for (const auto& other : all)
      if (dominates(other, cand)) {
        skip = true;
        break;
      }
    if (!skip)
      for (const auto& p : pool)
        if (p == cand) {
          skip = true;
          break;
        }
    if (!skip) pool.push_back(cand);
  }
  return pool;
}

}  // namespace cb
