#pragma once

#include <array>
#include <vector>

#include "cb/optimizer.hpp"

namespace cb {

// Mean over reference points of the minimum Euclidean distance to the obtained set,
// axes normalized to [0,1] by the reference extremes (zero-extent axes dropped).
double igd(const std::vector<ObjectiveVector>& obtained,
           const std::vector<ObjectiveVector>& reference);

// ACR_t(k) = |b_t(k) - b_{t-1}(k)| / (|b_1(k) - b_T(k)| + eps) for t = 2..T,
// where b_t(k) is the best archived value of objective k at iteration t.
std::array<std::vector<double>, 3> acr(const RunHistory& history, double eps = 1e-12);

// Non-dominated union of the given sets (feasibility-rule dominance, duplicates merged).
std::vector<ObjectiveVector> pareto_pool(const std::vector<std::vector<ObjectiveVector>>& sets);

}  // namespace cb
