#pragma once

#include "cb/problem.hpp"

namespace cb {

struct MultihopConfig {
  int hop_count = 1;
  double altitude_m = 90.0;
  double gamma_th_db = 0.0;       // per-hop decode threshold
  double fs_const_db = 32.45;     // free-space reference constant (d in km, f in MHz)
};

MultihopConfig default_multihop(const ScenarioConfig& config);

// Lone relay UAV at its hover point (unit gain) against a lone jammer UAV repositioned
// to the jammer-box point nearest Willie; f3 is the jammer's transit leg.
ObjectiveVector eval_non_cb(const ScenarioConfig& config);

// CB relay (relay segments of `sol`) against a lone unit-gain jammer repositioned as in
// eval_non_cb; f3 covers the relay legs plus the jammer leg.
ObjectiveVector eval_single_cb(const ScenarioConfig& config, const Eigen::VectorXd& sol);

// Equally spaced hop chain LBS -> Bob at mh.altitude_m; air hops use free-space loss,
// the final air-to-sea hop the relay path-loss model with a single antenna. Any hop SNR
// below gamma_th collapses f1/f2 to the 0 sentinel. f3 covers all hop deployment legs.
ObjectiveVector eval_multihop(const ScenarioConfig& config, const MultihopConfig& mh);

}  // namespace cb
