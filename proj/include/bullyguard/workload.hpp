#pragma once
// Seeded synthetic workload generation: poster profiles, captions and
// comment streams for benign and bullied sessions. Bullied sessions
// receive bursts of insult-heavy comments; a configurable fraction buries
// an early burst under a long supportive flood, which defeats classifiers
// that only look at a whole session at once. Generation is bit-reproducible
// for a given config.

#include <cstdint>
#include <vector>

#include "bullyguard/trace.hpp"
#include "bullyguard/types.hpp"

namespace bullyguard {

struct WorkloadConfig {
  std::size_t session_count = 1000;
  double bully_fraction = 0.05;
  std::uint64_t rng_seed = 1;

  // session creations are uniform over [0, session_window)
  Tick session_window = 60000;

  // benign sessions: a steady trickle of comments
  int benign_comments_min = 18;
  int benign_comments_max = 42;
  Tick benign_spacing_min = 2;
  Tick benign_spacing_max = 40;
  double benign_negative_token_probability = 0.02;

  // bullied sessions: a short calm prefix, then bursts of negative
  // comments with small calm gaps between them
  int bully_calm_prefix_max = 3;
  int bully_bursts_min = 2;
  int bully_bursts_max = 4;
  int bully_burst_length_min = 12;
  int bully_burst_length_max = 20;
  int bully_gap_length_min = 2;
  int bully_gap_length_max = 6;
  Tick burst_spacing_max = 2;
  double bully_negative_token_probability = 0.65;

  // fraction of bullied sessions whose early burst is followed by a long
  // supportive flood
  double flood_fraction = 0.2;
  int flood_tail_min = 80;
  int flood_tail_max = 160;

  // profile separability: bullied sessions draw a latent risk in
  // [risk_overlap_low, 1], benign in [0, risk_overlap_high]; the overlap
  // keeps the profile-only predictor useful but imperfect
  double risk_overlap_low = 0.35;
  double risk_overlap_high = 0.65;

  void validate() const;
};

Trace generate_workload(const WorkloadConfig& config);

// Builds the fully-arrived sessions a trace describes (ignoring event
// timing), in creation order: ready for direct feature/classifier tests
// and training-set construction.
std::vector<MediaSession> materialize_sessions(const Trace& trace);

}  // namespace bullyguard
