#pragma once
// Three-queue dynamic multilevel priority scheduling with round-robin and
// static-priority baselines.
//
// Dynamic policy: HIGH admissions enter q1, LOW enter q2. q1 drains in
// strict FIFO order; served sessions are requeued to q2 (HIGH) or q3 (LOW)
// by the mean of their full confidence history. When q1 empties the queues
// rotate (q1 <- q2, q2 <- q3, q3 <- empty), so every admitted session is
// served at least once per two rotations: no starvation.
//
// Round-robin: one queue, pure admission-order cycle, priorities ignored.
// Static: only initially-HIGH sessions are ever queued; the rest get no
// service at all.

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>

#include "bullyguard/types.hpp"

namespace bullyguard {

enum class Policy { Dynamic, RoundRobin, Static };
enum class ChunkMode { Capped, AllAvailable };

const char* to_string(Policy policy);
const char* to_string(ChunkMode mode);
Policy policy_from_name(const std::string& name);       // dynamic|round-robin|static
ChunkMode chunk_mode_from_name(const std::string& name); // capped|all

struct SchedulerConfig {
  Policy policy = Policy::Dynamic;
  double confidence_threshold = 0.2;
  std::size_t batch_size = 10;
  ChunkMode chunk_mode = ChunkMode::Capped;
};

class Scheduler {
 public:
  Scheduler() = default;
  explicit Scheduler(SchedulerConfig config);

  // HIGH -> tail of q1, LOW -> tail of q2 (policy-dependent for the
  // baselines). Admitting a known id is an error.
  void admit(const std::string& session_id, Priority initial_priority);

  // Pops the head of q1, rotating first when q1 is empty and a lower
  // queue is not. Returns nothing only when no queued session remains.
  std::optional<std::string> next();

  // Returns a served session to the queues: HIGH -> tail of q2, LOW ->
  // tail of q3 under the dynamic policy; the baselines cycle through q1.
  // The session must currently be out of the queues (just served).
  void requeue(const std::string& session_id, Priority new_priority);

  // HIGH iff the mean of the session's whole confidence history is at
  // least confidence_threshold (boundary inclusive); updates
  // session.priority when it changes. History must be non-empty.
  Priority setting_priority(MediaSession& session) const;

  // The comments the next classification should fold: the oldest
  // unprocessed ones, capped at batch_size under CAPPED, all of them
  // under ALL_AVAILABLE. The span aliases session.comments.
  std::span<const Comment> take_batch(const MediaSession& session) const;

  const SchedulerConfig& config() const { return config_; }
  std::size_t rotation_count() const { return rotations_; }
  bool admitted(const std::string& session_id) const;
  std::size_t queued_count() const;
  const std::deque<std::string>& queue1() const { return q1_; }
  const std::deque<std::string>& queue2() const { return q2_; }
  const std::deque<std::string>& queue3() const { return q3_; }

 private:
  enum Location { kOutOfQueue = 0, kQ1 = 1, kQ2 = 2, kQ3 = 3 };

  void rotate();
  void push(std::deque<std::string>& queue, Location location,
            const std::string& session_id);

  SchedulerConfig config_;
  std::deque<std::string> q1_;
  std::deque<std::string> q2_;
  std::deque<std::string> q3_;
  // every admitted id has an entry; kOutOfQueue covers both "being
  // served" and "excluded by the static policy"
  std::unordered_map<std::string, Location> location_;
  std::size_t rotations_ = 0;
};

}  // namespace bullyguard
