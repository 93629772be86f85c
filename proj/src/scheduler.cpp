#include "bullyguard/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

namespace bullyguard {

const char* to_string(Policy policy) {
  switch (policy) {
    case Policy::Dynamic: return "dynamic";
    case Policy::RoundRobin: return "round-robin";
    case Policy::Static: return "static";
  }
  return "?";
}

const char* to_string(ChunkMode mode) {
  return mode == ChunkMode::Capped ? "capped" : "all";
}

Policy policy_from_name(const std::string& name) {
  if (name == "dynamic") return Policy::Dynamic;
  if (name == "round-robin") return Policy::RoundRobin;
  if (name == "static") return Policy::Static;
  throw std::invalid_argument("unknown policy: " + name);
}

ChunkMode chunk_mode_from_name(const std::string& name) {
  if (name == "capped") return ChunkMode::Capped;
  if (name == "all") return ChunkMode::AllAvailable;
  throw std::invalid_argument("unknown chunk mode: " + name);
}

Scheduler::Scheduler(SchedulerConfig config) : config_(config) {
  if (!(config_.confidence_threshold >= 0.0 && config_.confidence_threshold <= 1.0)) {
    throw std::invalid_argument("confidence_threshold outside [0,1]");
  }
  if (config_.batch_size == 0) {
    throw std::invalid_argument("batch_size must be positive");
  }
}

void Scheduler::push(std::deque<std::string>& queue, Location location,
                     const std::string& session_id) {
  queue.push_back(session_id);
  location_[session_id] = location;
}

void Scheduler::admit(const std::string& session_id, Priority initial_priority) {
  if (location_.count(session_id) > 0) {
    throw std::invalid_argument("session already admitted: " + session_id);
  }
  switch (config_.policy) {
    case Policy::Dynamic:
      if (initial_priority == Priority::High) {
        push(q1_, kQ1, session_id);
      } else {
        push(q2_, kQ2, session_id);
      }
      break;
    case Policy::RoundRobin:
      push(q1_, kQ1, session_id);
      break;
    case Policy::Static:
      if (initial_priority == Priority::High) {
        push(q1_, kQ1, session_id);
      } else {
        location_[session_id] = kOutOfQueue;  // never served
      }
      break;
  }
}

void Scheduler::rotate() {
  q1_ = std::move(q2_);
  q2_ = std::move(q3_);
  q3_.clear();
  for (const std::string& id : q1_) location_[id] = kQ1;
  for (const std::string& id : q2_) location_[id] = kQ2;
  ++rotations_;
}

std::optional<std::string> Scheduler::next() {
  if (config_.policy == Policy::Dynamic) {
    // two rotations reach q3, so retry at most twice
    for (int attempt = 0; attempt < 2 && q1_.empty(); ++attempt) {
      if (q2_.empty() && q3_.empty()) break;
      rotate();
    }
  }
  if (q1_.empty()) return std::nullopt;
  std::string id = std::move(q1_.front());
  q1_.pop_front();
  location_[id] = kOutOfQueue;
  return id;
}

void Scheduler::requeue(const std::string& session_id, Priority new_priority) {
  auto it = location_.find(session_id);
  if (it == location_.end()) {
    throw std::invalid_argument("requeue of unknown session: " + session_id);
  }
  if (it->second != kOutOfQueue) {
    throw std::invalid_argument("requeue of a session still enqueued: " + session_id);
  }
  switch (config_.policy) {
    case Policy::Dynamic:
      if (new_priority == Priority::High) {
        push(q2_, kQ2, session_id);
      } else {
        push(q3_, kQ3, session_id);
      }
      break;
    case Policy::RoundRobin:
    case Policy::Static:
      push(q1_, kQ1, session_id);
      break;
  }
}

Priority Scheduler::setting_priority(MediaSession& session) const {
  double mean = session.confidence_history.mean();
  Priority updated =
      mean >= config_.confidence_threshold ? Priority::High : Priority::Low;
  session.priority = updated;
  return updated;
}

std::span<const Comment> Scheduler::take_batch(const MediaSession& session) const {
  std::size_t available = session.unprocessed_count();
  std::size_t count = config_.chunk_mode == ChunkMode::Capped
                          ? std::min(available, config_.batch_size)
                          : available;
  return std::span<const Comment>(session.comments.data() + session.processed_count,
                                  count);
}

bool Scheduler::admitted(const std::string& session_id) const {
  return location_.count(session_id) > 0;
}

std::size_t Scheduler::queued_count() const {
  return q1_.size() + q2_.size() + q3_.size();
}

}  // namespace bullyguard
