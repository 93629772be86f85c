#pragma once
// In-memory session store. Single writer: all mutations flow through the
// engine loop. Comments are append-only; nothing ever removes or reorders
// them.

#include <string>
#include <unordered_map>
#include <vector>

#include "bullyguard/types.hpp"

namespace bullyguard {

class SessionStore {
 public:
  // Fails on duplicate ids. The stored session starts with no processed
  // comments and empty histories regardless of what the argument carried.
  void insert(MediaSession session);

  // Appends comments to an existing session. New arrival times must not
  // precede the last existing one. Cached feature state is untouched.
  void append_comments(const std::string& session_id,
                       const std::vector<Comment>& comments);

  bool contains(const std::string& session_id) const;
  MediaSession& get(const std::string& session_id);
  const MediaSession& get(const std::string& session_id) const;

  std::size_t size() const { return sessions_.size(); }

  // Insertion order, for deterministic iteration.
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::unordered_map<std::string, MediaSession> sessions_;
  std::vector<std::string> ids_;
};

}  // namespace bullyguard
