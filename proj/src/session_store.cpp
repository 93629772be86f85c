#include "bullyguard/session_store.hpp"

#include <stdexcept>

namespace bullyguard {

void SessionStore::insert(MediaSession session) {
  if (session.session_id.empty()) {
    throw std::invalid_argument("session id must be non-empty");
  }
  if (!session.poster.valid()) {
    throw std::invalid_argument("profile counts must be non-negative: " +
                                session.session_id);
  }
  if (sessions_.count(session.session_id) > 0) {
    throw std::invalid_argument("duplicate session id: " + session.session_id);
  }
  Tick last = session.created_at;
  for (const Comment& c : session.comments) {
    if (c.arrival_time < last) {
      throw std::invalid_argument("comments out of order in session: " +
                                  session.session_id);
    }
    last = c.arrival_time;
  }
  session.processed_count = 0;
  session.cached_features.reset();
  session.score_cache.reset();
  session.confidence_history = ConfidenceHistory{};
  session.decision_history.clear();
  session.last_alert_index.reset();

  std::string id = session.session_id;
  sessions_.emplace(id, std::move(session));
  ids_.push_back(std::move(id));
}

void SessionStore::append_comments(const std::string& session_id,
                                   const std::vector<Comment>& comments) {
  MediaSession& session = get(session_id);
  Tick last = session.comments.empty() ? session.created_at
                                       : session.comments.back().arrival_time;
  for (const Comment& c : comments) {
    if (c.arrival_time < last) {
      throw std::invalid_argument("comment arrival time goes backwards in session: " +
                                  session_id);
    }
    last = c.arrival_time;
  }
  session.comments.insert(session.comments.end(), comments.begin(), comments.end());
}

bool SessionStore::contains(const std::string& session_id) const {
  return sessions_.count(session_id) > 0;
}

MediaSession& SessionStore::get(const std::string& session_id) {
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw std::out_of_range("unknown session id: " + session_id);
  }
  return it->second;
}

const MediaSession& SessionStore::get(const std::string& session_id) const {
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw std::out_of_range("unknown session id: " + session_id);
  }
  return it->second;
}

}  // namespace bullyguard
