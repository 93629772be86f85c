#include "bullyguard/alerts.hpp"

#include <stdexcept>

namespace bullyguard {

AlertManager::AlertManager(std::size_t positives_threshold)
    : positives_threshold_(positives_threshold) {
  if (positives_threshold_ == 0) {
    throw std::invalid_argument("positives_threshold must be at least 1");
  }
}

std::optional<AlertRecord> AlertManager::on_classification(
    MediaSession& session, const Classification& result, Tick now) const {
  if (session.decision_history.empty()) {
    throw std::logic_error("on_classification before any decision was recorded for " +
                           session.session_id);
  }

  std::size_t scan_from =
      session.last_alert_index.has_value() ? *session.last_alert_index + 1 : 0;
  std::vector<std::size_t> positives;
  for (std::size_t i = scan_from; i < session.decision_history.size(); ++i) {
    if (session.decision_history[i].decision) positives.push_back(i);
  }
  if (positives.size() < positives_threshold_) return std::nullopt;

  AlertRecord alert;
  alert.session_id = session.session_id;
  alert.raised_at = now;
  alert.decision_indices = std::move(positives);
  alert.positives_since_last = alert.decision_indices.size();
  alert.confidence = result.confidence;
  session.last_alert_index = alert.decision_indices.back();
  return alert;
}

}  // namespace bullyguard
