#pragma once
// Turns the per-session stream of classification decisions into alerts:
// an alert is raised once a session has accumulated at least
// positives_threshold positive decisions since its previous alert (or
// since the start). Negative decisions never reset the count, and a
// session can alert any number of times.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bullyguard/logistic.hpp"
#include "bullyguard/types.hpp"

namespace bullyguard {

struct AlertRecord {
  std::string session_id;
  Tick raised_at = 0;
  std::size_t positives_since_last = 0;
  double confidence = 0.0;
  // indices into decision_history of the positives that triggered the
  // alert, all strictly after the previous alert's trigger. In-memory
  // detail; not serialized.
  std::vector<std::size_t> decision_indices;
};

class AlertManager {
 public:
  explicit AlertManager(std::size_t positives_threshold = 2);

  // Call after the decision has been appended to the session's
  // decision_history. Emits an alert when the threshold is met and moves
  // the session's last_alert_index to the triggering decision.
  std::optional<AlertRecord> on_classification(MediaSession& session,
                                               const Classification& result,
                                               Tick now) const;

  std::size_t positives_threshold() const { return positives_threshold_; }

 private:
  std::size_t positives_threshold_;
};

}  // namespace bullyguard
