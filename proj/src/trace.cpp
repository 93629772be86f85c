#include "bullyguard/trace.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace bullyguard {

namespace {

using nlohmann::json;

std::string at_line(const std::filesystem::path& path, int line_no) {
  return path.string() + ":" + std::to_string(line_no);
}

const json& require(const json& doc, const char* field, const std::string& where) {
  auto it = doc.find(field);
  if (it == doc.end()) {
    throw std::invalid_argument(where + ": missing field " + field);
  }
  return *it;
}

std::ofstream open_out(const std::filesystem::path& path, const char* what) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(std::string("cannot open ") + what +
                             " for writing: " + path.string());
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(std::string("cannot open ") + what + ": " +
                             path.string());
  }
  return in;
}

}  // namespace

Tick event_time(const TraceEvent& event) {
  if (const auto* s = std::get_if<SessionEvent>(&event)) return s->created_at;
  return std::get<CommentEvent>(event).at;
}

void Trace::validate() const {
  Tick previous = std::numeric_limits<Tick>::min();
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < events.size(); ++i) {
    Tick t = event_time(events[i]);
    if (t < previous) {
      throw std::invalid_argument("trace not sorted by time at event " +
                                  std::to_string(i));
    }
    previous = t;
    if (const auto* s = std::get_if<SessionEvent>(&events[i])) {
      if (!seen.insert(s->id).second) {
        throw std::invalid_argument("duplicate session id in trace: " + s->id);
      }
    } else {
      const auto& c = std::get<CommentEvent>(events[i]);
      if (seen.count(c.session_id) == 0) {
        throw std::invalid_argument("comment before session creation in trace: " +
                                    c.session_id);
      }
    }
  }
}

void write_trace(const Trace& trace, const std::filesystem::path& path) {
  trace.validate();
  std::ofstream out = open_out(path, "trace file");
  for (const TraceEvent& event : trace.events) {
    json line;
    if (const auto* s = std::get_if<SessionEvent>(&event)) {
      line["t"] = "session";
      line["id"] = s->id;
      line["created_at"] = s->created_at;
      line["followers"] = s->followers;
      line["followings"] = s->followings;
      line["posts"] = s->posts;
      line["caption"] = s->caption;
      if (s->label.has_value()) line["label"] = *s->label;
    } else {
      const auto& c = std::get<CommentEvent>(event);
      line["t"] = "comment";
      line["session_id"] = c.session_id;
      line["at"] = c.at;
      line["text"] = c.text;
    }
    out << line.dump() << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed writing trace file: " + path.string());
  }
}

Trace read_trace(const std::filesystem::path& path) {
  std::ifstream in = open_in(path, "trace file");
  Trace trace;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = at_line(path, line_no);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
    std::string type = require(doc, "t", where).get<std::string>();
    if (type == "session") {
      SessionEvent s;
      s.id = require(doc, "id", where).get<std::string>();
      s.created_at = require(doc, "created_at", where).get<Tick>();
      s.followers = require(doc, "followers", where).get<std::int64_t>();
      s.followings = require(doc, "followings", where).get<std::int64_t>();
      s.posts = require(doc, "posts", where).get<std::int64_t>();
      s.caption = require(doc, "caption", where).get<std::string>();
      if (doc.contains("label")) s.label = doc["label"].get<bool>();
      trace.events.emplace_back(std::move(s));
    } else if (type == "comment") {
      CommentEvent c;
      c.session_id = require(doc, "session_id", where).get<std::string>();
      c.at = require(doc, "at", where).get<Tick>();
      c.text = require(doc, "text", where).get<std::string>();
      trace.events.emplace_back(std::move(c));
    } else {
      throw std::invalid_argument(where + ": unknown event type " + type);
    }
  }
  try {
    trace.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return trace;
}

void write_alerts(const std::vector<AlertRecord>& alerts,
                  const std::filesystem::path& path) {
  std::ofstream out = open_out(path, "alert file");
  for (const AlertRecord& alert : alerts) {
    json line;
    line["session_id"] = alert.session_id;
    line["raised_at"] = alert.raised_at;
    line["positives_since_last"] = alert.positives_since_last;
    line["confidence"] = alert.confidence;
    out << line.dump() << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed writing alert file: " + path.string());
  }
}

std::vector<AlertRecord> read_alerts(const std::filesystem::path& path) {
  std::ifstream in = open_in(path, "alert file");
  std::vector<AlertRecord> alerts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = at_line(path, line_no);
    json doc = json::parse(line);
    AlertRecord alert;
    alert.session_id = require(doc, "session_id", where).get<std::string>();
    alert.raised_at = require(doc, "raised_at", where).get<Tick>();
    alert.positives_since_last =
        require(doc, "positives_since_last", where).get<std::size_t>();
    alert.confidence = require(doc, "confidence", where).get<double>();
    alerts.push_back(std::move(alert));
  }
  return alerts;
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
  std::ostringstream out;
  out << "policy,classifier_mode,confidence_threshold,batch_size,sessions,"
         "alerts,precision,recall,mean_gain,total_ticks\n";
  char buffer[64];
  auto fmt = [&buffer](double v) {
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return std::string(buffer);
  };
  for (const MetricsRow& row : rows) {
    out << row.policy << ',' << row.classifier_mode << ','
        << fmt(row.confidence_threshold) << ',' << row.batch_size << ','
        << row.sessions << ',' << row.alerts << ',' << fmt(row.precision) << ','
        << fmt(row.recall) << ',' << fmt(row.mean_gain) << ',' << row.total_ticks
        << '\n';
  }
  return out.str();
}

void write_metrics_csv(const std::vector<MetricsRow>& rows,
                       const std::filesystem::path& path) {
  std::ofstream out = open_out(path, "metrics file");
  out << metrics_csv(rows);
  if (!out) {
    throw std::runtime_error("failed writing metrics file: " + path.string());
  }
}

}  // namespace bullyguard
