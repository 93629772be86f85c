#include "bullyguard/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

#include "bullyguard/rng.hpp"

namespace bullyguard {

namespace {

const char* const kInsults[] = {
    "idiot",  "stupid",   "dumb",       "loser",    "ugly",      "pathetic",
    "worthless", "trash", "moron",      "jerk",     "gross",     "disgusting",
    "annoying",  "awful", "horrible",   "terrible", "nasty",     "lame",
    "useless",   "clown", "fake",       "liar",     "freak",     "creep",
    "hopeless",  "brainless", "toxic",  "obnoxious",
};

const char* const kPositives[] = {
    "love",     "great",  "awesome",   "amazing", "cool",      "nice",
    "good",     "best",   "fun",       "funny",   "beautiful", "cute",
    "sweet",    "happy",  "perfect",   "brilliant", "wonderful", "hilarious",
    "epic",     "adorable", "fantastic", "lovely", "stunning",  "congrats",
    "wow",
};

const char* const kMildNegatives[] = {
    "sad",  "bad",   "boring", "angry", "upset",
    "wrong", "poor", "mess",   "worst", "disappointing",
};

const char* const kNeutrals[] = {
    "video", "today",  "watch",   "new",    "first",  "really", "very",
    "maybe", "think",  "feel",    "school", "game",   "music",  "photo",
    "weekend", "team", "story",   "update", "stream", "clip",   "part",
    "episode",
};

template <std::size_t N>
const char* pick(std::mt19937_64& rng, const char* const (&pool)[N]) {
  return pool[uniform_int(rng, 0, static_cast<std::int64_t>(N) - 1)];
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(std::string("workload config: ") + message);
}

void require_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string("workload config: ") + name +
                                " outside [0,1]");
  }
}

std::string session_name(std::size_t index) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "s%06zu", index);
  return buffer;
}

class TextSampler {
 public:
  explicit TextSampler(const WorkloadConfig& config) : config_(config) {}

  std::string benign(std::mt19937_64& rng) const {
    return sample(rng, config_.benign_negative_token_probability, 0.0, 0.45);
  }

  std::string burst(std::mt19937_64& rng) const {
    int length = word_count(rng);
    std::string text = bernoulli(rng, 0.9) ? pick(rng, kInsults) : pick(rng, kNeutrals);
    for (int i = 1; i < length; ++i) {
      text += ' ';
      double u = uniform01(rng);
      if (u < config_.bully_negative_token_probability) {
        text += pick(rng, kInsults);
      } else if (u < config_.bully_negative_token_probability + 0.1) {
        text += pick(rng, kMildNegatives);
      } else {
        text += pick(rng, kNeutrals);
      }
    }
    return text;
  }

  std::string flood(std::mt19937_64& rng) const {
    return sample(rng, 0.005, 0.0, 0.75);
  }

  std::string caption(std::mt19937_64& rng, double risk) const {
    double p_insult = 0.3 * std::max(0.0, risk - 0.4);
    double p_mild = 0.1 + 0.45 * risk;
    double p_positive = 0.55 * (1.0 - risk);
    return sample(rng, p_insult, p_mild, p_positive);
  }

 private:
  int word_count(std::mt19937_64& rng) const {
    return static_cast<int>(uniform_int(rng, 3, 8));
  }

  std::string sample(std::mt19937_64& rng, double p_insult, double p_mild,
                     double p_positive) const {
    int length = word_count(rng);
    std::string text;
    for (int i = 0; i < length; ++i) {
      if (i > 0) text += ' ';
      double u = uniform01(rng);
      if (u < p_insult) {
        text += pick(rng, kInsults);
      } else if (u < p_insult + p_mild) {
        text += pick(rng, kMildNegatives);
      } else if (u < p_insult + p_mild + p_positive) {
        text += pick(rng, kPositives);
      } else {
        text += pick(rng, kNeutrals);
      }
    }
    return text;
  }

  const WorkloadConfig& config_;
};

}  // namespace

void WorkloadConfig::validate() const {
  require(session_count >= 1, "session_count must be positive");
  require_prob(bully_fraction, "bully_fraction");
  require_prob(benign_negative_token_probability,
               "benign_negative_token_probability");
  require_prob(bully_negative_token_probability,
               "bully_negative_token_probability");
  require_prob(flood_fraction, "flood_fraction");
  require_prob(risk_overlap_low, "risk_overlap_low");
  require_prob(risk_overlap_high, "risk_overlap_high");
  require(risk_overlap_low <= risk_overlap_high,
          "risk overlap bounds out of order");
  require(session_window >= 1, "session_window must be positive");
  require(benign_comments_min >= 0 && benign_comments_min <= benign_comments_max,
          "benign comment count range invalid");
  require(benign_spacing_min >= 0 && benign_spacing_min <= benign_spacing_max,
          "benign spacing range invalid");
  require(bully_calm_prefix_max >= 0, "bully_calm_prefix_max negative");
  require(bully_bursts_min >= 1 && bully_bursts_min <= bully_bursts_max,
          "burst count range invalid");
  require(bully_burst_length_min >= 1 &&
              bully_burst_length_min <= bully_burst_length_max,
          "burst length range invalid");
  require(bully_gap_length_min >= 0 && bully_gap_length_min <= bully_gap_length_max,
          "burst gap range invalid");
  require(burst_spacing_max >= 0, "burst_spacing_max negative");
  require(flood_tail_min >= 0 && flood_tail_min <= flood_tail_max,
          "flood tail range invalid");
}

Trace generate_workload(const WorkloadConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.rng_seed);
  TextSampler sampler(config);
  Trace trace;

  for (std::size_t i = 0; i < config.session_count; ++i) {
    const std::string id = session_name(i);
    const bool bully = bernoulli(rng, config.bully_fraction);
    const double risk =
        bully ? config.risk_overlap_low +
                    uniform01(rng) * (1.0 - config.risk_overlap_low)
              : uniform01(rng) * config.risk_overlap_high;

    SessionEvent session;
    session.id = id;
    session.created_at = uniform_int(rng, 0, config.session_window - 1);
    auto scaled = [&rng](double base, double floor, double slope) {
      double jitter = 0.6 + 0.8 * uniform01(rng);
      return static_cast<std::int64_t>(std::lround(base * (floor + slope) * jitter));
    };
    session.followers = scaled(4000.0, 0.15, 0.85 * (1.0 - risk));
    session.followings = scaled(1500.0, 0.2, 0.8 * risk);
    session.posts = scaled(300.0, 0.1, 0.9 * (1.0 - risk));
    session.caption = sampler.caption(rng, risk);
    session.label = bully;
    trace.events.emplace_back(std::move(session));

    Tick t = std::get<SessionEvent>(trace.events.back()).created_at;
    auto emit = [&](Tick lo, Tick hi, std::string text) {
      t += uniform_int(rng, lo, hi);
      CommentEvent comment;
      comment.session_id = id;
      comment.at = t;
      comment.text = std::move(text);
      trace.events.emplace_back(std::move(comment));
    };

    if (!bully) {
      int count = static_cast<int>(
          uniform_int(rng, config.benign_comments_min, config.benign_comments_max));
      for (int c = 0; c < count; ++c) {
        emit(config.benign_spacing_min, config.benign_spacing_max,
             sampler.benign(rng));
      }
      continue;
    }

    int prefix = static_cast<int>(uniform_int(rng, 0, config.bully_calm_prefix_max));
    for (int c = 0; c < prefix; ++c) {
      emit(config.benign_spacing_min, config.benign_spacing_max,
           sampler.benign(rng));
    }
    const bool flood = bernoulli(rng, config.flood_fraction);
    int bursts = flood ? 1
                       : static_cast<int>(uniform_int(rng, config.bully_bursts_min,
                                                      config.bully_bursts_max));
    for (int b = 0; b < bursts; ++b) {
      int burst_length = static_cast<int>(uniform_int(
          rng, config.bully_burst_length_min, config.bully_burst_length_max));
      for (int c = 0; c < burst_length; ++c) {
        emit(0, config.burst_spacing_max, sampler.burst(rng));
      }
      if (b + 1 < bursts) {
        int gap = static_cast<int>(uniform_int(rng, config.bully_gap_length_min,
                                               config.bully_gap_length_max));
        for (int c = 0; c < gap; ++c) {
          emit(config.benign_spacing_min, config.benign_spacing_max,
               sampler.benign(rng));
        }
      }
    }
    if (flood) {
      int tail = static_cast<int>(
          uniform_int(rng, config.flood_tail_min, config.flood_tail_max));
      for (int c = 0; c < tail; ++c) {
        emit(0, 3, sampler.flood(rng));
      }
    }
  }

  std::stable_sort(trace.events.begin(), trace.events.end(),
                   [](const TraceEvent& a, const TraceEvent& b) {
                     return event_time(a) < event_time(b);
                   });
  return trace;
}

std::vector<MediaSession> materialize_sessions(const Trace& trace) {
  trace.validate();
  std::vector<MediaSession> sessions;
  std::unordered_map<std::string, std::size_t> index;
  for (const TraceEvent& event : trace.events) {
    if (const auto* s = std::get_if<SessionEvent>(&event)) {
      MediaSession session;
      session.session_id = s->id;
      session.poster = UserProfile{s->followers, s->followings, s->posts};
      session.caption = s->caption;
      session.created_at = s->created_at;
      session.ground_truth_label = s->label;
      index[s->id] = sessions.size();
      sessions.push_back(std::move(session));
    } else {
      const auto& c = std::get<CommentEvent>(event);
      sessions[index.at(c.session_id)].comments.push_back(
          Comment{c.at, c.text});
    }
  }
  return sessions;
}

}  // namespace bullyguard
