#pragma once
// Shared fixtures: tiny deterministic lexicons, session builders, a
// temp-dir guard and lazily-trained models reused across test cases.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bullyguard/engine.hpp"
#include "bullyguard/sentiment.hpp"
#include "bullyguard/types.hpp"
#include "bullyguard/workload.hpp"

namespace testutil {

using namespace bullyguard;

inline UserProfile profile(std::int64_t followers, std::int64_t followings,
                           std::int64_t posts) {
  UserProfile p;
  p.follower_count = followers;
  p.following_count = followings;
  p.post_count = posts;
  return p;
}

inline MediaSession session(std::string id, UserProfile poster, std::string caption,
                            Tick created_at = 0) {
  MediaSession s;
  s.session_id = std::move(id);
  s.poster = poster;
  s.caption = std::move(caption);
  s.created_at = created_at;
  return s;
}

inline void add_comments(MediaSession& s, const std::vector<std::string>& texts,
                         Tick start = 1, Tick spacing = 1) {
  Tick at = s.created_at + start;
  for (const std::string& text : texts) {
    s.comments.push_back(Comment{at, text});
    at += spacing;
  }
}

// bad/nice/idiot/good with fixed scores; idiot is the only negative word
inline SentimentLexicon tiny_lexicon() {
  SentimentLexicon lex;
  lex.entries["bad"] = {-0.7, 0.6};
  lex.entries["nice"] = {0.5, 0.4};
  lex.entries["idiot"] = {-0.9, 0.9};
  lex.entries["good"] = {0.6, 0.5};
  lex.negative_words.insert("idiot");
  return lex;
}

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::atomic<std::uint64_t> counter{0};
    const auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0; attempt < 1000; ++attempt) {
      auto candidate =
          base / ("bullyguard-test-" + std::to_string(counter.fetch_add(1)) + "-" +
                  std::to_string(attempt));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path = candidate;
        return;
      }
    }
    throw std::runtime_error("could not create a temp directory");
  }

  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }

  std::filesystem::path file(const std::string& name) const { return path / name; }
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// A balanced labeled workload for training; distinct from the evaluation
// seeds used in the tests themselves.
inline WorkloadConfig training_workload_config() {
  WorkloadConfig config;
  config.session_count = 240;
  config.bully_fraction = 0.35;
  config.rng_seed = 7001;
  config.session_window = 20000;
  return config;
}

// Trained once per binary; every test case shares the same models.
inline const Models& trained_models() {
  static const Models models = [] {
    const SentimentLexicon& lexicon = builtin_lexicon();
    std::vector<MediaSession> sessions =
        materialize_sessions(generate_workload(training_workload_config()));
    TrainConfig config;
    Models m;
    m.main = train(main_examples(sessions, lexicon, 10), config);
    std::vector<LabeledExample> examples = predictor_examples(sessions, lexicon);
    m.predictor = train(examples, config);
    m.predictor.decision_threshold = tune_predictor(m.predictor, examples, 0.6);
    return m;
  }();
  return models;
}

}  // namespace testutil
