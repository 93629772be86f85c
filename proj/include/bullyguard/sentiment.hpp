#pragma once
// Deterministic lexicon-based sentiment scoring: polarity, subjectivity
// and negative-word counting. All functions are pure over an immutable
// lexicon and safe for unrestricted parallel use.

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace bullyguard {

struct LexiconEntry {
  double polarity = 0.0;      // [-1, 1]
  double subjectivity = 0.0;  // [0, 1]
};

struct SentimentLexicon {
  std::unordered_map<std::string, LexiconEntry> entries;
  std::unordered_set<std::string> negative_words;
};

// Splits on any non-alphanumeric ASCII character and lowercases ASCII
// letters. Bytes >= 0x80 are kept verbatim as token characters, so UTF-8
// sequences survive intact but are not case-folded.
std::vector<std::string> tokenize(std::string_view text);

// Mean polarity of the tokens found in the lexicon (with multiplicity);
// 0.0 when nothing matches.
double polarity(std::string_view text, const SentimentLexicon& lexicon);

// Mean subjectivity, same aggregation as polarity.
double subjectivity(std::string_view text, const SentimentLexicon& lexicon);

// Tokens (with multiplicity) that are members of the negative-word list.
int negative_word_count(std::string_view text, const SentimentLexicon& lexicon);

// One-pass combined score for a text; the per-field functions above are
// thin wrappers so feature extraction tokenizes each comment once.
struct TextScore {
  double polarity = 0.0;
  double subjectivity = 0.0;
  int negative_words = 0;
};

TextScore score_text(std::string_view text, const SentimentLexicon& lexicon);

// Lexicon file: one `word<TAB>polarity<TAB>subjectivity` entry per line.
// Negative-word file: one lowercase word per line. `#` lines are comments
// in both. Entries are validated (ranges, lowercase, no whitespace).
SentimentLexicon load_lexicon(const std::filesystem::path& lexicon_file,
                              const std::filesystem::path& negative_words_file);

// The lexicon bundled with the repo, compiled in so tests and the
// workload generator need no file paths. data/lexicon.tsv mirrors it.
const SentimentLexicon& builtin_lexicon();

}  // namespace bullyguard
