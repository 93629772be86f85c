#include "bullyguard/sentiment.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bullyguard {

namespace {

bool is_token_byte(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

unsigned char fold(unsigned char c) {
  if (c >= 'A' && c <= 'Z') return static_cast<unsigned char>(c - 'A' + 'a');
  return c;
}

void validate_entry(const std::string& word, const LexiconEntry& e,
                    const std::string& where) {
  if (word.empty()) {
    throw std::invalid_argument(where + ": empty word");
  }
  for (unsigned char c : word) {
    if (std::isspace(c) || (std::isupper(c) != 0)) {
      throw std::invalid_argument(where + ": word must be lowercase without whitespace: " + word);
    }
  }
  if (!(e.polarity >= -1.0 && e.polarity <= 1.0)) {
    throw std::invalid_argument(where + ": polarity outside [-1,1] for " + word);
  }
  if (!(e.subjectivity >= 0.0 && e.subjectivity <= 1.0)) {
    throw std::invalid_argument(where + ": subjectivity outside [0,1] for " + word);
  }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_token_byte(c)) {
      current.push_back(static_cast<char>(fold(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TextScore score_text(std::string_view text, const SentimentLexicon& lexicon) {
  TextScore score;
  double polarity_sum = 0.0;
  double subjectivity_sum = 0.0;
  int matched = 0;
  for (const std::string& token : tokenize(text)) {
    auto it = lexicon.entries.find(token);
    if (it != lexicon.entries.end()) {
      polarity_sum += it->second.polarity;
      subjectivity_sum += it->second.subjectivity;
      ++matched;
    }
    if (lexicon.negative_words.count(token) > 0) {
      ++score.negative_words;
    }
  }
  if (matched > 0) {
    score.polarity = polarity_sum / matched;
    score.subjectivity = subjectivity_sum / matched;
  }
  return score;
}

double polarity(std::string_view text, const SentimentLexicon& lexicon) {
  return score_text(text, lexicon).polarity;
}

double subjectivity(std::string_view text, const SentimentLexicon& lexicon) {
  return score_text(text, lexicon).subjectivity;
}

int negative_word_count(std::string_view text, const SentimentLexicon& lexicon) {
  return score_text(text, lexicon).negative_words;
}

SentimentLexicon load_lexicon(const std::filesystem::path& lexicon_file,
                              const std::filesystem::path& negative_words_file) {
  SentimentLexicon lexicon;

  std::ifstream lex(lexicon_file);
  if (!lex) {
    throw std::runtime_error("cannot open lexicon file: " + lexicon_file.string());
  }
  std::string line;
  int line_no = 0;
  while (std::getline(lex, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string word, pol, subj;
    if (!std::getline(fields, word, '\t') || !std::getline(fields, pol, '\t') ||
        !std::getline(fields, subj)) {
      throw std::invalid_argument(lexicon_file.string() + ":" + std::to_string(line_no) +
                                  ": expected word<TAB>polarity<TAB>subjectivity");
    }
    LexiconEntry entry;
    try {
      entry = LexiconEntry{std::stod(pol), std::stod(subj)};
    } catch (const std::exception&) {
      throw std::invalid_argument(lexicon_file.string() + ":" +
                                  std::to_string(line_no) + ": non-numeric score");
    }
    validate_entry(word, entry, lexicon_file.string() + ":" + std::to_string(line_no));
    lexicon.entries[word] = entry;
  }

  std::ifstream neg(negative_words_file);
  if (!neg) {
    throw std::runtime_error("cannot open negative-word file: " +
                             negative_words_file.string());
  }
  line_no = 0;
  while (std::getline(neg, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    validate_entry(line, LexiconEntry{}, negative_words_file.string() + ":" +
                                             std::to_string(line_no));
    lexicon.negative_words.insert(line);
  }
  return lexicon;
}

namespace {

struct BuiltinWord {
  const char* word;
  double polarity;
  double subjectivity;
  bool negative;  // member of the negative-word list
};

// Insult vocabulary carries both a negative polarity entry and membership
// in the negative-word list; plain negative sentiment ("sad", "boring")
// stays out of that list.
const BuiltinWord kBuiltinWords[] = {
    // negative-word list entries
    {"idiot", -0.8, 0.9, true},
    {"stupid", -0.8, 0.9, true},
    {"dumb", -0.7, 0.85, true},
    {"loser", -0.8, 0.9, true},
    {"ugly", -0.7, 0.85, true},
    {"hate", -0.8, 0.9, true},
    {"pathetic", -0.8, 0.9, true},
    {"worthless", -0.9, 0.9, true},
    {"trash", -0.7, 0.8, true},
    {"garbage", -0.7, 0.8, true},
    {"freak", -0.6, 0.85, true},
    {"creep", -0.7, 0.85, true},
    {"creepy", -0.6, 0.8, true},
    {"moron", -0.8, 0.9, true},
    {"jerk", -0.6, 0.85, true},
    {"gross", -0.6, 0.8, true},
    {"disgusting", -0.7, 0.85, true},
    {"annoying", -0.5, 0.8, true},
    {"awful", -0.7, 0.8, true},
    {"horrible", -0.8, 0.85, true},
    {"terrible", -0.7, 0.8, true},
    {"nasty", -0.6, 0.8, true},
    {"lame", -0.5, 0.75, true},
    {"fat", -0.4, 0.7, true},
    {"failure", -0.7, 0.8, true},
    {"embarrassing", -0.5, 0.75, true},
    {"cringe", -0.5, 0.8, true},
    {"clown", -0.5, 0.75, true},
    {"fake", -0.5, 0.7, true},
    {"liar", -0.7, 0.85, true},
    {"cheater", -0.7, 0.85, true},
    {"coward", -0.6, 0.8, true},
    {"crybaby", -0.6, 0.85, true},
    {"weak", -0.4, 0.7, true},
    {"useless", -0.7, 0.85, true},
    {"dork", -0.4, 0.75, true},
    {"weirdo", -0.5, 0.8, true},
    {"nobody", -0.5, 0.7, true},
    {"reject", -0.5, 0.7, true},
    {"shameful", -0.6, 0.8, true},
    {"brainless", -0.7, 0.85, true},
    {"talentless", -0.6, 0.8, true},
    {"hopeless", -0.6, 0.8, true},
    {"miserable", -0.6, 0.8, true},
    {"repulsive", -0.8, 0.85, true},
    {"vile", -0.8, 0.85, true},
    {"hideous", -0.7, 0.85, true},
    {"insufferable", -0.7, 0.85, true},
    {"obnoxious", -0.6, 0.8, true},
    {"dimwit", -0.7, 0.85, true},
    {"airhead", -0.6, 0.8, true},
    {"buffoon", -0.6, 0.8, true},
    {"imbecile", -0.8, 0.85, true},
    {"ignorant", -0.6, 0.8, true},
    {"petty", -0.5, 0.75, true},
    {"toxic", -0.6, 0.8, true},
    {"rotten", -0.6, 0.75, true},
    {"spineless", -0.6, 0.8, true},
    {"shallow", -0.4, 0.7, true},
    {"phony", -0.5, 0.75, true},

    // negative sentiment, not in the negative-word list
    {"sad", -0.5, 0.75, false},
    {"bad", -0.6, 0.7, false},
    {"boring", -0.4, 0.8, false},
    {"angry", -0.5, 0.8, false},
    {"upset", -0.4, 0.75, false},
    {"wrong", -0.4, 0.6, false},
    {"poor", -0.4, 0.6, false},
    {"disappointing", -0.5, 0.75, false},
    {"mess", -0.4, 0.65, false},
    {"worst", -0.9, 0.85, false},

    // positive sentiment
    {"love", 0.8, 0.85, false},
    {"great", 0.8, 0.75, false},
    {"awesome", 0.9, 0.9, false},
    {"amazing", 0.85, 0.85, false},
    {"cool", 0.5, 0.7, false},
    {"nice", 0.5, 0.65, false},
    {"good", 0.6, 0.6, false},
    {"best", 0.9, 0.8, false},
    {"fun", 0.6, 0.7, false},
    {"funny", 0.6, 0.75, false},
    {"beautiful", 0.8, 0.85, false},
    {"cute", 0.6, 0.8, false},
    {"sweet", 0.6, 0.75, false},
    {"happy", 0.7, 0.8, false},
    {"perfect", 0.9, 0.85, false},
    {"brilliant", 0.85, 0.85, false},
    {"wonderful", 0.85, 0.85, false},
    {"talented", 0.7, 0.75, false},
    {"kind", 0.6, 0.7, false},
    {"friendly", 0.6, 0.7, false},
    {"hilarious", 0.7, 0.85, false},
    {"epic", 0.7, 0.8, false},
    {"fire", 0.6, 0.75, false},
    {"adorable", 0.75, 0.85, false},
    {"fantastic", 0.85, 0.85, false},
    {"lovely", 0.7, 0.8, false},
    {"chill", 0.4, 0.65, false},
    {"smart", 0.6, 0.7, false},
    {"strong", 0.5, 0.6, false},
    {"winner", 0.7, 0.75, false},
    {"proud", 0.6, 0.75, false},
    {"stunning", 0.8, 0.85, false},
    {"glad", 0.5, 0.7, false},
    {"enjoy", 0.6, 0.7, false},
    {"like", 0.4, 0.55, false},
    {"wow", 0.5, 0.8, false},
    {"yes", 0.3, 0.5, false},
    {"thanks", 0.5, 0.6, false},
    {"please", 0.2, 0.4, false},
    {"congrats", 0.7, 0.75, false},

    // mostly objective filler that still matters for subjectivity means
    {"video", 0.0, 0.1, false},
    {"today", 0.0, 0.1, false},
    {"watch", 0.0, 0.2, false},
    {"new", 0.1, 0.3, false},
    {"first", 0.1, 0.25, false},
    {"really", 0.0, 0.5, false},
    {"very", 0.0, 0.45, false},
    {"maybe", 0.0, 0.5, false},
    {"think", 0.0, 0.55, false},
    {"feel", 0.0, 0.6, false},
};

}  // namespace

const SentimentLexicon& builtin_lexicon() {
  static const SentimentLexicon lexicon = [] {
    SentimentLexicon lex;
    for (const BuiltinWord& w : kBuiltinWords) {
      lex.entries[w.word] = LexiconEntry{w.polarity, w.subjectivity};
      if (w.negative) lex.negative_words.insert(w.word);
    }
    return lex;
  }();
  return lexicon;
}

}  // namespace bullyguard
