#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace clustereval::text {

// Ordered lowercase content words. Never contains empty or
// punctuation-only tokens.
using TokenSequence = std::vector<std::string>;

class StopwordList {
 public:
  StopwordList() = default;

  // One lowercase word per line. Blank lines are ignored.
  static StopwordList load(std::istream& in);

  // The English list shipped in data/stopwords.txt.
  static const StopwordList& english();

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Lowercases ASCII letters, trims, collapses whitespace runs to a single
// space and strips leading/trailing punctuation. Idempotent.
std::string normalize(std::string_view raw);

// Splits normalized text into word tokens at whitespace and punctuation.
// Apostrophes between two word characters stay inside the token.
TokenSequence split_words(std::string_view raw);

// split_words with stopwords removed.
TokenSequence tokenize_content(std::string_view raw,
                               const StopwordList& stopwords =
                                   StopwordList::english());

// Bytes >= 0x80 count as word characters so UTF-8 letters survive.
bool is_word_char(unsigned char c);
bool is_punct_char(unsigned char c);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace clustereval::text
