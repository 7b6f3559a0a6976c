#include "clustereval/text.h"

#include <sstream>

#include "stopwords_data.h"

namespace clustereval::text {

namespace {

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

char lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                : static_cast<char>(c);
}

}  // namespace

bool is_word_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_punct_char(unsigned char c) { return !is_word_char(c) && !is_space(c); }

StopwordList StopwordList::load(std::istream& in) {
  StopwordList list;
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with('#')) continue;
    std::string word = normalize(line);
    if (!word.empty()) list.words_.insert(std::move(word));
  }
  return list;
}

const StopwordList& StopwordList::english() {
  static const StopwordList list = [] {
    std::istringstream in(detail::kStopwordData);
    return load(in);
  }();
  return list;
}

bool StopwordList::contains(std::string_view word) const {
  return words_.count(std::string(word)) > 0;
}

std::string normalize(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(lower(c));
  }

  // Strip punctuation at both ends; stripping can expose whitespace, so
  // repeat until stable.
  std::size_t begin = 0;
  std::size_t end = out.size();
  for (;;) {
    const std::size_t b0 = begin;
    const std::size_t e0 = end;
    while (begin < end && (is_punct_char(out[begin]) || out[begin] == ' '))
      ++begin;
    while (end > begin &&
           (is_punct_char(out[end - 1]) || out[end - 1] == ' '))
      --end;
    if (b0 == begin && e0 == end) break;
  }
  return out.substr(begin, end - begin);
}

TokenSequence split_words(std::string_view raw) {
  const std::string norm = normalize(raw);
  TokenSequence tokens;
  std::string current;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    const unsigned char c = norm[i];
    if (is_word_char(c)) {
      current.push_back(static_cast<char>(c));
      continue;
    }
    const bool inner_apostrophe = c == '\'' && !current.empty() &&
                                  i + 1 < norm.size() &&
                                  is_word_char(norm[i + 1]);
    if (inner_apostrophe) {
      current.push_back('\'');
      continue;
    }
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TokenSequence tokenize_content(std::string_view raw,
                               const StopwordList& stopwords) {
  TokenSequence tokens;
  for (auto& token : split_words(raw)) {
    if (!stopwords.contains(token)) tokens.push_back(std::move(token));
  }
  return tokens;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

}  // namespace clustereval::text
