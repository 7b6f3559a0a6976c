#include "clustereval/lexicon.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "clustereval/dataset.h"
#include "clustereval/text.h"

namespace clustereval {

namespace {

struct SuffixRule {
  std::string_view suffix;
  std::string_view replacement;
};

// Noun rules followed by verb rules, in WordNet's detachment order.
constexpr SuffixRule kDetachmentRules[] = {
    {"s", ""},     {"ses", "s"}, {"xes", "x"}, {"zes", "z"}, {"ches", "ch"},
    {"shes", "sh"}, {"men", "man"}, {"ies", "y"}, {"es", "e"}, {"es", ""},
    {"ed", "e"},   {"ed", ""},   {"ing", "e"}, {"ing", ""},
};

constexpr const char* kWordnetIndexFiles[] = {"index.noun", "index.verb",
                                              "index.adj", "index.adv"};
constexpr const char* kWordnetExceptionFiles[] = {"noun.exc", "verb.exc"};

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (in >> field) out.push_back(field);
  return out;
}

std::string lower_ascii(std::string s) {
  for (auto& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

std::string read_version(const std::filesystem::path& dir) {
  std::ifstream in(dir / "LICENSE");
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find("WordNet Release ");
    if (pos == std::string::npos) continue;
    auto fields = split_ws(line.substr(pos + 16));
    if (!fields.empty()) return fields.front();
  }
  return "unknown";
}

}  // namespace

std::string lemma_key(std::string_view phrase) {
  std::string key = text::normalize(phrase);
  std::replace(key.begin(), key.end(), ' ', '_');
  return key;
}

SynsetId Lexicon::intern(std::string_view name) {
  auto [it, inserted] =
      ids_.emplace(std::string(name), static_cast<SynsetId>(names_.size()));
  if (inserted) names_.emplace_back(name);
  return it->second;
}

void Lexicon::add(std::string lemma, SynsetId id) {
  entries_[std::move(lemma)].push_back(id);
}

void Lexicon::finalize() {
  for (auto& [lemma, ids] : entries_) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
}

Lexicon Lexicon::from_simplified(std::istream& in, LexiconOptions options) {
  Lexicon lex;
  lex.options_ = options;
  lex.format_ = "simplified";
  lex.version_ = "simplified";
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (split_ws(line).empty()) continue;
    const auto colon = line.rfind(':');
    if (colon == std::string::npos)
      throw ParseError(lineno, "lexicon entry without ':'");
    std::string key = lemma_key(line.substr(0, colon));
    auto ids = split_ws(line.substr(colon + 1));
    if (key.empty()) throw ParseError(lineno, "lexicon entry without a lemma");
    if (ids.empty())
      throw ParseError(lineno, "lemma \"" + key + "\" has no synsets");
    for (const auto& id : ids) lex.add(key, lex.intern(id));
  }
  lex.finalize();
  return lex;
}

Lexicon Lexicon::from_wordnet_dir(const std::filesystem::path& dir,
                                  LexiconOptions options) {
  Lexicon lex;
  lex.options_ = options;
  lex.format_ = "wordnet";
  lex.version_ = read_version(dir);
  bool any_index = false;
  for (const char* name : kWordnetIndexFiles) {
    std::ifstream in(dir / name);
    if (!in) continue;
    any_index = true;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      // License preamble lines start with two spaces.
      if (line.empty() || line[0] == ' ') continue;
      const auto fields = split_ws(line);
      // lemma pos synset_cnt p_cnt [ptr...] sense_cnt tagsense_cnt offset...
      std::size_t synset_cnt = 0;
      try {
        if (fields.size() < 4) throw std::invalid_argument("short");
        synset_cnt = std::stoul(fields[2]);
      } catch (const std::exception&) {
        throw ParseError(lineno, std::string(name) + ": malformed index line");
      }
      if (synset_cnt == 0 || fields.size() < 4 + synset_cnt)
        throw ParseError(lineno, std::string(name) + ": malformed index line");
      const std::string key = lower_ascii(fields[0]);
      const std::string& pos = fields[1];
      for (std::size_t i = fields.size() - synset_cnt; i < fields.size(); ++i)
        lex.add(key, lex.intern(fields[i] + "-" + pos));
    }
  }
  if (!any_index)
    throw std::runtime_error("no WordNet index files found in " +
                             dir.string());
  for (const char* name : kWordnetExceptionFiles) {
    std::ifstream in(dir / name);
    std::string line;
    while (std::getline(in, line)) {
      auto fields = split_ws(line);
      if (fields.size() < 2) continue;
      auto& bases = lex.exceptions_[lower_ascii(fields[0])];
      for (std::size_t i = 1; i < fields.size(); ++i)
        bases.push_back(lower_ascii(fields[i]));
    }
  }
  lex.finalize();
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& source,
                      LexiconOptions options) {
  if (std::filesystem::is_directory(source))
    return from_wordnet_dir(source, options);
  std::ifstream in(source);
  if (!in) throw std::runtime_error("cannot read lexicon " + source.string());
  return from_simplified(in, options);
}

std::vector<SynsetId> Lexicon::lookup_key(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? std::vector<SynsetId>{} : it->second;
}

std::vector<std::string> Lexicon::base_forms(std::string_view word) const {
  std::vector<std::string> forms;
  auto push = [&forms](std::string f) {
    if (!f.empty() && std::find(forms.begin(), forms.end(), f) == forms.end())
      forms.push_back(std::move(f));
  };
  const std::string w(word);
  if (auto it = exceptions_.find(w); it != exceptions_.end())
    for (const auto& base : it->second) push(base);
  for (const auto& rule : kDetachmentRules) {
    if (w.size() > rule.suffix.size() && w.ends_with(rule.suffix))
      push(w.substr(0, w.size() - rule.suffix.size()) +
           std::string(rule.replacement));
  }
  return forms;
}

std::vector<SynsetId> Lexicon::synset_ids(std::string_view phrase) const {
  const std::string key = lemma_key(phrase);
  if (key.empty()) return {};
  auto direct = lookup_key(key);
  if (!direct.empty() || !options_.morphology) return direct;

  // Inflection is detached from the last word of a collocation only.
  const auto split = key.rfind('_');
  const std::string head =
      split == std::string::npos ? "" : key.substr(0, split + 1);
  const std::string last =
      split == std::string::npos ? key : key.substr(split + 1);
  std::vector<SynsetId> merged;
  for (const auto& base : base_forms(last)) {
    auto ids = lookup_key(head + base);
    merged.insert(merged.end(), ids.begin(), ids.end());
  }
  if (!head.empty()) {
    if (auto it = exceptions_.find(key); it != exceptions_.end())
      for (const auto& base : it->second) {
        auto ids = lookup_key(base);
        merged.insert(merged.end(), ids.begin(), ids.end());
      }
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

std::set<std::string> Lexicon::synsets(std::string_view phrase) const {
  std::set<std::string> out;
  for (SynsetId id : synset_ids(phrase)) out.insert(names_[id]);
  return out;
}

}  // namespace clustereval
