#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace clustereval {

// Interned synset identifier. Only equality is meaningful.
using SynsetId = std::uint32_t;

struct LexiconOptions {
  // WordNet-style suffix detachment and exception lists, tried only when a
  // direct lookup finds nothing.
  bool morphology = false;
};

// Maps lemmas (multiword lemmas joined with '_') to synset sets.
// Immutable after loading.
class Lexicon {
 public:
  Lexicon() = default;

  // "lemma words: synsetid synsetid ..." per line, '#' starts a comment.
  static Lexicon from_simplified(std::istream& in, LexiconOptions options = {});

  // Reads index.{noun,verb,adj,adv} and, when present, the matching .exc
  // exception lists from a WordNet 3.x dict directory.
  static Lexicon from_wordnet_dir(const std::filesystem::path& dir,
                                  LexiconOptions options = {});

  // Directory -> WordNet database, regular file -> simplified format.
  static Lexicon load(const std::filesystem::path& source,
                      LexiconOptions options = {});

  // Sorted, duplicate free. Empty when the phrase is unknown.
  std::vector<SynsetId> synset_ids(std::string_view phrase) const;
  std::set<std::string> synsets(std::string_view phrase) const;

  const std::string& synset_name(SynsetId id) const { return names_[id]; }

  // Candidate base forms produced by the morphology rules, in the order
  // they are tried. Exposed for diagnostics and tests.
  std::vector<std::string> base_forms(std::string_view word) const;

  bool morphology() const { return options_.morphology; }
  std::size_t lemma_count() const { return entries_.size(); }
  const std::string& format() const { return format_; }
  const std::string& version() const { return version_; }

 private:
  SynsetId intern(std::string_view name);
  void add(std::string lemma, SynsetId id);
  void finalize();
  std::vector<SynsetId> lookup_key(const std::string& key) const;

  LexiconOptions options_;
  std::unordered_map<std::string, std::vector<SynsetId>> entries_;
  std::unordered_map<std::string, std::vector<std::string>> exceptions_;
  std::unordered_map<std::string, SynsetId> ids_;
  std::vector<std::string> names_;
  std::string format_ = "empty";
  std::string version_ = "none";
};

// Lemma key for a phrase: normalized, internal spaces mapped to '_'.
std::string lemma_key(std::string_view phrase);

}  // namespace clustereval
