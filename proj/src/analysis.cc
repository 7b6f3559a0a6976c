#include "clustereval/analysis.h"

#include <array>
#include <sstream>

#include "clustereval/text.h"

namespace clustereval {

namespace {

const std::vector<std::size_t> kNoTriples;

struct PrefixRule {
  std::vector<std::string_view> words;
  std::string_view replacement;
};

// First match wins; "a"/"an" must be whole words.
const std::array<PrefixRule, 7> kPrefixRules = {{
    {{"name", "something"}, "One thing"},
    {{"tell", "me", "something"}, "One thing"},
    {{"name", "a"}, "One"},
    {{"name", "an"}, "One"},
    {{"how", "can", "you", "tell"}, "One way to tell"},
    {{"give", "me", "a"}, "One"},
    {{"give", "me", "an"}, "One"},
}};

std::string lower_ascii(std::string s) {
  for (auto& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

bool has_common(const std::set<std::string>& a, const std::set<std::string>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

}  // namespace

std::set<std::string> keywords(std::string_view phrase) {
  auto tokens = text::tokenize_content(phrase);
  return {tokens.begin(), tokens.end()};
}

TripleStore TripleStore::load(std::istream& in) {
  TripleStore store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3)
      throw ParseError(lineno, "expected head, relation and tail separated by "
                               "tabs, got " +
                                   std::to_string(fields.size()) + " fields");
    store.add({fields[0], fields[1], fields[2]});
  }
  return store;
}

void TripleStore::add(Triple triple) {
  const std::size_t index = triples_.size();
  head_keywords_.push_back(keywords(triple.head));
  tail_keywords_.push_back(keywords(triple.tail));
  for (const auto& kw : head_keywords_.back()) head_index_[kw].push_back(index);
  for (const auto& kw : tail_keywords_.back()) tail_index_[kw].push_back(index);
  triples_.push_back(std::move(triple));
}

const std::vector<std::size_t>& TripleStore::with_head_keyword(
    const std::string& kw) const {
  auto it = head_index_.find(kw);
  return it == head_index_.end() ? kNoTriples : it->second;
}

const std::vector<std::size_t>& TripleStore::with_tail_keyword(
    const std::string& kw) const {
  auto it = tail_index_.find(kw);
  return it == tail_index_.end() ? kNoTriples : it->second;
}

bool cluster_covered(std::string_view question, const AnswerCluster& cluster,
                     const TripleStore& store) {
  const auto question_kw = keywords(question);
  std::set<std::string> answer_kw;
  for (const auto& member : cluster.answers) answer_kw.merge(keywords(member));
  if (question_kw.empty() || answer_kw.empty()) return false;

  for (const auto& kw : question_kw) {
    for (std::size_t i : store.with_head_keyword(kw))
      if (has_common(store.tail_keywords(i), answer_kw)) return true;
    for (std::size_t i : store.with_tail_keyword(kw))
      if (has_common(store.head_keywords(i), answer_kw)) return true;
  }
  return false;
}

CoverageReport coverage_report(const std::vector<QuestionRecord>& dataset,
                               const TripleStore& store) {
  CoverageReport report;
  for (const auto& q : dataset) {
    QuestionCoverage qc;
    qc.id = q.id;
    qc.clusters = q.clusters.size();
    for (const auto& cluster : q.clusters) {
      if (cluster_covered(q.question_original, cluster, store)) {
        ++qc.covered;
        qc.covered_cluster_ids.push_back(cluster.id);
      }
    }
    report.total_clusters += qc.clusters;
    report.covered_clusters += qc.covered;
    report.questions.push_back(std::move(qc));
  }
  return report;
}

TransformResult transform_question(std::string_view question) {
  std::string stripped(question);
  while (!stripped.empty() &&
         (stripped.back() == '.' || stripped.back() == '?' ||
          stripped.back() == '!' || stripped.back() == ' ' ||
          stripped.back() == '\t' || stripped.back() == '\n' ||
          stripped.back() == '\r'))
    stripped.pop_back();

  std::vector<std::string> words;
  std::istringstream in(stripped);
  for (std::string w; in >> w;) words.push_back(w);

  TransformResult result;
  if (words.empty()) return result;

  for (const auto& rule : kPrefixRules) {
    if (words.size() < rule.words.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < rule.words.size() && match; ++i)
      match = lower_ascii(words[i]) == rule.words[i];
    if (!match) continue;
    std::vector<std::string> rest(words.begin() + rule.words.size(),
                                  words.end());
    result.prompt = std::string(rule.replacement);
    if (!rest.empty()) result.prompt += " " + text::join(rest, " ");
    result.prompt += " is";
    result.rule_matched = true;
    return result;
  }

  // No rule: keep the question as a prefix, ending in "is" exactly once.
  result.prompt = text::join(words, " ");
  if (lower_ascii(words.back()) != "is") result.prompt += " is";
  if (result.prompt[0] >= 'a' && result.prompt[0] <= 'z')
    result.prompt[0] = static_cast<char>(result.prompt[0] - 'a' + 'A');
  return result;
}

}  // namespace clustereval
