#include "clustereval/agreement.h"

#include "json.hpp"

#include "clustereval/dataset.h"

namespace clustereval {

namespace {

double f_score(std::size_t common, std::size_t response, std::size_t gold) {
  const double p = response > 0 ? static_cast<double>(common) / response : 0.0;
  const double r = gold > 0 ? static_cast<double>(common) / gold : 0.0;
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

Clustering parse_clustering(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid clustering JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("items") || !doc["items"].is_object())
    throw ParseError(0, "clustering must be an object with an \"items\" map");
  Clustering clustering;
  for (const auto& [item, label] : doc["items"].items()) {
    if (!label.is_string())
      throw ParseError(0, "label of \"" + item + "\" must be a string");
    clustering.labels.emplace(item, label.get<std::string>());
  }
  return clustering;
}

BlancResult blanc(const Clustering& gold, const Clustering& response) {
  BlancResult result;
  std::vector<const std::string*> gold_labels;
  std::vector<const std::string*> response_labels;
  for (const auto& [item, label] : gold.labels) {
    auto it = response.labels.find(item);
    if (it == response.labels.end()) {
      result.only_in_gold.push_back(item);
      continue;
    }
    gold_labels.push_back(&label);
    response_labels.push_back(&it->second);
  }
  for (const auto& [item, label] : response.labels)
    if (!gold.labels.count(item)) result.only_in_response.push_back(item);

  const std::size_t n = gold_labels.size();
  result.common_items = n;
  if (n < 2) return result;

  LinkCounts& links = result.links;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool g = *gold_labels[i] == *gold_labels[j];
      const bool r = *response_labels[i] == *response_labels[j];
      links.coref_gold += g;
      links.coref_response += r;
      links.coref_common += g && r;
      links.noncoref_gold += !g;
      links.noncoref_response += !r;
      links.noncoref_common += !g && !r;
    }
  }
  result.coref_f =
      f_score(links.coref_common, links.coref_response, links.coref_gold);
  result.noncoref_f = f_score(links.noncoref_common, links.noncoref_response,
                              links.noncoref_gold);

  if (links.coref_gold == 0 && links.coref_response == 0)
    result.score = result.noncoref_f;
  else if (links.noncoref_gold == 0 && links.noncoref_response == 0)
    result.score = result.coref_f;
  else
    result.score = 0.5 * (result.coref_f + result.noncoref_f);
  return result;
}

}  // namespace clustereval
