#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clustereval {

inline constexpr const char* kInvalidLabel = "INVALID";

// Answer string -> cluster label. Invalid answers carry kInvalidLabel and
// are scored as an ordinary cluster.
struct Clustering {
  std::map<std::string, std::string> labels;
};

// {"items": {"answer string": "cluster label", ...}}
Clustering parse_clustering(std::istream& in);

struct LinkCounts {
  std::size_t coref_gold = 0;
  std::size_t coref_response = 0;
  std::size_t coref_common = 0;
  std::size_t noncoref_gold = 0;
  std::size_t noncoref_response = 0;
  std::size_t noncoref_common = 0;
};

struct BlancResult {
  // Unset when fewer than two items are shared by both clusterings.
  std::optional<double> score;
  double coref_f = 0.0;
  double noncoref_f = 0.0;
  LinkCounts links;
  std::size_t common_items = 0;
  std::vector<std::string> only_in_gold;
  std::vector<std::string> only_in_response;
};

// BLANC over the items both clusterings label: the mean of the F-scores on
// coreference links (pairs sharing a label) and non-coreference links.
// When neither side has coreference links the score is the non-coreference
// F, and symmetrically when neither side has non-coreference links.
BlancResult blanc(const Clustering& gold, const Clustering& response);

}  // namespace clustereval
