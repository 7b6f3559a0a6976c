// Slow, obviously-correct reference implementations used to check the
// library. None of these share code with the routines they verify.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "clustereval/agreement.h"
#include "clustereval/lexicon.h"
#include "clustereval/text.h"

namespace oracle {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Best one-to-one total by trying every injection of rows into columns.
inline std::int64_t brute_force_assignment(const IntMatrix& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  const std::size_t n = std::max(rows, cols);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = 0;
  do {
    std::int64_t total = 0;
    for (std::size_t r = 0; r < rows; ++r)
      if (perm[r] < cols) total += m[r][perm[r]];
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Every way to cut a sequence into contiguous non-empty pieces.
inline std::vector<std::vector<std::string>> contiguous_partitions(
    const std::vector<std::string>& tokens) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> current;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (start == tokens.size()) {
      out.push_back(current);
      return;
    }
    std::string piece;
    for (std::size_t end = start; end < tokens.size(); ++end) {
      piece += (end > start ? " " : "") + tokens[end];
      current.push_back(piece);
      rec(end + 1);
      current.pop_back();
    }
  };
  if (!tokens.empty()) rec(0);
  return out;
}

inline bool spans_match(const std::string& a, const std::string& b,
                        const clustereval::Lexicon& lex) {
  if (a == b) return true;
  const auto sa = lex.synsets(a);
  const auto sb = lex.synsets(b);
  for (const auto& s : sa)
    if (sb.count(s)) return true;
  return false;
}

// Largest number of disjoint matching span pairs, by exhaustive search over
// partial matchings.
inline int best_partial_matching(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b,
                                 const clustereval::Lexicon& lex) {
  std::vector<bool> used(b.size(), false);
  std::function<int(std::size_t)> rec = [&](std::size_t i) -> int {
    if (i == a.size()) return 0;
    int best = rec(i + 1);  // leave a[i] unmatched
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || !spans_match(a[i], b[j], lex)) continue;
      used[j] = true;
      best = std::max(best, 1 + rec(i + 1));
      used[j] = false;
    }
    return best;
  };
  return rec(0);
}

// Partition score by brute force. With singletons_only, each side is kept
// as one token per span.
inline double partition_score(const std::string& answer,
                              const std::string& reference,
                              const clustereval::Lexicon& lex,
                              bool singletons_only = false) {
  const auto ta = clustereval::text::tokenize_content(answer);
  const auto tb = clustereval::text::tokenize_content(reference);
  if (ta.empty() || tb.empty()) {
    const auto na = clustereval::text::normalize(answer);
    return !na.empty() && na == clustereval::text::normalize(reference) ? 1.0
                                                                         : 0.0;
  }
  std::vector<std::vector<std::string>> pa{ta}, pb{tb};
  if (!singletons_only) {
    pa = contiguous_partitions(ta);
    pb = contiguous_partitions(tb);
  }
  double best = 0.0;
  for (const auto& x : pa)
    for (const auto& y : pb)
      best = std::max(best, static_cast<double>(best_partial_matching(x, y, lex)) /
                                static_cast<double>(std::max(x.size(), y.size())));
  return best;
}

// BLANC by listing every unordered item pair.
inline std::optional<double> blanc(const clustereval::Clustering& gold,
                                   const clustereval::Clustering& response) {
  std::vector<std::string> items;
  for (const auto& [item, label] : gold.labels)
    if (response.labels.count(item)) items.push_back(item);
  if (items.size() < 2) return std::nullopt;
  double cg = 0, cr = 0, cc = 0, ng = 0, nr = 0, nc = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      const bool g = gold.labels.at(items[i]) == gold.labels.at(items[j]);
      const bool r =
          response.labels.at(items[i]) == response.labels.at(items[j]);
      cg += g;
      cr += r;
      cc += g && r;
      ng += !g;
      nr += !r;
      nc += !g && !r;
    }
  }
  auto f = [](double common, double in_gold, double in_response) {
    const double p = in_response > 0 ? common / in_response : 0.0;
    const double r = in_gold > 0 ? common / in_gold : 0.0;
    return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
  };
  const double fc = f(cc, cg, cr);
  const double fn = f(nc, ng, nr);
  if (cg == 0 && cr == 0) return fn;
  if (ng == 0 && nr == 0) return fc;
  return (fc + fn) / 2;
}

// GP posterior mean k*^T (K + s I)^-1 y via Gauss-Jordan elimination with
// partial pivoting in long double.
inline double gp_posterior_mean(const std::vector<std::vector<double>>& train,
                                const std::vector<double>& labels,
                                const std::vector<double>& query,
                                double lengthscale, double noise) {
  const std::size_t n = train.size();
  auto kernel = [&](const std::vector<double>& a, const std::vector<double>& b) {
    long double d2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const long double d = static_cast<long double>(a[i]) - b[i];
      d2 += d * d;
    }
    return std::exp(-d2 / (2.0L * lengthscale * lengthscale));
  };
  std::vector<std::vector<long double>> aug(n, std::vector<long double>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = kernel(train[i], train[j]);
    aug[i][i] += noise;
    aug[i][n] = labels[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(aug[r][col]) > std::fabs(aug[pivot][col])) pivot = r;
    std::swap(aug[col], aug[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const long double factor = aug[r][col] / aug[col][col];
      for (std::size_t c = col; c <= n; ++c) aug[r][c] -= factor * aug[col][c];
    }
  }
  long double mean = 0;
  for (std::size_t i = 0; i < n; ++i)
    mean += kernel(query, train[i]) * (aug[i][n] / aug[i][i]);
  return static_cast<double>(mean);
}

}  // namespace oracle
