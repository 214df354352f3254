#pragma once

// Reference Spearman and leave-one-out agreement written from the textbook
// definitions, quadratic time, no shared code with the library.

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace oracle {

// rank(x_i) = 1 + #{j: x_j < x_i} + (#{j: x_j == x_i} - 1) / 2
inline std::vector<double> brute_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double less = 0, equal = 0;
    for (double v : x) {
      if (v < x[i]) ++less;
      if (v == x[i]) ++equal;
    }
    r[i] = 1.0 + less + (equal - 1.0) / 2.0;
  }
  return r;
}

inline double brute_pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double sa = 0, sb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
  }
  const double ma = sa / n, mb = sb / n;
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ma) * (b[i] - mb);
    da += (a[i] - ma) * (a[i] - ma);
    db += (b[i] - mb) * (b[i] - mb);
  }
  return num / std::sqrt(da * db);
}

inline double brute_spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return brute_pearson(brute_ranks(a), brute_ranks(b));
}

// Closed form, valid only without ties.
inline double closed_form_spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = brute_ranks(a), rb = brute_ranks(b);
  double d2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  const double n = static_cast<double>(a.size());
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

// ratings[annotator][item] = rating. Each annotator is compared with the mean
// of the others over the items both sides rated.
inline double brute_loo(const std::map<std::string, std::map<std::string, double>>& ratings) {
  double sum = 0;
  int used = 0;
  for (const auto& [who, mine] : ratings) {
    std::vector<double> own, rest;
    for (const auto& [item, v] : mine) {
      double s = 0;
      int n = 0;
      for (const auto& [other, theirs] : ratings) {
        if (other == who) continue;
        auto it = theirs.find(item);
        if (it != theirs.end()) {
          s += it->second;
          ++n;
        }
      }
      if (n == 0) continue;
      own.push_back(v);
      rest.push_back(s / n);
    }
    if (own.size() < 2) continue;
    sum += brute_spearman(own, rest);
    ++used;
  }
  return sum / used;
}

}  // namespace oracle
