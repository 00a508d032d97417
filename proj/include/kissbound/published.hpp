#pragma once

#include <optional>
#include <string>
#include <vector>

namespace kissbound {

/// One dimension of the published kissing-number table: lower bound, earlier
/// upper bound at d = 14, and new upper bounds at d = 14, 15, 16.
struct PublishedRow {
  int n = 0;
  long lower = 0;
  std::string previous_upper_d14;
  std::string upper_d14;
  std::string upper_d15;
  std::string upper_d16;
};

const std::vector<PublishedRow>& published_table();

/// New upper bound at (n, d) as printed, when the table has one.
std::optional<std::string> published_upper(int n, int d);
std::optional<long> published_lower(int n);

}  // namespace kissbound
