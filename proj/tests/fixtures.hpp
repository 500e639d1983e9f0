#pragma once

#include <string>
#include <vector>

#include "awci/model.hpp"

namespace awci::testing {

// The three strings of the worked example: S1 (12 positions), S2 (11) and
// S3 (13).
inline Dataset worked_example() {
  Dataset data;
  auto add = [&](std::string id, std::vector<std::string> positions) {
    std::vector<std::vector<std::string>> sets;
    for (const auto& p : positions) {
      std::vector<std::string> set;
      for (char c : p) set.emplace_back(1, c);
      sets.push_back(set);
    }
    data.strings.push_back(build_string(data.alphabet, std::move(id), sets));
  };
  add("S1", {"g", "bp", "x", "np", "dos", "az", "ew", "f", "vl", "huz", "jr", "k"});
  add("S2", {"ck", "fnp", "w", "bd", "x", "clm", "ag", "r", "awx", "p", "fz"});
  add("S3", {"d", "gb", "a", "ps", "n", "ab", "fmw", "ew", "k", "ju", "h", "cr", "z"});
  return data;
}

// Strings given as one token per position; characters of a position are
// its letters.
inline Dataset letters(const std::vector<std::vector<std::string>>& strings) {
  Dataset data;
  int k = 0;
  for (const auto& positions : strings) {
    std::vector<std::vector<std::string>> sets;
    for (const auto& p : positions) {
      std::vector<std::string> set;
      for (char c : p) set.emplace_back(1, c);
      sets.push_back(set);
    }
    data.strings.push_back(
        build_string(data.alphabet, "S" + std::to_string(++k), sets));
  }
  return data;
}

}  // namespace awci::testing
