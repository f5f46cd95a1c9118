#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ns1d {

/// Result of one experiment. `pass` is a deterministic function of the
/// measured values and the thresholds stored alongside them.
struct ExperimentOutcome {
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, double>> measured;  // insertion-ordered
  std::vector<std::string> artifacts;
  std::string note;  ///< free-form error text for failed sweep points

  void add(const std::string& key, double value) { measured.emplace_back(key, value); }

  double get(const std::string& key) const {
    for (const auto& [k, v] : measured)
      if (k == key) return v;
    return 0.0;
  }
};

}  // namespace ns1d
