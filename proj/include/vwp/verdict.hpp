#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vwp {

struct ConditionCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

// Outcome of a convergence / admissibility decision: overall flag plus one
// entry per inequality with the violated condition identified.
struct ConvergenceVerdict {
  bool pass = true;
  std::vector<ConditionCheck> checks;

  void add(std::string name, bool ok, std::string detail = "") {
    pass = pass && ok;
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.ok) out.push_back(c.name);
    return out;
  }
};

}  // namespace vwp
