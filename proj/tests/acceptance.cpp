// Copyright 2026 The curvgrf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: runs the full-profile validation checks at their pinned
// tolerances and prints one PASS/FAIL line per criterion.  Exit code 0 only
// if every criterion (including the runtime ceilings) holds.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "curvgrf/validate.hpp"

namespace {

// Criterion number -> the checks that implement it.
const std::vector<std::pair<int, std::vector<std::string>>> kCriteria = {
    {1, {"operator-identity-duplication"}},
    {2, {"jet-covariance-mc-n2", "jet-covariance-mc-n3"}},
    {3, {"hessian-pinv-moore-penrose", "sigma-determinant"}},
    {4, {"quadratic-form-reduction"}},
    {5, {"eig-density-m1-normal-collapse", "eig-density-normalization-m2"}},
    {6,
     {"curvature-density-normalization-n2", "curvature-density-normalization-n3",
      "curvature-density-closed-form-n2"}},
    {7, {"curvature-vs-ratio-integral-n2", "curvature-vs-ratio-integral-n3"}},
    {8, {"curvature-ks-n2", "curvature-ks-negative-control"}},
    {9, {"sigma2-invariance-pointwise", "sigma2-invariance-two-sample-ks"}},
    {10, {"grid-curvature-ks", "grid-curvature-ks-refinement"}},
};

}  // namespace

int main() {
  curvgrf::ValidationConfig config;
  config.profile = "full";
  config.seed = 42;

  const curvgrf::ValidationReport report = curvgrf::run_full_validation(config);

  std::map<std::string, const curvgrf::CheckRecord*> by_name;
  for (const auto& check : report.checks) by_name[check.name] = &check;

  bool all_ok = true;
  for (const auto& [number, names] : kCriteria) {
    bool ok = true;
    std::string detail;
    for (const std::string& name : names) {
      const auto it = by_name.find(name);
      if (it == by_name.end()) {
        ok = false;
        detail += " " + name + "=missing";
        continue;
      }
      const curvgrf::CheckRecord& check = *it->second;
      const bool in_budget = check.runtime_seconds < check.runtime_ceiling_seconds;
      ok = ok && check.pass && in_budget;
      char buf[256];
      std::snprintf(buf, sizeof(buf), " %s: stat=%.3g %s %.3g, %.1fs/%.0fs", check.name.c_str(),
                    check.statistic, check.comparison == curvgrf::Comparison::kLess ? "<" : ">",
                    check.threshold, check.runtime_seconds, check.runtime_ceiling_seconds);
      detail += buf;
    }
    std::printf("%s criterion %2d:%s\n", ok ? "PASS" : "FAIL", number, detail.c_str());
    all_ok = all_ok && ok;
  }

  std::printf("%s\n", all_ok ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
  return all_ok ? 0 : 1;
}
