// Copyright 2026 The trotterlab Authors
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

#include <algorithm>
#include <cmath>
#include <vector>

#include "trotterlab/experiments.hpp"

namespace trotterlab {

FitReport fit_loglog_slope(std::span<const FitPoint> points, FitWindow window, double floor) {
  FitReport report;
  report.window = window;
  std::vector<double> lx;
  std::vector<double> ly;
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = 0.0;
  for (const auto& p : points) {
    if (!window.contains(p.x)) continue;
    if (!(p.x > 0.0)) throw InvalidArgument("fit_loglog_slope: x must be positive");
    if (!(p.y > std::max(floor, p.floor)) || !std::isfinite(p.y)) {
      ++report.points_excluded;
      continue;
    }
    lx.push_back(std::log(p.x));
    ly.push_back(std::log(p.y));
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const auto n = static_cast<int>(lx.size());
  if (n < 3) {
    throw TooFewPoints("fit_loglog_slope: " + std::to_string(n) + " usable points, need at least 3");
  }
  double mx = 0.0;
  double my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw TooFewPoints("fit_loglog_slope: all usable x values coincide");
  report.slope = sxy / sxx;
  report.intercept = my - report.slope * mx;
  const double ss_res = std::max(0.0, syy - report.slope * sxy);
  report.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  report.points_used = n;
  report.max_min_ratio = ymax / ymin;
  report.valid = true;
  return report;
}

const FitReport* SweepTable::fit(const std::string& series) const {
  for (const auto& f : fits) {
    if (f.series == series) return &f;
  }
  return nullptr;
}

}  // namespace trotterlab
