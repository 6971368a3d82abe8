/*
 * Copyright 2026 The ncrest Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ncrest/analysis.hpp"

#include <iomanip>
#include <limits>
#include <ostream>

namespace ncrest::analysis {

double AnalysisPoint::increase_percent() const {
  if (a_wnc == 0.0) return a_wonc == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return 100.0 * (a_wonc - a_wnc) / a_wnc;
}

double rest_additional(std::uint64_t n, double p) {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("loss probability p must be in [0,1)");
  const double dn = static_cast<double>(n);
  return dn / (1.0 - p) - dn;
}

double nc_additional(std::uint64_t n, double p, double alpha) {
  if (!(p >= 0.0)) throw DomainError("loss probability p must be non-negative");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must be in [0,1]");
  const double request_loss = alpha * p;
  if (!(request_loss < 1.0)) throw DomainError("alpha*p must be below 1");
  const double dn = static_cast<double>(n);
  return dn / (1.0 - request_loss) - dn;
}

std::vector<AnalysisPoint> sweep(std::uint64_t n, std::span<const double> alphas,
                                 std::span<const double> p_grid) {
  std::vector<AnalysisPoint> points;
  points.reserve(alphas.size() * p_grid.size());
  for (double alpha : alphas) {
    for (double p : p_grid) {
      AnalysisPoint point;
      point.n = n;
      point.p = p;
      point.alpha = alpha;
      point.a_wonc = rest_additional(n, p);
      point.a_wnc = nc_additional(n, p, alpha);
      points.push_back(point);
    }
  }
  return points;
}

void write_sweep_csv(std::ostream& out, std::span<const AnalysisPoint> points) {
  out << "alpha,p,a_wonc,a_wnc,increase_percent\n";
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(6);
  for (const AnalysisPoint& point : points) {
    out << point.alpha << ',' << point.p << ',' << point.a_wonc << ',' << point.a_wnc << ','
        << point.increase_percent() << '\n';
  }
  out.flags(flags);
}

}  // namespace ncrest::analysis
