#include <algorithm>

#include "accex/error.hpp"
#include "accex/whatif.hpp"

namespace accex {
namespace {

struct SweepPlan {
  std::string target;
  std::vector<std::size_t> target_records;  // positions in profile.records
  Rational base_total;
};

SweepPlan plan_sweep(const WhatIfProfile& profile, std::string_view target,
                     std::span<const Rational> fractions) {
  const Node* node = profile.base.find(target);
  if (!node) throw Error(ErrorCode::UnknownTarget, "unknown function '" + std::string(target) + "'");
  if (node->self_time == 0) {
    throw Error(ErrorCode::ZeroSelfTime, "'" + std::string(target) + "' has no self time");
  }
  for (const Rational& r : fractions) {
    if (r < 0 || r > 1) throw Error(ErrorCode::ParseError, "sweep fractions must lie in [0, 1]");
  }
  SweepPlan plan;
  plan.target = std::string(target);
  for (std::size_t i = 0; i < profile.records.size(); ++i) {
    if (profile.records[i].callee == target) plan.target_records.push_back(i);
  }
  plan.base_total = total_time(recompute(profile));
  return plan;
}

SweepPoint evaluate_point(const WhatIfProfile& profile, const SweepPlan& plan,
                          const Rational& r) {
  WhatIfProfile scaled = profile;
  for (std::size_t i : plan.target_records) scaled.records[i].samples *= (1 - r);
  const CallGraph graph = recompute(scaled);

  SweepPoint point;
  point.reduction = r;
  const Rational total = total_time(graph);
  point.total_reduction_percent =
      plan.base_total > 0 ? Rational((plan.base_total - total) * 100 / plan.base_total)
                          : Rational(0);
  point.shares = self_shares(graph);
  for (const auto& [name, share] : point.shares) {
    if (name == plan.target) {
      point.target_share = share;
    } else {
      point.max_other_share = std::max(point.max_other_share, share);
    }
  }
  return point;
}

std::vector<Rational> sorted_unique(std::span<const Rational> fractions) {
  std::vector<Rational> grid(fractions.begin(), fractions.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

std::vector<Rational> default_sweep_grid() {
  std::vector<Rational> grid;
  for (int i = 0; i <= 20; ++i) grid.emplace_back(i, 20);
  return grid;
}

SweepCurve sweep_serial(const WhatIfProfile& profile, std::string_view target,
                        std::span<const Rational> fractions) {
  const SweepPlan plan = plan_sweep(profile, target, fractions);
  const std::vector<Rational> grid = sorted_unique(fractions);
  SweepCurve curve;
  curve.target = plan.target;
  for (const Rational& r : grid) curve.points.push_back(evaluate_point(profile, plan, r));
  curve.threshold = threshold(curve);
  return curve;
}

SweepCurve sweep(const WhatIfProfile& profile, std::string_view target,
                 std::span<const Rational> fractions) {
  const SweepPlan plan = plan_sweep(profile, target, fractions);
  const std::vector<Rational> grid = sorted_unique(fractions);
  SweepCurve curve;
  curve.target = plan.target;
  curve.points.resize(grid.size());

  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    curve.points[static_cast<std::size_t>(i)] =
        evaluate_point(profile, plan, grid[static_cast<std::size_t>(i)]);
  }
  curve.threshold = threshold(curve);
  return curve;
}

std::optional<Rational> threshold(const SweepCurve& curve) {
  for (const SweepPoint& p : curve.points) {
    if (p.target_share <= p.max_other_share) return p.reduction;
  }
  return std::nullopt;
}

}  // namespace accex
