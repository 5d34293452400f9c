#pragma once

#include <string>
#include <vector>

#include "cineplan/mission.hpp"
#include "cineplan/plan.hpp"

namespace cineplan::testing {

/// Walks a plan's segments with its own battery bookkeeping, using only the
/// mission geometry and straight-line flight (map-free missions). Returns
/// one message per violation; empty means the plan is feasible.
///
/// Checked: segment continuity, navigation speed, film segments on the task
/// trajectory, battery never below the straight-line return time at any
/// non-station vertex (task waypoints plus alpha subdivisions), station to
/// station flights within the full endurance, departures not before the
/// recharge delay has elapsed, and the plan ending at a station.
std::vector<std::string> replay_plan(const Mission& mission, const SingleUavPlan& plan, double alpha, double speed);

/// Minimum straight-line time to meet any station from `p` at time `t`.
double straight_return_time(const Mission& mission, const Vec3& p, double t, double speed);

}  // namespace cineplan::testing
