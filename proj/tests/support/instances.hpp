#pragma once

#include <cstdint>
#include <optional>

#include "cineplan/graph.hpp"
#include "cineplan/mission.hpp"
#include "cineplan/scenario.hpp"

namespace cineplan::testing {

/// Small one-UAV instance for exactness checks: up to four shot-mix tasks,
/// battery between half and twice the longest task, sometimes a recharge
/// delay, sometimes an airborne start.
struct SingleInstance {
  Mission mission;
  double alpha = 30.0;
  UavState start;
};

/// Draws one instance; nullopt when its graph exceeds `max_vertices`.
std::optional<SingleInstance> random_single_instance(Rng& rng, std::uint64_t seed, std::size_t max_vertices);

/// Mission for feasibility fuzzing: longitudinal or shot-mix tasks, one to
/// four UAVs, tight batteries, recharge delays, a moving station in some
/// draws and airborne starts with enough charge to get home.
struct FuzzInstance {
  Mission mission;
  double alpha = 10.0;
  double relay_gap = 0.0;
};
FuzzInstance random_fuzz_instance(Rng& rng, std::uint64_t seed);

}  // namespace cineplan::testing
