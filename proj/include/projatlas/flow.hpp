// Numerical trajectories across the three projective charts: adaptive
// Runge-Kutta integration with chart switching, seed planning, and
// first-integral drift measurement.
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projatlas/projective.hpp"
#include "projatlas/structure.hpp"
#include "projatlas/system.hpp"

namespace projatlas {

enum class Orientation { Forward, Backward };

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  /// Budget measured in chart-coordinate arc length (the integration runs at
  /// unit speed, so parameter time equals arc length).
  double max_arc_length = 40.0;
  /// Leave the current chart once max(|u|,|v|) exceeds this...
  double switch_out = 2.0;
  /// ...and only enter a chart where the coordinates are below this, so the
  /// hysteresis band prevents rapid back-and-forth switching.
  double switch_in = 1.5;
  int max_steps = 20000;
};

struct Seed {
  ChartId chart = ChartId::XY;
  std::pair<double, double> point{0.0, 0.0};
};

struct SwitchEvent {
  /// Index (into the concatenation of all segment polylines) of the last
  /// point recorded before the switch.
  std::size_t index = 0;
  ChartId from = ChartId::XY;
  ChartId to = ChartId::XY;
};

struct TrajectorySegment {
  ChartId chart = ChartId::XY;
  std::vector<std::pair<double, double>> polyline;
};

struct Trajectory {
  std::vector<TrajectorySegment> segments;
  Seed seed;
  Orientation orientation = Orientation::Forward;
  std::vector<SwitchEvent> switch_events;
  double arc_length = 0.0;  ///< Total chart arc length actually traversed.
  std::string stop_reason;
};

/// Unit tangent of the phase curve through `p` in the given chart, oriented
/// by the original system's time.  In the system's own chart this is the
/// normalized right member; in the reduced charts the reduced field carries
/// the extra factor sign(transverse)^m so that it matches the pushforward of
/// the original field wherever both are defined.  Returns nullopt at
/// equilibria of the governing field.
std::optional<std::pair<double, double>> direction_at(const PlaneSystem& sys,
                                                      ChartId chart,
                                                      std::pair<double, double> p);

/// Integrates the phase curve through `seed` at unit speed with a
/// Dormand-Prince 5(4) pair, switching charts near the edge of validity and
/// keeping the traced curve direction continuous across switches.  Stops on
/// the arc-length budget, the step budget, or when approaching an
/// equilibrium.  Throws std::invalid_argument for a seed at an equilibrium
/// and std::runtime_error on step-size underflow.
Trajectory integrate_trajectory(const PlaneSystem& sys, const Seed& seed,
                                const IntegratorConfig& cfg = {},
                                Orientation orientation = Orientation::Forward);

/// Maximum relative drift max |F(p) - F(p0)| / (|F(p0)| + 1) of a scalar
/// field over the trajectory points lying in `chart`; p0 is the first such
/// point.  Throws std::domain_error when F produces a non-finite value.
double first_integral_drift(const std::function<double(double, double)>& F,
                            const Trajectory& traj, ChartId chart);

/// Deterministic seed set: a density x density polar grid on each chart's
/// disc (de-duplicated across charts at projective distance < 0.05), plus
/// four separatrix seeds per saddle offset 1e-4 along the eigenvectors.
std::vector<Seed> seed_plan(const PlaneSystem& sys,
                            const std::vector<Equilibrium>& equilibria,
                            int density);

/// Unit representative of the projective point seen from a chart; antipodal
/// vectors describe the same point.
std::array<double, 3> sphere_lift(ChartId chart, std::pair<double, double> p);

/// Distance between projective points given by unit representatives:
/// min(|A - B|, |A + B|).
double projective_distance(const std::array<double, 3>& a,
                           const std::array<double, 3>& b);

}  // namespace projatlas
