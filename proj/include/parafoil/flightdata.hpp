#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parafoil/dynamics.hpp"
#include "parafoil/metrics.hpp"
#include "parafoil/planner.hpp"

namespace parafoil {

class FlightDataError : public std::runtime_error {
 public:
  enum class Kind { format, empty_track, insufficient_turn, insufficient_data };

  FlightDataError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr double kEarthRadius = 6371000.0;  // [m]

/// One row of a FlySight (v1) log.
struct FlightSample {
  double time = 0.0;  // UTC seconds since the Unix epoch
  double lat = 0.0;   // [deg]
  double lon = 0.0;   // [deg]
  double alt_msl = 0.0;
  double vel_n = 0.0, vel_e = 0.0, vel_d = 0.0;
  double h_acc = 0.0, v_acc = 0.0, s_acc = 0.0;
  double heading = 0.0;  // [deg clockwise from North]
  double c_acc = 0.0;
  int fix_type = 0;
  int num_sv = 0;
};

struct FlightTrack {
  std::vector<FlightSample> samples;
  std::size_t dropped_low_quality = 0;  // gpsFix < 3 or numSV < 4
  std::size_t dropped_out_of_order = 0;
};

/// ISO-8601 UTC timestamp ("2024-05-04T17:03:21.40Z") to epoch seconds.
double parse_utc_timestamp(std::string_view text);
std::string format_utc_timestamp(double epoch_seconds);

FlightTrack parse_flysight_csv(std::string_view text);
FlightTrack load_flysight_csv(const std::filesystem::path& path);
std::string write_flysight_csv(std::span<const FlightSample> samples);

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
  double alt = 0.0;
};

/// The last fix of the track, taken as the landing point.
GeoPoint default_landing_ref(const FlightTrack& track);

struct NedSample {
  double t = 0.0;  // since the first sample [s]
  double x = 0.0;  // north [m]
  double y = 0.0;  // east [m]
  double h = 0.0;  // above the landing point [m]
  double psi = 0.0;
  double vn = 0.0, ve = 0.0, vd = 0.0;
};

/// Local frame with x north and y east. Headings follow the planner's
/// convention (ẏ = -V sin psi), i.e. psi is the negated compass heading.
struct NedTrack {
  std::vector<NedSample> samples;
  GeoPoint landing_ref;
  double start_time = 0.0;  // epoch seconds of the first sample
  bool heading_from_course = false;
};

/// Equirectangular projection about `landing_ref`. Falls back to the
/// velocity course when the heading channel carries no information.
NedTrack to_ned(const FlightTrack& track, const GeoPoint& landing_ref);

/// Inverse of `to_ned` for synthetic logs.
std::vector<FlightSample> to_flight_samples(std::span<const NedSample> samples, const GeoPoint& landing_ref,
                                            double start_time);

std::string write_ned_csv(std::span<const NedSample> samples);

struct WindEstimate {
  double wx = 0.0;  // north [m/s]
  double wy = 0.0;  // east [m/s]
  double residual_rms = 0.0;
  double airspeed_estimate = 0.0;  // horizontal airspeed, the hodograph radius [m/s]
};

/// Least-squares circle fit to the ground-velocity hodograph. Requires the
/// heading to turn through at least half a turn in total.
WindEstimate estimate_wind(const NedTrack& track);

struct BankSample {
  double t = 0.0;
  double phi = 0.0;
};

/// Bank from the turn rate, psi_dot = -(g / V) tan(phi). `horizontal_airspeed`
/// (a circle-fit radius) is converted to total airspeed with the glide ratio;
/// params.speed is used when it is absent.
std::vector<BankSample> reconstruct_bank(const NedTrack& track, const ParafoilParams& params,
                                         std::optional<double> horizontal_airspeed = std::nullopt,
                                         double smoothing_window = 2.0);

std::string write_bank_csv(std::span<const BankSample> series);

/// Cumulative trapezoidal integral of phi^2.
std::vector<TimedCost> cumulative_cost(std::span<const BankSample> series);

CostCurve human_cost_curve(std::span<const BankSample> series);

/// Planner-frame trajectory resampled to `period` seconds as NED samples.
/// The planner's x axis is taken as north and y as east.
std::vector<NedSample> trajectory_to_ned(std::span<const TrajectorySample> samples, const ParafoilParams& params,
                                         const Wind& wind, double period = 0.2);

}  // namespace parafoil
