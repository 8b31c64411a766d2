#include <doctest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "parafoil/flightdata.hpp"
#include "parafoil/planner.hpp"

using namespace parafoil;
using doctest::Approx;

namespace {

const char* kHeader = "time,lat,lon,hMSL,velN,velE,velD,hAcc,vAcc,sAcc,heading,cAcc,gpsFix,numSV\n";
const char* kUnits = ",(deg),(deg),(m),(m/s),(m/s),(m/s),(m),(m),(m/s),(deg),(deg),,\n";

std::string three_rows() {
  return std::string(kHeader) + kUnits +
         "2023-06-10T17:03:21.00Z,33.6300000,-117.2500000,1400.000,10.00,-3.00,4.50,2.1,3.2,0.40,45.0,1.1,3,9\n"
         "2023-06-10T17:03:21.20Z,33.6300180,-117.2500065,1399.100,10.10,-3.10,4.60,2.1,3.2,0.41,46.0,1.2,3,9\n"
         "2023-06-10T17:03:21.40Z,33.6300361,-117.2500132,1398.180,10.20,-3.20,4.70,2.0,3.1,0.42,47.5,1.3,3,10\n";
}

// Noiseless NED track of a constant-bank flight, as a FlySight log would see it.
NedTrack circling_track(double phi, const ParafoilParams& p, const Wind& w, double duration) {
  const auto sol = propagate({0, 0, 2000, 0.3}, {phi, duration, false}, p, w);
  std::vector<TrajectorySample> samples;
  for (std::size_t i = 0; i < sol.path.size(); ++i)
    samples.push_back({sol.path[i].t, sol.path[i].state, phi});
  NedTrack t;
  t.samples = trajectory_to_ned(samples, p, w, 0.2);
  return t;
}

double rms(const std::vector<double>& e) {
  return std::sqrt(std::inner_product(e.begin(), e.end(), e.begin(), 0.0) / static_cast<double>(e.size()));
}

}  // namespace

TEST_CASE("parse a three-row log") {
  const FlightTrack t = parse_flysight_csv(three_rows());
  REQUIRE(t.samples.size() == 3);
  CHECK(t.dropped_low_quality == 0);
  const FlightSample& s = t.samples[1];
  CHECK(s.lat == 33.630018);
  CHECK(s.lon == -117.2500065);
  CHECK(s.alt_msl == 1399.1);
  CHECK(s.vel_n == 10.1);
  CHECK(s.vel_e == -3.1);
  CHECK(s.vel_d == 4.6);
  CHECK(s.h_acc == 2.1);
  CHECK(s.v_acc == 3.2);
  CHECK(s.heading == 46.0);
  CHECK(s.fix_type == 3);
  CHECK(s.num_sv == 9);
  CHECK(t.samples[2].time - t.samples[0].time == Approx(0.4));
  CHECK(s.time == Approx(parse_utc_timestamp("2023-06-10T17:03:21.20Z")));
}

TEST_CASE("low-quality and out-of-order rows are dropped") {
  std::string text = three_rows();
  text.replace(text.find(",3,9\n2023-06-10T17:03:21.40Z"), 4, ",0,9");
  FlightTrack t = parse_flysight_csv(text);
  CHECK(t.samples.size() == 2);
  CHECK(t.dropped_low_quality == 1);

  text = three_rows() + "2023-06-10T17:03:21.30Z,33.63,-117.25,1398,10,-3,4,2,3,0.4,47,1,3,10\n";
  t = parse_flysight_csv(text);
  CHECK(t.samples.size() == 3);
  CHECK(t.dropped_out_of_order == 1);

  text = three_rows() + "2023-06-10T17:03:21.60Z,33.63,-117.25,1398,10,-3,4,2,3,0.4,47,1,3,3\n";
  CHECK(parse_flysight_csv(text).dropped_low_quality == 1);
}

TEST_CASE("log errors") {
  auto kind_of = [](const std::string& text) {
    try {
      parse_flysight_csv(text);
    } catch (const FlightDataError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  CHECK(kind_of("") == static_cast<int>(FlightDataError::Kind::empty_track));
  CHECK(kind_of(std::string(kHeader) + kUnits) == static_cast<int>(FlightDataError::Kind::empty_track));
  CHECK(kind_of("time,lat,lon\n2023-06-10T17:03:21.00Z,1,2\n") == static_cast<int>(FlightDataError::Kind::format));
  std::string bad = three_rows();
  bad.replace(bad.find("1400.000"), 8, "abc");
  CHECK(kind_of(bad) == static_cast<int>(FlightDataError::Kind::format));
  CHECK_THROWS_AS(parse_utc_timestamp("yesterday"), FlightDataError);
}

TEST_CASE("timestamps") {
  CHECK(parse_utc_timestamp("1970-01-01T00:00:00Z") == 0.0);
  CHECK(parse_utc_timestamp("2000-03-01T00:00:00.5Z") == 951868800.5);
  for (double t : {0.0, 951868800.5, 1686416601.2, 4102444799.999})
    CHECK(parse_utc_timestamp(format_utc_timestamp(t)) == Approx(t).epsilon(1e-12));
  CHECK(format_utc_timestamp(1686416601.2) == "2023-06-10T17:03:21.200Z");
}

TEST_CASE("local projection") {
  FlightTrack t;
  FlightSample s;
  s.fix_type = 3;
  s.num_sv = 8;
  s.lat = 0.0;
  s.lon = 0.0;
  s.alt_msl = 100.0;
  t.samples.push_back(s);
  s.time = 1;
  s.lon = 1.0;
  s.heading = 90;
  t.samples.push_back(s);
  s.time = 2;
  s.lon = 0.0;
  s.lat = 0.001;
  s.alt_msl = 250.0;
  s.heading = 350;
  t.samples.push_back(s);
  const NedTrack n = to_ned(t, {0.0, 0.0, 100.0});
  CHECK(n.samples[0].x == 0.0);
  CHECK(n.samples[0].y == 0.0);
  CHECK(n.samples[0].h == 0.0);
  CHECK(n.samples[1].y == Approx(111194.9).epsilon(1e-6));
  CHECK(n.samples[1].y == Approx(oracle::east_m(1.0, 0.0, 0.0)).epsilon(1e-12));
  CHECK(n.samples[2].x == Approx(111.1949).epsilon(1e-6));
  CHECK(n.samples[2].h == 150.0);
  // compass heading east is psi = -pi/2 (y grows when psi < 0)
  CHECK(n.samples[1].psi == Approx(-kPi / 2));
  CHECK(n.samples[2].psi == Approx(10.0 * kPi / 180));
  CHECK_FALSE(n.heading_from_course);

  // linear in small offsets away from the equator
  const double lat0 = 33.63, lon0 = -117.25;
  FlightTrack u;
  for (int k = 0; k < 5; ++k) {
    FlightSample f;
    f.time = k;
    f.lat = lat0 + 0.0005 * k;
    f.lon = lon0 - 0.0007 * k;
    f.fix_type = 3;
    f.num_sv = 9;
    f.heading = 10.0 * k;
    u.samples.push_back(f);
  }
  const NedTrack m = to_ned(u, {lat0, lon0, 0});
  for (int k = 0; k < 5; ++k) {
    CHECK(m.samples[k].x == Approx(oracle::north_m(lat0 + 0.0005 * k, lat0)).epsilon(1e-9));
    CHECK(m.samples[k].y == Approx(oracle::east_m(lon0 - 0.0007 * k, lon0, lat0)).epsilon(1e-9));
    CHECK(m.samples[k].x == Approx(k * m.samples[1].x).epsilon(1e-9));
  }
}

TEST_CASE("heading falls back to the course when the channel is flat") {
  FlightTrack t;
  for (int k = 0; k < 10; ++k) {
    FlightSample f;
    f.time = 0.2 * k;
    f.lat = 1e-5 * k;
    f.vel_n = 10.0;
    f.vel_e = 10.0;
    f.heading = 0.0;
    f.fix_type = 3;
    f.num_sv = 9;
    t.samples.push_back(f);
  }
  const NedTrack n = to_ned(t, {0, 0, 0});
  CHECK(n.heading_from_course);
  CHECK(n.samples[3].psi == Approx(-kPi / 4));
}

TEST_CASE("wind estimate on synthetic circles") {
  const ParafoilParams p{15.0, 3.0, 9.81};
  for (const Wind& w : {Wind{2, -1, 0}, Wind{0, 0, 0}, Wind{-3, -3, 0}}) {
    const NedTrack t = circling_track(0.3, p, w, 60.0);
    const WindEstimate e = estimate_wind(t);
    CHECK(e.wx == Approx(w.wx).epsilon(1e-6).scale(1.0));
    CHECK(e.wy == Approx(w.wy).epsilon(1e-6).scale(1.0));
    CHECK(std::abs(e.wx - w.wx) < 1e-6);
    CHECK(std::abs(e.wy - w.wy) < 1e-6);
    CHECK(e.airspeed_estimate == Approx(15.0 * std::cos(oracle::gamma(0.3, 3.0))).epsilon(1e-9));
    CHECK(e.residual_rms >= 0.0);
    CHECK(e.residual_rms < 1e-6);
  }
  // straight flight has no hodograph to fit
  const NedTrack straight = circling_track(0.0, p, {2, -1, 0}, 60.0);
  try {
    estimate_wind(straight);
    FAIL("expected insufficient turn");
  } catch (const FlightDataError& e) {
    CHECK(e.kind() == FlightDataError::Kind::insufficient_turn);
  }
}

TEST_CASE("bank reconstruction") {
  const ParafoilParams p{15.0, 3.0, 9.81};
  SUBCASE("constant bank") {
    const NedTrack t = circling_track(0.3, p, {-2, 1, 0}, 60.0);
    for (const auto& airspeed : {std::optional<double>{}, std::optional<double>{estimate_wind(t).airspeed_estimate}}) {
      const auto bank = reconstruct_bank(t, p, airspeed);
      REQUIRE(bank.size() == t.samples.size());
      std::vector<double> err;
      for (const auto& b : bank) err.push_back(b.phi - 0.3);
      CHECK(rms(err) < 0.05);
    }
  }
  SUBCASE("straight flight") {
    const auto bank = reconstruct_bank(circling_track(0.0, p, {3, 0, 0}, 30.0), p);
    for (const auto& b : bank) CHECK(std::abs(b.phi) < 0.01);
  }
  SUBCASE("heading noise averages out") {
    NedTrack t = circling_track(0.0, p, {}, 120.0);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (auto& s : t.samples) s.psi = wrap_angle(s.psi + u(rng) * kPi / 180);
    const auto bank = reconstruct_bank(t, p);
    double mean = 0;
    for (const auto& b : bank) mean += b.phi;
    mean /= static_cast<double>(bank.size());
    CHECK(std::abs(mean) < 0.02);
  }
  SUBCASE("sign convention") {
    const auto bank = reconstruct_bank(circling_track(-0.2, p, {}, 20.0), p);
    CHECK(bank[bank.size() / 2].phi == Approx(-0.2).epsilon(1e-3));
  }
  SUBCASE("too few samples") {
    NedTrack t = circling_track(0.1, p, {}, 0.2);
    CHECK(t.samples.size() == 2);
    try {
      reconstruct_bank(t, p);
      FAIL("expected insufficient data");
    } catch (const FlightDataError& e) {
      CHECK(e.kind() == FlightDataError::Kind::insufficient_data);
    }
  }
}

TEST_CASE("human cost curve") {
  std::vector<BankSample> constant, zero;
  for (int k = 0; k <= 50; ++k) {
    constant.push_back({0.2 * k, 0.2});
    zero.push_back({0.2 * k, 0.0});
  }
  CHECK(human_cost_curve(constant).final_cost() == Approx(0.4));
  const CostCurve z = human_cost_curve(zero);
  for (double c : z.cost) CHECK(c == 0.0);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<BankSample> a, b, ab;
  for (int k = 0; k <= 40; ++k) a.push_back({0.2 * k, u(rng)});
  b.push_back(a.back());
  for (int k = 41; k <= 90; ++k) b.push_back({0.2 * k, u(rng)});
  ab = a;
  ab.insert(ab.end(), b.begin() + 1, b.end());
  const auto ca = cumulative_cost(a), cb = cumulative_cost(b), cab = cumulative_cost(ab);
  CHECK(cab.back().cost == Approx(ca.back().cost + cb.back().cost).epsilon(1e-12));
  for (std::size_t i = 1; i < cab.size(); ++i) CHECK(cab[i].cost >= cab[i - 1].cost);
  const CostCurve curve = human_cost_curve(ab);
  CHECK_NOTHROW(curve.validate());
}

TEST_CASE("export and re-ingest a planned trajectory") {
  const Scenario sc = fixture::sample_run();
  const std::vector<ControlSegment> segs = {{0.3, 20, false}, {0.0, 10, false}, {-0.2, 15, false}, {0.1, 10, false}};
  const SolutionTrajectory sol = build_trajectory(sc, segs, 160.0);
  const GeoPoint ref{33.63, -117.25, 400};
  const auto ned = trajectory_to_ned(sol.samples, sc.params, sc.wind, 0.2);
  CHECK(ned.size() == 276);
  CHECK(ned[5].t == Approx(1.0));
  CHECK(ned[5].x == Approx(sol.samples[20].state.x));
  const StateRate r = state_derivative(sol.samples[20].state, sol.samples[20].phi, sc.params, sc.wind);
  CHECK(ned[5].vn == Approx(r.dx));
  CHECK(ned[5].ve == Approx(r.dy));
  CHECK(ned[5].vd == Approx(-r.dh));

  const FlightTrack log = parse_flysight_csv(write_flysight_csv(to_flight_samples(ned, ref, 1.7e9)));
  const NedTrack back = to_ned(log, ref);
  REQUIRE(back.samples.size() == ned.size());
  for (std::size_t i = 0; i < ned.size(); i += 25) {
    CHECK(back.samples[i].x == Approx(ned[i].x).epsilon(1e-6).scale(1.0));
    CHECK(std::abs(back.samples[i].y - ned[i].y) < 1e-3);
    CHECK(std::abs(back.samples[i].h - ned[i].h) < 1e-3);
    CHECK(std::abs(oracle::angle_diff(back.samples[i].psi, ned[i].psi)) < 1e-6);
  }
  const WindEstimate w = estimate_wind(back);
  CHECK(std::abs(w.wx - sc.wind.wx) < 0.2);
  CHECK(std::abs(w.wy - sc.wind.wy) < 0.2);
  const auto bank = reconstruct_bank(back, sc.params, w.airspeed_estimate);
  const double human = human_cost_curve(bank).final_cost();
  CHECK(std::abs(human - sol.total_cost) < 0.1 * sol.total_cost);
}
