#include "parafoil/flightdata.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace parafoil {

namespace {

constexpr double kDeg = kPi / 180.0;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2;
}

std::vector<double> unwrap(std::span<const NedSample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const NedSample& s : samples) {
    if (out.empty())
      out.push_back(s.psi);
    else
      out.push_back(out.back() + wrap_angle(s.psi - wrap_angle(out.back())));
  }
  return out;
}

// Solves a 3x3 system in place by Gaussian elimination with partial pivoting.
bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b, std::array<double, 3>& x) {
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return false;
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) <= 1e-12 * scale) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < 3; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return true;
}

double circle_rms(std::span<const NedSample> s, double cx, double cy, double r) {
  double acc = 0.0;
  for (const NedSample& p : s) {
    const double e = std::hypot(p.vn - cx, p.ve - cy) - r;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(s.size()));
}

}  // namespace

double parse_utc_timestamp(std::string_view text) {
  text = trim(text);
  int year = 0, month = 0, day = 0, hour = 0, minute = 0;
  double second = 0.0;
  const std::string buf(text);
  char tail = 0;
  if (std::sscanf(buf.c_str(), "%d-%d-%dT%d:%d:%lf%c", &year, &month, &day, &hour, &minute, &second, &tail) < 6 ||
      (tail != 0 && tail != 'Z') || month < 1 || month > 12 || day < 1 || day > 31)
    throw FlightDataError(FlightDataError::Kind::format, "malformed timestamp '" + buf + "'");
  const auto days = days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  return static_cast<double>(days) * 86400.0 + hour * 3600.0 + minute * 60.0 + second;
}

std::string format_utc_timestamp(double epoch_seconds) {
  const auto millis = static_cast<std::int64_t>(std::llround(epoch_seconds * 1000.0));
  std::int64_t days = millis / 86400000;
  std::int64_t rem = millis % 86400000;
  if (rem < 0) {
    rem += 86400000;
    --days;
  }
  std::int64_t y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  const auto hour = rem / 3600000;
  const auto minute = (rem / 60000) % 60;
  const auto sec = (rem / 1000) % 60;
  const auto ms = rem % 1000;
  char out[40];
  std::snprintf(out, sizeof out, "%04lld-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ", static_cast<long long>(y), m, d,
                static_cast<long long>(hour), static_cast<long long>(minute), static_cast<long long>(sec),
                static_cast<long long>(ms));
  return out;
}

FlightTrack parse_flysight_csv(std::string_view text) {
  static constexpr std::array<const char*, 14> kColumns = {"time", "lat",  "lon",     "hMSL", "velN",   "velE", "velD",
                                                           "hAcc", "vAcc", "sAcc", "heading", "cAcc", "gpsFix", "numSV"};
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t nl = text.find('\n', start);
      const std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
      if (!trim(line).empty()) lines.push_back(line);
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
  }
  if (lines.empty()) throw FlightDataError(FlightDataError::Kind::empty_track, "flight log is empty");

  const auto header = split(lines.front());
  std::map<std::string, std::size_t, std::less<>> column;
  for (std::size_t i = 0; i < header.size(); ++i) column.emplace(std::string(header[i]), i);
  for (const char* name : kColumns)
    if (!column.count(name))
      throw FlightDataError(FlightDataError::Kind::format, std::string("flight log is missing column '") + name + "'");
  std::array<std::size_t, kColumns.size()> idx{};
  for (std::size_t i = 0; i < kColumns.size(); ++i) idx[i] = column.find(kColumns[i])->second;

  FlightTrack track;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = split(lines[li]);
    // The optional units row has no parsable latitude.
    if (li == 1 && (fields.size() <= idx[1] || !to_double(fields[idx[1]]))) continue;
    if (fields.size() < header.size())
      throw FlightDataError(FlightDataError::Kind::format, "line " + std::to_string(li + 1) + ": too few fields");
    std::array<double, kColumns.size()> v{};
    for (std::size_t c = 1; c < kColumns.size(); ++c) {
      const auto parsed = to_double(fields[idx[c]]);
      if (!parsed)
        throw FlightDataError(FlightDataError::Kind::format, "line " + std::to_string(li + 1) + ": bad value in column '" +
                                                                 kColumns[c] + "'");
      v[c] = *parsed;
    }
    FlightSample s;
    s.time = parse_utc_timestamp(fields[idx[0]]);
    s.lat = v[1];
    s.lon = v[2];
    s.alt_msl = v[3];
    s.vel_n = v[4];
    s.vel_e = v[5];
    s.vel_d = v[6];
    s.h_acc = v[7];
    s.v_acc = v[8];
    s.s_acc = v[9];
    s.heading = v[10];
    s.c_acc = v[11];
    s.fix_type = static_cast<int>(v[12]);
    s.num_sv = static_cast<int>(v[13]);
    if (s.lat < -90.0 || s.lat > 90.0 || s.lon < -180.0 || s.lon > 180.0)
      throw FlightDataError(FlightDataError::Kind::format, "line " + std::to_string(li + 1) + ": coordinates out of range");
    if (s.fix_type < 3 || s.num_sv < 4) {
      ++track.dropped_low_quality;
      continue;
    }
    if (!track.samples.empty() && !(s.time > track.samples.back().time)) {
      ++track.dropped_out_of_order;
      continue;
    }
    track.samples.push_back(s);
  }
  if (track.samples.empty()) throw FlightDataError(FlightDataError::Kind::empty_track, "flight log has no valid fixes");
  return track;
}

FlightTrack load_flysight_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FlightDataError(FlightDataError::Kind::format, "cannot open flight log: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_flysight_csv(buf.str());
}

std::string write_flysight_csv(std::span<const FlightSample> samples) {
  std::string out =
      "time,lat,lon,hMSL,velN,velE,velD,hAcc,vAcc,sAcc,heading,cAcc,gpsFix,numSV\n"
      ",(deg),(deg),(m),(m/s),(m/s),(m/s),(m),(m),(m/s),(deg),(deg),,\n";
  char line[512];
  for (const FlightSample& s : samples) {
    std::snprintf(line, sizeof line, "%s,%.9f,%.9f,%.4f,%.5f,%.5f,%.5f,%.3f,%.3f,%.3f,%.6f,%.5f,%d,%d\n",
                  format_utc_timestamp(s.time).c_str(), s.lat, s.lon, s.alt_msl, s.vel_n, s.vel_e, s.vel_d, s.h_acc,
                  s.v_acc, s.s_acc, s.heading, s.c_acc, s.fix_type, s.num_sv);
    out += line;
  }
  return out;
}

GeoPoint default_landing_ref(const FlightTrack& track) {
  if (track.samples.empty()) throw FlightDataError(FlightDataError::Kind::empty_track, "empty track");
  const FlightSample& last = track.samples.back();
  return {last.lat, last.lon, last.alt_msl};
}

NedTrack to_ned(const FlightTrack& track, const GeoPoint& ref) {
  if (track.samples.empty()) throw FlightDataError(FlightDataError::Kind::empty_track, "empty track");
  NedTrack out;
  out.landing_ref = ref;
  out.start_time = track.samples.front().time;

  const auto [lo, hi] = std::minmax_element(track.samples.begin(), track.samples.end(),
                                            [](const FlightSample& a, const FlightSample& b) { return a.heading < b.heading; });
  const bool moving = std::any_of(track.samples.begin(), track.samples.end(),
                                  [](const FlightSample& s) { return std::hypot(s.vel_n, s.vel_e) > 1.0; });
  out.heading_from_course = track.samples.size() >= 3 && hi->heading - lo->heading == 0.0 && moving;

  const double cos_ref = std::cos(ref.lat * kDeg);
  out.samples.reserve(track.samples.size());
  for (const FlightSample& s : track.samples) {
    NedSample n;
    n.t = s.time - out.start_time;
    n.x = kEarthRadius * (s.lat - ref.lat) * kDeg;
    n.y = kEarthRadius * (s.lon - ref.lon) * kDeg * cos_ref;
    n.h = s.alt_msl - ref.alt;
    const double compass = out.heading_from_course ? std::atan2(s.vel_e, s.vel_n) : s.heading * kDeg;
    n.psi = wrap_angle(-compass);
    n.vn = s.vel_n;
    n.ve = s.vel_e;
    n.vd = s.vel_d;
    out.samples.push_back(n);
  }
  return out;
}

std::vector<FlightSample> to_flight_samples(std::span<const NedSample> samples, const GeoPoint& ref, double start_time) {
  const double cos_ref = std::cos(ref.lat * kDeg);
  std::vector<FlightSample> out;
  out.reserve(samples.size());
  for (const NedSample& n : samples) {
    FlightSample s;
    s.time = start_time + n.t;
    s.lat = ref.lat + n.x / kEarthRadius / kDeg;
    s.lon = ref.lon + n.y / (kEarthRadius * cos_ref) / kDeg;
    s.alt_msl = ref.alt + n.h;
    s.vel_n = n.vn;
    s.vel_e = n.ve;
    s.vel_d = n.vd;
    s.h_acc = 1.5;
    s.v_acc = 2.5;
    s.s_acc = 0.4;
    double compass = -n.psi / kDeg;
    if (compass < 0.0) compass += 360.0;
    s.heading = compass;
    s.c_acc = 1.0;
    s.fix_type = 3;
    s.num_sv = 12;
    out.push_back(s);
  }
  return out;
}

std::string write_ned_csv(std::span<const NedSample> samples) {
  std::string out = "t,x,y,h,psi,vn,ve,vd\n";
  char line[256];
  for (const NedSample& s : samples) {
    std::snprintf(line, sizeof line, "%.3f,%.4f,%.4f,%.4f,%.6f,%.5f,%.5f,%.5f\n", s.t, s.x, s.y, s.h, s.psi, s.vn, s.ve,
                  s.vd);
    out += line;
  }
  return out;
}

WindEstimate estimate_wind(const NedTrack& track) {
  const auto& s = track.samples;
  if (s.size() < 3) throw FlightDataError(FlightDataError::Kind::insufficient_turn, "too few samples for a wind fit");
  const auto psi = unwrap(s);
  double turned = 0.0;
  for (std::size_t i = 1; i < psi.size(); ++i) turned += std::abs(psi[i] - psi[i - 1]);
  if (turned < kPi - 1e-9)
    throw FlightDataError(FlightDataError::Kind::insufficient_turn, "cumulative heading change is less than half a turn");

  // Algebraic (Kasa) fit on centred data: u^2 + v^2 + D u + E v + F = 0.
  double mu = 0.0, mv = 0.0;
  for (const NedSample& p : s) {
    mu += p.vn;
    mv += p.ve;
  }
  mu /= static_cast<double>(s.size());
  mv /= static_cast<double>(s.size());
  std::array<std::array<double, 3>, 3> ata{};
  std::array<double, 3> atb{};
  for (const NedSample& p : s) {
    const double u = p.vn - mu, v = p.ve - mv;
    const std::array<double, 3> row = {u, v, 1.0};
    const double rhs = -(u * u + v * v);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) ata[i][j] += row[i] * row[j];
      atb[i] += row[i] * rhs;
    }
  }
  std::array<double, 3> sol{};
  if (!solve3(ata, atb, sol))
    throw FlightDataError(FlightDataError::Kind::insufficient_turn, "degenerate hodograph; cannot fit a circle");
  double cx = -0.5 * sol[0];
  double cy = -0.5 * sol[1];
  const double r2 = cx * cx + cy * cy - sol[2];
  if (!(r2 > 0.0)) throw FlightDataError(FlightDataError::Kind::insufficient_turn, "degenerate hodograph circle");
  double r = std::sqrt(r2);
  cx += mu;
  cy += mv;

  // Geometric refinement (Gauss-Newton on radial residuals).
  double rms = circle_rms(s, cx, cy, r);
  for (int iter = 0; iter < 50 && rms > 0.0; ++iter) {
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> jtr{};
    for (const NedSample& p : s) {
      const double du = p.vn - cx, dv = p.ve - cy;
      const double d = std::hypot(du, dv);
      if (d == 0.0) continue;
      const std::array<double, 3> jac = {-du / d, -dv / d, -1.0};
      const double res = d - r;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) jtj[i][j] += jac[i] * jac[j];
        jtr[i] -= jac[i] * res;
      }
    }
    std::array<double, 3> step{};
    if (!solve3(jtj, jtr, step)) break;
    const double ncx = cx + step[0], ncy = cy + step[1], nr = r + step[2];
    const double nrms = circle_rms(s, ncx, ncy, nr);
    if (!(nrms < rms)) break;
    cx = ncx;
    cy = ncy;
    r = nr;
    const bool converged = rms - nrms <= 1e-15 * std::max(1.0, rms);
    rms = nrms;
    if (converged) break;
  }
  return {cx, cy, rms, r};
}

std::vector<BankSample> reconstruct_bank(const NedTrack& track, const ParafoilParams& params,
                                         std::optional<double> horizontal_airspeed, double smoothing_window) {
  const auto& s = track.samples;
  if (s.size() < 3) throw FlightDataError(FlightDataError::Kind::insufficient_data, "need at least three samples");
  if (!(params.speed > 0.0)) throw std::invalid_argument("airspeed must be positive");
  const double speed = horizontal_airspeed
                           ? *horizontal_airspeed * std::sqrt(1.0 + 1.0 / (params.glide_ratio * params.glide_ratio))
                           : params.speed;

  const auto psi = unwrap(s);
  const std::size_t n = s.size();
  std::vector<double> rate(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1;
    const std::size_t b = i + 1 == n ? n - 1 : i + 1;
    rate[i] = (psi[b] - psi[a]) / (s[b].t - s[a].t);
  }

  // Centred moving average; the window shrinks symmetrically near the ends.
  const double half = 0.5 * smoothing_window;
  const double limit = kPi / 2.0 - 1e-3;
  std::vector<BankSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = std::min({half, s[i].t - s.front().t, s.back().t - s[i].t}) + 1e-9;
    double acc = 0.0;
    int count = 0;
    for (std::size_t j = i; j-- > 0 && s[i].t - s[j].t <= radius;) {
      acc += rate[j];
      ++count;
    }
    for (std::size_t j = i; j < n && s[j].t - s[i].t <= radius; ++j) {
      acc += rate[j];
      ++count;
    }
    const double smoothed = acc / count;
    out[i] = {s[i].t, std::clamp(std::atan(-speed * smoothed / params.g), -limit, limit)};
  }
  return out;
}

std::string write_bank_csv(std::span<const BankSample> series) {
  std::string out = "t,phi\n";
  char line[96];
  for (const BankSample& b : series) {
    std::snprintf(line, sizeof line, "%.3f,%.6f\n", b.t, b.phi);
    out += line;
  }
  return out;
}

std::vector<TimedCost> cumulative_cost(std::span<const BankSample> series) {
  std::vector<TimedCost> out;
  out.reserve(series.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i > 0) {
      const double dt = series[i].t - series[i - 1].t;
      acc += 0.5 * dt * (series[i].phi * series[i].phi + series[i - 1].phi * series[i - 1].phi);
    }
    out.push_back({series[i].t, acc});
  }
  return out;
}

CostCurve human_cost_curve(std::span<const BankSample> series) {
  if (series.size() < 2) throw FlightDataError(FlightDataError::Kind::insufficient_data, "need at least two samples");
  const auto raw = cumulative_cost(series);
  return normalize_curve(raw, series.front().t, series.back().t);
}

std::vector<NedSample> trajectory_to_ned(std::span<const TrajectorySample> samples, const ParafoilParams& params,
                                         const Wind& wind, double period) {
  std::vector<NedSample> out;
  if (samples.empty()) return out;
  auto emit = [&](const TrajectorySample& s) {
    const StateRate r = state_derivative(s.state, s.phi, params, wind);
    out.push_back({s.t, s.state.x, s.state.y, s.state.h, s.state.psi, r.dx, r.dy, -r.dh});
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double k = samples[i].t / period;
    if (std::abs(k - std::round(k)) < 1e-6 || i + 1 == samples.size()) {
      if (!out.empty() && samples[i].t - out.back().t < 1e-9) continue;
      emit(samples[i]);
    }
  }
  return out;
}

}  // namespace parafoil
