#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "detour/math.hpp"

namespace detour {

// Mission time is measured in seconds since the J2000 epoch (JD 2451545.0,
// 2000-01-01 12:00:00). Leap seconds are ignored; at the accuracy of the
// analytic sun model this is irrelevant.
inline constexpr double kJdJ2000 = 2451545.0;

/// Julian date of a proleptic-Gregorian calendar instant (Vallado, Alg. 14).
inline double julian_date(int year, int month, int day, int hour, int minute,
                          double second) {
    double jd = 367.0 * year -
                std::floor(7.0 * (year + std::floor((month + 9.0) / 12.0)) / 4.0) +
                std::floor(275.0 * month / 9.0) + day + 1721013.5;
    jd += (second / 3600.0 + minute / 60.0 + hour) / 24.0;
    return jd;
}

inline double epoch_seconds_from_jd(double jd) {
    return (jd - kJdJ2000) * kSecondsPerDay;
}

/// Parse "YYYY-MM-DD hh:mm:ss" (or with 'T' separator) to seconds since J2000.
inline double parse_utc(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double s = 0.0;
    int n = std::sscanf(text.c_str(), "%d-%d-%d%*1[ T]%d:%d:%lf", &y, &mo, &d,
                        &h, &mi, &s);
    if (n < 3) throw std::invalid_argument("unparseable UTC timestamp: " + text);
    return epoch_seconds_from_jd(julian_date(y, mo, d, h, mi, s));
}

/// TLE epoch (two-digit year, fractional day of year) to seconds since J2000.
inline double epoch_from_tle(int two_digit_year, double day_of_year) {
    int year = two_digit_year < 57 ? 2000 + two_digit_year : 1900 + two_digit_year;
    double jd_jan0 = julian_date(year, 1, 1, 0, 0, 0.0) - 1.0;
    return epoch_seconds_from_jd(jd_jan0 + day_of_year);
}

}  // namespace detour
