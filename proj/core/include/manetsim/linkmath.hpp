#pragma once

// Link availability from distance-only measurements.
//
// Two nodes in constant-velocity relative motion. Three timestamped distance
// samples pin down the relative speed; together with the radio range they
// predict when the link leaves range and how likely it is to still be up
// after the pair has drifted a given distance.

#include <exception>
#include <limits>
#include <span>
#include <vector>

namespace manetsim::linkmath {

struct DistanceSample {
    double t = 0.0;     // s
    double dist = 0.0;  // m
};

/// Relative motion recovered from three distance samples.
///
/// `along_track` is the projection of the separation vector at the
/// reference sample onto the relative velocity direction, positive when the
/// pair is closing. It is what the expiry quadratic needs besides the speed.
/// Invalid estimates carry zeros, never NaN.
struct MotionEstimate {
    double v_rel = 0.0;        // m/s
    double along_track = 0.0;  // m
    bool valid = false;
};

struct LinkGeometry {
    double d = 0.0;       // current distance, m
    double range = 0.0;   // radio radius, m
    double travel = 0.0;  // relative displacement magnitude, m
};

struct LinkForecast {
    double expiry = std::numeric_limits<double>::infinity();  // s from the reference sample
    double prob = 1.0;
};

/// Radicands in [-kRadicandClamp, 0) are treated as a stationary pair.
inline constexpr double kRadicandClamp = 1e-9;

/// Estimates the relative speed from three samples, the first being the
/// reference (t = 0 after shifting). Throws std::invalid_argument on
/// non-increasing timestamps or negative distances.
[[nodiscard]] MotionEstimate estimate_speed(const DistanceSample& s0, const DistanceSample& s1,
                                            const DistanceSample& s2);

/// Moves the reference of an estimate forward by `dt` seconds.
[[nodiscard]] MotionEstimate advance(const MotionEstimate& est, double dt) noexcept;

/// Time until the link leaves range, measured from the estimate's reference
/// sample at which the pair is `geom.d` apart. +infinity for a stationary pair.
/// Throws LinkDownError when geom.d > geom.range and std::invalid_argument for
/// an invalid estimate.
[[nodiscard]] double link_expiry_time(const MotionEstimate& est, const LinkGeometry& geom);

/// Probability that the pair is within range after a relative displacement
/// of `geom.travel` in a uniformly random direction.
[[nodiscard]] double availability_probability(const LinkGeometry& geom);

/// The arc-fraction term alone, acos((Z^2 + d^2 - D^2) / (2 Z d)) / pi, with
/// the cosine clamped to [-1, 1]. Inputs within rounding of a seam
/// (Z = D - d or |Z - d| = D) return the seam value exactly. Requires
/// travel > 0 and d > 0.
[[nodiscard]] double arc_fraction(const LinkGeometry& geom);

/// Probability that every link of a path is available, links independent.
/// Throws std::invalid_argument for an empty path or out-of-range entries.
[[nodiscard]] double path_availability(std::span<const double> link_probs);

/// One forecast from the three most recent samples, referenced at the last
/// one. `lookahead` is the elapsed time at which availability is evaluated.
struct SeriesForecast {
    MotionEstimate motion;
    LinkForecast link;
};
[[nodiscard]] SeriesForecast forecast(const DistanceSample& s0, const DistanceSample& s1,
                                      const DistanceSample& s2, double range, double lookahead);

class LinkDownError : public std::exception {
public:
    const char* what() const noexcept override { return "link is already down (distance exceeds range)"; }
};

}  // namespace manetsim::linkmath
