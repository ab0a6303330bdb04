#include "manetsim/linkmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace manetsim::linkmath {

namespace {

void check_sample(const DistanceSample& s) {
    if (!std::isfinite(s.t) || !std::isfinite(s.dist)) throw std::invalid_argument("distance sample must be finite");
    if (s.t < 0.0) throw std::invalid_argument("distance sample time must be >= 0");
    if (s.dist < 0.0) throw std::invalid_argument("distance sample must be >= 0");
}

}  // namespace

MotionEstimate estimate_speed(const DistanceSample& s0, const DistanceSample& s1, const DistanceSample& s2) {
    check_sample(s0);
    check_sample(s1);
    check_sample(s2);
    if (!(s0.t < s1.t) || !(s1.t < s2.t)) throw std::invalid_argument("sample timestamps must strictly increase");

    // Relative position p(t) = p0 + v t gives |p(t)|^2 = d0^2 + 2 (p0.v) t + v^2 t^2,
    // so v^2 is the second divided difference of the squared distances.
    using real = long double;
    const real t1 = static_cast<real>(s1.t) - s0.t;
    const real t2 = static_cast<real>(s2.t) - s0.t;
    const real d0sq = static_cast<real>(s0.dist) * s0.dist;
    const real d1sq = static_cast<real>(s1.dist) * s1.dist;

    // Written with distance differences so equal samples give exactly zero.
    const real d01 = (static_cast<real>(s0.dist) - s1.dist) * (static_cast<real>(s0.dist) + s1.dist);
    const real d21 = (static_cast<real>(s2.dist) - s1.dist) * (static_cast<real>(s2.dist) + s1.dist);
    real radicand = ((t2 - t1) * d01 + t1 * d21) / (t1 * t2 * (t2 - t1));
    if (radicand < 0) {
        if (radicand < -static_cast<real>(kRadicandClamp)) return {};
        radicand = 0;
    }

    MotionEstimate est;
    est.valid = true;
    const real v = std::sqrt(radicand);
    est.v_rel = static_cast<double>(v);
    if (v > 0) {
        // z1 = v t1; along = (z1^2 + d0^2 - d1^2) / (2 z1)
        const real z1 = v * t1;
        est.along_track = static_cast<double>((z1 * z1 + d0sq - d1sq) / (2 * z1));
    }
    return est;
}

MotionEstimate advance(const MotionEstimate& est, double dt) noexcept {
    if (!est.valid) return est;
    MotionEstimate out = est;
    out.along_track = est.along_track - est.v_rel * dt;
    return out;
}

double link_expiry_time(const MotionEstimate& est, const LinkGeometry& geom) {
    if (!est.valid) throw std::invalid_argument("link_expiry_time needs a valid motion estimate");
    if (!(geom.range > 0.0) || !(geom.d >= 0.0)) throw std::invalid_argument("link geometry needs range > 0 and d >= 0");
    if (geom.d > geom.range) throw LinkDownError{};
    if (est.v_rel == 0.0) return std::numeric_limits<double>::infinity();

    // v^2 T^2 - 2 v T along + d^2 - range^2 = 0, divided through by v^2:
    // T^2 - b T + c = 0 with b in seconds and c in seconds^2.
    using real = long double;
    const real v = est.v_rel;
    const real b = 2 * static_cast<real>(est.along_track) / v;
    const real c = (static_cast<real>(geom.d) * geom.d - static_cast<real>(geom.range) * geom.range) / (v * v);

    if (c == 0) {
        // On the boundary: the link survives only while the pair keeps closing.
        return b > 0 ? static_cast<double>(b) : 0.0;
    }
    // c < 0: roots straddle zero, the positive one is the exit time.
    const real disc = std::sqrt(b * b - 4 * c);
    const real t = b >= 0 ? (b + disc) / 2 : (2 * c) / (b - disc);
    return static_cast<double>(t);
}

double availability_probability(const LinkGeometry& geom) {
    const double z = geom.travel;
    const double d = geom.d;
    const double big_d = geom.range;
    if (!std::isfinite(z) || !std::isfinite(d) || !std::isfinite(big_d))
        throw std::invalid_argument("link geometry must be finite");
    if (z < 0.0 || d < 0.0 || !(big_d > 0.0)) throw std::invalid_argument("link geometry needs travel >= 0, d >= 0, range > 0");

    if (z == 0.0) return d <= big_d ? 1.0 : 0.0;
    if (d == 0.0) return z <= big_d ? 1.0 : 0.0;
    if (z <= big_d - d) return 1.0;
    if (z > big_d + d) return 0.0;

    return arc_fraction(geom);
}

double arc_fraction(const LinkGeometry& geom) {
    const double z = geom.travel;
    const double d = geom.d;
    if (!(z > 0.0) || !(d > 0.0)) throw std::invalid_argument("arc_fraction needs travel > 0 and d > 0");
    const double big_d = geom.range;
    // With c the cosine, 1 + c and 1 - c are formed as products of gaps that
    // vanish on the seams Z = D - d and |Z - d| = D. Near a seam the result
    // moves like the square root of the gap, so a gap within rounding of zero
    // is taken as the seam itself.
    const double tol = 4.0 * std::numeric_limits<double>::epsilon() * (z + d + big_d);
    const double inner_gap = z + d - big_d;
    const double outer_gap = big_d - std::abs(z - d);
    if (inner_gap <= tol) return 1.0;
    if (outer_gap <= tol) return 0.0;
    const double one_plus = inner_gap * (z + d + big_d);
    const double one_minus = outer_gap * (big_d + std::abs(z - d));
    return 2.0 * std::atan2(std::sqrt(one_minus), std::sqrt(one_plus)) / std::numbers::pi;
}

double path_availability(std::span<const double> link_probs) {
    if (link_probs.empty()) throw std::invalid_argument("path must contain at least one link");
    double p = 1.0;
    for (double l : link_probs) {
        if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("link probability outside [0, 1]");
        p *= l;
    }
    return p;
}

SeriesForecast forecast(const DistanceSample& s0, const DistanceSample& s1, const DistanceSample& s2, double range,
                        double lookahead) {
    SeriesForecast out;
    out.motion = estimate_speed(s0, s1, s2);
    if (!out.motion.valid) return out;
    const MotionEstimate now = advance(out.motion, s2.t - s0.t);
    const LinkGeometry geom{s2.dist, range, now.v_rel * lookahead};
    out.link.expiry = link_expiry_time(now, geom);
    out.link.prob = availability_probability(geom);
    return out;
}

}  // namespace manetsim::linkmath
