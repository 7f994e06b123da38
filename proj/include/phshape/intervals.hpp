#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace phshape {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

// Lifetime of one persistent homology class, endpoints in epsilon (or alpha)
// units. Zero-length intervals are numerical noise and are rejected at
// construction: d - b must exceed 1e-12 * max(d, 1).
struct PersistenceInterval {
    int degree = 0;
    double birth = 0.0;
    double death = 0.0;
    bool truncated = false;   // death clamped at a filtration cutoff

    double lifetime() const { return death - birth; }
};

inline bool interval_is_noise(double birth, double death) {
    return !(death - birth > 1e-12 * std::max(death, 1.0));
}

// Returns nullopt for invalid/noise intervals instead of constructing them.
inline std::optional<PersistenceInterval> make_interval(int degree, double birth, double death,
                                                        bool truncated = false) {
    if (birth < 0.0 || interval_is_noise(birth, death)) return std::nullopt;
    return PersistenceInterval{degree, birth, death, truncated};
}

// The (size, aspect) feature coordinates: x = (b+d)/2, y = arcsec(d/b).
struct PHPoint {
    int degree = 0;
    double size = 0.0;        // x > 0
    double aspect = 0.0;      // y in (0, pi/2]
};

struct AspectWindow {
    double lo = 0.0;
    double hi = kHalfPi;
    bool contains(double y) const { return y >= lo && y <= hi; }
};

// x = (b+d)/2, y = arcsec(d/b) = arccos(b/d). b == 0 maps to exactly pi/2
// (no floating arcsec evaluation at infinity).
inline PHPoint ph_point_from_interval(const PersistenceInterval& iv) {
    PHPoint p;
    p.degree = iv.degree;
    p.size = 0.5 * (iv.birth + iv.death);
    p.aspect = (iv.birth == 0.0) ? kHalfPi : std::acos(iv.birth / iv.death);
    return p;
}

// Inverse transform for y < pi/2: b = 2x/(1+sec y), d = 2x sec(y)/(1+sec y).
inline PersistenceInterval interval_from_ph_point(const PHPoint& p) {
    PersistenceInterval iv;
    iv.degree = p.degree;
    if (p.aspect >= kHalfPi) {
        iv.birth = 0.0;
        iv.death = 2.0 * p.size;
    } else {
        const double sec = 1.0 / std::cos(p.aspect);
        iv.birth = 2.0 * p.size / (1.0 + sec);
        iv.death = 2.0 * p.size * sec / (1.0 + sec);
    }
    return iv;
}

} // namespace phshape
