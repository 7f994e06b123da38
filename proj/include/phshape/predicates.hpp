#pragma once

#include <array>
#include <cstdint>

namespace phshape {

// Geometric predicates on int64 lattice coordinates (|coord| < 2^42).
// Each is evaluated in doubles first (differences of such coordinates are
// exact); when the floating result is within its error bound the sign is
// recomputed with 256-bit integers, so every sign returned is exact.
using IPoint = std::array<int64_t, 3>;

// Sign of the signed area of (a, b, c) in the xy-plane: +1 counterclockwise.
int orient2d(const IPoint& a, const IPoint& b, const IPoint& c);

// Sign of det[(b-a); (c-a); (d-a)]: +1 when d is on the positive side of
// the oriented plane (a, b, c).
int orient3d(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d);

// For (a, b, c) counterclockwise: +1 iff d lies strictly inside the
// circumcircle (xy-plane).
int incircle2d(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d);

// For positively oriented (a, b, c, d): +1 iff e lies strictly inside the
// circumsphere.
int insphere3d(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d,
               const IPoint& e);

// Sign of (p-a).(b-a); exact (int128).
int dot_sign(const IPoint& a, const IPoint& b, const IPoint& p);

} // namespace phshape
