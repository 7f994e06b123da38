#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "phshape/geom.hpp"

namespace phshape {

enum class PolymerKind { BranchedPolymer, BrownianTree, SelfAvoidingWalk, PointSample };

const char* to_string(PolymerKind k);
bool polymer_kind_from_string(const std::string& s, PolymerKind& out);

// A finite union of equal-radius balls in R^2 or R^3, immutable once built.
// PointSample allows ball_radius == 0. The adjacency, when present, is the
// tangency tree (branched polymers, Brownian trees) or the chain of touching
// balls (walks).
struct Polymer {
    int ambient_dim = 2;                           // m in {2, 3}
    std::vector<Vec3> centers;
    double ball_radius = 1.0;
    PolymerKind kind = PolymerKind::PointSample;
    uint64_t seed = 0;
    std::vector<std::pair<uint32_t, uint32_t>> adjacency;

    size_t size() const { return centers.size(); }
};

struct PolymerViolation {
    enum class Kind { Duplicate, Overlap, BadTangency, Disconnected, BadIndex };
    Kind kind;
    uint32_t a = 0, b = 0;
    double distance = 0.0;
    std::string message;
};

// Empty result iff all invariants hold: distinct centers, non-overlap
// (pair distance >= 2r - 1e-9 r), adjacency pairs tangent (|dist - 2r| <=
// 1e-9 r), adjacency connected and spanning. Uses a uniform grid so large
// polymers stay O(n).
std::vector<PolymerViolation> validate_polymer(const Polymer& p);

// Max pairwise center distance plus 2r. Exact: rotating calipers in 2D,
// pairwise scan in 3D (OpenMP). Throws std::invalid_argument when empty.
double diameter(const Polymer& p);

// Pairwise-scan reference for diameter, kept for tests and the benchmark.
double diameter_serial_reference(const Polymer& p);

} // namespace phshape
