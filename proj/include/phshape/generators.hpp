#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "phshape/polymer.hpp"
#include "phshape/rng.hpp"

namespace phshape {

// ---------------------------------------------------------------------------
// Self-avoiding walks on the square lattice (pivot Monte Carlo)
// ---------------------------------------------------------------------------

struct SawConfig {
    int n_edges = 1;
    int64_t warmup_accepted_pivots = -1;   // -1: default 10 * n_edges
    uint64_t seed = 0;
};

using LatticeSite = std::array<int32_t, 2>;
using LatticeWalk = std::vector<LatticeSite>;   // n_edges + 1 sites, unit steps

bool walk_is_self_avoiding(const LatticeWalk& walk);

// One pivot proposal in reference form: apply the symmetry (index 0..6 into
// the non-identity square symmetries) to the tail sites after site_index,
// about the pivot site. Returns the new walk, or nullopt on rejection.
std::optional<LatticeWalk> pivot_step(const LatticeWalk& walk, int site_index, int symmetry);

// Incremental pivot chain: shorter-arm pivots with a self-verifying site
// hash, O(min(arm)) per accepted move. pivot_step above is the serial
// reference this chain is tested against.
class PivotChain {
public:
    PivotChain(int n_edges, uint64_t seed);

    // Attempt one pivot move; returns true when accepted.
    bool attempt();
    // Run until `count` more moves have been accepted.
    void advance_accepted(int64_t count);

    const LatticeWalk& walk() const { return walk_; }
    // Walk translated so that site 0 is the origin.
    LatticeWalk anchored_walk() const;
    int64_t accepted() const { return accepted_; }
    int64_t attempted() const { return attempted_; }

private:
    struct Slot { uint64_t key; uint32_t owner; };
    bool probe_collision(LatticeSite t, uint32_t arm_lo, uint32_t arm_hi) const;
    void map_insert(LatticeSite s, uint32_t owner);
    void rehash();
    static uint64_t pack(LatticeSite s);

    LatticeWalk walk_;
    std::vector<Slot> slots_;
    uint64_t mask_ = 0;
    size_t used_ = 0;
    Rng rng_;
    int64_t accepted_ = 0;
    int64_t attempted_ = 0;
};

// Pivot-equilibrated uniform SAW converted to touching balls of radius 1/4
// (each lattice edge contributes its midpoint and endpoints).
Polymer gen_saw(const SawConfig& cfg);
Polymer saw_to_polymer(const LatticeWalk& walk, uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Branched polymers (uniform tree-type measure, tangent unit balls)
// ---------------------------------------------------------------------------

struct BpConfig {
    int n_balls = 1;
    int ambient_dim = 2;
    int64_t mcmc_sweeps = -1;    // -1: default max(200, n_balls)
    uint64_t seed = 0;
    double ball_radius = 1.0;
};

// Exact sampler: uniform labeled tree (Pruefer) x uniform sphere directions,
// rejected until the balls do not overlap. Practical for n <= ~10.
// Throws std::runtime_error when max_attempts is exhausted.
Polymer gen_bp_rejection(int n_balls, int ambient_dim, uint64_t seed,
                         int64_t max_attempts = 10'000'000, double ball_radius = 1.0);

// Metropolis-Hastings sampler targeting the same measure. Moves alternate:
// (a) resample one tree-edge direction (rigid translation of the detached
//     component), (b) relocate a uniformly chosen leaf onto a uniformly
//     chosen other ball, accepted with ratio (#leaves before)/(#leaves after).
Polymer gen_bp_mcmc(const BpConfig& cfg);

// Exposed for unit tests of the move mechanics.
namespace bp_detail {

struct BpState {
    int dim = 2;
    double radius = 1.0;
    std::vector<Vec3> pos;
    std::vector<std::vector<uint32_t>> adj;

    static BpState straight_chain(int n, int dim, double radius);
    int leaf_count() const;
    bool overlap_free() const;   // brute force, test support
};

// Hastings acceptance ratio for relocating `leaf` onto `target`
// (before/after leaf counts); does not mutate the state.
double leaf_move_hastings_ratio(const BpState& s, uint32_t leaf, uint32_t target);

// Monte Carlo estimate of the acceptance fraction of uniformly drawn
// direction tuples for the n=3 path tree (oracle for the rejection sampler).
double path3_acceptance_fraction_mc(int dim, uint64_t seed, int64_t trials);

} // namespace bp_detail

// ---------------------------------------------------------------------------
// Brownian trees (off-lattice diffusion limited aggregation)
// ---------------------------------------------------------------------------

struct DlaConfig {
    int n_balls = 1;
    int ambient_dim = 2;
    double launch_factor = 2.0;
    double kill_factor = 10.0;
    uint64_t seed = 0;
    double ball_radius = 1.0;
};

// Walkers launched on a sphere around the cluster take maximal free-space
// steps (walk-on-spheres) until tangency; contacts are projected to exact
// distance 2r. Walkers past the kill radius are relaunched.
Polymer gen_brownian_tree(const DlaConfig& cfg);

} // namespace phshape
