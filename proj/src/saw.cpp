#include "phshape/generators.hpp"

#include <stdexcept>
#include <unordered_set>

namespace phshape {

namespace {

// The 7 non-identity symmetries of the square lattice, row-major 2x2.
constexpr int8_t kSym[7][4] = {
    {0, -1, 1, 0},    // rotate 90
    {-1, 0, 0, -1},   // rotate 180
    {0, 1, -1, 0},    // rotate 270
    {1, 0, 0, -1},    // reflect x-axis
    {-1, 0, 0, 1},    // reflect y-axis
    {0, 1, 1, 0},     // reflect diagonal
    {0, -1, -1, 0},   // reflect anti-diagonal
};

inline LatticeSite apply_sym(int sym, LatticeSite c, LatticeSite p) {
    const int32_t dx = p[0] - c[0], dy = p[1] - c[1];
    return {c[0] + kSym[sym][0] * dx + kSym[sym][1] * dy,
            c[1] + kSym[sym][2] * dx + kSym[sym][3] * dy};
}

} // namespace

bool walk_is_self_avoiding(const LatticeWalk& walk) {
    std::unordered_set<uint64_t> seen;
    seen.reserve(walk.size() * 2);
    for (const auto& s : walk) {
        const uint64_t k = ((uint64_t)(uint32_t)s[0] << 32) | (uint32_t)s[1];
        if (!seen.insert(k).second) return false;
    }
    return true;
}

std::optional<LatticeWalk> pivot_step(const LatticeWalk& walk, int site_index, int symmetry) {
    if (site_index < 0 || site_index >= (int)walk.size())
        throw std::out_of_range("pivot_step: site_index");
    if (symmetry < 0 || symmetry >= 7)
        throw std::out_of_range("pivot_step: symmetry (identity is excluded)");
    LatticeWalk out = walk;
    const LatticeSite c = walk[site_index];
    for (size_t i = site_index + 1; i < walk.size(); ++i) out[i] = apply_sym(symmetry, c, walk[i]);
    if (!walk_is_self_avoiding(out)) return std::nullopt;
    return out;
}

// --------------------------------------------------------------------------
// PivotChain
// --------------------------------------------------------------------------

uint64_t PivotChain::pack(LatticeSite s) {
    return ((uint64_t)(uint32_t)s[0] << 32) | (uint32_t)s[1];
}

PivotChain::PivotChain(int n_edges, uint64_t seed) : rng_(seed) {
    if (n_edges < 1) throw std::invalid_argument("PivotChain: n_edges >= 1");
    walk_.resize(n_edges + 1);
    for (int i = 0; i <= n_edges; ++i) walk_[i] = {i, 0};
    uint64_t cap = 16;
    while (cap < walk_.size() * 4) cap <<= 1;
    slots_.assign(cap, {0, UINT32_MAX});
    mask_ = cap - 1;
    rehash();
}

void PivotChain::rehash() {
    for (auto& s : slots_) s.owner = UINT32_MAX;
    used_ = 0;
    for (uint32_t i = 0; i < walk_.size(); ++i) map_insert(walk_[i], i);
}

void PivotChain::map_insert(LatticeSite site, uint32_t owner) {
    const uint64_t key = pack(site);
    uint64_t h = key * 0x9E3779B97F4A7C15ULL;
    for (uint64_t probe = h;; ++probe) {
        Slot& s = slots_[probe & mask_];
        if (s.owner == UINT32_MAX) {
            s.key = key;
            s.owner = owner;
            ++used_;
            return;
        }
        // Entries are self-verifying: a slot whose owner moved away is dead
        // and may be reused.
        if (s.key == key && pack(walk_[s.owner]) == key) {
            s.owner = owner;
            return;
        }
        if (pack(walk_[s.owner]) != s.key) {
            s.key = key;
            s.owner = owner;
            return;
        }
    }
}

bool PivotChain::probe_collision(LatticeSite t, uint32_t arm_lo, uint32_t arm_hi) const {
    const uint64_t key = pack(t);
    uint64_t h = key * 0x9E3779B97F4A7C15ULL;
    for (uint64_t probe = h;; ++probe) {
        const Slot& s = slots_[probe & mask_];
        if (s.owner == UINT32_MAX) return false;
        if (s.key == key && pack(walk_[s.owner]) == key) {
            // Live entry at this site; only the kept part blocks the move.
            if (s.owner < arm_lo || s.owner > arm_hi) return true;
            return false;
        }
    }
}

bool PivotChain::attempt() {
    ++attempted_;
    const uint32_t n = (uint32_t)walk_.size() - 1;   // edges
    const uint32_t p = 1 + (uint32_t)rng_.next_below(n);   // pivot site in [1, n]
    const int sym = (int)rng_.next_below(7);
    const LatticeSite c = walk_[p];

    // Transform the shorter arm: head sites [0, p-1] or tail sites [p+1, n].
    const bool head = p <= n - p;
    const uint32_t lo = head ? 0 : p + 1;
    const uint32_t hi = head ? p - 1 : n;

    // Scan outward from the pivot; collisions cluster near it.
    if (head) {
        for (uint32_t i = p; i-- > 0;)
            if (probe_collision(apply_sym(sym, c, walk_[i]), lo, hi)) return false;
    } else {
        for (uint32_t i = p + 1; i <= n; ++i)
            if (probe_collision(apply_sym(sym, c, walk_[i]), lo, hi)) return false;
    }

    for (uint32_t i = lo; i <= hi; ++i) walk_[i] = apply_sym(sym, c, walk_[i]);
    if (used_ + (hi - lo + 1) > slots_.size() - slots_.size() / 4) rehash();
    for (uint32_t i = lo; i <= hi; ++i) map_insert(walk_[i], i);
    ++accepted_;
    return true;
}

void PivotChain::advance_accepted(int64_t count) {
    const int64_t target = accepted_ + count;
    while (accepted_ < target) attempt();
}

LatticeWalk PivotChain::anchored_walk() const {
    LatticeWalk out = walk_;
    const LatticeSite o = out[0];
    for (auto& s : out) s = {s[0] - o[0], s[1] - o[1]};
    return out;
}

// --------------------------------------------------------------------------

Polymer saw_to_polymer(const LatticeWalk& walk, uint64_t seed) {
    if (walk.size() < 2) throw std::invalid_argument("saw_to_polymer: need >= 1 edge");
    Polymer p;
    p.ambient_dim = 2;
    p.kind = PolymerKind::SelfAvoidingWalk;
    p.seed = seed;
    p.ball_radius = 0.25;
    p.centers.reserve(2 * walk.size() - 1);
    for (size_t i = 0; i < walk.size(); ++i) {
        p.centers.emplace_back((double)walk[i][0], (double)walk[i][1]);
        if (i + 1 < walk.size())
            p.centers.emplace_back(0.5 * (walk[i][0] + walk[i + 1][0]),
                                   0.5 * (walk[i][1] + walk[i + 1][1]));
    }
    p.adjacency.reserve(p.centers.size() - 1);
    for (uint32_t i = 0; i + 1 < p.centers.size(); ++i) p.adjacency.emplace_back(i, i + 1);
    return p;
}

Polymer gen_saw(const SawConfig& cfg) {
    if (cfg.n_edges < 1) throw std::invalid_argument("gen_saw: n_edges >= 1");
    const int64_t warmup = cfg.warmup_accepted_pivots >= 0 ? cfg.warmup_accepted_pivots
                                                           : 10LL * cfg.n_edges;
    PivotChain chain(cfg.n_edges, cfg.seed);
    chain.advance_accepted(warmup);
    return saw_to_polymer(chain.anchored_walk(), cfg.seed);
}

} // namespace phshape
