#include "phshape/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace phshape {

namespace {

// Uniform labeled tree on n vertices via a random Pruefer sequence.
std::vector<std::pair<uint32_t, uint32_t>> random_tree(int n, Rng& rng) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    if (n <= 1) return edges;
    if (n == 2) { edges.emplace_back(0, 1); return edges; }
    std::vector<uint32_t> seq(n - 2);
    for (auto& s : seq) s = (uint32_t)rng.next_below(n);
    std::vector<int> degree(n, 1);
    for (uint32_t s : seq) ++degree[s];
    edges.reserve(n - 1);
    // Classic O(n) decode with a moving pointer over current leaves.
    int ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (uint32_t s : seq) {
        edges.emplace_back((uint32_t)leaf, s);
        if (--degree[s] == 1 && (int)s < ptr) {
            leaf = s;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.emplace_back((uint32_t)leaf, (uint32_t)(n - 1));
    return edges;
}

std::vector<Vec3> place_tree(const std::vector<std::pair<uint32_t, uint32_t>>& edges, int n,
                             int dim, double radius, Rng& rng) {
    std::vector<std::vector<uint32_t>> adj(n);
    for (auto& [a, b] : edges) { adj[a].push_back(b); adj[b].push_back(a); }
    std::vector<Vec3> pos(n);
    std::vector<int8_t> placed(n, 0);
    // BFS order so that direction draws are reproducible.
    std::vector<uint32_t> queue{0};
    placed[0] = 1;
    size_t qi = 0;
    while (qi < queue.size()) {
        const uint32_t v = queue[qi++];
        for (uint32_t w : adj[v]) {
            if (placed[w]) continue;
            placed[w] = 1;
            pos[w] = pos[v] + rng.next_unit_vector(dim) * (2.0 * radius);
            queue.push_back(w);
        }
    }
    return pos;
}

bool pairs_overlap_free(const std::vector<Vec3>& pos,
                        const std::vector<std::pair<uint32_t, uint32_t>>& edges, double radius) {
    const size_t n = pos.size();
    std::vector<uint64_t> adj_keys;
    adj_keys.reserve(edges.size());
    for (auto& [a, b] : edges)
        adj_keys.push_back(((uint64_t)std::min(a, b) << 32) | std::max(a, b));
    std::sort(adj_keys.begin(), adj_keys.end());
    const double lim2 = 4.0 * radius * radius * (1.0 - 1e-12);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j) {
            if (dist2(pos[i], pos[j]) >= lim2) continue;
            const uint64_t key = ((uint64_t)i << 32) | j;
            if (!std::binary_search(adj_keys.begin(), adj_keys.end(), key)) return false;
        }
    return true;
}

} // namespace

Polymer gen_bp_rejection(int n_balls, int ambient_dim, uint64_t seed, int64_t max_attempts,
                         double ball_radius) {
    if (n_balls < 1) throw std::invalid_argument("gen_bp_rejection: n_balls >= 1");
    if (ambient_dim != 2 && ambient_dim != 3)
        throw std::invalid_argument("gen_bp_rejection: dim in {2,3}");
    Rng rng(seed);
    for (int64_t attempt = 0; attempt < max_attempts; ++attempt) {
        auto edges = random_tree(n_balls, rng);
        auto pos = place_tree(edges, n_balls, ambient_dim, ball_radius, rng);
        if (!pairs_overlap_free(pos, edges, ball_radius)) continue;
        Polymer p;
        p.ambient_dim = ambient_dim;
        p.ball_radius = ball_radius;
        p.kind = PolymerKind::BranchedPolymer;
        p.seed = seed;
        p.centers = std::move(pos);
        p.adjacency = std::move(edges);
        return p;
    }
    throw std::runtime_error("gen_bp_rejection: attempt cap exceeded");
}

// --------------------------------------------------------------------------
// MCMC sampler
// --------------------------------------------------------------------------

namespace bp_detail {

BpState BpState::straight_chain(int n, int dim, double radius) {
    BpState s;
    s.dim = dim;
    s.radius = radius;
    s.pos.resize(n);
    s.adj.assign(n, {});
    for (int i = 0; i < n; ++i) s.pos[i] = Vec3(2.0 * radius * i, 0.0, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        s.adj[i].push_back(i + 1);
        s.adj[i + 1].push_back(i);
    }
    return s;
}

int BpState::leaf_count() const {
    if (pos.size() == 1) return 1;
    int c = 0;
    for (const auto& a : adj) c += (a.size() == 1);
    return c;
}

bool BpState::overlap_free() const {
    const double lim2 = 4.0 * radius * radius * (1.0 - 1e-12);
    for (uint32_t i = 0; i < pos.size(); ++i)
        for (uint32_t j = i + 1; j < pos.size(); ++j) {
            if (dist2(pos[i], pos[j]) >= lim2) continue;
            if (std::find(adj[i].begin(), adj[i].end(), j) == adj[i].end()) return false;
        }
    return true;
}

double leaf_move_hastings_ratio(const BpState& s, uint32_t leaf, uint32_t target) {
    if (s.adj[leaf].size() != 1) throw std::invalid_argument("leaf_move: not a leaf");
    if (target == leaf) throw std::invalid_argument("leaf_move: target is the leaf");
    const uint32_t parent = s.adj[leaf][0];
    const int before = s.leaf_count();
    int after = before;
    if (target != parent) {
        if (s.adj[parent].size() == 2) ++after;   // parent becomes a leaf
        if (s.adj[target].size() == 1) --after;   // target stops being one
    }
    return (double)before / (double)after;
}

double path3_acceptance_fraction_mc(int dim, uint64_t seed, int64_t trials) {
    Rng rng(seed);
    int64_t ok = 0;
    for (int64_t t = 0; t < trials; ++t) {
        const Vec3 u1 = rng.next_unit_vector(dim);
        const Vec3 u2 = rng.next_unit_vector(dim);
        // Balls at 0, 2r u1, 2r(u1+u2); the end pair must not overlap.
        if ((u1 + u2).norm2() >= 1.0 - 1e-12) ++ok;
    }
    return (double)ok / (double)trials;
}

} // namespace bp_detail

namespace {

using bp_detail::BpState;

// Incremental sampler: tangency tree with per-entry edge ids, occupancy
// grid, swap-remove leaf list. All updates O(local) per move.
class BpSampler {
public:
    BpSampler(int n, int dim, double radius, uint64_t seed)
        : state_(BpState::straight_chain(n, dim, radius)), rng_(seed), n_(n),
          cell_(2.0 * radius) {
        edges_.reserve(n - 1);
        edge_ids_.assign(n, {});
        for (int i = 0; i + 1 < n; ++i) {
            edges_.emplace_back(i, i + 1);
            edge_ids_[i].push_back((uint32_t)edges_.size() - 1);
            edge_ids_[i + 1].push_back((uint32_t)edges_.size() - 1);
        }
        in_moved_.assign(n, 0);
        stamp_.assign(n, 0);
        for (uint32_t i = 0; i < (uint32_t)n; ++i) grid_insert(i);
        for (uint32_t i = 0; i < (uint32_t)n; ++i)
            leaf_slot_.push_back(UINT32_MAX);
        for (uint32_t i = 0; i < (uint32_t)n; ++i)
            if (state_.adj[i].size() == 1) leaf_add(i);
    }

    void sweep() {
        for (int k = 0; k < n_; ++k) {
            if (move_toggle_) move_edge_direction();
            else move_leaf_relocation();
            move_toggle_ = !move_toggle_;
        }
    }

    Polymer finish(uint64_t seed) {
        snap_tangencies();
        Polymer p;
        p.ambient_dim = state_.dim;
        p.ball_radius = state_.radius;
        p.kind = PolymerKind::BranchedPolymer;
        p.seed = seed;
        p.centers = state_.pos;
        p.adjacency = edges_;
        return p;
    }

private:
    // ---- occupancy grid, cell size 2r ----
    static uint64_t pack_cell(int64_t x, int64_t y, int64_t z) {
        uint64_t h = 1469598103934665603ULL;
        for (int64_t v : {x, y, z}) { h ^= (uint64_t)v; h *= 1099511628211ULL; }
        return h;
    }
    uint64_t cell_key(const Vec3& p) const {
        return pack_cell((int64_t)std::floor(p.x / cell_), (int64_t)std::floor(p.y / cell_),
                         (int64_t)std::floor(p.z / cell_));
    }
    void grid_insert(uint32_t i) { grid_[cell_key(state_.pos[i])].push_back(i); }
    void grid_erase(uint32_t i, const Vec3& at) {
        auto& v = grid_[cell_key(at)];
        v.erase(std::find(v.begin(), v.end(), i));
    }

    // True if a ball that is neither `skip` nor flagged in_moved_ lies
    // closer than 2r to p.
    bool hits_static(const Vec3& p, uint32_t skip) const {
        const double lim2 = cell_ * cell_ * (1.0 - 1e-12);
        const int64_t cx = (int64_t)std::floor(p.x / cell_);
        const int64_t cy = (int64_t)std::floor(p.y / cell_);
        const int64_t cz = (int64_t)std::floor(p.z / cell_);
        const int zr = state_.dim == 3 ? 1 : 0;
        for (int64_t dx = -1; dx <= 1; ++dx)
            for (int64_t dy = -1; dy <= 1; ++dy)
                for (int64_t dz = -zr; dz <= zr; ++dz) {
                    auto it = grid_.find(pack_cell(cx + dx, cy + dy, cz + dz));
                    if (it == grid_.end()) continue;
                    for (uint32_t j : it->second) {
                        if (j == skip || in_moved_[j]) continue;
                        if (dist2(p, state_.pos[j]) < lim2) return true;
                    }
                }
        return false;
    }

    // ---- leaf bookkeeping (swap-remove list) ----
    void leaf_add(uint32_t v) {
        if (leaf_slot_[v] != UINT32_MAX) return;
        leaf_slot_[v] = (uint32_t)leaves_.size();
        leaves_.push_back(v);
    }
    void leaf_remove(uint32_t v) {
        const uint32_t s = leaf_slot_[v];
        if (s == UINT32_MAX) return;
        leaves_[s] = leaves_.back();
        leaf_slot_[leaves_.back()] = s;
        leaves_.pop_back();
        leaf_slot_[v] = UINT32_MAX;
    }

    // Bidirectional BFS across the cut edge (a,b); fills moved_ with the
    // smaller component and returns {anchor, head} for it.
    std::pair<uint32_t, uint32_t> smaller_component(uint32_t a, uint32_t b) {
        ++stamp_now_;
        stamp_[a] = stamp_now_;
        stamp_[b] = stamp_now_;
        side_a_.assign(1, a);
        side_b_.assign(1, b);
        size_t qa = 0, qb = 0;
        while (true) {
            if (qa == side_a_.size()) return finish_component(side_a_, b, a);
            if (qb == side_b_.size()) return finish_component(side_b_, a, b);
            // Expand one vertex per side per round.
            for (uint32_t w : state_.adj[side_a_[qa]])
                if (stamp_[w] != stamp_now_) { stamp_[w] = stamp_now_; side_a_.push_back(w); }
            ++qa;
            for (uint32_t w : state_.adj[side_b_[qb]])
                if (stamp_[w] != stamp_now_) { stamp_[w] = stamp_now_; side_b_.push_back(w); }
            ++qb;
        }
    }
    std::pair<uint32_t, uint32_t> finish_component(std::vector<uint32_t>& side, uint32_t anchor,
                                                   uint32_t head) {
        moved_ = side;
        return {anchor, head};
    }

    // ---- move (a): resample a tree-edge direction, translate the detached
    // component rigidly ----
    void move_edge_direction() {
        if (n_ < 2) return;
        const auto [ea, eb] = edges_[rng_.next_below(edges_.size())];
        const Vec3 u = rng_.next_unit_vector(state_.dim);
        const auto [anchor, head] = smaller_component(ea, eb);
        const Vec3 delta = state_.pos[anchor] + u * (2.0 * state_.radius) - state_.pos[head];

        for (uint32_t v : moved_) in_moved_[v] = 1;
        bool ok = true;
        for (uint32_t v : moved_) {
            // Only the re-anchored ball may touch the anchor (tangent by
            // construction); everything else must clear every static ball.
            const uint32_t skip = (v == head) ? anchor : UINT32_MAX;
            if (hits_static(state_.pos[v] + delta, skip)) { ok = false; break; }
        }
        if (ok) {
            for (uint32_t v : moved_) {
                grid_erase(v, state_.pos[v]);
                state_.pos[v] += delta;
                grid_insert(v);
            }
        }
        for (uint32_t v : moved_) in_moved_[v] = 0;
    }

    // ---- move (b): relocate a uniformly chosen leaf ----
    void move_leaf_relocation() {
        if (n_ < 2) return;
        const uint32_t leaf = leaves_[rng_.next_below(leaves_.size())];
        uint32_t target = (uint32_t)rng_.next_below(n_ - 1);
        if (target >= leaf) ++target;
        const Vec3 u = rng_.next_unit_vector(state_.dim);
        const Vec3 np = state_.pos[target] + u * (2.0 * state_.radius);
        const uint32_t parent = state_.adj[leaf][0];

        // Overlap first, then the Hastings coin on the leaf-count ratio.
        in_moved_[leaf] = 1;
        const bool blocked = hits_static(np, target);
        in_moved_[leaf] = 0;
        if (blocked) return;

        const int before = (int)leaves_.size();
        int after = before;
        if (target != parent) {
            if (state_.adj[parent].size() == 2) ++after;
            if (state_.adj[target].size() == 1) --after;
        }
        const double ratio = (double)before / (double)after;
        if (ratio < 1.0 && rng_.next_double() >= ratio) return;

        if (target != parent) {
            auto& ap = state_.adj[parent];
            const size_t k = std::find(ap.begin(), ap.end(), leaf) - ap.begin();
            const uint32_t eid = edge_ids_[parent][k];
            ap.erase(ap.begin() + k);
            edge_ids_[parent].erase(edge_ids_[parent].begin() + k);
            state_.adj[target].push_back(leaf);
            edge_ids_[target].push_back(eid);
            state_.adj[leaf][0] = target;
            edges_[eid] = {target, leaf};
            if (ap.size() == 1) leaf_add(parent);
            if (state_.adj[target].size() == 2) leaf_remove(target);
        }
        grid_erase(leaf, state_.pos[leaf]);
        state_.pos[leaf] = np;
        grid_insert(leaf);
    }

    // Restore exact tangency along tree edges after accumulated translation
    // rounding (BFS from ball 0, directions preserved).
    void snap_tangencies() {
        if (n_ < 2) return;
        std::vector<int8_t> placed(n_, 0);
        std::vector<uint32_t> queue{0};
        placed[0] = 1;
        size_t qi = 0;
        while (qi < queue.size()) {
            const uint32_t v = queue[qi++];
            for (uint32_t w : state_.adj[v]) {
                if (placed[w]) continue;
                placed[w] = 1;
                Vec3 d = state_.pos[w] - state_.pos[v];
                const double len = d.norm();
                if (len > 0) state_.pos[w] = state_.pos[v] + d * (2.0 * state_.radius / len);
                queue.push_back(w);
            }
        }
    }

    BpState state_;
    Rng rng_;
    int n_ = 0;
    double cell_;
    std::vector<std::pair<uint32_t, uint32_t>> edges_;
    std::vector<std::vector<uint32_t>> edge_ids_;   // aligned with state_.adj
    std::unordered_map<uint64_t, std::vector<uint32_t>> grid_;
    std::vector<uint32_t> leaves_;
    std::vector<uint32_t> leaf_slot_;
    std::vector<uint32_t> moved_, side_a_, side_b_;
    std::vector<int8_t> in_moved_;
    std::vector<uint32_t> stamp_;
    uint32_t stamp_now_ = 0;
    bool move_toggle_ = true;
};

} // namespace

Polymer gen_bp_mcmc(const BpConfig& cfg) {
    if (cfg.n_balls < 1) throw std::invalid_argument("gen_bp_mcmc: n_balls >= 1");
    if (cfg.ambient_dim != 2 && cfg.ambient_dim != 3)
        throw std::invalid_argument("gen_bp_mcmc: dim in {2,3}");
    if (cfg.n_balls == 1) {
        Polymer p;
        p.ambient_dim = cfg.ambient_dim;
        p.ball_radius = cfg.ball_radius;
        p.kind = PolymerKind::BranchedPolymer;
        p.seed = cfg.seed;
        p.centers = {Vec3()};
        return p;
    }
    const int64_t sweeps = cfg.mcmc_sweeps >= 0 ? cfg.mcmc_sweeps
                                                : std::max<int64_t>(200, cfg.n_balls);
    BpSampler sampler(cfg.n_balls, cfg.ambient_dim, cfg.ball_radius, cfg.seed);
    for (int64_t s = 0; s < sweeps; ++s) sampler.sweep();
    return sampler.finish(cfg.seed);
}

} // namespace phshape
