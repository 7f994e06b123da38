#include "phshape/polymer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "phshape/parallel.hpp"

namespace phshape {

const char* to_string(PolymerKind k) {
    switch (k) {
        case PolymerKind::BranchedPolymer: return "BranchedPolymer";
        case PolymerKind::BrownianTree: return "BrownianTree";
        case PolymerKind::SelfAvoidingWalk: return "SelfAvoidingWalk";
        case PolymerKind::PointSample: return "PointSample";
    }
    return "PointSample";
}

bool polymer_kind_from_string(const std::string& s, PolymerKind& out) {
    if (s == "BranchedPolymer") out = PolymerKind::BranchedPolymer;
    else if (s == "BrownianTree") out = PolymerKind::BrownianTree;
    else if (s == "SelfAvoidingWalk") out = PolymerKind::SelfAvoidingWalk;
    else if (s == "PointSample") out = PolymerKind::PointSample;
    else return false;
    return true;
}

namespace {

// Uniform hash grid over center positions; cell size chosen so that any
// pair closer than `reach` shares a 3^m neighborhood.
class CellGrid {
public:
    CellGrid(const std::vector<Vec3>& pts, double cell) : pts_(pts), cell_(cell) {
        cells_.reserve(pts.size());
        for (uint32_t i = 0; i < pts.size(); ++i) cells_[key(pts[i])].push_back(i);
    }

    template <typename F>
    void for_each_neighbor(uint32_t i, F&& f) const {
        const Vec3& p = pts_[i];
        const int64_t cx = coord(p.x), cy = coord(p.y), cz = coord(p.z);
        for (int64_t dx = -1; dx <= 1; ++dx)
            for (int64_t dy = -1; dy <= 1; ++dy)
                for (int64_t dz = -1; dz <= 1; ++dz) {
                    auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
                    if (it == cells_.end()) continue;
                    for (uint32_t j : it->second)
                        if (j != i) f(j);
                }
    }

private:
    int64_t coord(double v) const { return (int64_t)std::floor(v / cell_); }
    static uint64_t pack(int64_t x, int64_t y, int64_t z) {
        uint64_t h = 1469598103934665603ULL;
        for (int64_t v : {x, y, z}) {
            h ^= (uint64_t)v;
            h *= 1099511628211ULL;
        }
        return h;
    }
    uint64_t key(const Vec3& p) const { return pack(coord(p.x), coord(p.y), coord(p.z)); }

    const std::vector<Vec3>& pts_;
    double cell_;
    std::unordered_map<uint64_t, std::vector<uint32_t>> cells_;
};

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(uint32_t a, uint32_t b) {
        a = find(a); b = find(b);
        if (a == b) return false;
        if (a < b) std::swap(a, b);
        parent[a] = b;
        return true;
    }
};

} // namespace

std::vector<PolymerViolation> validate_polymer(const Polymer& p) {
    std::vector<PolymerViolation> out;
    const size_t n = p.centers.size();
    if (n == 0) return out;
    const double r = p.ball_radius;
    const double tol = 1e-9 * std::max(r, 1e-300);
    const bool has_adj = !p.adjacency.empty();

    std::vector<std::vector<uint32_t>> adj_of(has_adj ? n : 0);
    if (has_adj) {
        for (const auto& [a, b] : p.adjacency) {
            if (a >= n || b >= n || a == b) {
                out.push_back({PolymerViolation::Kind::BadIndex, a, b, 0.0,
                               "adjacency index out of range"});
                continue;
            }
            adj_of[a].push_back(b);
            adj_of[b].push_back(a);
        }
    }
    auto adjacent = [&](uint32_t a, uint32_t b) {
        if (!has_adj) return false;
        const auto& v = adj_of[a];
        return std::find(v.begin(), v.end(), b) != v.end();
    };

    // Pair checks only need distances below 2r + tol; the grid keeps this
    // linear for lattice walks and large clusters.
    const double reach = (r > 0) ? 2.0 * r + 2.0 * tol : 0.0;
    if (r > 0) {
        CellGrid grid(p.centers, reach);
        for (uint32_t i = 0; i < n; ++i) {
            grid.for_each_neighbor(i, [&](uint32_t j) {
                if (j <= i) return;
                const double d = dist(p.centers[i], p.centers[j]);
                if (d == 0.0) {
                    out.push_back({PolymerViolation::Kind::Duplicate, i, j, d,
                                   "duplicate centers"});
                } else if (!adjacent(i, j) && d < 2.0 * r - tol) {
                    out.push_back({PolymerViolation::Kind::Overlap, i, j, d,
                                   "non-adjacent balls overlap"});
                }
            });
        }
    } else {
        // Point samples: only duplicates matter.
        std::vector<uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
            const Vec3 &u = p.centers[a], &v = p.centers[b];
            if (u.x != v.x) return u.x < v.x;
            if (u.y != v.y) return u.y < v.y;
            return u.z < v.z;
        });
        for (size_t i = 0; i + 1 < n; ++i)
            if (p.centers[idx[i]] == p.centers[idx[i + 1]])
                out.push_back({PolymerViolation::Kind::Duplicate,
                               std::min(idx[i], idx[i + 1]), std::max(idx[i], idx[i + 1]),
                               0.0, "duplicate centers"});
    }

    if (has_adj) {
        for (const auto& [a, b] : p.adjacency) {
            if (a >= n || b >= n) continue;
            const double d = dist(p.centers[a], p.centers[b]);
            if (std::abs(d - 2.0 * r) > tol)
                out.push_back({PolymerViolation::Kind::BadTangency, a, b, d,
                               "adjacent balls not tangent"});
        }
        UnionFind uf(n);
        for (const auto& [a, b] : p.adjacency)
            if (a < n && b < n) uf.unite(a, b);
        const uint32_t root = uf.find(0);
        for (uint32_t i = 1; i < n; ++i)
            if (uf.find(i) != root) {
                out.push_back({PolymerViolation::Kind::Disconnected, i, 0, 0.0,
                               "adjacency does not span all centers"});
                break;
            }
    }
    return out;
}

namespace {

// Andrew monotone chain; returns hull in counterclockwise order.
std::vector<uint32_t> hull_2d(const std::vector<Vec3>& pts) {
    std::vector<uint32_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
        if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
        return pts[a].y < pts[b].y;
    });
    auto cr = [&](uint32_t o, uint32_t a, uint32_t b) {
        return (pts[a].x - pts[o].x) * (pts[b].y - pts[o].y) -
               (pts[a].y - pts[o].y) * (pts[b].x - pts[o].x);
    };
    const size_t n = idx.size();
    std::vector<uint32_t> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cr(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
        h[k++] = idx[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cr(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
        h[k++] = idx[i];
    }
    h.resize(k > 1 ? k - 1 : k);
    return h;
}

double max_pair_dist2_calipers(const std::vector<Vec3>& pts) {
    auto h = hull_2d(pts);
    const size_t m = h.size();
    if (m == 1) return 0.0;
    if (m == 2) return dist2(pts[h[0]], pts[h[1]]);
    auto area2 = [&](size_t i, size_t j, size_t k) {
        const Vec3 &a = pts[h[i]], &b = pts[h[j]], &c = pts[h[k]];
        return std::abs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
    };
    double best = 0.0;
    size_t j = 1;
    for (size_t i = 0; i < m; ++i) {
        const size_t i1 = (i + 1) % m;
        while (area2(i, i1, (j + 1) % m) > area2(i, i1, j)) j = (j + 1) % m;
        best = std::max(best, dist2(pts[h[i]], pts[h[j]]));
        best = std::max(best, dist2(pts[h[i1]], pts[h[j]]));
    }
    return best;
}

double max_pair_dist2_scan(const std::vector<Vec3>& pts) {
    const int64_t n = (int64_t)pts.size();
    double best = 0.0;
#pragma omp parallel for schedule(dynamic, 64) reduction(max : best) \
    num_threads(thread_budget())
    for (int64_t i = 0; i < n; ++i)
        for (int64_t j = i + 1; j < n; ++j)
            best = std::max(best, dist2(pts[i], pts[j]));
    return best;
}

} // namespace

double diameter(const Polymer& p) {
    if (p.centers.empty()) throw std::invalid_argument("diameter: empty polymer");
    const double d2 = (p.ambient_dim == 2) ? max_pair_dist2_calipers(p.centers)
                                           : max_pair_dist2_scan(p.centers);
    return std::sqrt(d2) + 2.0 * p.ball_radius;
}

double diameter_serial_reference(const Polymer& p) {
    if (p.centers.empty()) throw std::invalid_argument("diameter: empty polymer");
    double best = 0.0;
    for (size_t i = 0; i < p.centers.size(); ++i)
        for (size_t j = i + 1; j < p.centers.size(); ++j)
            best = std::max(best, dist2(p.centers[i], p.centers[j]));
    return std::sqrt(best) + 2.0 * p.ball_radius;
}

} // namespace phshape
