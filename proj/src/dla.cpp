#include "phshape/generators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace phshape {

namespace {

// Occupancy grid with cell size 2r; an empty 5^m neighborhood certifies
// that the nearest center is at least two cells away.
class DlaGrid {
public:
    DlaGrid(double cell, int dim) : cell_(cell), dim_(dim) {}

    void insert(uint32_t i, const Vec3& p) { cells_[key(p)].push_back(i); }

    // Nearest center within the 5^m neighborhood; returns index or
    // UINT32_MAX when the neighborhood is empty.
    uint32_t nearest_within_two_rings(const Vec3& p, const std::vector<Vec3>& pos,
                                      double& best_d2) const {
        best_d2 = std::numeric_limits<double>::infinity();
        uint32_t best = UINT32_MAX;
        const int64_t cx = coord(p.x), cy = coord(p.y), cz = coord(p.z);
        const int zr = dim_ == 3 ? 2 : 0;
        for (int64_t dx = -2; dx <= 2; ++dx)
            for (int64_t dy = -2; dy <= 2; ++dy)
                for (int64_t dz = -zr; dz <= zr; ++dz) {
                    auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
                    if (it == cells_.end()) continue;
                    for (uint32_t j : it->second) {
                        const double d2 = dist2(p, pos[j]);
                        if (d2 < best_d2) { best_d2 = d2; best = j; }
                    }
                }
        return best;
    }

    double cell() const { return cell_; }

private:
    int64_t coord(double v) const { return (int64_t)std::floor(v / cell_); }
    static uint64_t pack(int64_t x, int64_t y, int64_t z) {
        uint64_t h = 1469598103934665603ULL;
        for (int64_t v : {x, y, z}) { h ^= (uint64_t)v; h *= 1099511628211ULL; }
        return h;
    }
    uint64_t key(const Vec3& p) const { return pack(coord(p.x), coord(p.y), coord(p.z)); }

    double cell_;
    int dim_;
    std::unordered_map<uint64_t, std::vector<uint32_t>> cells_;
};

} // namespace

Polymer gen_brownian_tree(const DlaConfig& cfg) {
    if (cfg.n_balls < 1) throw std::invalid_argument("gen_brownian_tree: n_balls >= 1");
    if (cfg.ambient_dim != 2 && cfg.ambient_dim != 3)
        throw std::invalid_argument("gen_brownian_tree: dim in {2,3}");
    if (!(cfg.launch_factor > 1.0) || !(cfg.kill_factor > cfg.launch_factor))
        throw std::invalid_argument("gen_brownian_tree: need kill_factor > launch_factor > 1");

    const double r = cfg.ball_radius;
    const double contact = 2.0 * r;
    const double stick_eps = 1e-10 * r;

    Polymer out;
    out.ambient_dim = cfg.ambient_dim;
    out.ball_radius = r;
    out.kind = PolymerKind::BrownianTree;
    out.seed = cfg.seed;
    out.centers.push_back(Vec3());

    Rng rng(cfg.seed);
    DlaGrid grid(contact, cfg.ambient_dim);
    grid.insert(0, out.centers[0]);
    double cluster_radius = 0.0;   // max |center|

    for (int k = 1; k < cfg.n_balls; ++k) {
        const double launch_r = cfg.launch_factor * (cluster_radius + contact);
        const double kill_r = cfg.kill_factor * launch_r;
        Vec3 x = rng.next_unit_vector(cfg.ambient_dim) * launch_r;

        while (true) {
            if (x.norm() > kill_r) {
                x = rng.next_unit_vector(cfg.ambient_dim) * launch_r;
                continue;
            }
            double d2;
            const uint32_t near = grid.nearest_within_two_rings(x, out.centers, d2);
            double step;
            if (near != UINT32_MAX) {
                const double d = std::sqrt(d2);
                if (d - contact <= stick_eps) {
                    // Stick: project to exact tangency with the contact ball.
                    const Vec3& c = out.centers[near];
                    Vec3 dir = x - c;
                    const double len = dir.norm();
                    x = c + dir * (contact / len);
                    out.centers.push_back(x);
                    out.adjacency.emplace_back(near, (uint32_t)k);
                    grid.insert((uint32_t)k, x);
                    cluster_radius = std::max(cluster_radius, x.norm());
                    break;
                }
                step = d - contact;
            } else {
                // Nothing within two rings: the nearest center is at least
                // 2 cells = 4r away, so 2r of free space is guaranteed.
                step = contact;
            }
            // Far outside the cluster's bounding sphere a single hop to its
            // surface is exact for Brownian motion (walk on spheres).
            const double far = x.norm() - cluster_radius - contact;
            step = std::max(step, far);
            x += rng.next_unit_vector(cfg.ambient_dim) * step;
        }
    }
    return out;
}

} // namespace phshape
