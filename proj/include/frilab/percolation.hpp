#ifndef FRILAB_PERCOLATION_HPP
#define FRILAB_PERCOLATION_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "frilab/exploration.hpp"
#include "frilab/fri.hpp"
#include "frilab/length_law.hpp"

namespace frilab {

/**
 * Union-find over a fixed index space with path halving and union by size.
 * component_labels() canonicalizes roots to the smallest member index, so
 * the result is independent of union order.
 */
class ClusterIndex {
 public:
  explicit ClusterIndex(size_t n) : parent_(n), size_(n, 1) {
    for (size_t i = 0; i < n; ++i) parent_[i] = static_cast<int64_t>(i);
  }

  size_t find(size_t a) const {
    while (parent_[a] != static_cast<int64_t>(a)) {
      parent_[a] = parent_[static_cast<size_t>(parent_[a])];
      a = static_cast<size_t>(parent_[a]);
    }
    return a;
  }

  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = static_cast<int64_t>(a);
    size_[a] += size_[b];
  }

  bool connected(size_t a, size_t b) const { return find(a) == find(b); }
  int64_t component_size(size_t a) const { return size_[find(a)]; }
  size_t count() const { return parent_.size(); }

  // per-index label = smallest index in the component (order-independent)
  std::vector<int64_t> component_labels() const {
    std::vector<int64_t> label(parent_.size(), -1);
    for (size_t i = 0; i < parent_.size(); ++i) {
      size_t r = find(i);
      if (label[r] < 0) label[r] = static_cast<int64_t>(i);
    }
    std::vector<int64_t> out(parent_.size());
    for (size_t i = 0; i < parent_.size(); ++i)
      out[i] = label[find(i)];
    return out;
  }

 private:
  mutable std::vector<int64_t> parent_;
  std::vector<int64_t> size_;
};

struct Clusters {
  PointSet vertices;  // copy of the graph's vertex list; items order = indices
  ClusterIndex uf;
  bool contains(const Point& p) const { return vertices.contains(p); }
};

// Decode a doubled-lattice edge key 2x + e_i into its endpoints.
inline std::pair<Point, Point> decode_edge_key(const Point& key) {
  Point a, b;
  int axis = -1;
  for (int i = 0; i < kMaxDim; ++i) {
    if (key[i] % 2 != 0) {
      if (axis >= 0) throw ValidationError("decode_edge_key: malformed key");
      axis = i;
    }
  }
  if (axis < 0) throw ValidationError("decode_edge_key: malformed key");
  for (int i = 0; i < kMaxDim; ++i) {
    int32_t v = key[i];
    if (i == axis) {
      int32_t x = (v - 1) / 2;  // v - 1 is even, so this is exact for any sign
      a[i] = x;
      b[i] = x + 1;
    } else {
      a[i] = v / 2;
      b[i] = v / 2;
    }
  }
  return {a, b};
}

inline Clusters build_clusters(const OccupiedGraph& g) {
  Clusters c{g.vertices, ClusterIndex(g.vertices.size())};
  // index lookup by insertion order
  std::unordered_map<uint64_t, std::vector<size_t>> by_hash;
  for (size_t i = 0; i < g.vertices.size(); ++i)
    by_hash[g.vertices.items()[i].hash()].push_back(i);
  auto index_of = [&](const Point& p) -> size_t {
    for (size_t i : by_hash.at(p.hash()))
      if (g.vertices.items()[i] == p) return i;
    throw ValidationError("build_clusters: edge endpoint missing from vertex set");
  };
  for (const Point& key : g.open_edges.items()) {
    auto [a, b] = decode_edge_key(key);
    c.uf.unite(index_of(a), index_of(b));
  }
  return c;
}

/**
 * Finite-size percolation proxy. A replica explores the origin's cluster
 * lazily (rerooted sampler, no window) and reports whether the cluster
 * reaches linf radius L. Exploration stops as soon as the radius is reached,
 * when the frontier dies, or when the trajectory budget trips (the replica
 * is then counted as crossing and flagged).
 */
struct CrossingOutcome {
  bool crossed = false;
  bool budget_hit = false;
  int64_t trajectories = 0;
  int layers = 0;
};

inline CrossingOutcome crossing_replica(double u, const LengthDistribution& rho,
                                        int d, int64_t box_radius, RngStream stream,
                                        int64_t max_trajectories = 200000) {
  CrossingOutcome out;
  PointSet last;
  last.insert(Point{});
  PointSet excluded;
  for (int k = 1;; ++k) {
    TrajectoryCloud fresh =
        sample_hitting(u, rho, last, d, stream.child(static_cast<uint64_t>(k)));
    PointSet verts;
    int64_t kept = 0;
    for (const CloudEntry& e : fresh.entries) {
      if (detail::cloud_hits(e.traj, excluded)) continue;
      ++kept;
      e.traj.for_each_point([&](const Point& p, int64_t) {
        verts.insert(p);
        if (p.norm_linf() >= box_radius) out.crossed = true;
      });
    }
    out.trajectories += kept;
    out.layers = k;
    if (kept == 0 || out.crossed) return out;
    if (out.trajectories > max_trajectories) {
      out.budget_hit = true;
      out.crossed = true;  // conservative: an unresolved giant cluster
      return out;
    }
    for (const Point& p : last.items()) excluded.insert(p);
    last = std::move(verts);
  }
}

struct ProxyEstimate {
  double value = 0;
  double stderr_ = 0;
  int64_t replicas = 0;
  int64_t flagged = 0;  // budget-hit replicas
};

inline ProxyEstimate crossing_proxy(double u, const LengthDistribution& rho, int d,
                                    int64_t box_radius, int64_t replicas,
                                    RngStream stream,
                                    int64_t max_trajectories = 200000,
                                    int threads = 0) {
  if (box_radius < 8) throw ValidationError("crossing_proxy: L must be >= 8");
  std::vector<uint8_t> crossed(static_cast<size_t>(replicas), 0);
  std::vector<uint8_t> flagged(static_cast<size_t>(replicas), 0);
  parallel_for(
      replicas,
      [&](int64_t r) {
        CrossingOutcome o = crossing_replica(
            u, rho, d, box_radius, stream.child(static_cast<uint64_t>(r)),
            max_trajectories);
        crossed[static_cast<size_t>(r)] = o.crossed ? 1 : 0;
        flagged[static_cast<size_t>(r)] = o.budget_hit ? 1 : 0;
      },
      threads);
  ProxyEstimate est;
  est.replicas = replicas;
  for (int64_t r = 0; r < replicas; ++r) {
    est.value += crossed[static_cast<size_t>(r)];
    est.flagged += flagged[static_cast<size_t>(r)];
  }
  est.value /= static_cast<double>(replicas);
  est.stderr_ =
      std::sqrt(est.value * (1 - est.value) / static_cast<double>(replicas));
  return est;
}

struct BisectionRow {
  int iterate = 0;
  std::string phase;  // "doubling" | "bisection"
  double u = 0;
  double proxy = 0;
  double stderr_ = 0;
  int64_t flagged = 0;
};

struct ThresholdEstimate {
  double u_hat = 0;
  double u_lo = 0;
  double u_hi = 0;
  double target_level = 0.5;
  int64_t box_radius = 0;
  int64_t replicas_per_iterate = 0;
  double stderr_ = 0;
  std::vector<BisectionRow> rows;
};

struct ThresholdOptions {
  int max_doublings = 20;
  double rel_width = 0.05;
  int64_t max_trajectories = 200000;
  int threads = 0;
};

/**
 * Pseudo-critical intensity: bracket the target crossing level by doubling
 * from the reference intensity, then bisect until the bracket is narrower
 * than rel_width relative to its midpoint.
 */
inline ThresholdEstimate estimate_threshold(const LengthDistribution& rho, int d,
                                            int64_t box_radius, int64_t replicas,
                                            double target, double eps_d,
                                            RngStream stream,
                                            const ThresholdOptions& opts = {}) {
  if (!(target >= 0 && target < 1))
    throw ValidationError("estimate_threshold: target must be in [0, 1)");
  if (replicas < 1) throw ValidationError("estimate_threshold: replicas must be >= 1");
  ThresholdEstimate est;
  est.target_level = target;
  est.box_radius = box_radius;
  est.replicas_per_iterate = replicas;
  if (target == 0) return est;  // degenerate: u_* proxy at level 0 is 0

  int iterate = 0;
  auto eval = [&](double u, const char* phase) {
    ProxyEstimate p = crossing_proxy(u, rho, d, box_radius, replicas,
                                     stream.child(static_cast<uint64_t>(iterate)),
                                     opts.max_trajectories, opts.threads);
    est.rows.push_back({iterate, phase, u, p.value, p.stderr_, p.flagged});
    ++iterate;
    return p.value;
  };

  double u0 = reference_intensity(rho, d, eps_d);
  double u_lo = 0, u_hi = 0, p0 = eval(u0, "doubling");
  if (p0 >= target) {
    u_hi = u0;
    double u = u0;
    int k = 0;
    for (; k < opts.max_doublings; ++k) {
      u /= 2;
      if (eval(u, "doubling") < target) {
        u_lo = u;
        break;
      }
      u_hi = u;
    }
    if (k == opts.max_doublings)
      throw BudgetError("estimate_threshold: no lower bracket found");
  } else {
    u_lo = u0;
    double u = u0;
    int k = 0;
    for (; k < opts.max_doublings; ++k) {
      u *= 2;
      if (eval(u, "doubling") >= target) {
        u_hi = u;
        break;
      }
      u_lo = u;
    }
    if (k == opts.max_doublings)
      throw BudgetError("estimate_threshold: no upper bracket found");
  }

  double p_lo = 0, p_hi = 1;
  while (u_hi - u_lo > opts.rel_width * 0.5 * (u_hi + u_lo)) {
    double u_mid = 0.5 * (u_lo + u_hi);
    double p = eval(u_mid, "bisection");
    if (p >= target) {
      u_hi = u_mid;
      p_hi = p;
    } else {
      u_lo = u_mid;
      p_lo = p;
    }
  }
  est.u_lo = u_lo;
  est.u_hi = u_hi;
  est.u_hat = 0.5 * (u_lo + u_hi);
  double slope = (p_hi - p_lo) / std::max(1e-300, u_hi - u_lo);
  double p_se =
      std::sqrt(std::max(target * (1 - target), 0.01) / static_cast<double>(replicas));
  est.stderr_ = slope > 0 ? p_se / slope : u_hi - u_lo;
  return est;
}

// Theorem ratio u * mu2 / (mu1 (1 + log mu1 * [d=4])) * eps_d; equals 1 at the
// reference intensity by construction.
inline double asymptotic_ratio(double u, const LengthDistribution& rho, int d,
                               double eps_d) {
  double m1 = rho.mu1();
  if (!(m1 > 0)) throw ValidationError("asymptotic_ratio: mu1 must be > 0");
  double logf = d == 4 ? 1.0 + std::log(m1) : 1.0;
  return u * rho.mu2() / (m1 * logf) * eps_d;
}

}  // namespace frilab

#endif  // FRILAB_PERCOLATION_HPP
