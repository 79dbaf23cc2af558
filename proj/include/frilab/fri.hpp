#ifndef FRILAB_FRI_HPP
#define FRILAB_FRI_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "frilab/geometry.hpp"
#include "frilab/length_law.hpp"
#include "frilab/parallel.hpp"
#include "frilab/rng.hpp"
#include "frilab/trajectory.hpp"

namespace frilab {

/**
 * One trajectory of a cloud with its provenance: the vertex it was seeded
 * from (window sampling) or its first-hit point and backward/forward split
 * (rerooted sampling), plus an independent U(0,1) mark. Marks realize the
 * thinning coupling: the sub-cloud {mark < u/u'} of a cloud sampled at
 * intensity u' is exactly a cloud at intensity u, nested by construction.
 */
struct CloudEntry {
  Trajectory traj;
  Point origin{};
  int64_t split_m = -1;  // backward length when rerooted, else -1
  int64_t split_l = -1;
  double mark = 0;
};

struct TrajectoryCloud {
  std::vector<CloudEntry> entries;

  size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }

  PointSet vertex_set() const {
    PointSet v;
    for (const CloudEntry& e : entries)
      e.traj.for_each_point([&](const Point& p, int64_t) { v.insert(p); });
    return v;
  }

  void append(const TrajectoryCloud& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  }
};

// Margin such that trajectories from outside rarely reach the interior:
// four diffusive lengths at the 0.999 duration quantile.
inline int64_t default_window_margin(const LengthDistribution& rho) {
  double q = static_cast<double>(rho.quantile(0.999));
  return static_cast<int64_t>(std::ceil(4.0 * std::sqrt(std::max(1.0, q))));
}

/**
 * Window construction of the FRI cloud: independently for each vertex x of
 * the window, Poisson(u/(mu1+1)) walks, each killed at an independent
 * T ~ rho. Trajectories leaving the window are kept whole. Per-vertex
 * streams are keyed by the vertex coordinates, so any partition of the
 * window yields bit-identical output.
 */
inline TrajectoryCloud sample_window(double u, const LengthDistribution& rho,
                                     const Box& window, RngStream stream,
                                     int threads = 0) {
  if (u < 0) throw ValidationError("sample_window: u must be >= 0");
  const int d = window.dim;
  const double per_vertex = u / (rho.mu1() + 1.0);
  const uint64_t n = window.volume();
  TrajectoryCloud cloud;
  if (u == 0 || n == 0) return cloud;

  if (threads <= 0) threads = env_thread_count();
  int parts = std::max(1, threads);
  std::vector<TrajectoryCloud> partial(static_cast<size_t>(parts));
  parallel_for(
      parts,
      [&](int64_t part) {
        uint64_t lo = n * static_cast<uint64_t>(part) / static_cast<uint64_t>(parts);
        uint64_t hi =
            n * (static_cast<uint64_t>(part) + 1) / static_cast<uint64_t>(parts);
        TrajectoryCloud& local = partial[static_cast<size_t>(part)];
        for (uint64_t idx = lo; idx < hi; ++idx) {
          Point x = window.point_at(idx);
          RngStream rng = stream.child(x.hash());
          int64_t k = rng.poisson(per_vertex);
          for (int64_t j = 0; j < k; ++j) {
            int64_t t = rho.sample(rng);
            CloudEntry e;
            e.traj = sample_srw(x, t, d, rng);
            e.origin = x;
            e.mark = rng.next_double();
            local.entries.push_back(std::move(e));
          }
        }
      },
      threads);
  for (auto& p : partial) cloud.append(p);
  return cloud;
}

// Nested thinning: keep entries with mark < keep_fraction. For a cloud drawn
// at intensity u', the result is distributed as a cloud at u = keep*u' and is
// a sub-multiset of the input pathwise.
inline TrajectoryCloud sub_cloud_by_mark(const TrajectoryCloud& cloud,
                                         double keep_fraction) {
  TrajectoryCloud out;
  for (const CloudEntry& e : cloud.entries)
    if (e.mark < keep_fraction) out.entries.push_back(e);
  return out;
}

/**
 * Occupied subgraph: an edge is open iff some trajectory traverses it.
 * Storage is clipped to the window (both endpoints inside). Edges are
 * deduplicated on the doubled lattice: (x, x+e_i) <-> 2x + e_i.
 */
struct OccupiedGraph {
  Box window;
  PointSet vertices;   // V(cloud) intersected with the window
  PointSet open_edges; // doubled-lattice encoding

  static Point edge_key(const Point& a, const Point& b) {
    Point k;
    for (int i = 0; i < kMaxDim; ++i) k[i] = a[i] + b[i];  // = 2x + e
    return k;
  }

  bool has_edge(const Point& a, const Point& b) const {
    return open_edges.contains(edge_key(a, b));
  }
};

inline OccupiedGraph occupied_graph(const TrajectoryCloud& cloud, const Box& window) {
  OccupiedGraph g;
  g.window = window;
  for (const CloudEntry& e : cloud.entries) {
    Point prev = e.traj.start();
    bool prev_in = window.contains(prev);
    if (prev_in) g.vertices.insert(prev);
    for (uint8_t s : e.traj.steps()) {
      Point cur = neighbor(prev, s);
      bool cur_in = window.contains(cur);
      if (cur_in) g.vertices.insert(cur);
      if (prev_in && cur_in) g.open_edges.insert(OccupiedGraph::edge_key(prev, cur));
      prev = cur;
      prev_in = cur_in;
    }
  }
  return g;
}

// X[A; B]: trajectories meeting A and avoiding B.
inline TrajectoryCloud restrict_cloud(const TrajectoryCloud& cloud, const PointSet& a,
                                      const PointSet& b) {
  TrajectoryCloud out;
  for (const CloudEntry& e : cloud.entries) {
    bool hits_a = false, hits_b = false;
    e.traj.for_each_point([&](const Point& p, int64_t) {
      if (!hits_a && a.contains(p)) hits_a = true;
      if (!hits_b && !b.empty() && b.contains(p)) hits_b = true;
    });
    if (hits_a && !hits_b) out.entries.push_back(e);
  }
  return out;
}

inline TrajectoryCloud restrict_cloud(const TrajectoryCloud& cloud, const PointSet& a) {
  return restrict_cloud(cloud, a, PointSet{});
}

// X[A, D; B]: additionally require the first entry into A to land in D <= A.
inline TrajectoryCloud restrict_cloud_hitting(const TrajectoryCloud& cloud,
                                              const PointSet& a, const PointSet& d,
                                              const PointSet& b) {
  for (const Point& p : d.items())
    if (!a.contains(p))
      throw ValidationError("restrict_cloud_hitting: D must be a subset of A");
  TrajectoryCloud out;
  for (const CloudEntry& e : restrict_cloud(cloud, a, b).entries) {
    auto tau = hitting_time(e.traj, a);
    if (tau && d.contains(e.traj.point_at(*tau))) out.entries.push_back(e);
  }
  return out;
}

/**
 * Rerooted sampler for the trajectories of an FRI cloud hitting a finite set,
 * sampled without any window.
 *
 * Per x in A the total candidate intensity over (m,l) splits is exactly u
 * (band-restricted: u times the band's share of the (L+1)-biased weight), so
 * candidates are drawn Poisson(u * w), each with a duration L from the
 * (L+1)-biased law and a uniform split m in {0..L}. A candidate survives iff
 * its m backward steps avoid A, which happens with probability
 * P^x[H~_A > m]; acceptance is therefore the exact thinning that produces
 * the target intensity, and the accepted backward path automatically carries
 * the conditioned law. No estimated quantity enters the sampler.
 *
 * Every emitted trajectory first hits A at time m at its recorded origin;
 * this is checked and a violation throws InvariantError.
 */
inline TrajectoryCloud sample_hitting(double u, const LengthDistribution& rho,
                                      const PointSet& a, int d, RngStream stream,
                                      int64_t band_lo = -1, int64_t band_hi = -1) {
  if (u < 0) throw ValidationError("sample_hitting: u must be >= 0");
  if (a.empty()) throw ValidationError("sample_hitting: A must be nonempty");
  const bool banded = band_lo >= 0;
  if (banded && band_hi < band_lo)
    throw ValidationError("sample_hitting: bad length band");

  // band-restricted (L+1)-biased duration table
  std::vector<int64_t> band_vals;
  std::vector<double> band_cdf;
  double band_weight = 1.0;
  if (banded) {
    double norm = rho.mu1() + 1.0, acc = 0;
    if (rho.family() == LengthDistribution::Family::geometric ||
        rho.support().empty()) {
      for (int64_t l = band_lo; l <= band_hi; ++l) {
        double w = (static_cast<double>(l) + 1.0) * rho.pmf(l);
        if (w <= 0) continue;
        acc += w;
        band_vals.push_back(l);
        band_cdf.push_back(acc);
      }
    } else {
      for (int64_t l : rho.support()) {
        if (l < band_lo || l > band_hi) continue;
        double w = (static_cast<double>(l) + 1.0) * rho.pmf(l);
        acc += w;
        band_vals.push_back(l);
        band_cdf.push_back(acc);
      }
    }
    band_weight = acc / norm;
    if (band_vals.empty()) return {};
    for (double& v : band_cdf) v /= acc;
  }

  TrajectoryCloud out;
  for (const Point& x : a.items()) {
    RngStream rng = stream.child(x.hash());
    int64_t candidates = rng.poisson(u * band_weight);
    for (int64_t c = 0; c < candidates; ++c) {
      int64_t len;
      if (banded) {
        double uu = rng.next_double();
        size_t i = static_cast<size_t>(
            std::lower_bound(band_cdf.begin(), band_cdf.end(), uu) -
            band_cdf.begin());
        if (i >= band_vals.size()) i = band_vals.size() - 1;
        len = band_vals[i];
      } else {
        len = rho.sample_length_biased1(rng);
      }
      int64_t m =
          static_cast<int64_t>(rng.uniform_below(static_cast<uint64_t>(len) + 1));
      int64_t l = len - m;

      // backward part: reversal of an m-step SRW from x; reject on return to A
      std::vector<uint8_t> back(static_cast<size_t>(m));
      Point p = x;
      bool ok = true;
      for (int64_t t = 0; t < m; ++t) {
        uint8_t code =
            static_cast<uint8_t>(rng.uniform_below(static_cast<uint64_t>(2 * d)));
        p = neighbor(p, code);
        if (a.contains(p)) {
          ok = false;
          break;
        }
        back[static_cast<size_t>(t)] = code;
      }
      if (!ok) continue;

      std::vector<uint8_t> steps(static_cast<size_t>(m + l));
      for (int64_t t = 0; t < m; ++t)
        steps[static_cast<size_t>(t)] =
            static_cast<uint8_t>(back[static_cast<size_t>(m - 1 - t)] ^ 1);
      for (int64_t t = 0; t < l; ++t)
        steps[static_cast<size_t>(m + t)] =
            static_cast<uint8_t>(rng.uniform_below(static_cast<uint64_t>(2 * d)));

      CloudEntry e;
      e.traj = Trajectory(p, std::move(steps), d);
      e.origin = x;
      e.split_m = m;
      e.split_l = l;
      e.mark = rng.next_double();

      auto tau = hitting_time(e.traj, a);
      if (!tau || *tau != m || !(e.traj.point_at(*tau) == x))
        throw InvariantError("sample_hitting: emitted trajectory does not first-hit "
                             "A at its recorded origin");
      out.entries.push_back(std::move(e));
    }
  }
  return out;
}

// Total occupation time (visit count) of the cloud at each window vertex.
inline std::vector<int64_t> occupation_field(const TrajectoryCloud& cloud,
                                             const Box& window) {
  std::vector<int64_t> field(window.volume(), 0);
  for (const CloudEntry& e : cloud.entries)
    e.traj.for_each_point([&](const Point& p, int64_t) {
      if (window.contains(p)) field[window.index_of(p)] += 1;
    });
  return field;
}

}  // namespace frilab

#endif  // FRILAB_FRI_HPP
