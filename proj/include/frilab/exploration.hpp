#ifndef FRILAB_EXPLORATION_HPP
#define FRILAB_EXPLORATION_HPP

#include <cstdint>
#include <vector>

#include "frilab/fri.hpp"
#include "frilab/potential.hpp"

namespace frilab {

/**
 * Layered exploration of the cluster containing the origin. Layer k+1 holds
 * the cloud trajectories hitting the vertex set of layer k while avoiding
 * all earlier layers; the union over layers is exactly the trajectory set of
 * the origin's cluster.
 */
struct LayerRecord {
  std::vector<TrajectoryCloud> layers;    // layers[k] = L_{k+1} (nonempty ones)
  std::vector<PointSet> vertex_layers;    // vertex_layers[0] = L_0 = {0}
  bool truncated = false;                 // max_layers reached, cluster not closed
  int64_t total_trajectories = 0;
};

struct ExplorationLimits {
  int max_layers = 32;
  int64_t max_total_vertices = 100000000;  // graceful abort past 1e8 points
};

namespace detail {

inline bool cloud_hits(const Trajectory& t, const PointSet& s) {
  if (s.empty()) return false;
  bool hit = false;
  t.for_each_point([&](const Point& p, int64_t) {
    if (!hit && s.contains(p)) hit = true;
  });
  return hit;
}

}  // namespace detail

// Fresh-noise sampling of the exploration layers (the conditional law of each
// new layer given the history is exactly an independent restricted cloud).
inline LayerRecord explore_layers(double u, const LengthDistribution& rho, int d,
                                  RngStream stream,
                                  const ExplorationLimits& lim = {}) {
  LayerRecord rec;
  PointSet l0;
  l0.insert(Point{});
  rec.vertex_layers.push_back(l0);

  PointSet excluded;  // union of L_0 .. L_{k-2} while sampling layer k
  PointSet last = l0;
  int64_t vertex_budget = static_cast<int64_t>(lim.max_total_vertices);
  for (int k = 1; k <= lim.max_layers; ++k) {
    TrajectoryCloud fresh =
        sample_hitting(u, rho, last, d, stream.child(static_cast<uint64_t>(k)));
    TrajectoryCloud kept;
    for (CloudEntry& e : fresh.entries)
      if (!detail::cloud_hits(e.traj, excluded)) kept.entries.push_back(std::move(e));
    if (kept.empty()) return rec;

    PointSet verts = kept.vertex_set();
    vertex_budget -= static_cast<int64_t>(verts.size());
    if (vertex_budget < 0)
      throw BudgetError("explore_layers: cumulative vertex budget exhausted");
    rec.total_trajectories += static_cast<int64_t>(kept.size());
    rec.layers.push_back(std::move(kept));
    rec.vertex_layers.push_back(verts);
    for (const Point& p : last.items()) excluded.insert(p);
    last = std::move(verts);
  }
  rec.truncated = true;
  return rec;
}

// Deterministic peeling of a fixed cloud into exploration layers.
inline LayerRecord explore_layers_of(const TrajectoryCloud& cloud,
                                     const ExplorationLimits& lim = {}) {
  LayerRecord rec;
  PointSet l0;
  l0.insert(Point{});
  rec.vertex_layers.push_back(l0);

  std::vector<bool> used(cloud.size(), false);
  PointSet excluded;
  PointSet last = l0;
  for (int k = 1; k <= lim.max_layers; ++k) {
    TrajectoryCloud layer;
    for (size_t i = 0; i < cloud.size(); ++i) {
      if (used[i]) continue;
      const CloudEntry& e = cloud.entries[i];
      if (detail::cloud_hits(e.traj, last) && !detail::cloud_hits(e.traj, excluded)) {
        layer.entries.push_back(e);
        used[i] = true;
      }
    }
    if (layer.empty()) return rec;
    PointSet verts = layer.vertex_set();
    rec.total_trajectories += static_cast<int64_t>(layer.size());
    rec.layers.push_back(std::move(layer));
    rec.vertex_layers.push_back(verts);
    for (const Point& p : last.items()) excluded.insert(p);
    last = std::move(verts);
  }
  rec.truncated = true;
  return rec;
}

// Dominating process: every layer is drawn from a fresh independent cloud
// hitting the previous layer's vertices, with no exclusions.
inline LayerRecord explore_dominating(double u, const LengthDistribution& rho, int d,
                                      RngStream stream,
                                      const ExplorationLimits& lim = {}) {
  LayerRecord rec;
  PointSet l0;
  l0.insert(Point{});
  rec.vertex_layers.push_back(l0);
  PointSet last = l0;
  int64_t vertex_budget = static_cast<int64_t>(lim.max_total_vertices);
  for (int k = 1; k <= lim.max_layers; ++k) {
    TrajectoryCloud layer =
        sample_hitting(u, rho, last, d, stream.child(static_cast<uint64_t>(k)));
    if (layer.empty()) return rec;
    PointSet verts = layer.vertex_set();
    vertex_budget -= static_cast<int64_t>(verts.size());
    if (vertex_budget < 0)
      throw BudgetError("explore_dominating: cumulative vertex budget exhausted");
    rec.total_trajectories += static_cast<int64_t>(layer.size());
    rec.layers.push_back(std::move(layer));
    rec.vertex_layers.push_back(verts);
    last = std::move(verts);
  }
  rec.truncated = true;
  return rec;
}

/**
 * Coupled pair (plain, dominating) built from shared fresh clouds per layer:
 * the k-th cloud is drawn against the primed layer's vertices, and the plain
 * layer is its sub-multiset hitting the plain vertices while avoiding the
 * plain history. Containment of every layer holds pathwise by construction.
 */
inline std::pair<LayerRecord, LayerRecord> explore_coupled(
    double u, const LengthDistribution& rho, int d, RngStream stream,
    const ExplorationLimits& lim = {}) {
  LayerRecord plain, primed;
  PointSet l0;
  l0.insert(Point{});
  plain.vertex_layers.push_back(l0);
  primed.vertex_layers.push_back(l0);

  PointSet excluded;
  PointSet last_plain = l0, last_primed = l0;
  bool plain_alive = true;
  int64_t vertex_budget = static_cast<int64_t>(lim.max_total_vertices);
  for (int k = 1; k <= lim.max_layers; ++k) {
    TrajectoryCloud shared =
        sample_hitting(u, rho, last_primed, d, stream.child(static_cast<uint64_t>(k)));
    if (shared.empty()) return {plain, primed};

    TrajectoryCloud plain_layer;
    if (plain_alive) {
      for (const CloudEntry& e : shared.entries)
        if (detail::cloud_hits(e.traj, last_plain) &&
            !detail::cloud_hits(e.traj, excluded))
          plain_layer.entries.push_back(e);
    }

    PointSet verts = shared.vertex_set();
    vertex_budget -= static_cast<int64_t>(verts.size());
    if (vertex_budget < 0)
      throw BudgetError("explore_coupled: cumulative vertex budget exhausted");
    primed.total_trajectories += static_cast<int64_t>(shared.size());
    primed.layers.push_back(shared);
    primed.vertex_layers.push_back(verts);

    if (plain_alive && !plain_layer.empty()) {
      PointSet pv = plain_layer.vertex_set();
      plain.total_trajectories += static_cast<int64_t>(plain_layer.size());
      plain.layers.push_back(std::move(plain_layer));
      plain.vertex_layers.push_back(pv);
      for (const Point& p : last_plain.items()) excluded.insert(p);
      last_plain = std::move(pv);
    } else {
      plain_alive = false;
    }
    last_primed = std::move(verts);
  }
  plain.truncated = plain_alive;
  primed.truncated = true;
  return {plain, primed};
}

/**
 * Monte Carlo track of the contraction sequence: W_k is the mean of
 * kappa^(rho) over the dominating process' k-th vertex layer, V_k the mean
 * layer volume (log-normalized in d=4).
 */
struct RecursionTrack {
  std::vector<MeanVar> w;  // index k: W_k, k = 0..max_layers
  std::vector<MeanVar> v;  // V_k
  std::vector<double> mean_layer_size;
};

inline RecursionTrack track_recursion(double u, const LengthDistribution& rho, int d,
                                      int64_t replicas, int max_layers,
                                      const PotentialConfig& cfg, RngStream stream) {
  const double vol_norm = d == 4 ? 1.0 / std::log(rho.mu1()) : 1.0;
  std::vector<std::vector<double>> kappas(static_cast<size_t>(max_layers) + 1),
      vols(static_cast<size_t>(max_layers) + 1);

  // layer 0 is deterministic: kappa({0})
  PointSet l0;
  l0.insert(Point{});
  PotentialConfig c0 = cfg;
  c0.mc_walks = cfg.mc_walks * 8;
  Estimate k0 = kappa_rho(l0, rho, d, c0, stream.child(0xC0FFEE));

  std::vector<std::vector<std::pair<double, double>>> per_replica(
      static_cast<size_t>(replicas));
  parallel_for(
      replicas,
      [&](int64_t r) {
        RngStream rng = stream.child(static_cast<uint64_t>(r));
        ExplorationLimits lim;
        lim.max_layers = max_layers;
        LayerRecord rec = explore_dominating(u, rho, d, rng.child(1), lim);
        auto& rows = per_replica[static_cast<size_t>(r)];
        rows.resize(static_cast<size_t>(max_layers) + 1, {0.0, 0.0});
        PotentialConfig local = cfg;
        local.threads = 1;
        for (int k = 1; k <= max_layers; ++k) {
          if (static_cast<size_t>(k) >= rec.vertex_layers.size()) break;  // extinct
          const PointSet& lk = rec.vertex_layers[static_cast<size_t>(k)];
          Estimate kap =
              kappa_rho(lk, rho, d, local, rng.child({2, static_cast<uint64_t>(k)}));
          rows[static_cast<size_t>(k)] = {kap.value, static_cast<double>(lk.size())};
        }
      },
      cfg.threads);

  for (int64_t r = 0; r < replicas; ++r)
    for (int k = 1; k <= max_layers; ++k) {
      kappas[static_cast<size_t>(k)].push_back(
          per_replica[static_cast<size_t>(r)][static_cast<size_t>(k)].first);
      vols[static_cast<size_t>(k)].push_back(
          per_replica[static_cast<size_t>(r)][static_cast<size_t>(k)].second *
          vol_norm);
    }

  RecursionTrack track;
  track.w.resize(static_cast<size_t>(max_layers) + 1);
  track.v.resize(static_cast<size_t>(max_layers) + 1);
  track.mean_layer_size.resize(static_cast<size_t>(max_layers) + 1, 0.0);
  track.w[0].mean = k0.value;
  track.w[0].stderr_ = k0.stderr_;
  track.w[0].n = 1;
  track.v[0].mean = vol_norm;
  track.v[0].n = 1;
  track.mean_layer_size[0] = 1;
  for (int k = 1; k <= max_layers; ++k) {
    track.w[static_cast<size_t>(k)] = mean_var(kappas[static_cast<size_t>(k)]);
    track.v[static_cast<size_t>(k)] = mean_var(vols[static_cast<size_t>(k)]);
    track.mean_layer_size[static_cast<size_t>(k)] =
        track.v[static_cast<size_t>(k)].mean / vol_norm;
  }
  return track;
}

}  // namespace frilab

#endif  // FRILAB_EXPLORATION_HPP
