#ifndef FRILAB_POTENTIAL_HPP
#define FRILAB_POTENTIAL_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "frilab/dirichlet.hpp"
#include "frilab/geometry.hpp"
#include "frilab/length_law.hpp"
#include "frilab/parallel.hpp"
#include "frilab/rng.hpp"
#include "frilab/stats.hpp"
#include "frilab/trajectory.hpp"

namespace frilab {

struct PotentialConfig {
  enum class Method { exact, mc };
  Method method = Method::mc;
  int64_t annulus_radius = 0;   // exact-method box radius; 0 = 4*diam(A)+16
  int64_t mc_walks = 1024;      // walks (or samples) per estimated quantity
  int64_t escape_cutoff = 0;    // steps per escape walk; 0 = auto
  int64_t subsample = 4096;     // points sampled from large sets
  uint64_t max_cells = 1ull << 26;
  double tol = 1e-10;
  int threads = 0;  // 0 = FRILAB_THREADS / hardware
};

struct Estimate {
  double value = 0;
  double stderr_ = 0;
  double bias_bound = 0;
  int64_t n = 0;
};

struct EquilibriumMeasure {
  std::vector<Point> support;  // a copy of A in insertion order
  std::vector<double> weight;  // e_A(x), aligned with support
  std::vector<double> weight_stderr;
  double total = 0;  // cap(A)
  double total_stderr = 0;
  double bias_bound = 0;
};

namespace detail {

inline int64_t auto_escape_cutoff(int64_t diam, const PotentialConfig& cfg) {
  if (cfg.escape_cutoff > 0) return cfg.escape_cutoff;
  int64_t r = 4 * diam + 16;
  return std::max<int64_t>(2048, r * r);
}

// Order bound on the escape-probability bias of an s-step cutoff: a walker
// that survives s steps sits at diffusive distance ~ sqrt(s/d) and returns
// with probability of order cap(A) * dist^(2-d). Constants unknown.
inline double escape_bias_bound(double cap_upper, int64_t s, int d) {
  double dist = std::sqrt(static_cast<double>(s) / d);
  if (dist < 1) dist = 1;
  return cap_upper * std::pow(dist, 2.0 - d);
}

}  // namespace detail

// True iff an s-step walk from start never returns to A at times 1..s.
template <class SetLike>
bool escapes(const Point& start, const SetLike& a, int64_t s, int d, RngStream& rng) {
  Point p = start;
  const uint64_t moves = static_cast<uint64_t>(2 * d);
  for (int64_t t = 0; t < s; ++t) {
    p = neighbor(p, static_cast<int>(rng.uniform_below(moves)));
    if (a.contains(p)) return false;
  }
  return true;
}

// True iff an s-step walk from start enters A at some time 0..s.
template <class SetLike>
bool hits_within(const Point& start, const SetLike& a, int64_t s, int d,
                 RngStream& rng) {
  if (a.contains(start)) return true;
  return !escapes(start, a, s, d, rng);
}

inline bool all_neighbors_inside(const Point& x, const PointSet& a, int d) {
  for (int c = 0; c < 2 * d; ++c)
    if (!a.contains(neighbor(x, c))) return false;
  return true;
}

/**
 * Green's function estimate. The exact method reads the orbit-reduced
 * Dirichlet solve (caller supplies the table so it can be reused across
 * pairs); the MC method averages visit counts of length-capped walks.
 */
inline Estimate green_mc(const Point& x, const Point& y, int d,
                         const PotentialConfig& cfg, RngStream rng) {
  int64_t s = cfg.escape_cutoff > 0
                  ? cfg.escape_cutoff
                  : std::max<int64_t>(4096, 64 * dist_linf(x, y) * dist_linf(x, y));
  const int64_t n = cfg.mc_walks;
  std::vector<double> visits(static_cast<size_t>(n));
  parallel_for(
      n,
      [&](int64_t i) {
        RngStream r = rng.child(static_cast<uint64_t>(i));
        Point p = x;
        double v = (p == y) ? 1 : 0;
        for (int64_t t = 0; t < s; ++t) {
          p = neighbor(p, static_cast<int>(r.uniform_below(static_cast<uint64_t>(2 * d))));
          if (p == y) v += 1;
        }
        visits[static_cast<size_t>(i)] = v;
      },
      cfg.threads);
  auto mv = mean_var(visits);
  Estimate e;
  e.value = mv.mean;
  e.stderr_ = mv.stderr_;
  e.n = n;
  double dist = std::sqrt(static_cast<double>(s) / d);
  e.bias_bound = std::pow(std::max(1.0, dist), 2.0 - d);
  return e;
}

inline Estimate green_exact(const Point& x, const Point& y, const GreenTable& table) {
  Point diff = x - y;
  if (!table.covers(diff))
    throw ValidationError("green: table radius does not exceed |x-y|");
  Estimate e;
  e.value = table.at_offset(diff);
  e.bias_bound = table.bias_bound(diff);
  e.n = 1;
  return e;
}

inline EquilibriumMeasure equilibrium_measure(const PointSet& a, int d,
                                              const PotentialConfig& cfg,
                                              RngStream rng) {
  if (a.empty()) throw ValidationError("equilibrium_measure: A must be nonempty");
  EquilibriumMeasure m;
  m.support = a.items();
  m.weight.assign(a.size(), 0.0);
  m.weight_stderr.assign(a.size(), 0.0);
  int64_t diam = diameter_linf(a.items());

  if (cfg.method == PotentialConfig::Method::exact) {
    EscapeField field =
        EscapeField::solve(a, d, cfg.annulus_radius, cfg.tol, cfg.max_cells);
    int64_t r = field.box().extent;
    for (size_t i = 0; i < m.support.size(); ++i)
      m.weight[i] = field.equilibrium_weight(m.support[i]);
    m.bias_bound = static_cast<double>(a.size()) *
                   std::pow(std::max<int64_t>(1, r - diam), 2.0 - d);
  } else {
    const int64_t s = detail::auto_escape_cutoff(diam, cfg);
    const int64_t w = cfg.mc_walks;
    parallel_for(
        static_cast<int64_t>(a.size()),
        [&](int64_t i) {
          const Point& x = m.support[static_cast<size_t>(i)];
          if (all_neighbors_inside(x, a, d)) return;  // interior: e = 0 exactly
          RngStream r = rng.child(static_cast<uint64_t>(i));
          int64_t ok = 0;
          for (int64_t k = 0; k < w; ++k)
            if (escapes(x, a, s, d, r)) ++ok;
          double p = static_cast<double>(ok) / static_cast<double>(w);
          m.weight[static_cast<size_t>(i)] = p;
          m.weight_stderr[static_cast<size_t>(i)] =
              std::sqrt(p * (1 - p) / static_cast<double>(w));
        },
        cfg.threads);
    m.bias_bound = detail::escape_bias_bound(static_cast<double>(a.size()), s, d);
  }
  double tot = 0, var = 0;
  for (size_t i = 0; i < m.weight.size(); ++i) {
    tot += m.weight[i];
    var += m.weight_stderr[i] * m.weight_stderr[i];
  }
  m.total = tot;
  m.total_stderr = std::sqrt(var);
  return m;
}

inline Estimate capacity(const PointSet& a, int d, const PotentialConfig& cfg,
                         RngStream rng) {
  EquilibriumMeasure m = equilibrium_measure(a, d, cfg, std::move(rng));
  Estimate e;
  e.value = m.total;
  e.stderr_ = m.total_stderr;
  e.bias_bound = m.bias_bound;
  e.n = static_cast<int64_t>(a.size());
  return e;
}

/**
 * cap(A, s) = sum_x P^x[no return to A within s steps], estimated with one
 * escape walk per point; sets larger than cfg.subsample are subsampled
 * uniformly with the unbiased |A|/K scaling.
 */
inline Estimate truncated_capacity(const PointSet& a, int64_t s, int d,
                                   const PotentialConfig& cfg, RngStream rng) {
  if (s < 0) throw ValidationError("truncated_capacity: s must be >= 0");
  Estimate e;
  if (a.empty()) return e;
  if (s == 0) {  // P[H > 0] = 1 for every point
    e.value = static_cast<double>(a.size());
    e.n = static_cast<int64_t>(a.size());
    return e;
  }
  const int64_t size = static_cast<int64_t>(a.size());
  const bool subsampled = size > cfg.subsample;
  const int64_t k = subsampled ? cfg.subsample : size;
  const int64_t walks_per_point = subsampled ? 1 : std::max<int64_t>(1, cfg.mc_walks / 16);

  std::vector<double> est(static_cast<size_t>(k)), var(static_cast<size_t>(k));
  parallel_for(
      k,
      [&](int64_t i) {
        RngStream r = rng.child(static_cast<uint64_t>(i));
        const Point& x =
            subsampled
                ? a.items()[r.uniform_below(static_cast<uint64_t>(size))]
                : a.items()[static_cast<size_t>(i)];
        if (all_neighbors_inside(x, a, d)) {
          est[static_cast<size_t>(i)] = 0;  // returns at step 1 surely
          return;
        }
        int64_t ok = 0;
        for (int64_t w = 0; w < walks_per_point; ++w)
          if (escapes(x, a, s, d, r)) ++ok;
        double p = static_cast<double>(ok) / static_cast<double>(walks_per_point);
        est[static_cast<size_t>(i)] = p;
        var[static_cast<size_t>(i)] = p * (1 - p) / static_cast<double>(walks_per_point);
      },
      cfg.threads);

  if (subsampled) {
    auto mv = mean_var(est);
    e.value = static_cast<double>(size) * mv.mean;
    e.stderr_ = static_cast<double>(size) * mv.stderr_;
  } else {
    double tot = 0, v = 0;
    for (size_t i = 0; i < est.size(); ++i) {
      tot += est[i];
      v += var[i];
    }
    e.value = tot;
    e.stderr_ = std::sqrt(v);
  }
  e.n = k * walks_per_point;
  return e;
}

/**
 * e_A^(rho)(x) = sum_m  mu_0^(m)/(mu_1+1) P^x[H~_A > m], estimated by drawing
 * the horizon m exactly (length-biased L, then m uniform on {0..L}) and
 * running one return-test walk per draw.
 */
inline Estimate rho_equilibrium_point(const PointSet& a, const Point& x,
                                      const LengthDistribution& rho, int d,
                                      const PotentialConfig& cfg, RngStream rng) {
  const int64_t n = cfg.mc_walks;
  int64_t ok = 0;
  for (int64_t i = 0; i < n; ++i) {
    int64_t len = rho.sample_length_biased1(rng);
    int64_t m = static_cast<int64_t>(rng.uniform_below(static_cast<uint64_t>(len) + 1));
    if (escapes(x, a, m, d, rng)) ++ok;
  }
  Estimate e;
  e.value = static_cast<double>(ok) / static_cast<double>(n);
  e.stderr_ = std::sqrt(e.value * (1 - e.value) / static_cast<double>(n));
  e.n = n;
  return e;
}

inline Estimate rho_capacity(const PointSet& a, const LengthDistribution& rho, int d,
                             const PotentialConfig& cfg, RngStream rng) {
  if (a.empty()) throw ValidationError("rho_capacity: A must be nonempty");
  const int64_t size = static_cast<int64_t>(a.size());
  const bool subsampled = size > cfg.subsample;
  const int64_t k = subsampled ? cfg.subsample : size;
  std::vector<double> val(static_cast<size_t>(k)), var(static_cast<size_t>(k));
  parallel_for(
      k,
      [&](int64_t i) {
        RngStream r = rng.child(static_cast<uint64_t>(i));
        const Point& x =
            subsampled
                ? a.items()[r.uniform_below(static_cast<uint64_t>(size))]
                : a.items()[static_cast<size_t>(i)];
        Estimate pt = rho_equilibrium_point(a, x, rho, d, cfg, r.child(1));
        val[static_cast<size_t>(i)] = pt.value;
        var[static_cast<size_t>(i)] = pt.stderr_ * pt.stderr_;
      },
      cfg.threads);
  Estimate e;
  if (subsampled) {
    auto mv = mean_var(val);
    e.value = static_cast<double>(size) * mv.mean;
    e.stderr_ = static_cast<double>(size) * mv.stderr_;
  } else {
    for (size_t i = 0; i < val.size(); ++i) {
      e.value += val[i];
      e.stderr_ += var[i];
    }
    e.stderr_ = std::sqrt(e.stderr_);
  }
  e.n = k * cfg.mc_walks;
  return e;
}

/**
 * kappa^(rho)(A) = sum_x sum_m mu_1^(m)/mu_2 P^x[H~_A > m]. The m-weights
 * sum to (mu_1 + mu_2)/mu_2, so the estimator scales a probability sampled
 * with the l(l+1)-biased horizon law by that factor.
 */
inline Estimate kappa_rho(const PointSet& a, const LengthDistribution& rho, int d,
                          const PotentialConfig& cfg, RngStream rng) {
  if (a.empty()) throw ValidationError("kappa_rho: A must be nonempty");
  const double scale = (rho.mu1() + rho.mu2()) / rho.mu2();
  const int64_t size = static_cast<int64_t>(a.size());
  const bool subsampled = size > cfg.subsample;
  const int64_t k = subsampled ? cfg.subsample : size;
  const int64_t n = cfg.mc_walks;
  std::vector<double> val(static_cast<size_t>(k)), var(static_cast<size_t>(k));
  parallel_for(
      k,
      [&](int64_t i) {
        RngStream r = rng.child(static_cast<uint64_t>(i));
        const Point& x =
            subsampled
                ? a.items()[r.uniform_below(static_cast<uint64_t>(size))]
                : a.items()[static_cast<size_t>(i)];
        int64_t ok = 0;
        for (int64_t w = 0; w < n; ++w) {
          int64_t len = rho.sample_length_biased2(r);
          int64_t m =
              static_cast<int64_t>(r.uniform_below(static_cast<uint64_t>(len) + 1));
          if (escapes(x, a, m, d, r)) ++ok;
        }
        double p = static_cast<double>(ok) / static_cast<double>(n);
        val[static_cast<size_t>(i)] = scale * p;
        var[static_cast<size_t>(i)] =
            scale * scale * p * (1 - p) / static_cast<double>(n);
      },
      cfg.threads);
  Estimate e;
  if (subsampled) {
    auto mv = mean_var(val);
    e.value = static_cast<double>(size) * mv.mean;
    e.stderr_ = static_cast<double>(size) * mv.stderr_;
  } else {
    for (size_t i = 0; i < val.size(); ++i) {
      e.value += val[i];
      e.stderr_ += var[i];
    }
    e.stderr_ = std::sqrt(e.stderr_);
  }
  e.n = k * n;
  return e;
}

// P^x[H_A < infinity]: direct estimate (MC walks or exact escape field).
inline Estimate hitting_probability(const Point& x, const PointSet& a, int d,
                                    const PotentialConfig& cfg, RngStream rng) {
  if (a.empty()) throw ValidationError("hitting_probability: A must be nonempty");
  Estimate e;
  if (a.contains(x)) {
    e.value = 1.0;
    e.n = 1;
    return e;
  }
  if (cfg.method == PotentialConfig::Method::exact) {
    int64_t diam = diameter_linf(a.items());
    int64_t need = 2 * dist_linf(x, a) + diam + 8;
    int64_t radius = std::max(cfg.annulus_radius, need);
    EscapeField field = EscapeField::solve(a, d, radius, cfg.tol, cfg.max_cells);
    e.value = 1.0 - field.escape_prob(x);
    e.bias_bound = static_cast<double>(a.size()) *
                   std::pow(std::max<int64_t>(1, radius - diam), 2.0 - d);
    e.n = 1;
    return e;
  }
  const int64_t s = detail::auto_escape_cutoff(
      diameter_linf(a.items()) + dist_linf(x, a), cfg);
  const int64_t n = cfg.mc_walks;
  std::vector<double> hit(static_cast<size_t>(n));
  parallel_for(
      n,
      [&](int64_t i) {
        RngStream r = rng.child(static_cast<uint64_t>(i));
        hit[static_cast<size_t>(i)] = hits_within(x, a, s, d, r) ? 1.0 : 0.0;
      },
      cfg.threads);
  auto mv = mean_var(hit);
  e.value = mv.mean;
  e.stderr_ = mv.stderr_;
  e.bias_bound = detail::escape_bias_bound(static_cast<double>(a.size()), s, d);
  e.n = n;
  return e;
}

// Last-exit decomposition h(x, A) = sum_y g(x, y) e_A(y).
inline Estimate hitting_probability_decomposed(const Point& x,
                                               const EquilibriumMeasure& em,
                                               const GreenTable& green) {
  Estimate e;
  double var = 0;
  for (size_t i = 0; i < em.support.size(); ++i) {
    double g = green.at(x, em.support[i]);
    e.value += g * em.weight[i];
    var += g * g * em.weight_stderr[i] * em.weight_stderr[i];
    e.bias_bound += g * em.bias_bound / static_cast<double>(em.support.size()) +
                    green.bias_bound(x - em.support[i]) * em.weight[i];
  }
  e.stderr_ = std::sqrt(var);
  e.n = static_cast<int64_t>(em.support.size());
  return e;
}

/**
 * phi^(rho)(A, B) = sum_{x in A, y in B} e_A^(rho)(x) e_B^(rho)(y) g(x, y).
 */
inline Estimate phi_rho(const PointSet& a, const PointSet& b,
                        const LengthDistribution& rho, int d,
                        const PotentialConfig& cfg, const GreenTable& green,
                        RngStream rng) {
  if (a.empty() || b.empty()) throw ValidationError("phi_rho: sets must be nonempty");
  auto per_point = [&](const PointSet& s, uint64_t salt, std::vector<double>& val,
                       std::vector<double>& var) {
    val.assign(s.size(), 0.0);
    var.assign(s.size(), 0.0);
    parallel_for(
        static_cast<int64_t>(s.size()),
        [&](int64_t i) {
          Estimate pt = rho_equilibrium_point(
              s, s.items()[static_cast<size_t>(i)], rho, d, cfg,
              rng.child({salt, static_cast<uint64_t>(i)}));
          val[static_cast<size_t>(i)] = pt.value;
          var[static_cast<size_t>(i)] = pt.stderr_ * pt.stderr_;
        },
        cfg.threads);
  };
  std::vector<double> ea, va, eb, vb;
  per_point(a, 1, ea, va);
  per_point(b, 2, eb, vb);

  Estimate e;
  std::vector<double> row_g_b(a.size(), 0.0);  // sum_y g(x,y) e_B(y) per x
  std::vector<double> col_g_a(b.size(), 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      double g = green.at(a.items()[i], b.items()[j]);
      e.value += ea[i] * eb[j] * g;
      row_g_b[i] += g * eb[j];
      col_g_a[j] += g * ea[i];
    }
  double var = 0;
  for (size_t i = 0; i < a.size(); ++i) var += row_g_b[i] * row_g_b[i] * va[i];
  for (size_t j = 0; j < b.size(); ++j) var += col_g_a[j] * col_g_a[j] * vb[j];
  e.stderr_ = std::sqrt(var);
  e.n = static_cast<int64_t>(a.size() * b.size());
  return e;
}

struct EpsilonEstimate {
  std::vector<double> samples;  // cap(X[0,T], s) * (1 + log T * [d=4]) / T
  std::vector<double> raw_capacity;
  MeanVar normalized;
  int64_t t = 0;
  int d = 4;
};

/**
 * Sample-mean estimator of the capacity rate constant eps_d from independent
 * walk traces: cap(X[0,T]) * T^{-1} (1 + log T * [d=4]) over replicas, with
 * the capacity of each trace measured by the subsampled truncated estimator.
 */
inline EpsilonEstimate estimate_epsilon(int d, int64_t t, int64_t replicas,
                                        const PotentialConfig& cfg, RngStream rng) {
  if (t < 1) throw ValidationError("estimate_epsilon: T must be >= 1");
  EpsilonEstimate out;
  out.t = t;
  out.d = d;
  out.samples.assign(static_cast<size_t>(replicas), 0.0);
  out.raw_capacity.assign(static_cast<size_t>(replicas), 0.0);
  const double norm = (d == 4 ? 1.0 + std::log(static_cast<double>(t)) : 1.0) /
                      static_cast<double>(t);
  const int64_t s = cfg.escape_cutoff > 0 ? cfg.escape_cutoff : t;
  parallel_for(
      replicas,
      [&](int64_t i) {
        RngStream r = rng.child(static_cast<uint64_t>(i));
        Trajectory trace = sample_srw(Point{}, t, d, r);
        PointSet range = trace.range();
        PotentialConfig local = cfg;
        local.threads = 1;
        Estimate cap = truncated_capacity(range, s, d, local, r.child(1));
        out.raw_capacity[static_cast<size_t>(i)] = cap.value;
        out.samples[static_cast<size_t>(i)] = cap.value * norm;
      },
      cfg.threads);
  out.normalized = mean_var(out.samples);
  return out;
}

}  // namespace frilab

#endif  // FRILAB_POTENTIAL_HPP
