#ifndef FRILAB_TYPICALITY_HPP
#define FRILAB_TYPICALITY_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frilab/dirichlet.hpp"
#include "frilab/fri.hpp"
#include "frilab/potential.hpp"

namespace frilab {

/**
 * Scales and thresholds of the coarse-grained construction, derived from the
 * length law. The paper-side constants (duration band k..K, diameter factor
 * M, capacity band theta1, proper-part floor theta2) are existence-quantified
 * in the source material, so here they are experiment knobs; the derived
 * quantities R_n, L_n, I_n, T'_n, C~_n, z_n follow fixed formulas.
 */
struct TypicalityParams {
  double duration_lo = 0.25;  // k: T >= k R^2
  double duration_hi = 4.0;   // K: T <= K R^2
  double diam_factor = 4.0;   // M: range inside B(start, M R)
  double theta1 = 0.1;        // capacity band half-width is theta1^2
  double theta2 = 0.1;        // equilibrium floor for the *-proper part
  double c = 0.01;            // fixed mesoscopic exponent
  // Slack factor for the sausage-volume event: the asymptotic threshold
  // R^2 L^(d-2) I^(1/3) sits below the volume of even a single L-ball at
  // desk-scale R, so a calibrated multiple keeps the event non-vacuous.
  // 0 = auto-calibrate to 3x the crude per-box estimate.
  double e3_slack = 0.0;

  // derived
  int d = 4;
  double mu1 = 0;
  int64_t r_n = 0;       // R_n = floor(sqrt(mu1))
  int64_t l_n = 0;       // mesoscopic scale
  double i_n = 1;        // mildly increasing divisor
  int64_t t_prime_n = 0; // block length for E4
  double c_tilde_n = 0;  // typical capacity of an R^2-step walk
  double cap_rate = 0;   // eps_d (1 + log mu1 [d=4])^{-1}
  Point z_n{};           // floor(R/2) * (1,...,1)
  int64_t band_lo = 0, band_hi = 0;  // duration band in steps
  double eps_d = 0;

  static TypicalityParams derive(const LengthDistribution& rho, int d, double eps_d,
                                 TypicalityParams base = {}) {
    check_dimension(d);
    TypicalityParams p = base;
    p.d = d;
    p.eps_d = eps_d;
    p.mu1 = rho.mu1();
    p.r_n = static_cast<int64_t>(std::floor(std::sqrt(p.mu1)));
    if (p.r_n < 2)
      throw ValidationError("typicality: need mu1 >= 4 so that R_n >= 2");
    double r = static_cast<double>(p.r_n);
    if (d >= 5) {
      p.l_n = std::max<int64_t>(1, static_cast<int64_t>(
                                       std::floor(std::pow(r, (2 + p.c) / (d - 2)))));
      p.i_n = std::pow(r, p.c);
      p.t_prime_n =
          std::max<int64_t>(1, static_cast<int64_t>(std::floor(std::pow(r, 2 - p.c / 4))));
      p.c_tilde_n = r * r;
    } else {
      p.l_n = std::max<int64_t>(
          1, static_cast<int64_t>(std::floor(r * std::pow(std::log(r), -p.c))));
      p.i_n = std::pow(std::log(r), p.c);
      p.t_prime_n = std::max<int64_t>(
          1, static_cast<int64_t>(std::floor(r * r / std::log(p.mu1))));
      p.c_tilde_n = r * r / std::log(r * r);
    }
    p.cap_rate = capacity_rate(d, eps_d, p.mu1);
    for (int i = 0; i < d; ++i) p.z_n[i] = static_cast<int32_t>(p.r_n / 2);
    p.band_lo = static_cast<int64_t>(std::ceil(p.duration_lo * r * r));
    p.band_hi = static_cast<int64_t>(std::floor(p.duration_hi * r * r));
    if (p.band_lo < 1) p.band_lo = 1;
    if (p.band_hi < p.band_lo) p.band_hi = p.band_lo;
    if (p.e3_slack <= 0) {
      // crude per-box sausage estimate: (T/L^2 + 1) boxes of (2L+1)^d sites
      double boxes = p.duration_hi * r * r /
                         static_cast<double>(p.l_n * p.l_n) + 1.0;
      double crude = boxes * std::pow(2.0 * static_cast<double>(p.l_n) + 1.0, d);
      double base_thr = r * r * std::pow(static_cast<double>(p.l_n), d - 2) *
                        std::pow(p.i_n, 1.0 / 3.0);
      p.e3_slack = std::max(1.0, 3.0 * crude / base_thr);
    }
    return p;
  }

  double e3_threshold() const {
    return e3_slack * static_cast<double>(r_n) * static_cast<double>(r_n) *
           std::pow(static_cast<double>(l_n), d - 2) * std::pow(i_n, 1.0 / 3.0);
  }

  // return horizon in the d=4 *-proper condition, floored at one step
  int64_t proper_return_horizon() const {
    double r = static_cast<double>(r_n);
    return std::max<int64_t>(
        1, static_cast<int64_t>(std::floor(r * r * std::pow(std::log(r), -10.0))));
  }
};

/**
 * Exact count of |B(A, L)| = |A + [-L, L]^d| by sorting the (d-1)-dimensional
 * cross-section columns and merging first-axis intervals.
 */
inline uint64_t sausage_volume(const std::vector<Point>& pts, int64_t l, int d,
                               uint64_t max_entries = 30000000) {
  if (pts.empty()) return 0;
  if (l == 0) {
    PointSet dedup(pts.size());
    for (const Point& p : pts) dedup.insert(p);
    return dedup.size();
  }
  const int64_t w = 2 * l + 1;
  uint64_t columns = 1;
  for (int i = 1; i < d; ++i) columns *= static_cast<uint64_t>(w);
  if (columns * pts.size() > max_entries)
    throw BudgetError("sausage_volume: cross-section too large");

  struct Entry {
    std::array<int32_t, kMaxDim - 1> col;
    int32_t lo;
    bool operator<(const Entry& o) const {
      if (col != o.col) return col < o.col;
      return lo < o.lo;
    }
    bool same_column(const Entry& o) const { return col == o.col; }
  };
  std::vector<Entry> entries;
  entries.reserve(pts.size() * columns);
  std::vector<int64_t> off(static_cast<size_t>(d) - 1, -l);
  for (const Point& p : pts) {
    std::fill(off.begin(), off.end(), -l);
    while (true) {
      Entry e{};
      for (int i = 1; i < d; ++i)
        e.col[static_cast<size_t>(i - 1)] =
            static_cast<int32_t>(p[i] + off[static_cast<size_t>(i - 1)]);
      e.lo = static_cast<int32_t>(p[0] - l);
      entries.push_back(e);
      int i = d - 2;
      for (; i >= 0; --i) {
        if (off[static_cast<size_t>(i)] < l) {
          ++off[static_cast<size_t>(i)];
          break;
        }
        off[static_cast<size_t>(i)] = -l;
      }
      if (i < 0) break;
    }
  }
  std::sort(entries.begin(), entries.end());
  uint64_t total = 0;
  size_t i = 0;
  while (i < entries.size()) {
    int64_t cover_hi = entries[i].lo - 1;
    size_t j = i;
    for (; j < entries.size() && entries[j].same_column(entries[i]); ++j) {
      int64_t a = entries[j].lo, b = entries[j].lo + w - 1;
      if (a > cover_hi) {
        total += static_cast<uint64_t>(b - a + 1);
        cover_hi = b;
      } else if (b > cover_hi) {
        total += static_cast<uint64_t>(b - cover_hi);
        cover_hi = b;
      }
    }
    i = j;
  }
  return total;
}

enum class EventVerdict { pass = 0, fail = 1, uncertain = 2 };

struct TypicalVerdict {
  bool typical = false;
  std::array<EventVerdict, 4> events{};  // E1..E4; uncertain counts as fail
  double cap_estimate = 0, cap_stderr = 0;
};

namespace detail {

// one-sided comparisons with a 2-sigma uncertainty collar
inline EventVerdict verdict_less(double est, double se, double thr) {
  if (est + 2 * se < thr) return EventVerdict::pass;
  if (est - 2 * se >= thr) return EventVerdict::fail;
  return EventVerdict::uncertain;
}
inline EventVerdict verdict_greater(double est, double se, double thr) {
  if (est - 2 * se > thr) return EventVerdict::pass;
  if (est + 2 * se <= thr) return EventVerdict::fail;
  return EventVerdict::uncertain;
}
inline EventVerdict combine(EventVerdict a, EventVerdict b) {
  if (a == EventVerdict::fail || b == EventVerdict::fail) return EventVerdict::fail;
  if (a == EventVerdict::uncertain || b == EventVerdict::uncertain)
    return EventVerdict::uncertain;
  return EventVerdict::pass;
}

}  // namespace detail

/**
 * Typicality classification: duration/diameter band (E1), capacity band
 * (E2), sausage volume (E3), and per-block capacity/diameter (E4). Capacity
 * verdicts are Monte Carlo with a 2-sigma collar; uncertain resolves to
 * fail, keeping the typical set conservative.
 */
inline TypicalVerdict classify_typical(const Trajectory& eta,
                                       const TypicalityParams& p,
                                       const PotentialConfig& cfg, RngStream rng) {
  TypicalVerdict v;
  const int64_t t = eta.length();
  const double td = static_cast<double>(t);

  // E1: duration and diameter from the start point
  bool e1 = t >= p.band_lo && t <= p.band_hi;
  if (e1) {
    int64_t reach = 0;
    eta.for_each_point([&](const Point& q, int64_t) {
      reach = std::max(reach, dist_linf(q, eta.start()));
    });
    e1 = reach <= static_cast<int64_t>(p.diam_factor * static_cast<double>(p.r_n));
  }
  v.events[0] = e1 ? EventVerdict::pass : EventVerdict::fail;

  PointSet range = eta.range();

  // E2: capacity band
  {
    double lo_thr = (1 - p.theta1 * p.theta1) * p.cap_rate * td;
    double hi_thr = (1 + p.theta1 * p.theta1) * p.cap_rate * td;
    if (p.d >= 5) {
      Estimate cap = truncated_capacity(
          range, detail::auto_escape_cutoff(eta.diam(), cfg), p.d, cfg,
          rng.child(1));
      v.cap_estimate = cap.value;
      v.cap_stderr = cap.stderr_;
      v.events[1] =
          detail::combine(detail::verdict_greater(cap.value, cap.stderr_, lo_thr),
                          detail::verdict_less(cap.value, cap.stderr_, hi_thr));
    } else {
      Estimate cap_far = truncated_capacity(
          range, detail::auto_escape_cutoff(eta.diam(), cfg), p.d, cfg,
          rng.child(1));
      Estimate cap_rn = truncated_capacity(range, p.r_n * p.r_n, p.d, cfg,
                                           rng.child(2));
      v.cap_estimate = cap_far.value;
      v.cap_stderr = cap_far.stderr_;
      v.events[1] = detail::combine(
          detail::verdict_greater(cap_far.value, cap_far.stderr_, lo_thr),
          detail::verdict_less(cap_rn.value, cap_rn.stderr_, hi_thr));
    }
  }

  // E3: sausage volume (exact count)
  {
    uint64_t vol = sausage_volume(range.items(), p.l_n, p.d);
    v.events[2] = static_cast<double>(vol) < p.e3_threshold() ? EventVerdict::pass
                                                              : EventVerdict::fail;
  }

  // E4: per-block capacity (and diameter in d=4)
  {
    EventVerdict e4 = EventVerdict::pass;
    double blk_thr = (1 + p.theta1 * p.theta1) * p.cap_rate *
                     static_cast<double>(p.t_prime_n);
    for (int64_t j = 0; j * p.t_prime_n <= t && e4 != EventVerdict::fail; ++j) {
      int64_t a = j * p.t_prime_n;
      int64_t b = std::min<int64_t>((j + 1) * p.t_prime_n, t);
      Trajectory block = sub_path(eta, a, b);
      PointSet brange = block.range();
      Estimate cap = truncated_capacity(
          brange, detail::auto_escape_cutoff(block.diam(), cfg), p.d, cfg,
          rng.child({3, static_cast<uint64_t>(j)}));
      e4 = detail::combine(e4, detail::verdict_less(cap.value, cap.stderr_, blk_thr));
      if (p.d == 4) {
        double diam_thr =
            0.5 * std::sqrt(td) * std::pow(std::log(p.mu1), -p.c);
        if (static_cast<double>(block.diam()) >= diam_thr) e4 = EventVerdict::fail;
      }
    }
    v.events[3] = e4;
  }

  v.typical = true;
  for (EventVerdict e : v.events)
    if (e != EventVerdict::pass) v.typical = false;
  return v;
}

/**
 * Per-point equilibrium weights of a trajectory's range, shared by the
 * *-proper part, the restricted equilibrium measure and seed scoring.
 */
struct RangeEquilibrium {
  PointSet range;
  std::vector<double> weight;         // e_eta per range point
  std::vector<double> short_return;   // P^x[H~ > t_n] (d=4 condition), else empty
};

inline RangeEquilibrium range_equilibrium(const Trajectory& eta,
                                          const TypicalityParams& p,
                                          const PotentialConfig& cfg,
                                          RngStream rng) {
  RangeEquilibrium re;
  re.range = eta.range();
  EquilibriumMeasure em = equilibrium_measure(re.range, p.d, cfg, rng.child(1));
  re.weight = em.weight;
  if (p.d == 4) {
    int64_t horizon = p.proper_return_horizon();
    re.short_return.assign(re.range.size(), 0.0);
    const int64_t w = cfg.mc_walks;
    for (size_t i = 0; i < re.range.size(); ++i) {
      RngStream r = rng.child({2, static_cast<uint64_t>(i)});
      int64_t ok = 0;
      for (int64_t k = 0; k < w; ++k)
        if (escapes(re.range.items()[i], re.range, horizon, p.d, r)) ++ok;
      re.short_return[i] = static_cast<double>(ok) / static_cast<double>(w);
    }
  }
  return re;
}

// *-proper part: range points whose equilibrium weight clears the floor
// (d=4 additionally requires the short-horizon escape probability to be
// within (1+theta1) of the full escape probability).
inline PointSet star_proper_part(const RangeEquilibrium& re,
                                 const TypicalityParams& p) {
  PointSet out;
  double floor_w =
      p.d >= 5 ? p.theta2 : p.theta2 / std::log(p.mu1);
  for (size_t i = 0; i < re.range.size(); ++i) {
    if (re.weight[i] < floor_w) continue;
    if (p.d == 4 &&
        re.short_return[i] > (1 + p.theta1) * re.weight[i])
      continue;
    out.insert(re.range.items()[i]);
  }
  return out;
}

inline PointSet star_proper_part(const Trajectory& eta, const TypicalityParams& p,
                                 const PotentialConfig& cfg, RngStream rng) {
  return star_proper_part(range_equilibrium(eta, p, cfg, std::move(rng)), p);
}

/**
 * Proper part pp(eta; A, D): the *-proper part minus the points visited in
 * the time window of half-width R^2/I around the first hit of A, minus the
 * L_n-neighborhood of D. When eta misses A the time window is empty.
 */
inline PointSet proper_part(const Trajectory& eta, const PointSet& etahat,
                            const PointSet& a, const PointSet& d_set,
                            const TypicalityParams& p) {
  PointSet excluded_by_time;
  if (!a.empty()) {
    auto tau = hitting_time(eta, a);
    if (tau) {
      int64_t w = static_cast<int64_t>(
          std::floor(static_cast<double>(p.r_n) * static_cast<double>(p.r_n) / p.i_n));
      int64_t lo = std::max<int64_t>(0, *tau - w);
      int64_t hi = std::min<int64_t>(eta.length(), *tau + w);
      Trajectory win = sub_path(eta, lo, hi);
      win.for_each_point(
          [&](const Point& q, int64_t) { excluded_by_time.insert(q); });
    }
  }
  PointSet out;
  for (const Point& q : etahat.items()) {
    if (excluded_by_time.contains(q)) continue;
    if (!d_set.empty() && in_neighborhood(q, d_set, p.l_n)) continue;
    out.insert(q);
  }
  return out;
}

struct GoodCheckResult {
  bool good = true;
  int violated_bullet = 0;  // 1..3 when bad
  int layer = 0;            // 1-based layer of the violation
  std::string detail;
};

/**
 * Definition-of-goodness check for a sequence of layers against a history.
 * layers[0] is the predecessor layer (the seed); its proper parts are passed
 * in by the caller since their context predates this sequence. history is
 * the vertex set of everything explored before the sequence.
 */
inline GoodCheckResult check_good_sequence(
    const std::vector<TrajectoryCloud>& layers,
    const std::vector<PointSet>& layer0_proper, const PointSet& history,
    const LengthDistribution& rho, const TypicalityParams& p, int k1,
    const PotentialConfig& cfg, const GreenTable& green, RngStream rng) {
  GoodCheckResult res;
  if (layers.empty()) return res;
  if (layer0_proper.size() != layers[0].size())
    throw ValidationError("check_good_sequence: layer-0 proper parts misaligned");

  const double cap_thr = 4.0 * p.c_tilde_n / std::sqrt(p.i_n);
  const double phi_thr = p.c_tilde_n / p.i_n;

  PointSet cumulative = history;  // history plus layers 0..i-1 while at layer i
  std::vector<PointSet> prev_proper = layer0_proper;
  std::vector<PointSet> prev_ranges;
  for (const CloudEntry& e : layers[0].entries) prev_ranges.push_back(e.traj.range());

  for (size_t i = 1; i < layers.size(); ++i) {
    for (const CloudEntry& e : layers[i - 1].entries)
      e.traj.for_each_point([&](const Point& q, int64_t) { cumulative.insert(q); });
    PointSet parent_vertices;
    for (const PointSet& r : prev_ranges)
      for (const Point& q : r.items()) parent_vertices.insert(q);

    const auto& entries = layers[i].entries;
    std::vector<PointSet> hats(entries.size()), proper(entries.size());
    std::vector<PointSet> ranges(entries.size());
    for (size_t j = 0; j < entries.size(); ++j) {
      RangeEquilibrium re = range_equilibrium(
          entries[j].traj, p, cfg, rng.child({static_cast<uint64_t>(i), 1, static_cast<uint64_t>(j)}));
      hats[j] = star_proper_part(re, p);
      proper[j] = proper_part(entries[j].traj, hats[j], parent_vertices, cumulative, p);
      ranges[j] = re.range;
    }

    // bullet 2: each trajectory hits exactly one parent, landing in its
    // proper part; also count children per parent for bullet 3
    std::vector<int> children(prev_ranges.size(), 0);
    for (size_t j = 0; j < entries.size(); ++j) {
      int parent = -1;
      for (size_t q = 0; q < prev_ranges.size(); ++q) {
        if (detail_cloud_hits(entries[j].traj, prev_ranges[q])) {
          if (parent >= 0) {
            res.good = false;
            res.violated_bullet = 2;
            res.layer = static_cast<int>(i);
            res.detail = "trajectory hits two parents";
            return res;
          }
          parent = static_cast<int>(q);
        }
      }
      if (parent < 0) {
        res.good = false;
        res.violated_bullet = 2;
        res.layer = static_cast<int>(i);
        res.detail = "trajectory hits no parent";
        return res;
      }
      auto tau = hitting_time(entries[j].traj, parent_vertices);
      if (!tau ||
          !prev_proper[static_cast<size_t>(parent)].contains(
              entries[j].traj.point_at(*tau))) {
        res.good = false;
        res.violated_bullet = 2;
        res.layer = static_cast<int>(i);
        res.detail = "first hit lands outside the parent's proper part";
        return res;
      }
      if (++children[static_cast<size_t>(parent)] > k1) {
        res.good = false;
        res.violated_bullet = 3;
        res.layer = static_cast<int>(i);
        res.detail = "parent fan-out exceeds k1";
        return res;
      }
    }

    // bullet 1: improper-part capacity and pairwise interaction
    for (size_t j = 0; j < entries.size(); ++j) {
      PointSet improper;
      for (const Point& q : hats[j].items())
        if (!proper[j].contains(q)) improper.insert(q);
      if (!improper.empty()) {
        Estimate cap = rho_capacity(improper, rho, p.d, cfg,
                                    rng.child({static_cast<uint64_t>(i), 2,
                                               static_cast<uint64_t>(j)}));
        if (cap.value >= cap_thr) {
          res.good = false;
          res.violated_bullet = 1;
          res.layer = static_cast<int>(i);
          res.detail = "improper-part rho-capacity too large";
          return res;
        }
      }
    }
    for (size_t j = 0; j < entries.size(); ++j)
      for (size_t l = j + 1; l < entries.size(); ++l) {
        if (proper[j].empty() || proper[l].empty()) continue;
        Estimate phi = phi_rho(proper[j], proper[l], rho, p.d, cfg, green,
                               rng.child({static_cast<uint64_t>(i), 3,
                                          static_cast<uint64_t>(j * 1024 + l)}));
        if (phi.value >= phi_thr) {
          res.good = false;
          res.violated_bullet = 1;
          res.layer = static_cast<int>(i);
          res.detail = "pairwise interaction phi too large";
          return res;
        }
      }

    prev_proper = std::move(proper);
    prev_ranges = std::move(ranges);
  }
  return res;
}

struct SeedSearch {
  std::optional<std::vector<size_t>> chosen;  // indices into the candidate cloud
  int64_t combinations_tried = 0;
  bool budget_hit = false;
};

/**
 * First (in canonical subset order) beta-subset of the candidates that are
 * typical, stay inside the corner box of x, and interact pairwise below
 * C~_n/I_n. The marked sets used for phi are the *-proper parts.
 */
inline SeedSearch find_seed(const TrajectoryCloud& candidates, const Point& box_corner,
                            int beta, const LengthDistribution& rho,
                            const TypicalityParams& p, const PotentialConfig& cfg,
                            const GreenTable& green, RngStream rng,
                            int64_t combination_budget = 20000) {
  if (beta < 1) throw ValidationError("find_seed: beta must be >= 1");
  SeedSearch out;
  Box box = Box::corner(box_corner, p.r_n, p.d);

  // canonical candidate order
  std::vector<size_t> order(candidates.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return candidates.entries[a].traj.canonical_less(candidates.entries[b].traj);
  });

  std::vector<size_t> eligible;
  std::vector<PointSet> marked;
  for (size_t idx : order) {
    const Trajectory& t = candidates.entries[idx].traj;
    bool inside = true;
    t.for_each_point([&](const Point& q, int64_t) {
      if (!box.contains(q)) inside = false;
    });
    if (!inside) continue;
    if (!classify_typical(t, p, cfg, rng.child({1, static_cast<uint64_t>(idx)}))
             .typical)
      continue;
    eligible.push_back(idx);
    marked.push_back(
        star_proper_part(t, p, cfg, rng.child({2, static_cast<uint64_t>(idx)})));
  }
  if (static_cast<int>(eligible.size()) < beta) return out;

  const double phi_thr = p.c_tilde_n / p.i_n;
  // cache pairwise phi verdicts lazily: -1 unknown, 0 bad, 1 ok
  std::vector<int8_t> pair_ok(eligible.size() * eligible.size(), -1);
  auto pair_fine = [&](size_t a, size_t b) {
    int8_t& slot = pair_ok[a * eligible.size() + b];
    if (slot < 0) {
      Estimate phi =
          phi_rho(marked[a], marked[b], rho, p.d, cfg, green,
                  rng.child({3, static_cast<uint64_t>(a * 131071 + b)}));
      slot = phi.value < phi_thr ? 1 : 0;
      pair_ok[b * eligible.size() + a] = slot;
    }
    return slot == 1;
  };

  // enumerate beta-combinations in lexicographic order over eligible[]
  std::vector<size_t> comb(static_cast<size_t>(beta));
  for (size_t i = 0; i < comb.size(); ++i) comb[i] = i;
  while (true) {
    ++out.combinations_tried;
    if (out.combinations_tried > combination_budget) {
      out.budget_hit = true;
      return out;
    }
    bool ok = true;
    for (size_t i = 0; i < comb.size() && ok; ++i)
      for (size_t j = i + 1; j < comb.size() && ok; ++j)
        if (!pair_fine(comb[i], comb[j])) ok = false;
    if (ok) {
      std::vector<size_t> chosen;
      for (size_t i : comb) chosen.push_back(eligible[i]);
      out.chosen = std::move(chosen);
      return out;
    }
    // next combination
    int i = beta - 1;
    while (i >= 0 &&
           comb[static_cast<size_t>(i)] ==
               eligible.size() - static_cast<size_t>(beta - i))
      --i;
    if (i < 0) return out;
    ++comb[static_cast<size_t>(i)];
    for (size_t j = static_cast<size_t>(i) + 1; j < comb.size(); ++j)
      comb[j] = comb[j - 1] + 1;
  }
}

}  // namespace frilab

#endif  // FRILAB_TYPICALITY_HPP
