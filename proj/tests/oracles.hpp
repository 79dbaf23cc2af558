#ifndef FRILAB_TESTS_ORACLES_HPP
#define FRILAB_TESTS_ORACLES_HPP

// Brute-force oracles used by the test suites. Everything here is exact
// (probability-vector propagation, exhaustive summation) and independent of
// the Monte Carlo estimators it cross-checks.

#include <cstdint>
#include <vector>

#include "frilab/geometry.hpp"
#include "frilab/length_law.hpp"

namespace frilab::oracle {

// Exact P^x[no entry into A during times 1..m] by propagating the
// probability vector of the walk killed on A.
inline double return_prob_exact(const Point& x, const PointSet& a, int64_t m, int d) {
  PointSet pts;
  std::vector<double> mass;
  pts.insert(x);
  mass.push_back(1.0);
  for (int64_t t = 0; t < m; ++t) {
    PointSet next;
    std::vector<double> next_mass;
    for (size_t i = 0; i < pts.size(); ++i) {
      const Point& p = pts.items()[i];
      double share = mass[i] / (2 * d);
      for (int c = 0; c < 2 * d; ++c) {
        Point q = neighbor(p, c);
        if (a.contains(q)) continue;  // killed on return
        if (next.insert(q))
          next_mass.push_back(share);
        else {
          // find q's slot: items are insertion-ordered, so search linearly
          for (size_t j = next.size(); j-- > 0;) {
            if (next.items()[j] == q) {
              next_mass[j] += share;
              break;
            }
          }
        }
      }
    }
    pts = std::move(next);
    mass = std::move(next_mass);
  }
  double s = 0;
  for (double v : mass) s += v;
  return s;
}

// Exact e_A^(rho)(x) for a finite-support length law.
inline double rho_equilibrium_exact(const PointSet& a, const Point& x,
                                    const LengthDistribution& rho, int d) {
  double denom = rho.mu1() + 1.0;
  int64_t max_l = 0;
  for (int64_t v : rho.support()) max_l = std::max(max_l, v);
  double acc = 0;
  for (int64_t m = 0; m <= max_l; ++m) {
    double w = rho.tail_moment(0, m);
    if (w <= 0) continue;
    acc += w / denom * return_prob_exact(x, a, m, d);
  }
  return acc;
}

inline double rho_capacity_exact(const PointSet& a, const LengthDistribution& rho,
                                 int d) {
  double s = 0;
  for (const Point& x : a.items()) s += rho_equilibrium_exact(a, x, rho, d);
  return s;
}

// Exact kappa^(rho)(A) for a finite-support length law.
inline double kappa_rho_exact(const PointSet& a, const LengthDistribution& rho,
                              int d) {
  double mu2 = rho.mu2();
  int64_t max_l = 0;
  for (int64_t v : rho.support()) max_l = std::max(max_l, v);
  double s = 0;
  for (const Point& x : a.items())
    for (int64_t m = 0; m <= max_l; ++m) {
      double w = rho.tail_moment(1, m);
      if (w <= 0) continue;
      s += w / mu2 * return_prob_exact(x, a, m, d);
    }
  return s;
}

}  // namespace frilab::oracle

#endif  // FRILAB_TESTS_ORACLES_HPP
