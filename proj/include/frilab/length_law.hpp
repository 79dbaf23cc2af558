#ifndef FRILAB_LENGTH_LAW_HPP
#define FRILAB_LENGTH_LAW_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "frilab/common.hpp"
#include "frilab/rng.hpp"

namespace frilab {

/**
 * Probability law on N for trajectory durations.
 *
 * Families: geometric(lambda) with pmf lambda (1-lambda)^n; a Dirac mass;
 * an explicit finite-support pmf; and the scaled family floor(scale * xi)
 * for a finitely supported positive base law xi (materialized as a pmf).
 *
 * Geometric moments and tails use closed forms; explicit families sum their
 * tables. Immutable after construction.
 */
class LengthDistribution {
 public:
  enum class Family { geometric, dirac, pmf, scaled };

  static LengthDistribution geometric(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0))
      throw ValidationError("geometric: lambda must be in (0,1]");
    LengthDistribution d;
    d.family_ = Family::geometric;
    d.lambda_ = lambda;
    return d;
  }

  // Geo(1/(T+1)), the customary parameterization with mean T.
  static LengthDistribution geometric_mean(double mean_length) {
    if (mean_length < 0) throw ValidationError("geometric_mean: mean must be >= 0");
    return geometric(1.0 / (mean_length + 1.0));
  }

  static LengthDistribution dirac(int64_t n) {
    if (n < 0) throw ValidationError("dirac: point must be >= 0");
    LengthDistribution d;
    d.family_ = Family::dirac;
    d.dirac_n_ = n;
    return d;
  }

  static LengthDistribution from_pmf(std::vector<int64_t> support,
                                     std::vector<double> probs) {
    LengthDistribution d;
    d.family_ = Family::pmf;
    d.init_table(std::move(support), std::move(probs));
    return d;
  }

  // Law of floor(scale * xi), xi supported on finitely many positive reals.
  static LengthDistribution scaled(double scale, const std::vector<double>& base_values,
                                   const std::vector<double>& base_probs) {
    if (scale <= 0) throw ValidationError("scaled: scale must be > 0");
    if (base_values.size() != base_probs.size() || base_values.empty())
      throw ValidationError("scaled: base law must be nonempty and aligned");
    std::vector<int64_t> support;
    std::vector<double> probs;
    for (size_t i = 0; i < base_values.size(); ++i) {
      if (base_values[i] <= 0) throw ValidationError("scaled: base values must be > 0");
      int64_t v = static_cast<int64_t>(std::floor(scale * base_values[i]));
      auto it = std::find(support.begin(), support.end(), v);
      if (it == support.end()) {
        support.push_back(v);
        probs.push_back(base_probs[i]);
      } else {
        probs[static_cast<size_t>(it - support.begin())] += base_probs[i];
      }
    }
    LengthDistribution d;
    d.family_ = Family::scaled;
    d.scale_ = scale;
    d.init_table(std::move(support), std::move(probs));
    return d;
  }

  Family family() const { return family_; }
  double lambda() const { return lambda_; }
  int64_t dirac_point() const { return dirac_n_; }
  double scale() const { return scale_; }
  const std::vector<int64_t>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }

  double pmf(int64_t l) const {
    if (l < 0) return 0;
    switch (family_) {
      case Family::geometric:
        return lambda_ * std::pow(1.0 - lambda_, static_cast<double>(l));
      case Family::dirac:
        return l == dirac_n_ ? 1.0 : 0.0;
      default: {
        auto it = std::lower_bound(support_.begin(), support_.end(), l);
        if (it != support_.end() && *it == l)
          return probs_[static_cast<size_t>(it - support_.begin())];
        return 0.0;
      }
    }
  }

  // k-th moment; closed forms for geometric (k <= 2), exact sums otherwise.
  double moment(int64_t k) const {
    if (k < 1) throw ValidationError("moment: k must be >= 1");
    switch (family_) {
      case Family::geometric: {
        double q = 1.0 - lambda_;
        if (k == 1) return q / lambda_;
        if (k == 2) return q * (1.0 + q) / (lambda_ * lambda_);
        throw ValidationError("moment: geometric supports k in {1,2}");
      }
      case Family::dirac:
        return std::pow(static_cast<double>(dirac_n_), static_cast<double>(k));
      default: {
        double s = 0;
        for (size_t i = 0; i < support_.size(); ++i)
          s += std::pow(static_cast<double>(support_[i]), static_cast<double>(k)) *
               probs_[i];
        return s;
      }
    }
  }

  double mu1() const { return moment(1); }
  double mu2() const { return moment(2); }

  // Tail contribution sum_{l >= m} l^k pmf(l), k in {0,1,2}.
  double tail_moment(int64_t k, int64_t m) const {
    if (k < 0 || k > 2) throw ValidationError("tail_moment: k must be in {0,1,2}");
    if (m < 0) m = 0;
    switch (family_) {
      case Family::geometric: {
        double q = 1.0 - lambda_, la = lambda_;
        double qm = std::pow(q, static_cast<double>(m));
        double md = static_cast<double>(m);
        if (k == 0) return qm;
        if (k == 1) return qm * (md + q / la);
        return qm * (md * md + 2.0 * md * q / la + q * (1.0 + q) / (la * la));
      }
      case Family::dirac: {
        if (dirac_n_ < m) return 0;
        return std::pow(static_cast<double>(dirac_n_), static_cast<double>(k));
      }
      default: {
        double s = 0;
        for (size_t i = 0; i < support_.size(); ++i)
          if (support_[i] >= m)
            s += std::pow(static_cast<double>(support_[i]), static_cast<double>(k)) *
                 probs_[i];
        return s;
      }
    }
  }

  // theta(rho, C) = sum_{L >= C mu1} pmf(L) L^2 / mu2.
  double appropriateness_theta(double c) const {
    if (c < 0) throw ValidationError("appropriateness_theta: C must be >= 0");
    double m2 = mu2();
    if (m2 <= 0) throw ValidationError("appropriateness_theta: mu2 must be > 0");
    int64_t cutoff = static_cast<int64_t>(std::ceil(c * mu1() - 1e-12));
    if (cutoff < 0) cutoff = 0;
    return tail_moment(2, cutoff) / m2;
  }

  int64_t sample(RngStream& rng) const {
    switch (family_) {
      case Family::geometric:
        return rng.geometric(lambda_);
      case Family::dirac:
        return dirac_n_;
      default:
        return sample_from_cdf(cdf_, rng);
    }
  }

  // Sample from the (l+1)-size-biased law, P[l] proportional to (l+1) pmf(l).
  // For the geometric family this is a sum of two independent geometrics.
  int64_t sample_length_biased1(RngStream& rng) const {
    switch (family_) {
      case Family::geometric:
        return rng.geometric(lambda_) + rng.geometric(lambda_);
      case Family::dirac:
        return dirac_n_;
      default:
        return sample_from_cdf(biased1_cdf_, rng);
    }
  }

  // Sample from P[l] proportional to l (l+1) pmf(l); for the geometric family
  // this is 1 + a sum of three independent geometrics.
  int64_t sample_length_biased2(RngStream& rng) const {
    switch (family_) {
      case Family::geometric:
        return 1 + rng.geometric(lambda_) + rng.geometric(lambda_) +
               rng.geometric(lambda_);
      case Family::dirac:
        return dirac_n_;
      default:
        return sample_from_cdf(biased2_cdf_, rng);
    }
  }

  // Size-biased law rho_hat(k) = k pmf(k) / mu1 (finite-support families only).
  LengthDistribution size_biased() const {
    switch (family_) {
      case Family::dirac:
        return dirac(dirac_n_);
      case Family::pmf:
      case Family::scaled: {
        std::vector<int64_t> sup;
        std::vector<double> pr;
        double m1 = mu1();
        if (m1 <= 0) throw ValidationError("size_biased: mu1 must be > 0");
        for (size_t i = 0; i < support_.size(); ++i) {
          if (support_[i] == 0) continue;
          sup.push_back(support_[i]);
          pr.push_back(static_cast<double>(support_[i]) * probs_[i] / m1);
        }
        return from_pmf(std::move(sup), std::move(pr));
      }
      default:
        throw ValidationError("size_biased: not representable for this family");
    }
  }

  // Smallest n with P[X <= n] >= p.
  int64_t quantile(double p) const {
    if (!(p >= 0 && p < 1)) throw ValidationError("quantile: p must be in [0,1)");
    switch (family_) {
      case Family::geometric: {
        if (lambda_ >= 1.0) return 0;
        // P[X <= n] = 1 - (1-lambda)^(n+1)
        double n = std::ceil(std::log1p(-p) / std::log1p(-lambda_)) - 1.0;
        return n < 0 ? 0 : static_cast<int64_t>(n);
      }
      case Family::dirac:
        return dirac_n_;
      default: {
        double acc = 0;
        for (size_t i = 0; i < support_.size(); ++i) {
          acc += probs_[i];
          if (acc >= p) return support_[i];
        }
        return support_.back();
      }
    }
  }

  std::string family_name() const {
    switch (family_) {
      case Family::geometric: return "geometric";
      case Family::dirac: return "dirac";
      case Family::pmf: return "pmf";
      case Family::scaled: return "scaled";
    }
    return "?";
  }

 private:
  void init_table(std::vector<int64_t> support, std::vector<double> probs) {
    if (support.size() != probs.size() || support.empty())
      throw ValidationError("pmf: support/probs must be nonempty and aligned");
    std::vector<size_t> order(support.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return support[a] < support[b]; });
    support_.resize(support.size());
    probs_.resize(probs.size());
    double total = 0;
    for (size_t i = 0; i < order.size(); ++i) {
      support_[i] = support[order[i]];
      probs_[i] = probs[order[i]];
      if (support_[i] < 0) throw ValidationError("pmf: support must be >= 0");
      if (probs_[i] < 0) throw ValidationError("pmf: probabilities must be >= 0");
      if (i > 0 && support_[i] == support_[i - 1])
        throw ValidationError("pmf: duplicate support point");
      total += probs_[i];
    }
    if (std::fabs(total - 1.0) > 1e-12)
      throw ValidationError("pmf: probabilities must sum to 1 within 1e-12");
    build_cdf(cdf_, [&](size_t i) { return probs_[i]; });
    build_cdf(biased1_cdf_, [&](size_t i) {
      return (static_cast<double>(support_[i]) + 1.0) * probs_[i];
    });
    build_cdf(biased2_cdf_, [&](size_t i) {
      return static_cast<double>(support_[i]) *
             (static_cast<double>(support_[i]) + 1.0) * probs_[i];
    });
  }

  template <class W>
  void build_cdf(std::vector<double>& cdf, W&& weight) const {
    cdf.resize(support_.size());
    double acc = 0;
    for (size_t i = 0; i < support_.size(); ++i) {
      acc += weight(i);
      cdf[i] = acc;
    }
    if (acc > 0)
      for (double& v : cdf) v /= acc;
  }

  int64_t sample_from_cdf(const std::vector<double>& cdf, RngStream& rng) const {
    double u = rng.next_double();
    size_t i = static_cast<size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (i >= support_.size()) i = support_.size() - 1;
    return support_[i];
  }

  Family family_ = Family::dirac;
  double lambda_ = 1.0;
  int64_t dirac_n_ = 0;
  double scale_ = 0;
  std::vector<int64_t> support_;
  std::vector<double> probs_;
  std::vector<double> cdf_, biased1_cdf_, biased2_cdf_;
};

/**
 * Reference intensity u_n = mu1 (1 + log mu1 * [d=4]) / (eps_d mu2), the
 * order of the percolation threshold for this length law.
 */
inline double reference_intensity(const LengthDistribution& rho, int d, double eps_d) {
  check_dimension(d);
  if (!(eps_d > 0)) throw ValidationError("reference_intensity: eps_d must be > 0");
  double m1 = rho.mu1();
  if (!(m1 > 0)) throw ValidationError("reference_intensity: mu1 must be > 0");
  double log_factor = d == 4 ? 1.0 + std::log(m1) : 1.0;
  return m1 * log_factor / (eps_d * rho.mu2());
}

// (u_n^-, u_n^+) = ((1 - eps) u_n, (1 + eps) u_n).
inline std::pair<double, double> perturbed_intensity(double u_n, double eps) {
  if (!(eps >= 0 && eps < 0.5))
    throw ValidationError("perturbed_intensity: eps must be in [0, 1/2)");
  return {(1.0 - eps) * u_n, (1.0 + eps) * u_n};
}

// eps_4 = pi^2 / 8, the d=4 capacity rate constant.
inline constexpr double kEpsilon4 = 1.2337005501361697;

inline double capacity_rate(int d, double eps_d, double mu1) {
  return d == 4 ? eps_d / (1.0 + std::log(mu1)) : eps_d;
}

}  // namespace frilab

#endif  // FRILAB_LENGTH_LAW_HPP
