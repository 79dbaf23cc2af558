#ifndef FRILAB_STATS_HPP
#define FRILAB_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "frilab/common.hpp"

namespace frilab {

struct MeanVar {
  double mean = 0;
  double var = 0;      // unbiased sample variance
  double stderr_ = 0;  // of the mean
  int64_t n = 0;
};

inline MeanVar mean_var(const std::vector<double>& xs) {
  MeanVar r;
  r.n = static_cast<int64_t>(xs.size());
  if (r.n == 0) return r;
  double s = 0;
  for (double x : xs) s += x;
  r.mean = s / static_cast<double>(r.n);
  if (r.n > 1) {
    double q = 0;
    for (double x : xs) q += (x - r.mean) * (x - r.mean);
    r.var = q / static_cast<double>(r.n - 1);
    r.stderr_ = std::sqrt(r.var / static_cast<double>(r.n));
  }
  return r;
}

// Regularized lower incomplete gamma P(a,x); Q(a,x) = 1 - P(a,x).
// Series for x < a+1, continued fraction otherwise (Numerical Recipes style).
inline double gamma_p(double a, double x) {
  if (x < 0 || a <= 0) throw ValidationError("gamma_p: bad arguments");
  if (x == 0) return 0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
  }
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return 1.0 - std::exp(-x + a * std::log(x) - gln) * h;
}

inline double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

// Upper tail p-value of a chi-square statistic with df degrees of freedom.
inline double chi_square_pvalue(double stat, double df) {
  if (df <= 0) return 1.0;
  return gamma_q(df / 2.0, stat / 2.0);
}

// Goodness of fit against expected counts. Bins with expected count below
// min_expected are pooled into their neighbor to keep the statistic honest.
inline double chi_square_gof_pvalue(const std::vector<double>& observed,
                                    const std::vector<double>& expected,
                                    double min_expected = 5.0) {
  if (observed.size() != expected.size())
    throw ValidationError("chi_square_gof: size mismatch");
  std::vector<double> obs, exp;
  double o_acc = 0, e_acc = 0;
  for (size_t i = 0; i < observed.size(); ++i) {
    o_acc += observed[i];
    e_acc += expected[i];
    if (e_acc >= min_expected) {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
      o_acc = e_acc = 0;
    }
  }
  if (e_acc > 0 && !exp.empty()) {
    obs.back() += o_acc;
    exp.back() += e_acc;
  }
  if (exp.size() < 2) return 1.0;
  double stat = 0;
  for (size_t i = 0; i < exp.size(); ++i) {
    double d = obs[i] - exp[i];
    stat += d * d / exp[i];
  }
  return chi_square_pvalue(stat, static_cast<double>(exp.size() - 1));
}

// Two-sample chi-square on integer-valued histograms (key -> count).
inline double chi_square_two_sample_pvalue(const std::map<int64_t, int64_t>& h1,
                                           const std::map<int64_t, int64_t>& h2,
                                           double min_expected = 5.0) {
  double n1 = 0, n2 = 0;
  for (auto& [k, v] : h1) n1 += static_cast<double>(v);
  for (auto& [k, v] : h2) n2 += static_cast<double>(v);
  if (n1 == 0 || n2 == 0) return 1.0;
  std::map<int64_t, std::pair<double, double>> merged;
  for (auto& [k, v] : h1) merged[k].first += static_cast<double>(v);
  for (auto& [k, v] : h2) merged[k].second += static_cast<double>(v);

  // Pool adjacent keys until the pooled total is large enough.
  std::vector<std::pair<double, double>> bins;
  double a = 0, b = 0;
  for (auto& [k, ob] : merged) {
    a += ob.first;
    b += ob.second;
    double tot = a + b;
    double e1 = tot * n1 / (n1 + n2), e2 = tot * n2 / (n1 + n2);
    if (e1 >= min_expected && e2 >= min_expected) {
      bins.emplace_back(a, b);
      a = b = 0;
    }
  }
  if ((a > 0 || b > 0) && !bins.empty()) {
    bins.back().first += a;
    bins.back().second += b;
  }
  if (bins.size() < 2) return 1.0;
  const double k1 = std::sqrt(n2 / n1), k2 = std::sqrt(n1 / n2);
  double stat = 0;
  for (auto& [o1, o2] : bins) {
    double d = k1 * o1 - k2 * o2;
    stat += d * d / (o1 + o2);
  }
  return chi_square_pvalue(stat, static_cast<double>(bins.size() - 1));
}

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double slope_stderr = 0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit_line: bad input");
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  if (x.size() > 2) {
    double ss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      double r = y[i] - (f.intercept + f.slope * x[i]);
      ss += r * r;
    }
    f.slope_stderr = std::sqrt(ss / (n - 2) * n / denom);
  }
  return f;
}

}  // namespace frilab

#endif  // FRILAB_STATS_HPP
