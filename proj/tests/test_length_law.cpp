#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "frilab/length_law.hpp"
#include "frilab/stats.hpp"

using namespace frilab;

namespace {

// direct pmf summation with a long horizon; the independent oracle for
// moments/tails of the geometric family
double geo_tail_sum(double lambda, int k, int64_t m, int64_t horizon = 4000) {
  double s = 0;
  for (int64_t l = m; l < horizon; ++l)
    s += std::pow(static_cast<double>(l), k) * lambda *
         std::pow(1.0 - lambda, static_cast<double>(l));
  return s;
}

void check_sampling_matches_pmf(const LengthDistribution& rho, uint64_t seed,
                                int64_t cap) {
  RngStream rng(seed);
  const int n = 100000;
  std::map<int64_t, int64_t> counts;
  for (int i = 0; i < n; ++i) counts[std::min(rho.sample(rng), cap)]++;
  std::vector<double> obs, exp;
  for (int64_t v = 0; v <= cap; ++v) {
    double p = v == cap ? rho.tail_moment(0, cap) : rho.pmf(v);
    if (p <= 0 && !counts.count(v)) continue;
    exp.push_back(p * n);
    obs.push_back(static_cast<double>(counts.count(v) ? counts[v] : 0));
  }
  REQUIRE(chi_square_gof_pvalue(obs, exp) > 1e-3);
}

}  // namespace

TEST_CASE("moments: closed forms") {
  auto geo2 = LengthDistribution::geometric_mean(2);  // lambda = 1/3
  REQUIRE(geo2.moment(1) == Catch::Approx(2.0).epsilon(1e-12));
  REQUIRE(geo2.moment(2) == Catch::Approx(10.0).epsilon(1e-12));  // 2T^2+T

  auto geoT = LengthDistribution::geometric_mean(17);
  REQUIRE(geoT.moment(2) == Catch::Approx(2 * 17.0 * 17 + 17).epsilon(1e-12));

  auto d5 = LengthDistribution::dirac(5);
  REQUIRE(d5.moment(2) == 25.0);
  REQUIRE(d5.moment(1) == 5.0);

  auto table = LengthDistribution::from_pmf({1, 3, 6}, {0.25, 0.5, 0.25});
  REQUIRE(table.moment(1) == Catch::Approx(0.25 + 1.5 + 1.5));
}

TEST_CASE("tail moments") {
  auto d5 = LengthDistribution::dirac(5);
  REQUIRE(d5.tail_moment(2, 6) == 0.0);
  REQUIRE(d5.tail_moment(2, 5) == 25.0);
  REQUIRE(d5.tail_moment(1, 0) == d5.moment(1));

  auto geo2 = LengthDistribution::geometric_mean(2);
  for (int k = 0; k <= 2; ++k)
    for (int64_t m : {0, 1, 3, 10})
      REQUIRE(geo2.tail_moment(k, m) ==
              Catch::Approx(geo_tail_sum(1.0 / 3, k, m)).margin(1e-10));
  REQUIRE(geo2.tail_moment(1, 0) == Catch::Approx(geo2.moment(1)).margin(1e-12));
}

TEST_CASE("appropriateness theta") {
  auto d8 = LengthDistribution::dirac(8);
  REQUIRE(d8.appropriateness_theta(2.0) == 0.0);
  REQUIRE(d8.appropriateness_theta(0.0) == Catch::Approx(1.0).epsilon(1e-12));
  REQUIRE(d8.appropriateness_theta(1.0) == Catch::Approx(1.0).epsilon(1e-12));

  auto geo8 = LengthDistribution::geometric_mean(8);
  double c = 4.0;
  int64_t cutoff = static_cast<int64_t>(std::ceil(c * geo8.moment(1) - 1e-12));
  double expected = geo_tail_sum(1.0 / 9, 2, cutoff) / geo8.moment(2);
  REQUIRE(geo8.appropriateness_theta(c) == Catch::Approx(expected).margin(1e-10));

  // nonincreasing in C
  double prev = 2.0;
  for (double cc : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    double th = geo8.appropriateness_theta(cc);
    REQUIRE(th <= prev + 1e-12);
    prev = th;
  }
}

TEST_CASE("reference intensity and perturbation") {
  const double eps4 = kEpsilon4;
  auto dn = LengthDistribution::dirac(100);
  double expected = (1.0 + std::log(100.0)) * 8.0 / (M_PI * M_PI * 100.0);
  REQUIRE(reference_intensity(dn, 4, eps4) == Catch::Approx(expected).epsilon(1e-12));

  auto geoT = LengthDistribution::geometric_mean(12);
  double eps5 = 0.5;
  REQUIRE(reference_intensity(geoT, 5, eps5) ==
          Catch::Approx(12.0 / (eps5 * (2 * 144.0 + 12))).epsilon(1e-12));

  double u = reference_intensity(geoT, 5, eps5);
  auto [lo, hi] = perturbed_intensity(u, 0.0);
  REQUIRE(lo == u);
  REQUIRE(hi == u);
  auto [lo2, hi2] = perturbed_intensity(u, 0.1);
  REQUIRE(lo2 == Catch::Approx(0.9 * u));
  REQUIRE(hi2 == Catch::Approx(1.1 * u));
  REQUIRE_THROWS_AS(perturbed_intensity(u, 0.5), ValidationError);
}

TEST_CASE("sampling agrees with pmf (chi-square)") {
  check_sampling_matches_pmf(LengthDistribution::geometric_mean(4), 101, 40);
  check_sampling_matches_pmf(LengthDistribution::dirac(7), 102, 10);
  check_sampling_matches_pmf(
      LengthDistribution::from_pmf({0, 2, 5, 9}, {0.1, 0.4, 0.3, 0.2}), 103, 9);
  check_sampling_matches_pmf(
      LengthDistribution::scaled(10.0, {0.31, 1.0, 2.17}, {0.3, 0.5, 0.2}), 104, 25);
}

TEST_CASE("scaled family mean grows linearly in the scale") {
  std::vector<double> base_v = {0.5, 1.0, 2.5};
  std::vector<double> base_p = {0.25, 0.5, 0.25};
  double m10 = LengthDistribution::scaled(10, base_v, base_p).moment(1);
  double m100 = LengthDistribution::scaled(100, base_v, base_p).moment(1);
  double m1000 = LengthDistribution::scaled(1000, base_v, base_p).moment(1);
  REQUIRE(m100 / m10 == Catch::Approx(10.0).epsilon(0.05));
  REQUIRE(m1000 / m100 == Catch::Approx(10.0).epsilon(0.05));
}

TEST_CASE("length-biased samplers match their target laws") {
  RngStream rng(2024);
  const int n = 100000;

  // pmf family: exact target weights
  auto table = LengthDistribution::from_pmf({1, 2, 5}, {0.5, 0.3, 0.2});
  std::map<int64_t, int64_t> c1, c2;
  for (int i = 0; i < n; ++i) {
    c1[table.sample_length_biased1(rng)]++;
    c2[table.sample_length_biased2(rng)]++;
  }
  double z1 = 2 * 0.5 + 3 * 0.3 + 6 * 0.2;
  double z2 = 1 * 2 * 0.5 + 2 * 3 * 0.3 + 5 * 6 * 0.2;
  std::vector<double> obs1, exp1, obs2, exp2;
  for (int64_t v : {1, 2, 5}) {
    double p = table.pmf(v);
    obs1.push_back(static_cast<double>(c1[v]));
    exp1.push_back((v + 1) * p / z1 * n);
    obs2.push_back(static_cast<double>(c2[v]));
    exp2.push_back(v * (v + 1) * p / z2 * n);
  }
  REQUIRE(chi_square_gof_pvalue(obs1, exp1) > 1e-3);
  REQUIRE(chi_square_gof_pvalue(obs2, exp2) > 1e-3);

  // geometric family: sum-of-geometrics sampler vs the (l+1)-biased weights
  auto geo = LengthDistribution::geometric_mean(3);  // lambda = 1/4
  std::map<int64_t, int64_t> cg;
  for (int i = 0; i < n; ++i)
    cg[std::min<int64_t>(geo.sample_length_biased1(rng), 40)]++;
  std::vector<double> obs, exp;
  double norm = geo.moment(1) + 1.0;
  for (int64_t v = 0; v < 40; ++v) {
    obs.push_back(static_cast<double>(cg.count(v) ? cg[v] : 0));
    exp.push_back((v + 1) * geo.pmf(v) / norm * n);
  }
  double exp_tail = n;
  for (double e : exp) exp_tail -= e;
  obs.push_back(static_cast<double>(cg.count(40) ? cg[40] : 0));
  exp.push_back(exp_tail);
  REQUIRE(chi_square_gof_pvalue(obs, exp) > 1e-3);
}

TEST_CASE("size-biased law for finite families") {
  auto table = LengthDistribution::from_pmf({1, 2, 5}, {0.5, 0.3, 0.2});
  auto biased = table.size_biased();
  double m1 = table.moment(1);
  REQUIRE(biased.pmf(1) == Catch::Approx(0.5 / m1));
  REQUIRE(biased.pmf(2) == Catch::Approx(2 * 0.3 / m1));
  REQUIRE(biased.pmf(5) == Catch::Approx(5 * 0.2 / m1));
  auto d = LengthDistribution::dirac(9).size_biased();
  REQUIRE(d.pmf(9) == 1.0);
}

TEST_CASE("validation errors") {
  REQUIRE_THROWS_AS(LengthDistribution::geometric(0.0), ValidationError);
  REQUIRE_THROWS_AS(LengthDistribution::from_pmf({1, 2}, {0.6, 0.6}),
                    ValidationError);
  REQUIRE_THROWS_AS(LengthDistribution::from_pmf({-1}, {1.0}), ValidationError);
  auto geo = LengthDistribution::geometric_mean(4);
  REQUIRE_THROWS_AS(geo.moment(3), ValidationError);
  REQUIRE_THROWS_AS(geo.appropriateness_theta(-1.0), ValidationError);
}

TEST_CASE("chi-square p-value sanity") {
  REQUIRE(chi_square_pvalue(1.0, 1.0) == Catch::Approx(0.3173).margin(0.001));
  REQUIRE(chi_square_pvalue(10.0, 10.0) == Catch::Approx(0.4405).margin(0.001));
}
