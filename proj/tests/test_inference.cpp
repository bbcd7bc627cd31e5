#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "beamlab/errors.hpp"
#include "beamlab/inference.hpp"
#include "oracles.hpp"

using namespace beamlab;
using inference::PhasePosterior;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("uniform posterior carries no direction") {
  auto p = PhasePosterior::uniform(64);
  CHECK(p.grid_size() == 64);
  for (int k = 0; k < 64; ++k)
    CHECK(p.weights()(k) == doctest::Approx(1.0 / 64).epsilon(1e-15));
  CHECK(p.angle(16) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  auto cs = circular_stats(p);
  CHECK(cs.resultant_length < 1e-13);
  CHECK(cs.circular_std > 7.0);  // effectively unbounded spread
}

TEST_CASE("point posterior is fully locked") {
  auto p = PhasePosterior::delta(32, 5);
  CHECK(p.weights()(5) == 1.0);
  CHECK(p.mode_index() == 5);
  auto cs = circular_stats(p);
  CHECK(cs.resultant_length == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cs.mean_direction == doctest::Approx(p.angle(5)).epsilon(1e-12));
  CHECK(cs.circular_std == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("weights are validated and normalized on construction") {
  Eigen::VectorXd w(4);
  w << 2.0, 0.0, 1.0, 1.0;
  auto p = PhasePosterior::from_weights(w);
  CHECK(p.weights()(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.weights().sum() == doctest::Approx(1.0).epsilon(1e-15));

  Eigen::VectorXd neg(3);
  neg << 0.5, -0.1, 0.6;
  CHECK_THROWS_AS((void)PhasePosterior::from_weights(neg),
                  std::invalid_argument);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS((void)PhasePosterior::from_weights(zero),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)PhasePosterior::uniform(0), std::invalid_argument);
  CHECK_THROWS_AS((void)PhasePosterior::delta(8, 9), std::invalid_argument);
}

TEST_CASE("bayes update composes and rejects impossible evidence") {
  auto prior = PhasePosterior::uniform(16);
  Eigen::VectorXd l1(16), l2(16);
  for (int k = 0; k < 16; ++k) {
    l1(k) = 0.2 + std::pow(std::sin(prior.angle(k)), 2.0);
    l2(k) = 0.1 + std::pow(std::cos(prior.angle(k) / 2.0), 2.0);
  }
  auto seq = prior.bayes_update(l1).bayes_update(l2);
  auto joint = prior.bayes_update(l1.cwiseProduct(l2));
  CHECK((seq.weights() - joint.weights()).cwiseAbs().maxCoeff() < 1e-15);
  // update by a flat likelihood is a no-op
  auto flat = prior.bayes_update(Eigen::VectorXd::Constant(16, 0.37));
  CHECK((flat.weights() - prior.weights()).cwiseAbs().maxCoeff() < 1e-16);

  CHECK_THROWS_AS((void)prior.bayes_update(Eigen::VectorXd::Zero(16)),
                  ImpossibleEvidenceError);
  CHECK_THROWS_AS((void)prior.bayes_update(Eigen::VectorXd::Ones(7)),
                  std::invalid_argument);
  Eigen::VectorXd neg = Eigen::VectorXd::Ones(16);
  neg(3) = -0.5;
  CHECK_THROWS_AS((void)prior.bayes_update(neg), std::invalid_argument);
}

TEST_CASE("von mises posterior reproduces the bessel ratio") {
  // weights exp(kappa cos(phi - mu)) on a dense grid: the resultant length
  // is I1(kappa)/I0(kappa) and the mean direction is mu
  const int m = 512;
  const double kappa = 2.0, mu = 1.3;
  auto base = PhasePosterior::uniform(m);
  Eigen::VectorXd l(m);
  for (int k = 0; k < m; ++k)
    l(k) = std::exp(kappa * std::cos(base.angle(k) - mu));
  auto cs = circular_stats(base.bayes_update(l));
  const double expected = oracle::bessel_i(1, kappa) / oracle::bessel_i(0, kappa);
  CHECK(cs.resultant_length == doctest::Approx(expected).epsilon(1e-9));
  CHECK(cs.mean_direction == doctest::Approx(mu).epsilon(1e-9));
  CHECK(cs.circular_std ==
        doctest::Approx(std::sqrt(-2.0 * std::log(expected))).epsilon(1e-9));
}

TEST_CASE("updating is a martingale: the outcome-averaged posterior is the prior") {
  const int m = 32;
  Eigen::VectorXd w(m);
  for (int k = 0; k < m; ++k) w(k) = 1.0 + 0.8 * std::sin(0.7 * k);
  auto prior = PhasePosterior::from_weights(w);
  Eigen::VectorXd lp(m), lm(m);
  for (int k = 0; k < m; ++k) {
    lp(k) = 0.5 * (1.0 + std::cos(prior.angle(k) - 0.4));
    lm(k) = 1.0 - lp(k);
  }
  const double prob_plus = prior.weights().dot(lp);
  Eigen::VectorXd avg =
      prob_plus * prior.bayes_update(lp).weights() +
      (1.0 - prob_plus) * prior.bayes_update(lm).weights();
  CHECK((avg - prior.weights()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("rotating the likelihood rotates the posterior") {
  const int m = 48, shift = 11;
  auto prior = PhasePosterior::uniform(m);
  Eigen::VectorXd l(m), lrot(m);
  for (int k = 0; k < m; ++k)
    l(k) = std::exp(1.5 * std::cos(prior.angle(k)));
  for (int k = 0; k < m; ++k) lrot((k + shift) % m) = l(k);
  auto a = prior.bayes_update(l);
  auto b = prior.bayes_update(lrot);
  for (int k = 0; k < m; ++k)
    CHECK(b.weights()((k + shift) % m) ==
          doctest::Approx(a.weights()(k)).epsilon(1e-13));
  const double turn = 2.0 * kPi * shift / m;
  auto ca = circular_stats(a), cb = circular_stats(b);
  CHECK(std::fmod(cb.mean_direction - ca.mean_direction + 4.0 * kPi, 2.0 * kPi) ==
        doctest::Approx(turn).epsilon(1e-10));
  CHECK(cb.resultant_length ==
        doctest::Approx(ca.resultant_length).epsilon(1e-13));
}

TEST_CASE("index sampling follows the posterior weights") {
  Eigen::VectorXd w(4);
  w << 0.1, 0.2, 0.3, 0.4;
  auto p = PhasePosterior::from_weights(w);
  Rng rng(505);
  const int n = 40000;
  std::vector<long> counts(4, 0);
  for (int i = 0; i < n; ++i) ++counts[inference::sample_index(p, rng)];
  for (int k = 0; k < 4; ++k) {
    const double expect = n * w(k);
    const double sigma = std::sqrt(n * w(k) * (1.0 - w(k)));
    CHECK(std::abs(counts[k] - expect) < 5.0 * sigma);
  }
  auto d = PhasePosterior::delta(16, 9);
  for (int i = 0; i < 100; ++i) CHECK(inference::sample_index(d, rng) == 9);
  Rng r1(3), r2(3);
  for (int i = 0; i < 100; ++i)
    CHECK(inference::sample_index(p, r1) == inference::sample_index(p, r2));
}

TEST_CASE("mode index breaks ties toward the lowest grid point") {
  Eigen::VectorXd w(3);
  w << 0.3, 0.3, 0.4;
  CHECK(PhasePosterior::from_weights(w).mode_index() == 2);
  Eigen::VectorXd tie(4);
  tie << 0.25, 0.25, 0.25, 0.25;
  CHECK(PhasePosterior::from_weights(tie).mode_index() == 0);
}

TEST_CASE("posterior trace serializes in long format") {
  std::vector<PhasePosterior> steps{PhasePosterior::uniform(3),
                                    PhasePosterior::delta(3, 2)};
  std::ostringstream out;
  inference::write_posterior_trace(out, steps);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "step,phi,weight");
  int rows = 0;
  double last_weight = -1.0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream row(line);
    std::string step, phi, weight;
    REQUIRE(std::getline(row, step, ','));
    REQUIRE(std::getline(row, phi, ','));
    REQUIRE(std::getline(row, weight, ','));
    last_weight = std::stod(weight);
  }
  CHECK(rows == 6);
  CHECK(last_weight == doctest::Approx(1.0).epsilon(1e-15));
}
