#pragma once

#include <vector>

namespace beamlab::stats {

// regularized lower incomplete gamma P(a, x)
double regularized_gamma_p(double a, double x);

// regularized incomplete beta I_x(a, b)
double regularized_beta(double a, double b, double x);

double chi_square_cdf(double x, double dof);
double f_cdf(double x, double dof1, double dof2);

// Pearson chi-square on a two-cell count (k in cell one out of n trials)
// against success probability p; returns the upper tail probability.
// Degenerate expectations (p = 0 or 1) give p-value 1 when the observation
// agrees exactly and 0 otherwise.
double binomial_chi_square_pvalue(long k, long n, double p);

struct Anova {
  double f_stat;
  double p_value;
};
// one-way fixed-effects ANOVA; groups of size < 1 are dropped
Anova one_way_anova(const std::vector<std::vector<double>>& groups);

// Kolmogorov-Smirnov test of samples against U(0,1); asymptotic p-value
// with the small-sample correction
double ks_uniform_pvalue(std::vector<double> samples);

double mean(const std::vector<double>& v);
double sample_std(const std::vector<double>& v);  // unbiased
double median(std::vector<double> v);

}  // namespace beamlab::stats
