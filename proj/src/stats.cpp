#include "beamlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace beamlab::stats {

namespace {

double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double beta_contfrac(double a, double b, double x) {
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < 1e-300) d = 1e-300;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = 1.0 + aa / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = 1.0 + aa / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0)
    throw std::invalid_argument("regularized_gamma_p: need a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

double regularized_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0)
    throw std::invalid_argument("regularized_beta: need a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                             std::lgamma(b) + a * std::log(x) +
                             b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_contfrac(a, b, x) / a;
  return 1.0 - bt * beta_contfrac(b, a, 1.0 - x) / b;
}

double chi_square_cdf(double x, double dof) {
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(dof / 2.0, x / 2.0);
}

double f_cdf(double x, double dof1, double dof2) {
  if (x <= 0.0) return 0.0;
  return regularized_beta(dof1 / 2.0, dof2 / 2.0,
                          dof1 * x / (dof1 * x + dof2));
}

double binomial_chi_square_pvalue(long k, long n, double p) {
  if (n <= 0 || k < 0 || k > n)
    throw std::invalid_argument("binomial_chi_square_pvalue: bad counts");
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  const double e = double(n) * p;
  const double chi = (double(k) - e) * (double(k) - e) / (e * (1.0 - p));
  return 1.0 - chi_square_cdf(chi, 1.0);
}

Anova one_way_anova(const std::vector<std::vector<double>>& groups) {
  double grand_sum = 0.0;
  long n_total = 0;
  int n_groups = 0;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    ++n_groups;
    n_total += long(g.size());
    for (double v : g) grand_sum += v;
  }
  if (n_groups < 2 || n_total <= n_groups)
    throw std::invalid_argument("one_way_anova: need >= 2 nonempty groups "
                                "and residual degrees of freedom");
  const double grand_mean = grand_sum / double(n_total);
  double ssb = 0.0, ssw = 0.0;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    double m = mean(g);
    ssb += double(g.size()) * (m - grand_mean) * (m - grand_mean);
    for (double v : g) ssw += (v - m) * (v - m);
  }
  const double dfb = n_groups - 1.0;
  const double dfw = double(n_total - n_groups);
  if (ssw == 0.0) {
    if (ssb == 0.0) return {0.0, 1.0};
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  const double f = (ssb / dfb) / (ssw / dfw);
  return {f, 1.0 - f_cdf(f, dfb, dfw)};
}

double ks_uniform_pvalue(std::vector<double> samples) {
  if (samples.empty()) return 1.0;
  std::sort(samples.begin(), samples.end());
  const double n = double(samples.size());
  double dmax = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = std::clamp(samples[i], 0.0, 1.0);
    dmax = std::max(dmax, (double(i) + 1.0) / n - x);
    dmax = std::max(dmax, x - double(i) / n);
  }
  const double lam = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * dmax;
  if (lam < 0.3) return 1.0;  // below any interesting significance resolution
  double sum = 0.0, sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lam * lam);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean: empty input");
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("sample_std: need >= 2 values");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / double(v.size() - 1));
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty input");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace beamlab::stats
