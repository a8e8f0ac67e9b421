#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace groupsketch::stats {

// Standard normal CDF and its complement. The complement is computed through
// erfc so the far tail keeps full relative accuracy.
double normal_cdf(double x);
double normal_cdf_c(double x);

// Inverse CDF, |p| in (0,1). Acklam's rational approximation polished with
// Halley steps; accurate to ~1e-15.
double normal_quantile(double p);

// log(n choose k) via lgamma.
double log_choose(double n, double k);

// Binomial pmf as a dense vector over k = 0..n. Exact at p = 0 and p = 1.
std::vector<double> binomial_pmf(int n, double p);

// Shannon entropy in nats with the 0 log 0 = 0 convention.
double entropy(std::span<const double> pmf);

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
// Subdivides until the local error estimate is below abs_tol + rel_tol*|I|.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-12);

// Linear-interpolated empirical quantile (the order-statistic estimator with
// position q*(N-1)). `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double q);

// Ordinary least squares slope of y against x.
double ols_slope(std::span<const double> x, std::span<const double> y);

}  // namespace groupsketch::stats
