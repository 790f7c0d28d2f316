#pragma once

#include <cstddef>
#include <vector>

namespace mtpa {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], computed
// by Newton iteration on the Legendre recurrence and cached per n.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const Quadrature& gauss_legendre(int n);

// Survival function of the Kolmogorov distribution,
// Q(t) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 t^2). Returns 1 for t <= 0.
double kolmogorov_sf(double t);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a); a > 0,
// x >= 0. Series for x < a + 1, continued fraction otherwise.
double regularized_gamma_upper(double a, double x);

// Chi-square upper tail with df degrees of freedom.
double chi_square_sf(double statistic, int df);

// CDF of Beta(a, b) with positive integer parameters, evaluated through the
// binomial tail identity I_x(a,b) = sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^{a+b-1-j}.
double beta_cdf_integer(double x, int a, int b);

// log(n!) via lgamma.
double log_factorial(int n);

// Binomial pmf C(n, k) p^k (1-p)^{n-k} with the 0^0 = 1 convention at the
// endpoints p = 0 and p = 1.
double binomial_pmf(int n, int k, double p);

} // namespace mtpa
