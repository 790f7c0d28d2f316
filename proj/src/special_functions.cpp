#include "mtpa/special_functions.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mtpa {

const Quadrature& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, Quadrature> cache;
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const int mid = (n + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        // Tricomi initial guess for the i-th root of P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(q)).first->second;
}

double kolmogorov_sf(double t) {
    if (t <= 0.0) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 200; ++j) {
        double term = std::exp(-2.0 * j * j * t * t);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    double q = 2.0 * sum;
    if (q < 0.0) return 0.0;
    if (q > 1.0) return 1.0;
    return q;
}

namespace {

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
    // Lentz's method on the standard continued fraction for Gamma(a, x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double regularized_gamma_upper(double a, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("regularized_gamma_upper: a must be positive");
    if (x < 0.0) throw std::invalid_argument("regularized_gamma_upper: x must be >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

double chi_square_sf(double statistic, int df) {
    if (df < 1) throw std::invalid_argument("chi_square_sf: df must be >= 1");
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_upper(0.5 * df, 0.5 * statistic);
}

double beta_cdf_integer(double x, int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("beta_cdf_integer: parameters must be >= 1");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const int n = a + b - 1;
    double cdf = 0.0;
    for (int j = a; j <= n; ++j)
        cdf += binomial_pmf(n, j, x);
    if (cdf < 0.0) return 0.0;
    if (cdf > 1.0) return 1.0;
    return cdf;
}

double log_factorial(int n) {
    if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
    return std::lgamma(n + 1.0);
}

double binomial_pmf(int n, int k, double p) {
    if (k < 0 || k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    double log_pmf = log_factorial(n) - log_factorial(k) - log_factorial(n - k) +
                     k * std::log(p) + (n - k) * std::log1p(-p);
    return std::exp(log_pmf);
}

} // namespace mtpa
