#pragma once

#include <functional>
#include <map>
#include <vector>

#include "mtpa/degree.hpp"
#include "mtpa/distributions.hpp"

namespace mtpa {

// Tabulated asymptotic degree distribution: one value per generalized
// degree with total <= cap. Values are >= 0 and their sum (partial_mass)
// never exceeds 1 beyond rounding; both are enforced at construction.
struct TheoryTable {
    int type_count = 0;
    int cap = 0;
    std::vector<double> zeta;
    std::map<GeneralizedDegree, double> values;
    double partial_mass = 0.0;

    double value(const GeneralizedDegree& d) const {
        auto it = values.find(d);
        return it == values.end() ? 0.0 : it->second;
    }
};

// All degrees with nonnegative coordinates and total <= cap, ordered by
// total then lexicographically. This is the evaluation order of every
// table-filling recurrence.
std::vector<GeneralizedDegree> enumerate_degrees(int type_count, int cap);

// Solver for the general limit recurrence
//   x(d) = [sum_k r(k, d - e_k) x(d - e_k) + q(d)] / (u(d) + 1),
// with x = 0 whenever a coordinate is negative. Coefficients are supplied
// as functions; values are memoized across calls.
class LimitSolver {
public:
    using ScalarFn = std::function<double(const GeneralizedDegree&)>;
    using TypeFn = std::function<double(int, const GeneralizedDegree&)>;

    // u: expected-attachment scale; r: per-type rate, called as
    // r(k, d - e_k); q: inhomogeneous newborn term.
    LimitSolver(int type_count, ScalarFn u, TypeFn r, ScalarFn q);

    double value(const GeneralizedDegree& d);
    TheoryTable table(int cap, std::vector<double> zeta = {});

private:
    int type_count_;
    ScalarFn u_;
    TypeFn r_;
    ScalarFn q_;
    std::map<GeneralizedDegree, double> memo_;
};

// Asymptotic degree distribution of the batch model:
//   x(d) = sum_k (d_k - 1)/(D + 2) x(d - e_k)
//        + 2/(D + 2) P(M = D) D!/(prod d_k!) prod zeta_k^{d_k}.
// zeta is an input (the conditioning value of the limiting edge-type
// proportions), not something this class computes.
class BaTheory {
public:
    BaTheory(BatchDistribution batch, std::vector<double> zeta);

    double value(const GeneralizedDegree& d);
    TheoryTable table(int cap);

    const BatchDistribution& batch() const { return batch_; }
    const std::vector<double>& zeta() const { return zeta_; }

private:
    BatchDistribution batch_;
    std::vector<double> zeta_;
    std::map<GeneralizedDegree, double> memo_;

    double newborn_term(const GeneralizedDegree& d) const;
};

// Asymptotic degree distribution of the independent-edges model:
//   x(d) = sum_k (d_k - 1)/(D + 2) x(d - e_k)
//        + 2/(D + 2) (prod zeta_k^{d_k} / prod d_k!) E(lambda^D e^-lambda).
class IeTheory {
public:
    IeTheory(RateDistribution rate, std::vector<double> zeta_hat);

    double value(const GeneralizedDegree& d);
    TheoryTable table(int cap);

    const RateDistribution& rate() const { return rate_; }
    const std::vector<double>& zeta() const { return zeta_; }

private:
    RateDistribution rate_;
    std::vector<double> zeta_;
    std::map<GeneralizedDegree, double> memo_;

    double newborn_term(const GeneralizedDegree& d) const;
};

// E(lambda^D e^-lambda) for the rate law: closed form for constant and
// gamma rates, 64-point Gauss-Legendre quadrature for uniform rates.
double poisson_weight(const RateDistribution& rate, int degree);

// Marginal recurrences for the per-type degree distribution, forward from
// l = 0; returns values for l = 0..l_max.
//   batch:  x_l = (l-1)/(l+2) x_{l-1} + 2/(l+2) E[C(M,l) z^l (1-z)^{M-l}]
//   rates:  x_l = (l-1)/(l+2) x_{l-1} + 2/(l+2) E[(lambda z)^l e^{-lambda z}] / l!
// The batch expectation is an exact finite sum, so the batch law must have
// bounded support.
std::vector<double> marginal_x_ba(const BatchDistribution& batch, double zeta_k, int l_max);
std::vector<double> marginal_x_ie(const RateDistribution& rate, double zeta_hat_k, int l_max);

// Power-law exponent of a recurrence with limiting lag coefficients a and
// 1/l-correction coefficients b (both keyed by lag n >= 1): q is the
// positive root of sum_n a_n q^n = 1, and
// gamma = (sum_n b_n q^n) / (sum_n n a_n q^n), so that solutions behave
// like C q^l l^gamma. Requires a_n >= 0 with gcd of the support equal 1.
struct CharacteristicExponent {
    double q;
    double gamma;
};
CharacteristicExponent characteristic_exponent(const std::map<int, double>& a,
                                               const std::map<int, double>& b);

// Independent closed form for the single-type, one-edge-per-step model
// grown from a tree: x(d) = 4 / (d (d+1) (d+2)), d >= 1.
double closed_form_ba_tree(int d);

} // namespace mtpa
