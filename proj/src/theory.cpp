#include "mtpa/theory.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mtpa/errors.hpp"
#include "mtpa/special_functions.hpp"

namespace mtpa {

namespace {

void check_zeta(const std::vector<double>& zeta, int type_count) {
    if (zeta.size() != static_cast<std::size_t>(type_count))
        throw ConfigError("zeta: expected " + std::to_string(type_count) + " components");
    double total = 0.0;
    for (double z : zeta) {
        if (!(z >= 0.0)) throw ConfigError("zeta: components must be >= 0");
        total += z;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw ConfigError("zeta: components must sum to 1");
}

void check_degree(const GeneralizedDegree& d, int type_count) {
    if (d.type_count() != static_cast<std::size_t>(type_count))
        throw std::invalid_argument("degree has wrong number of types");
    for (int c : d.coords)
        if (c < 0) throw std::invalid_argument("degree has a negative coordinate");
}

void enumerate_rec(GeneralizedDegree& d, std::size_t pos, int remaining,
                   std::vector<GeneralizedDegree>& out) {
    if (pos + 1 == d.type_count()) {
        d[pos] = remaining;
        out.push_back(d);
        return;
    }
    for (int c = 0; c <= remaining; ++c) {
        d[pos] = c;
        enumerate_rec(d, pos + 1, remaining - c, out);
    }
}

// log(prod_k zeta_k^{d_k}) with the 0^0 = 1 convention; -inf when the
// product is exactly zero.
double log_zeta_power(const GeneralizedDegree& d, const std::vector<double>& zeta) {
    double acc = 0.0;
    for (std::size_t k = 0; k < zeta.size(); ++k) {
        if (d[k] == 0) continue;
        if (zeta[k] == 0.0) return -std::numeric_limits<double>::infinity();
        acc += d[k] * std::log(zeta[k]);
    }
    return acc;
}

// E[Poisson(lambda * z) pmf at l] for the rate law, evaluated in log space
// per node/branch so large l neither overflows nor produces NaN.
double expected_poisson_pmf(const RateDistribution& rate, double z, int l) {
    if (z == 0.0) return l == 0 ? 1.0 : 0.0;
    const double lf = log_factorial(l);
    switch (rate.kind()) {
    case RateDistribution::Kind::Constant: {
        double m = rate.param1() * z;
        return std::exp(l * std::log(m) - m - lf);
    }
    case RateDistribution::Kind::Gamma: {
        double shape = rate.param1(), scale = rate.param2() * z;
        return std::exp(std::lgamma(shape + l) - std::lgamma(shape) - lf +
                        l * std::log(scale) - (shape + l) * std::log1p(scale));
    }
    case RateDistribution::Kind::Uniform: {
        double a = rate.param1() * z, b = rate.param2() * z;
        const Quadrature& q = gauss_legendre(64);
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < q.nodes.size(); ++i) {
            double x = mid + half * q.nodes[i];
            acc += q.weights[i] * std::exp(l * std::log(x) - x - lf);
        }
        return 0.5 * acc;
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace

std::vector<GeneralizedDegree> enumerate_degrees(int type_count, int cap) {
    if (type_count < 1) throw std::invalid_argument("enumerate_degrees: type_count must be >= 1");
    if (cap < 0) throw std::invalid_argument("enumerate_degrees: cap must be >= 0");
    double entries = 1.0;
    for (int i = 1; i <= type_count; ++i)
        entries *= static_cast<double>(cap + i) / i;
    if (entries > 2e7)
        throw ConfigError("degree table would hold about " + std::to_string(entries) +
                          " entries; lower the cap or the type count");
    std::vector<GeneralizedDegree> out;
    out.reserve(static_cast<std::size_t>(entries));
    GeneralizedDegree d(static_cast<std::size_t>(type_count));
    for (int total = 0; total <= cap; ++total)
        enumerate_rec(d, 0, total, out);
    return out;
}

LimitSolver::LimitSolver(int type_count, ScalarFn u, TypeFn r, ScalarFn q)
    : type_count_(type_count), u_(std::move(u)), r_(std::move(r)), q_(std::move(q)) {
    if (type_count_ < 1) throw std::invalid_argument("LimitSolver: type_count must be >= 1");
    if (!u_ || !r_ || !q_) throw std::invalid_argument("LimitSolver: null coefficient function");
}

double LimitSolver::value(const GeneralizedDegree& d) {
    check_degree(d, type_count_);
    if (auto it = memo_.find(d); it != memo_.end()) return it->second;
    double acc = 0.0;
    for (int k = 0; k < type_count_; ++k) {
        if (d[k] < 1) continue;
        GeneralizedDegree reduced = d;
        reduced[k] -= 1;
        acc += r_(k, reduced) * value(reduced);
    }
    double val = (acc + q_(d)) / (u_(d) + 1.0);
    memo_.emplace(d, val);
    return val;
}

namespace {

TheoryTable build_table(int type_count, int cap, std::vector<double> zeta,
                        const std::function<double(const GeneralizedDegree&)>& eval) {
    TheoryTable t;
    t.type_count = type_count;
    t.cap = cap;
    t.zeta = std::move(zeta);
    for (const GeneralizedDegree& d : enumerate_degrees(type_count, cap)) {
        double v = eval(d);
        if (!(v >= 0.0))
            throw std::runtime_error("degree recurrence produced a negative value at (" +
                                     d.to_string() + ")");
        t.values.emplace(d, v);
        t.partial_mass += v;
    }
    if (t.partial_mass > 1.0 + 1e-9)
        throw std::runtime_error("degree recurrence mass exceeds 1");
    return t;
}

} // namespace

TheoryTable LimitSolver::table(int cap, std::vector<double> zeta) {
    return build_table(type_count_, cap, std::move(zeta),
                       [this](const GeneralizedDegree& d) { return value(d); });
}

BaTheory::BaTheory(BatchDistribution batch, std::vector<double> zeta)
    : batch_(std::move(batch)), zeta_(std::move(zeta)) {
    if (zeta_.empty()) throw ConfigError("zeta must not be empty");
    check_zeta(zeta_, static_cast<int>(zeta_.size()));
}

double BaTheory::newborn_term(const GeneralizedDegree& d) const {
    const int D = d.total();
    double pmf = batch_.pmf(D);
    if (pmf == 0.0) return 0.0;
    double log_power = log_zeta_power(d, zeta_);
    if (log_power == -std::numeric_limits<double>::infinity()) return 0.0;
    double log_multinomial = log_factorial(D);
    for (int c : d.coords) log_multinomial -= log_factorial(c);
    return pmf * std::exp(log_multinomial + log_power);
}

double BaTheory::value(const GeneralizedDegree& d) {
    check_degree(d, static_cast<int>(zeta_.size()));
    if (auto it = memo_.find(d); it != memo_.end()) return it->second;
    const int D = d.total();
    double acc = 0.0;
    for (std::size_t k = 0; k < zeta_.size(); ++k) {
        if (d[k] < 1) continue;
        GeneralizedDegree reduced = d;
        reduced[k] -= 1;
        acc += (d[k] - 1) * value(reduced);
    }
    double val = (acc + 2.0 * newborn_term(d)) / (D + 2.0);
    memo_.emplace(d, val);
    return val;
}

TheoryTable BaTheory::table(int cap) {
    return build_table(static_cast<int>(zeta_.size()), cap, zeta_,
                       [this](const GeneralizedDegree& d) { return value(d); });
}

IeTheory::IeTheory(RateDistribution rate, std::vector<double> zeta_hat)
    : rate_(std::move(rate)), zeta_(std::move(zeta_hat)) {
    if (zeta_.empty()) throw ConfigError("zeta must not be empty");
    check_zeta(zeta_, static_cast<int>(zeta_.size()));
}

double IeTheory::newborn_term(const GeneralizedDegree& d) const {
    double log_power = log_zeta_power(d, zeta_);
    if (log_power == -std::numeric_limits<double>::infinity()) return 0.0;
    for (int c : d.coords) log_power -= log_factorial(c);
    double weight = poisson_weight(rate_, d.total());
    return weight * std::exp(log_power);
}

double IeTheory::value(const GeneralizedDegree& d) {
    check_degree(d, static_cast<int>(zeta_.size()));
    if (auto it = memo_.find(d); it != memo_.end()) return it->second;
    const int D = d.total();
    double acc = 0.0;
    for (std::size_t k = 0; k < zeta_.size(); ++k) {
        if (d[k] < 1) continue;
        GeneralizedDegree reduced = d;
        reduced[k] -= 1;
        acc += (d[k] - 1) * value(reduced);
    }
    double val = (acc + 2.0 * newborn_term(d)) / (D + 2.0);
    memo_.emplace(d, val);
    return val;
}

TheoryTable IeTheory::table(int cap) {
    return build_table(static_cast<int>(zeta_.size()), cap, zeta_,
                       [this](const GeneralizedDegree& d) { return value(d); });
}

double poisson_weight(const RateDistribution& rate, int degree) {
    if (degree < 0) throw std::invalid_argument("poisson_weight: degree must be >= 0");
    switch (rate.kind()) {
    case RateDistribution::Kind::Constant: {
        double mu = rate.param1();
        return std::exp(degree * std::log(mu) - mu);
    }
    case RateDistribution::Kind::Gamma: {
        double shape = rate.param1(), scale = rate.param2();
        return std::exp(std::lgamma(shape + degree) - std::lgamma(shape) +
                        degree * std::log(scale) - (shape + degree) * std::log1p(scale));
    }
    case RateDistribution::Kind::Uniform: {
        double a = rate.param1(), b = rate.param2();
        const Quadrature& q = gauss_legendre(64);
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < q.nodes.size(); ++i) {
            double x = mid + half * q.nodes[i];
            acc += q.weights[i] * std::exp(degree * std::log(x) - x);
        }
        return 0.5 * acc;
    }
    }
    throw std::logic_error("unreachable");
}

std::vector<double> marginal_x_ba(const BatchDistribution& batch, double zeta_k, int l_max) {
    if (l_max < 0) throw std::invalid_argument("marginal_x_ba: l_max must be >= 0");
    if (!(zeta_k >= 0.0 && zeta_k <= 1.0))
        throw ConfigError("marginal_x_ba: zeta component must lie in [0, 1]");
    const auto& support = batch.support();
    std::vector<double> x(static_cast<std::size_t>(l_max) + 1, 0.0);
    double prev = 0.0;
    for (int l = 0; l <= l_max; ++l) {
        double expectation = 0.0;
        for (const auto& [m, prob] : support)
            expectation += prob * binomial_pmf(m, l, zeta_k);
        prev = ((l - 1.0) * prev + 2.0 * expectation) / (l + 2.0);
        x[static_cast<std::size_t>(l)] = prev;
    }
    return x;
}

std::vector<double> marginal_x_ie(const RateDistribution& rate, double zeta_hat_k, int l_max) {
    if (l_max < 0) throw std::invalid_argument("marginal_x_ie: l_max must be >= 0");
    if (!(zeta_hat_k >= 0.0 && zeta_hat_k <= 1.0))
        throw ConfigError("marginal_x_ie: zeta component must lie in [0, 1]");
    std::vector<double> x(static_cast<std::size_t>(l_max) + 1, 0.0);
    double prev = 0.0;
    for (int l = 0; l <= l_max; ++l) {
        double expectation = expected_poisson_pmf(rate, zeta_hat_k, l);
        prev = ((l - 1.0) * prev + 2.0 * expectation) / (l + 2.0);
        x[static_cast<std::size_t>(l)] = prev;
    }
    return x;
}

CharacteristicExponent characteristic_exponent(const std::map<int, double>& a,
                                               const std::map<int, double>& b) {
    if (a.empty()) throw ConfigError("characteristic_exponent: empty lag coefficients");
    int gcd = 0;
    for (const auto& [lag, coeff] : a) {
        if (lag < 1) throw ConfigError("characteristic_exponent: lags must be >= 1");
        if (coeff < 0.0) throw ConfigError("characteristic_exponent: lag coefficients must be >= 0");
        if (coeff > 0.0) gcd = std::gcd(gcd, lag);
    }
    if (gcd == 0) throw ConfigError("characteristic_exponent: all lag coefficients are zero");
    if (gcd != 1)
        throw ConfigError("characteristic_exponent: lag support has gcd " + std::to_string(gcd) +
                          "; the root is not identifiable");
    for (const auto& [lag, coeff] : b)
        if (lag < 1) throw ConfigError("characteristic_exponent: lags must be >= 1");

    auto value_at = [&a](double q) {
        double acc = 0.0;
        for (const auto& [lag, coeff] : a) acc += coeff * std::pow(q, lag);
        return acc;
    };

    double q;
    if (value_at(1.0) == 1.0) {
        // Exact hit; common in practice (a = {1: 1}) and worth returning
        // without bisection noise.
        q = 1.0;
    } else {
        double lo, hi;
        if (value_at(1.0) > 1.0) {
            lo = 0.0;
            hi = 1.0;
        } else {
            lo = 1.0;
            hi = 2.0;
            while (value_at(hi) < 1.0) {
                lo = hi;
                hi *= 2.0;
                if (hi > 1e300)
                    throw ConfigError("characteristic_exponent: no positive root found");
            }
        }
        for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
            double mid = 0.5 * (lo + hi);
            if (value_at(mid) < 1.0)
                lo = mid;
            else
                hi = mid;
        }
        q = 0.5 * (lo + hi);
    }

    double numerator = 0.0;
    for (const auto& [lag, coeff] : b) numerator += coeff * std::pow(q, lag);
    double denominator = 0.0;
    for (const auto& [lag, coeff] : a) denominator += lag * coeff * std::pow(q, lag);
    return {q, numerator / denominator};
}

double closed_form_ba_tree(int d) {
    if (d < 1) throw std::invalid_argument("closed_form_ba_tree: d must be >= 1");
    double x = d;
    return 4.0 / (x * (x + 1.0) * (x + 2.0));
}

} // namespace mtpa
