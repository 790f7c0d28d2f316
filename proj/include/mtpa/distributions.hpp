#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mtpa/rng.hpp"

namespace mtpa {

// Law of the per-step batch size M_n (number of edges a BA step attaches).
// Support is contained in {1, 2, ...}.
class BatchDistribution {
public:
    enum class Kind { Constant, Categorical, ShiftedPoisson };

    static BatchDistribution constant(int m);
    // pmf entries are (value, probability); values distinct and >= 1,
    // probabilities >= 0 and summing to 1 within 1e-12.
    static BatchDistribution categorical(std::vector<std::pair<int, double>> pmf);
    // M = 1 + Poisson(rate): the truncated-Poisson batch, shifted so that
    // every batch has at least one edge.
    static BatchDistribution shifted_poisson(double rate);

    Kind kind() const { return kind_; }
    int sample(RngStream& rng) const;
    double mean() const;
    double pmf(int value) const;              // P(M = value)
    bool bounded() const;                     // finite support
    int max_value() const;                    // largest support point; throws if unbounded
    const std::vector<std::pair<int, double>>& support() const; // throws if unbounded

    // "constant:1", "categorical:1:0.5;2:0.5", "tpoisson:2.5"
    std::string describe() const;
    static BatchDistribution parse(const std::string& text);

private:
    BatchDistribution() = default;

    Kind kind_ = Kind::Constant;
    std::vector<std::pair<int, double>> pmf_;  // sorted by value; Constant/Categorical
    std::vector<double> cdf_;                  // Categorical sampling
    double rate_ = 0.0;                        // ShiftedPoisson
};

// Law of the per-step rate lambda_n (expected number of edges an IE step
// attaches). Strictly positive.
class RateDistribution {
public:
    enum class Kind { Constant, Gamma, Uniform };

    static RateDistribution constant(double mu);
    static RateDistribution gamma(double shape, double scale);
    static RateDistribution uniform(double a, double b);  // 0 < a < b

    Kind kind() const { return kind_; }
    double sample(RngStream& rng) const;
    double mean() const;

    // Same family with lambda multiplied by c > 0.
    RateDistribution scaled(double c) const;

    double param1() const { return p1_; }  // mu | shape | a
    double param2() const { return p2_; }  // -  | scale | b

    // "constant:1", "gamma:2,0.5", "uniform:0.5,1.5"
    std::string describe() const;
    static RateDistribution parse(const std::string& text);

private:
    RateDistribution() = default;

    Kind kind_ = Kind::Constant;
    double p1_ = 0.0;
    double p2_ = 0.0;
};

} // namespace mtpa
