#include "mtpa/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "mtpa/errors.hpp"

namespace mtpa {

namespace {

// Locale-independent float parse for descriptor strings.
double parse_double(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == nullptr || *end != '\0' || end == s.c_str())
        throw ConfigError("bad number in distribution descriptor: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string format_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

BatchDistribution BatchDistribution::constant(int m) {
    if (m < 1) throw ConfigError("batch constant: value must be >= 1");
    BatchDistribution d;
    d.kind_ = Kind::Constant;
    d.pmf_ = {{m, 1.0}};
    return d;
}

BatchDistribution BatchDistribution::categorical(std::vector<std::pair<int, double>> pmf) {
    if (pmf.empty()) throw ConfigError("batch categorical: empty pmf");
    std::sort(pmf.begin(), pmf.end());
    double total = 0.0;
    std::set<int> seen;
    for (const auto& [value, prob] : pmf) {
        if (value < 1) throw ConfigError("batch categorical: support must be >= 1");
        if (prob < 0.0) throw ConfigError("batch categorical: negative probability");
        if (!seen.insert(value).second)
            throw ConfigError("batch categorical: duplicate value " + std::to_string(value));
        total += prob;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ConfigError("batch categorical: pmf sums to " + format_param(total) + ", not 1");
    BatchDistribution d;
    d.kind_ = Kind::Categorical;
    d.pmf_ = std::move(pmf);
    double acc = 0.0;
    for (const auto& [value, prob] : d.pmf_) {
        acc += prob;
        d.cdf_.push_back(acc);
    }
    d.cdf_.back() = 1.0;
    return d;
}

BatchDistribution BatchDistribution::shifted_poisson(double rate) {
    if (!(rate > 0.0)) throw ConfigError("batch tpoisson: rate must be positive");
    BatchDistribution d;
    d.kind_ = Kind::ShiftedPoisson;
    d.rate_ = rate;
    return d;
}

int BatchDistribution::sample(RngStream& rng) const {
    switch (kind_) {
    case Kind::Constant:
        return pmf_.front().first;
    case Kind::Categorical: {
        double u = rng.uniform01();
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) --it;
        return pmf_[static_cast<std::size_t>(it - cdf_.begin())].first;
    }
    case Kind::ShiftedPoisson:
        return 1 + static_cast<int>(rng.poisson(rate_));
    }
    throw std::logic_error("unreachable");
}

double BatchDistribution::mean() const {
    switch (kind_) {
    case Kind::Constant:
        return pmf_.front().first;
    case Kind::Categorical: {
        double m = 0.0;
        for (const auto& [value, prob] : pmf_) m += value * prob;
        return m;
    }
    case Kind::ShiftedPoisson:
        return 1.0 + rate_;
    }
    throw std::logic_error("unreachable");
}

double BatchDistribution::pmf(int value) const {
    if (value < 1) return 0.0;
    switch (kind_) {
    case Kind::Constant:
    case Kind::Categorical: {
        for (const auto& [v, prob] : pmf_)
            if (v == value) return prob;
        return 0.0;
    }
    case Kind::ShiftedPoisson: {
        int k = value - 1;
        return std::exp(-rate_ + k * std::log(rate_) - std::lgamma(k + 1.0));
    }
    }
    throw std::logic_error("unreachable");
}

bool BatchDistribution::bounded() const {
    return kind_ != Kind::ShiftedPoisson;
}

int BatchDistribution::max_value() const {
    if (!bounded())
        throw ConfigError("batch distribution has unbounded support; a finite-support "
                          "batch law is required here");
    return pmf_.back().first;
}

const std::vector<std::pair<int, double>>& BatchDistribution::support() const {
    if (!bounded())
        throw ConfigError("batch distribution has unbounded support; a finite-support "
                          "batch law is required here");
    return pmf_;
}

std::string BatchDistribution::describe() const {
    switch (kind_) {
    case Kind::Constant:
        return "constant:" + std::to_string(pmf_.front().first);
    case Kind::Categorical: {
        std::string out = "categorical:";
        for (std::size_t i = 0; i < pmf_.size(); ++i) {
            if (i) out += ';';
            out += std::to_string(pmf_[i].first) + ":" + format_param(pmf_[i].second);
        }
        return out;
    }
    case Kind::ShiftedPoisson:
        return "tpoisson:" + format_param(rate_);
    }
    throw std::logic_error("unreachable");
}

BatchDistribution BatchDistribution::parse(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("bad batch descriptor: '" + text + "'");
    std::string kind = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    if (kind == "constant") {
        double v = parse_double(rest);
        if (v != std::floor(v)) throw ConfigError("batch constant: value must be an integer");
        return constant(static_cast<int>(v));
    }
    if (kind == "categorical") {
        std::vector<std::pair<int, double>> pmf;
        for (const std::string& item : split(rest, ';')) {
            auto parts = split(item, ':');
            if (parts.size() != 2)
                throw ConfigError("bad categorical entry: '" + item + "'");
            double v = parse_double(parts[0]);
            if (v != std::floor(v)) throw ConfigError("batch categorical: non-integer value");
            pmf.emplace_back(static_cast<int>(v), parse_double(parts[1]));
        }
        return categorical(std::move(pmf));
    }
    if (kind == "tpoisson")
        return shifted_poisson(parse_double(rest));
    throw ConfigError("unknown batch kind: '" + kind + "'");
}

RateDistribution RateDistribution::constant(double mu) {
    if (!(mu > 0.0)) throw ConfigError("rate constant: mu must be positive");
    RateDistribution d;
    d.kind_ = Kind::Constant;
    d.p1_ = mu;
    return d;
}

RateDistribution RateDistribution::gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw ConfigError("rate gamma: shape and scale must be positive");
    RateDistribution d;
    d.kind_ = Kind::Gamma;
    d.p1_ = shape;
    d.p2_ = scale;
    return d;
}

RateDistribution RateDistribution::uniform(double a, double b) {
    if (!(a > 0.0) || !(b > a))
        throw ConfigError("rate uniform: need 0 < a < b");
    RateDistribution d;
    d.kind_ = Kind::Uniform;
    d.p1_ = a;
    d.p2_ = b;
    return d;
}

double RateDistribution::sample(RngStream& rng) const {
    switch (kind_) {
    case Kind::Constant: return p1_;
    case Kind::Gamma:    return rng.gamma(p1_, p2_);
    case Kind::Uniform:  return rng.uniform(p1_, p2_);
    }
    throw std::logic_error("unreachable");
}

double RateDistribution::mean() const {
    switch (kind_) {
    case Kind::Constant: return p1_;
    case Kind::Gamma:    return p1_ * p2_;
    case Kind::Uniform:  return 0.5 * (p1_ + p2_);
    }
    throw std::logic_error("unreachable");
}

RateDistribution RateDistribution::scaled(double c) const {
    if (!(c > 0.0)) throw std::invalid_argument("RateDistribution::scaled: c must be positive");
    switch (kind_) {
    case Kind::Constant: return constant(c * p1_);
    case Kind::Gamma:    return gamma(p1_, c * p2_);
    case Kind::Uniform:  return uniform(c * p1_, c * p2_);
    }
    throw std::logic_error("unreachable");
}

std::string RateDistribution::describe() const {
    switch (kind_) {
    case Kind::Constant: return "constant:" + format_param(p1_);
    case Kind::Gamma:    return "gamma:" + format_param(p1_) + "," + format_param(p2_);
    case Kind::Uniform:  return "uniform:" + format_param(p1_) + "," + format_param(p2_);
    }
    throw std::logic_error("unreachable");
}

RateDistribution RateDistribution::parse(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("bad rate descriptor: '" + text + "'");
    std::string kind = text.substr(0, colon);
    auto params = split(text.substr(colon + 1), ',');
    if (kind == "constant") {
        if (params.size() != 1) throw ConfigError("rate constant: expected one parameter");
        return constant(parse_double(params[0]));
    }
    if (kind == "gamma") {
        if (params.size() != 2) throw ConfigError("rate gamma: expected shape,scale");
        return gamma(parse_double(params[0]), parse_double(params[1]));
    }
    if (kind == "uniform") {
        if (params.size() != 2) throw ConfigError("rate uniform: expected a,b");
        return uniform(parse_double(params[0]), parse_double(params[1]));
    }
    throw ConfigError("unknown rate kind: '" + kind + "'");
}

} // namespace mtpa
