#include "mtpa/config.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "mtpa/errors.hpp"

namespace mtpa {

std::int64_t ConfigValue::as_int(const std::string& key) const {
    if (!is_int()) throw ConfigError("config key '" + key + "' must be an integer");
    return std::get<std::int64_t>(data);
}

double ConfigValue::as_double(const std::string& key) const {
    if (is_int()) return static_cast<double>(std::get<std::int64_t>(data));
    if (!std::holds_alternative<double>(data))
        throw ConfigError("config key '" + key + "' must be a number");
    return std::get<double>(data);
}

bool ConfigValue::as_bool(const std::string& key) const {
    if (!std::holds_alternative<bool>(data))
        throw ConfigError("config key '" + key + "' must be a boolean");
    return std::get<bool>(data);
}

const std::string& ConfigValue::as_string(const std::string& key) const {
    if (!is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return std::get<std::string>(data);
}

const std::vector<ConfigValue>& ConfigValue::as_array(const std::string& key) const {
    if (!is_array()) throw ConfigError("config key '" + key + "' must be an array");
    return std::get<std::vector<ConfigValue>>(data);
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void advance() {
        if (text[pos] == '\n') ++line;
        ++pos;
    }
    void skip_spaces() {
        while (!done() && (peek() == ' ' || peek() == '\t')) advance();
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw ConfigError("config line " + std::to_string(line) + ": " + message);
    }
};

bool is_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

std::string parse_key(Cursor& cur) {
    std::string key;
    while (!cur.done() && is_key_char(cur.peek())) {
        key += cur.peek();
        cur.advance();
    }
    if (key.empty()) cur.fail("expected a key");
    return key;
}

ConfigValue parse_value(Cursor& cur);

ConfigValue parse_array(Cursor& cur) {
    cur.advance();  // '['
    std::vector<ConfigValue> items;
    cur.skip_spaces();
    if (!cur.done() && cur.peek() == ']') {
        cur.advance();
        return ConfigValue{std::move(items)};
    }
    for (;;) {
        cur.skip_spaces();
        items.push_back(parse_value(cur));
        cur.skip_spaces();
        if (cur.done() || cur.peek() == '\n') cur.fail("unterminated array");
        if (cur.peek() == ',') {
            cur.advance();
            continue;
        }
        if (cur.peek() == ']') {
            cur.advance();
            return ConfigValue{std::move(items)};
        }
        cur.fail("expected ',' or ']' in array");
    }
}

ConfigValue parse_value(Cursor& cur) {
    if (cur.done()) cur.fail("expected a value");
    char c = cur.peek();
    if (c == '[') return parse_array(cur);
    if (c == '"') {
        cur.advance();
        std::string s;
        while (!cur.done() && cur.peek() != '"' && cur.peek() != '\n') {
            s += cur.peek();
            cur.advance();
        }
        if (cur.done() || cur.peek() != '"') cur.fail("unterminated string");
        cur.advance();
        return ConfigValue{std::move(s)};
    }
    std::string token;
    while (!cur.done() && cur.peek() != '\n' && cur.peek() != ',' && cur.peek() != ']' &&
           cur.peek() != '#' && cur.peek() != ' ' && cur.peek() != '\t') {
        token += cur.peek();
        cur.advance();
    }
    if (token == "true") return ConfigValue{true};
    if (token == "false") return ConfigValue{false};
    if (token.find_first_of(".eE") == std::string::npos) {
        std::int64_t iv = 0;
        auto result = std::from_chars(token.data(), token.data() + token.size(), iv);
        if (result.ec == std::errc{} && result.ptr == token.data() + token.size())
            return ConfigValue{iv};
    }
    double dv = 0.0;
    auto result = std::from_chars(token.data(), token.data() + token.size(), dv);
    if (result.ec == std::errc{} && result.ptr == token.data() + token.size())
        return ConfigValue{dv};
    cur.fail("bad value '" + token + "'");
}

} // namespace

ConfigTable parse_config(const std::string& text) {
    ConfigTable table;
    Cursor cur{text};
    std::string prefix;
    while (!cur.done()) {
        cur.skip_spaces();
        if (cur.done()) break;
        char c = cur.peek();
        if (c == '\n') {
            cur.advance();
            continue;
        }
        if (c == '#') {
            while (!cur.done() && cur.peek() != '\n') cur.advance();
            continue;
        }
        if (c == '[') {
            cur.advance();
            std::string section = parse_key(cur);
            if (cur.done() || cur.peek() != ']') cur.fail("unterminated section header");
            cur.advance();
            prefix = section;
            continue;
        }
        std::string key = parse_key(cur);
        cur.skip_spaces();
        if (cur.done() || cur.peek() != '=') cur.fail("expected '=' after key '" + key + "'");
        cur.advance();
        cur.skip_spaces();
        ConfigValue value = parse_value(cur);
        cur.skip_spaces();
        if (!cur.done() && cur.peek() != '\n' && cur.peek() != '#')
            cur.fail("trailing characters after value for '" + key + "'");
        std::string full = prefix.empty() ? key : prefix + "." + key;
        if (!table.emplace(full, std::move(value)).second)
            cur.fail("duplicate key '" + full + "'");
    }
    return table;
}

namespace {

const std::set<std::string> kKnownKeys = {
    "model",          "types",          "steps",         "seed",
    "batch.kind",     "batch.value",    "batch.pmf",
    "rate.kind",      "rate.mu",        "rate.shape",    "rate.scale",
    "rate.a",         "rate.b",
    "initial.preset", "initial.edges",  "initial.vertices",
    "census.schedule", "census.cap",
};

const ConfigValue* find(const ConfigTable& table, const std::string& key) {
    auto it = table.find(key);
    return it == table.end() ? nullptr : &it->second;
}

const ConfigValue& require(const ConfigTable& table, const std::string& key) {
    const ConfigValue* v = find(table, key);
    if (!v) throw ConfigError("config is missing required key '" + key + "'");
    return *v;
}

BatchDistribution load_batch(const ConfigTable& table) {
    const std::string& kind = require(table, "batch.kind").as_string("batch.kind");
    if (kind == "constant") {
        return BatchDistribution::constant(
            static_cast<int>(require(table, "batch.value").as_int("batch.value")));
    }
    if (kind == "categorical") {
        const auto& rows = require(table, "batch.pmf").as_array("batch.pmf");
        std::vector<std::pair<int, double>> pmf;
        for (const ConfigValue& row : rows) {
            const auto& pair = row.as_array("batch.pmf entry");
            if (pair.size() != 2)
                throw ConfigError("batch.pmf entries must be [value, probability]");
            pmf.emplace_back(static_cast<int>(pair[0].as_int("batch.pmf value")),
                             pair[1].as_double("batch.pmf probability"));
        }
        return BatchDistribution::categorical(std::move(pmf));
    }
    if (kind == "tpoisson")
        return BatchDistribution::shifted_poisson(
            require(table, "batch.value").as_double("batch.value"));
    throw ConfigError("unknown batch.kind '" + kind + "'");
}

RateDistribution load_rate(const ConfigTable& table) {
    const std::string& kind = require(table, "rate.kind").as_string("rate.kind");
    if (kind == "constant")
        return RateDistribution::constant(require(table, "rate.mu").as_double("rate.mu"));
    if (kind == "gamma")
        return RateDistribution::gamma(require(table, "rate.shape").as_double("rate.shape"),
                                       require(table, "rate.scale").as_double("rate.scale"));
    if (kind == "uniform")
        return RateDistribution::uniform(require(table, "rate.a").as_double("rate.a"),
                                         require(table, "rate.b").as_double("rate.b"));
    throw ConfigError("unknown rate.kind '" + kind + "'");
}

InitialConfig load_initial(const ConfigTable& table, int type_count) {
    const ConfigValue* preset = find(table, "initial.preset");
    const ConfigValue* edges = find(table, "initial.edges");
    if (preset && edges)
        throw ConfigError("initial.preset and initial.edges are mutually exclusive");
    if (edges) {
        InitialConfig config;
        VertexId max_vertex = 0;
        for (const ConfigValue& row : edges->as_array("initial.edges")) {
            const auto& triple = row.as_array("initial.edges entry");
            if (triple.size() != 3)
                throw ConfigError("initial.edges entries must be [a, b, type]");
            std::int64_t a = triple[0].as_int("initial.edges endpoint");
            std::int64_t b = triple[1].as_int("initial.edges endpoint");
            std::int64_t t = triple[2].as_int("initial.edges type");
            if (a < 0 || b < 0) throw ConfigError("initial.edges endpoints must be >= 0");
            if (t < 1 || t > type_count)
                throw ConfigError("initial.edges types are 1-based and must be <= types");
            config.edges.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b),
                                    static_cast<int>(t - 1)});
            max_vertex = std::max({max_vertex, static_cast<VertexId>(a), static_cast<VertexId>(b)});
        }
        config.vertex_count = static_cast<int>(max_vertex) + 1;
        if (const ConfigValue* v = find(table, "initial.vertices")) {
            std::int64_t count = v->as_int("initial.vertices");
            if (count < config.vertex_count)
                throw ConfigError("initial.vertices is smaller than the largest endpoint + 1");
            config.vertex_count = static_cast<int>(count);
        }
        return config;
    }
    std::string name = preset ? preset->as_string("initial.preset") : "parallel";
    if (find(table, "initial.vertices"))
        throw ConfigError("initial.vertices requires initial.edges");
    if (name == "parallel") return InitialConfig::parallel_pair(type_count);
    if (name == "path") return InitialConfig::path(type_count);
    throw ConfigError("unknown initial.preset '" + name + "'");
}

} // namespace

LoadedSpec load_model_spec(const ConfigTable& table) {
    for (const auto& [key, value] : table)
        if (kKnownKeys.find(key) == kKnownKeys.end())
            throw ConfigError("unknown config key '" + key + "'");

    LoadedSpec loaded;
    ModelSpec& spec = loaded.spec;
    const std::string& model = require(table, "model").as_string("model");
    if (model == "ba")
        spec.kind = ModelKind::BA;
    else if (model == "ie")
        spec.kind = ModelKind::IE;
    else
        throw ConfigError("model must be \"ba\" or \"ie\"");

    spec.type_count = static_cast<int>(require(table, "types").as_int("types"));
    spec.steps = static_cast<long>(require(table, "steps").as_int("steps"));

    if (spec.kind == ModelKind::BA) {
        if (find(table, "rate.kind"))
            throw ConfigError("model \"ba\" does not take a [rate] section");
        spec.batch = load_batch(table);
    } else {
        if (find(table, "batch.kind"))
            throw ConfigError("model \"ie\" does not take a [batch] section");
        spec.rate = load_rate(table);
    }

    spec.initial = load_initial(table, spec.type_count);

    if (const ConfigValue* v = find(table, "seed")) {
        std::int64_t seed = v->as_int("seed");
        if (seed < 0) throw ConfigError("seed must be >= 0");
        spec.seed = static_cast<std::uint64_t>(seed);
        loaded.seed_present = true;
    }
    if (const ConfigValue* v = find(table, "census.cap"))
        spec.census_cap = static_cast<int>(v->as_int("census.cap"));
    if (const ConfigValue* v = find(table, "census.schedule"))
        for (const ConfigValue& s : v->as_array("census.schedule"))
            spec.census_schedule.push_back(static_cast<long>(s.as_int("census.schedule entry")));

    spec.validate();
    return loaded;
}

} // namespace mtpa
