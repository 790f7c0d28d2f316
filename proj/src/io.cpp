#include "mtpa/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mtpa {

std::string format_number(double value) {
    char buf[64];
    auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
    if (result.ec != std::errc{})
        throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, result.ptr);
}

double parse_number(const std::string& text) {
    double value = 0.0;
    auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
        throw std::runtime_error("parse_number: bad number '" + text + "'");
    return value;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string fnv1a64_hex(std::string_view data) {
    static const char digits[] = "0123456789abcdef";
    std::uint64_t hash = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

namespace {

std::string meta_line(const MetaMap& meta) {
    std::string line = "#";
    for (const auto& [key, value] : meta) {
        if (key.find(' ') != std::string::npos || value.find(' ') != std::string::npos)
            throw std::invalid_argument("metadata must not contain spaces: " + key);
        line += ' ';
        line += key;
        line += '=';
        line += value;
    }
    line += '\n';
    return line;
}

MetaMap parse_meta_line(const std::string& line) {
    MetaMap meta;
    std::istringstream in(line.substr(1));
    std::string token;
    while (in >> token) {
        std::size_t eq = token.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad metadata token '" + token + "'");
        meta[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return meta;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string degree_header(int type_count) {
    std::string header;
    for (int k = 1; k <= type_count; ++k) {
        if (k > 1) header += ',';
        header += "d_" + std::to_string(k);
    }
    return header;
}

} // namespace

std::string census_csv(const DegreeCensus& census, int type_count, MetaMap meta) {
    meta["cap"] = std::to_string(census.cap);
    meta["overflow"] = std::to_string(census.overflow);
    meta["vertices"] = std::to_string(census.vertex_total);
    meta["types"] = std::to_string(type_count);
    std::string out = meta_line(meta);
    out += degree_header(type_count) + ",count,proportion\n";
    for (const auto& [d, count] : census.counts) {
        out += d.to_string();
        out += ',' + std::to_string(count);
        out += ',' +
               format_number(static_cast<double>(count) / static_cast<double>(census.vertex_total));
        out += '\n';
    }
    return out;
}

CensusFile parse_census_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CensusFile file;
    bool have_meta = false, have_header = false;
    int value_columns = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_meta) {
                file.meta = parse_meta_line(line);
                have_meta = true;
            }
            continue;
        }
        if (!have_header) {
            auto cells = split_csv_row(line);
            int types = 0;
            while (types < static_cast<int>(cells.size()) &&
                   cells[static_cast<std::size_t>(types)] == "d_" + std::to_string(types + 1))
                ++types;
            if (types == 0)
                throw std::runtime_error("census csv: no degree columns in header");
            value_columns = static_cast<int>(cells.size()) - types;
            if (value_columns < 1 || cells[static_cast<std::size_t>(types)] != "count")
                throw std::runtime_error("census csv: expected a count column");
            file.type_count = types;
            have_header = true;
            continue;
        }
        auto cells = split_csv_row(line);
        if (cells.size() != static_cast<std::size_t>(file.type_count + value_columns))
            throw std::runtime_error("census csv: bad row width");
        GeneralizedDegree d(static_cast<std::size_t>(file.type_count));
        for (int k = 0; k < file.type_count; ++k)
            d[static_cast<std::size_t>(k)] =
                static_cast<int>(parse_number(cells[static_cast<std::size_t>(k)]));
        std::int64_t count =
            static_cast<std::int64_t>(parse_number(cells[static_cast<std::size_t>(file.type_count)]));
        file.census.counts.emplace(std::move(d), count);
    }
    if (!have_header) throw std::runtime_error("census csv: missing header row");
    auto require_meta = [&file](const char* key) {
        auto it = file.meta.find(key);
        if (it == file.meta.end())
            throw std::runtime_error(std::string("census csv: missing metadata key ") + key);
        return it->second;
    };
    file.census.cap = static_cast<int>(parse_number(require_meta("cap")));
    file.census.overflow = static_cast<std::int64_t>(parse_number(require_meta("overflow")));
    file.census.vertex_total = static_cast<std::int64_t>(parse_number(require_meta("vertices")));
    return file;
}

std::string theory_csv(const TheoryTable& table, MetaMap meta) {
    meta["cap"] = std::to_string(table.cap);
    meta["types"] = std::to_string(table.type_count);
    meta["partial_mass"] = format_number(table.partial_mass);
    if (!table.zeta.empty()) {
        std::string zeta;
        for (std::size_t k = 0; k < table.zeta.size(); ++k) {
            if (k) zeta += ';';
            zeta += format_number(table.zeta[k]);
        }
        meta["zeta"] = zeta;
    }
    std::string out = meta_line(meta);
    out += degree_header(table.type_count) + ",theory\n";
    for (const auto& [d, value] : table.values) {
        out += d.to_string();
        out += ',' + format_number(value);
        out += '\n';
    }
    return out;
}

TheoryFile parse_theory_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    TheoryFile file;
    bool have_meta = false, have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_meta) {
                file.meta = parse_meta_line(line);
                have_meta = true;
            }
            continue;
        }
        if (!have_header) {
            auto cells = split_csv_row(line);
            int types = 0;
            while (types < static_cast<int>(cells.size()) &&
                   cells[static_cast<std::size_t>(types)] == "d_" + std::to_string(types + 1))
                ++types;
            if (types == 0)
                throw std::runtime_error("theory csv: no degree columns in header");
            if (cells.size() != static_cast<std::size_t>(types) + 1 || cells.back() != "theory")
                throw std::runtime_error("theory csv: expected a single theory column");
            file.table.type_count = types;
            have_header = true;
            continue;
        }
        auto cells = split_csv_row(line);
        if (cells.size() != static_cast<std::size_t>(file.table.type_count) + 1)
            throw std::runtime_error("theory csv: bad row width");
        GeneralizedDegree d(static_cast<std::size_t>(file.table.type_count));
        for (int k = 0; k < file.table.type_count; ++k)
            d[static_cast<std::size_t>(k)] =
                static_cast<int>(parse_number(cells[static_cast<std::size_t>(k)]));
        file.table.values.emplace(std::move(d), parse_number(cells.back()));
    }
    if (!have_header) throw std::runtime_error("theory csv: missing header row");
    auto cap_it = file.meta.find("cap");
    if (cap_it == file.meta.end())
        throw std::runtime_error("theory csv: missing metadata key cap");
    file.table.cap = static_cast<int>(parse_number(cap_it->second));
    if (auto it = file.meta.find("zeta"); it != file.meta.end()) {
        std::istringstream zin(it->second);
        std::string token;
        while (std::getline(zin, token, ';')) file.table.zeta.push_back(parse_number(token));
        if (file.table.zeta.size() != static_cast<std::size_t>(file.table.type_count))
            throw std::runtime_error("theory csv: zeta metadata width disagrees with columns");
    }
    file.table.partial_mass = 0.0;
    for (const auto& [d, value] : file.table.values) file.table.partial_mass += value;
    return file;
}

std::string marginal_csv(const std::vector<double>& values, MetaMap meta) {
    std::string out = meta_line(meta);
    out += "l,value\n";
    for (std::size_t l = 0; l < values.size(); ++l) {
        out += std::to_string(l);
        out += ',' + format_number(values[l]);
        out += '\n';
    }
    return out;
}

SeriesFile parse_series_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    SeriesFile file;
    bool have_meta = false, have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_meta) {
                file.meta = parse_meta_line(line);
                have_meta = true;
            }
            continue;
        }
        if (!have_header) {
            have_header = true;  // column-name row
            continue;
        }
        auto cells = split_csv_row(line);
        if (cells.size() < 2)
            throw std::runtime_error("series csv: need two columns per row");
        file.points.emplace_back(parse_number(cells[0]), parse_number(cells[1]));
    }
    if (!have_header) throw std::runtime_error("series csv: missing header row");
    return file;
}

std::string checkpoint_json(const MultiTypeGraph& graph) {
    nlohmann::json j;
    j["format"] = "multitype-pa-checkpoint-v1";
    j["type_count"] = graph.type_count();
    j["initial_vertices"] = graph.initial_vertex_count();
    j["step"] = graph.step();
    nlohmann::json degrees = nlohmann::json::array();
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < graph.type_count(); ++k)
            row.push_back(graph.degree_of(static_cast<VertexId>(v), k));
        degrees.push_back(std::move(row));
    }
    j["vertex_degrees"] = std::move(degrees);
    nlohmann::json type_arrays = nlohmann::json::array();
    for (int k = 0; k < graph.type_count(); ++k) {
        nlohmann::json arr = nlohmann::json::array();
        for (VertexId v : graph.endpoints(k)) arr.push_back(v);
        type_arrays.push_back(std::move(arr));
    }
    j["type_endpoints"] = std::move(type_arrays);
    nlohmann::json global = nlohmann::json::array();
    for (VertexId v : graph.endpoints()) global.push_back(v);
    j["global_endpoints"] = std::move(global);
    return j.dump(2) + "\n";
}

MultiTypeGraph parse_checkpoint_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.value("format", "") != "multitype-pa-checkpoint-v1")
        throw std::runtime_error("checkpoint: unknown format tag");
    int type_count = j.at("type_count").get<int>();
    int initial_vertices = j.at("initial_vertices").get<int>();
    auto vertex_degrees = j.at("vertex_degrees").get<std::vector<std::vector<int>>>();
    auto type_endpoints = j.at("type_endpoints").get<std::vector<std::vector<VertexId>>>();
    auto global_endpoints = j.at("global_endpoints").get<std::vector<VertexId>>();
    MultiTypeGraph graph =
        MultiTypeGraph::from_parts(type_count, initial_vertices, std::move(vertex_degrees),
                                   std::move(type_endpoints), std::move(global_endpoints));
    if (j.contains("step") && j.at("step").get<long>() != graph.step())
        throw std::runtime_error("checkpoint: step count disagrees with vertex count");
    return graph;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace mtpa
