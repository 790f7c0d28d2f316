#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtpa/graph.hpp"
#include "mtpa/theory.hpp"

namespace mtpa {

// 12 significant digits, '.' decimal separator, locale-independent
// (std::to_chars). All numbers written into artifacts go through here.
std::string format_number(double value);

// Parse with std::from_chars; throws std::runtime_error on garbage.
double parse_number(const std::string& text);

// FNV-1a 64-bit checksum, as 16 hex digits.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

// Artifact metadata: rendered as one leading "# key=value key=value ..."
// line. Keys and values must not contain spaces; the map ordering makes
// the line deterministic.
using MetaMap = std::map<std::string, std::string>;

// Census CSV: "# ..." metadata, then "d_1,...,d_N,count,proportion" rows in
// degree order. cap, overflow and vertex count ride in the metadata.
std::string census_csv(const DegreeCensus& census, int type_count, MetaMap meta);

struct CensusFile {
    DegreeCensus census;
    int type_count = 0;
    MetaMap meta;
};
CensusFile parse_census_csv(const std::string& text);

// Theory CSV: same degree columns with a single "theory" value column.
std::string theory_csv(const TheoryTable& table, MetaMap meta);

struct TheoryFile {
    TheoryTable table;
    MetaMap meta;
};
TheoryFile parse_theory_csv(const std::string& text);

// Marginal CSV: "l,value" rows for l = 0..l_max.
std::string marginal_csv(const std::vector<double>& values, MetaMap meta);

// Generic two-column numeric series ("l,value"); ignores metadata lines.
struct SeriesFile {
    std::vector<std::pair<double, double>> points;
    MetaMap meta;
};
SeriesFile parse_series_csv(const std::string& text);

// Full graph state as JSON; load validates every cross-invariant.
std::string checkpoint_json(const MultiTypeGraph& graph);
MultiTypeGraph parse_checkpoint_json(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace mtpa
