#pragma once

#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

namespace mtpa {

// Generalized degree of a vertex in an N-type multigraph: coords[k] counts
// the edge endpoints of type k+1 at the vertex. Coordinates are always >= 0
// and the vector length always equals the graph's type count.
struct GeneralizedDegree {
    std::vector<int> coords;

    GeneralizedDegree() = default;
    explicit GeneralizedDegree(std::size_t type_count) : coords(type_count, 0) {}
    GeneralizedDegree(std::initializer_list<int> init) : coords(init) {}
    explicit GeneralizedDegree(std::vector<int> c) : coords(std::move(c)) {}

    std::size_t type_count() const { return coords.size(); }
    int operator[](std::size_t k) const { return coords[k]; }
    int& operator[](std::size_t k) { return coords[k]; }

    // Total degree D = sum of all coordinates.
    int total() const { return std::accumulate(coords.begin(), coords.end(), 0); }

    auto operator<=>(const GeneralizedDegree&) const = default;

    // "d1,d2,...,dN"
    std::string to_string() const {
        std::string out;
        for (std::size_t k = 0; k < coords.size(); ++k) {
            if (k) out += ',';
            out += std::to_string(coords[k]);
        }
        return out;
    }
};

} // namespace mtpa
