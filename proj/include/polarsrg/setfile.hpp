#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polarsrg/construct.hpp"

namespace polarsrg {

struct SetFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text format, one vertex per line:
//   # graph: <family> q=<q> r=<r> eps=<+1|-1> [model=split] [class=<1|2>]
//   # provenance: <text>            (optional)
//   # expected: h1=<n> h2=<n> type=<positive|negative> size=<n>   (optional)
//   (c_1, ..., c_dim)  with each c_i a low-to-high coefficient list [a0,a1,...]
std::string point_to_text(const Field& F, const Vec& p);
std::vector<std::vector<int>> parse_point_text(const std::string& line);

struct SetFile {
    GraphSpec spec;
    std::string provenance;
    std::optional<Expected> expected;
    std::vector<std::vector<std::vector<int>>> points;  // point -> coordinate -> coefficients
};

SetFile load_set_file(std::istream& in);
// Map the file's points onto graph vertices; every point must be a vertex.
VertexSet resolve_set(const SetFile& sf, const Graph& g);
void save_set_file(std::ostream& out, const Graph& g, const VertexSet& y);

}  // namespace polarsrg
