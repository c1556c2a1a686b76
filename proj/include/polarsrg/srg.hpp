#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarsrg/bitmatrix.hpp"
#include "polarsrg/geometry.hpp"

namespace polarsrg {

struct SrgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Degree check failures are a special case of the strong-regularity check.
struct NotStronglyRegular : SrgError {
    using SrgError::SrgError;
};
struct NotRegular : NotStronglyRegular {
    using NotStronglyRegular::NotStronglyRegular;
};
struct IrrationalEigenvalues : SrgError {
    using SrgError::SrgError;
};

enum class Family { NO_perp, NO_even3, NO_even2, NO_odd, NU };

// Coordinate model: the canonical forms, or the split block forms
// x y^T (+ z^2) used by the group constructions.
enum class Model { canonical, split };

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

struct GraphSpec {
    Family family;
    int q = 0;
    int r = 0;
    int eps = +1;  // ignored for NU
    Model model = Model::canonical;
    // For NO_even3: which of the two equal-size nonsingular classes is the
    // vertex set (its Q value, 1 or 2).
    int q3_class = 1;

    bool operator==(const GraphSpec&) const = default;

    std::string name() const;
};

struct BuildOptions {
    bool ignore_caps = false;
    long long max_vertices = 10000;
};

// Hard validity per family; throws UnsupportedParameters.
void validate_spec(const GraphSpec& spec);
// Soft size caps (r <= 4 for q in {2,3}, r <= 3 for q in {5,7}, NU only
// (2,3)); throws UnsupportedParameters unless opts.ignore_caps.
void check_caps(const GraphSpec& spec, const BuildOptions& opts);

struct SrgParams {
    long long v = 0, k = 0, lambda = 0, mu = 0;
    long long e_plus = 0, e_minus = 0;
    bool operator==(const SrgParams&) const = default;
};

// Closed-form (v,k,lambda,mu) with eigenvalues attached.
SrgParams expected_params(const GraphSpec& spec);
// Roots of x^2 - (lambda-mu)x - (k-mu), larger first.
std::pair<long long, long long> srg_eigenvalues(long long v, long long k, long long lambda, long long mu);

struct Graph {
    GraphSpec spec;
    const Field* field = nullptr;  // coordinate field (GF(q), or GF(q^{2r}) for NU)
    std::optional<QuadraticForm> form;
    std::optional<HermitianSpace> herm;
    std::vector<Vec> vertices;  // canonical order
    std::vector<int> index_lookup;  // packed coordinate key -> vertex index, -1 if absent
    BitMatrix adj;
    std::vector<Fel> qvals;  // Q(x) per vertex, or h_up(x) for NU

    long long v() const { return static_cast<long long>(vertices.size()); }
    std::uint64_t pack(const Vec& x) const;
    int index_of(const Vec& normalized_point) const;  // -1 if not a vertex
};

// Vertex set of the designated graph in canonical order.
std::vector<Vec> enumerate_vertices(const GraphSpec& spec);

Graph build_graph(const GraphSpec& spec, const BuildOptions& opts = {});

// Exhaustive (v,k,lambda,mu) by counting; throws NotRegular /
// NotStronglyRegular naming the first offending pair.
SrgParams measure_params(const Graph& g);

// Number of singular (resp. isotropic) points on the projective line
// through two distinct points; the geometric tangency oracle.
int tangent_points_on_line(const Graph& g, const Vec& p1, const Vec& p2);

// Exact off-diagonal complement test (the q=3 relation between NO_odd and
// NO_perp on the same vertex order).
bool is_offdiag_complement(const Graph& a, const Graph& b);

std::string to_dot(const Graph& g);

}  // namespace polarsrg
