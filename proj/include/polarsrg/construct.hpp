#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polarsrg/srg.hpp"

namespace polarsrg {

struct ConstructError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotNested : ConstructError {
    using ConstructError::ConstructError;
};
struct NotDisjoint : ConstructError {
    using ConstructError::ConstructError;
};
struct MixedTypes : ConstructError {
    using ConstructError::ConstructError;
};
struct WrongFamily : ConstructError {
    using ConstructError::ConstructError;
};
struct WrongSquareClass : ConstructError {
    using ConstructError::ConstructError;
};

enum class SetType { positive, negative };

std::string set_type_name(SetType t);

struct Expected {
    long long h1 = 0;
    long long h2 = 0;
    SetType type = SetType::positive;
    long long size = -1;  // from |Y|(k-h1) = (v-|Y|)h2; 0 marks a vacuous instance
};

struct VertexSet {
    GraphSpec graph;
    std::vector<int> indices;  // strictly increasing, within [0, v)
    std::string provenance;
    std::optional<Expected> expected;

    long long size() const { return static_cast<long long>(indices.size()); }
};

// The size forced by the counting identity for the given intersection numbers.
long long expected_size(const GraphSpec& spec, long long h1, long long h2);

// ---- Construction by perps of totally singular subspaces ----

// Canonical flag of totally singular subspaces: length r on the parabolic
// models, r-1 on the hyperbolic/elliptic ones.
std::vector<Subspace> singular_chain(const Graph& g);

// { x in X : B(x, w) = 0 for all w in W }, no expectation attached.
VertexSet perp_section(const Graph& g, const Subspace& w, std::string provenance = "");

// Perp of the canonical W_t with table expectations attached; 1 <= t <= chain length.
VertexSet construction_I(const Graph& g, int t);

Expected expected_perp_section(const GraphSpec& spec, int t);
Expected expected_complement(const GraphSpec& spec, int t);
// Difference of consecutive chain members; values derived from the
// perp-section table through the closure lemma.
Expected expected_difference(const GraphSpec& spec, int t);

// ---- Set algebra with expectation propagation ----

VertexSet complement_set(const Graph& g, const VertexSet& y);
VertexSet difference_set(const Graph& g, const VertexSet& outer, const VertexSet& inner);
VertexSet union_set(const Graph& g, const VertexSet& a, const VertexSet& b);

// ---- Construction by group orbits ----

enum class GroupKind { K, L, G };

// K needs a split parabolic build of NO_perp/NO_odd, L a split hyperbolic
// build of NO_even3/NO_even2 with eps=+1, G the NU graph.
GroupKind group_for(const GraphSpec& spec);
long long group_size(const Graph& g, GroupKind kind);

// Orbit partition of the vertex set, orbits sorted by smallest member.
std::vector<VertexSet> group_orbits(const Graph& g, GroupKind kind);

// Orbit of a single point (given as the ambient coordinate vector of any
// representative), as sorted vertex indices.
std::vector<int> orbit_of_point(const Graph& g, GroupKind kind, const Vec& point);

// The designated intriguing sets: every K-orbit (NO_perp), every L-orbit
// (NO_even3/NO_even2), the z-axis orbit plus the square-class orbit unions
// (NO_odd), or the sets M_k grouped by the power class of the first
// coordinate (NU). Expectations attached.
std::vector<VertexSet> orbit_union_sets(const Graph& g);

// ---- Construction from a nonsingular point ----

// Valid choices of y in canonical order (nonsingular, prescribed square class).
std::vector<Vec> construction_III_candidates(const Graph& g);
// { x in X : B(x,y)^2 - Q(x)Q(y) is a nonzero square }, with expectations.
VertexSet construction_III(const Graph& g, const Vec& y);
Expected expected_point_class_set(const GraphSpec& spec);

// ---- Exhaustive singular-subspace enumeration (dimension 1 or 2) ----
std::vector<Subspace> all_totally_singular_subspaces(const QuadraticForm& form, int t);

// ---- Lemma verification by enumeration ----

struct LemmaReport {
    bool ok = false;
    std::string detail;
};

// A = { sum c_i u^{q^{2i}} } equals B = ker(x -> Tr_{q^{2r}/q}(u^{q^r} x)),
// for `samples` nonzero u drawn with the given seed.
LemmaReport lemma_A_eq_B(int q, int r, int samples, std::uint64_t seed);
// gamma^{(q+1)l0} + gamma^{(q+1)l} - Tr_{q^2/q}(gamma^{l+l0+m(q-1)}) != 0
// for l != l0 in {0..q-2}, m in {0..q}; gamma a primitive element of GF(q^2).
LemmaReport lemma_nonvanishing(int q);
// Matrix closure and Q-invariance of the group K, full enumeration.
LemmaReport lemma_K_closure(int q, int r);
// Same for L.
LemmaReport lemma_L_closure(int q, int r);
// Parameter-tuple closure, h-invariance on all vectors, H-invariance of the
// generators on all vector pairs, for G.
LemmaReport lemma_G_closure(int q, int r);
// T_{ix} + T_{jx} = T_{(i+j)x} as sets, full enumeration.
LemmaReport t_translation_check(int q, int r);

}  // namespace polarsrg
