#include "polarsrg/construct.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace polarsrg {

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

VertexSet make_set(const Graph& g, std::vector<int> indices, std::string provenance,
                   std::optional<Expected> expected) {
    std::sort(indices.begin(), indices.end());
    for (size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0 || indices[i] >= g.v()) throw ConstructError("vertex index out of range");
        if (i > 0 && indices[i] == indices[i - 1]) throw ConstructError("duplicate vertex index");
    }
    return VertexSet{g.spec, std::move(indices), std::move(provenance), std::move(expected)};
}

SetType perp_section_type(Family f, int eps) {
    switch (f) {
        case Family::NO_perp:
        case Family::NO_even3:
            return eps == 1 ? SetType::negative : SetType::positive;
        case Family::NO_even2:
        case Family::NO_odd:
            return eps == 1 ? SetType::positive : SetType::negative;
        default:
            throw WrongFamily("perp sections need a quadratic-form graph");
    }
}

int chain_length(const GraphSpec& spec) {
    switch (spec.family) {
        case Family::NO_perp:
        case Family::NO_odd:
            return spec.r;
        case Family::NO_even3:
        case Family::NO_even2:
            return spec.r - 1;
        default:
            throw WrongFamily("no singular chain on the hermitian graph");
    }
}

}  // namespace

std::string set_type_name(SetType t) { return t == SetType::positive ? "positive" : "negative"; }

long long expected_size(const GraphSpec& spec, long long h1, long long h2) {
    SrgParams p = expected_params(spec);
    long long den = p.k - h1 + h2;
    if (den == 0) throw ConstructError("counting identity is degenerate");
    long long num = p.v * h2;
    if (num % den != 0) throw ConstructError("counting identity gives a non-integer size");
    return num / den;
}

std::vector<Subspace> singular_chain(const Graph& g) {
    if (!g.form) throw WrongFamily("no singular chain on the hermitian graph");
    const Field& F = g.form->field();
    int dim = g.form->dim();
    int len = chain_length(g.spec);
    bool interleaved = g.form->kind() == FormKind::hyperbolic || g.form->kind() == FormKind::elliptic;
    std::vector<Subspace> chain;
    std::vector<Vec> basis;
    for (int t = 1; t <= len; ++t) {
        int coord = interleaved ? 2 * (t - 1) : t - 1;
        basis.push_back(unit_vector(dim, coord));
        Subspace s = make_subspace(F, basis);
        if (!is_totally_singular(*g.form, s)) throw ConstructError("canonical flag member is not totally singular");
        chain.push_back(std::move(s));
    }
    return chain;
}

VertexSet perp_section(const Graph& g, const Subspace& w, std::string provenance) {
    if (!g.form) throw WrongFamily("perp sections need a quadratic-form graph");
    const Field& F = g.form->field();
    std::vector<Vec> rows;
    for (const Vec& b : w.basis) rows.push_back(g.form->polar_row(b));
    std::vector<int> indices;
    for (long long i = 0; i < g.v(); ++i) {
        bool in = true;
        for (const Vec& row : rows) {
            if (vec_dot(F, row, g.vertices[i]) != F.zero()) {
                in = false;
                break;
            }
        }
        if (in) indices.push_back(static_cast<int>(i));
    }
    if (provenance.empty()) provenance = "perp-section dim=" + std::to_string(w.dim());
    return make_set(g, std::move(indices), std::move(provenance), std::nullopt);
}

Expected expected_perp_section(const GraphSpec& spec, int t) {
    long long q = spec.q, e = spec.eps;
    int r = spec.r;
    if (t < 1 || t > chain_length(spec)) throw UnsupportedParameters("t outside the chain bound");
    Expected out;
    switch (spec.family) {
        case Family::NO_perp:
            out.h1 = ipow(q, r - 1) * (ipow(q, r - t) - e) / 2;
            out.h2 = ipow(q, r - 1) * (ipow(q, r - t) + e) / 2;
            break;
        case Family::NO_even3:
            out.h1 = ipow(3, r - 1) * (ipow(3, r - t - 1) - e) / 2;
            out.h2 = ipow(3, r - 2) * (ipow(3, r - t) - e) / 2;
            break;
        case Family::NO_even2:
            out.h1 = ipow(2, 2 * r - t - 2) - 1;
            out.h2 = ipow(2, 2 * r - t - 2) - e * ipow(2, r - 2);
            break;
        case Family::NO_odd:
            out.h1 = ipow(q, r - 1) * (ipow(q, r - t) + e * q - e) - 1;
            out.h2 = ipow(q, r - 1) * (ipow(q, r - t) + e);
            break;
        default:
            throw WrongFamily("no perp-section table row for this family");
    }
    out.type = perp_section_type(spec.family, spec.eps);
    out.size = expected_size(spec, out.h1, out.h2);
    return out;
}

Expected expected_complement(const GraphSpec& spec, int t) {
    long long q = spec.q, e = spec.eps;
    int r = spec.r;
    if (t < 1 || t > chain_length(spec)) throw UnsupportedParameters("t outside the chain bound");
    Expected out;
    switch (spec.family) {
        case Family::NO_perp:
            out.h1 = ipow(q, r - 1) * (ipow(q, r) - ipow(q, r - t) - 2 * e) / 2;
            out.h2 = ipow(q, 2 * r - t - 1) * (ipow(q, t) - 1) / 2;
            break;
        case Family::NO_even3:
            out.h1 = ipow(3, r - 2) * (ipow(3, r) - ipow(3, r - t) - 2 * e) / 2;
            out.h2 = ipow(3, 2 * r - t - 2) * (ipow(3, t) - 1) / 2;
            break;
        case Family::NO_even2:
            out.h1 = ipow(2, 2 * r - t - 2) * (ipow(2, t) - 1) + e * ipow(2, r - 2) - 1;
            out.h2 = ipow(2, 2 * r - t - 2) * (ipow(2, t) - 1);
            break;
        case Family::NO_odd:
            out.h1 = ipow(q, 2 * r - t - 1) * (ipow(q, t) - 1) + e * ipow(q, r - 1) * (q - 2) - 1;
            out.h2 = ipow(q, 2 * r - t - 1) * (ipow(q, t) - 1);
            break;
        default:
            throw WrongFamily("no complement table row for this family");
    }
    out.type = perp_section_type(spec.family, spec.eps);
    out.size = expected_size(spec, out.h1, out.h2);
    return out;
}

Expected expected_difference(const GraphSpec& spec, int t) {
    if (t < 1 || t + 1 > chain_length(spec)) throw UnsupportedParameters("t outside the chain bound");
    Expected outer = expected_perp_section(spec, t);
    Expected inner = expected_perp_section(spec, t + 1);
    Expected out;
    out.h1 = outer.h1 - inner.h2;
    out.h2 = outer.h2 - inner.h2;
    out.type = outer.type;
    out.size = expected_size(spec, out.h1, out.h2);
    return out;
}

VertexSet construction_I(const Graph& g, int t) {
    std::vector<Subspace> chain = singular_chain(g);
    if (t < 1 || t > static_cast<int>(chain.size()))
        throw UnsupportedParameters("t=" + std::to_string(t) + " outside the chain bound " +
                                    std::to_string(chain.size()));
    VertexSet y = perp_section(g, chain[t - 1], "construction-I t=" + std::to_string(t));
    y.expected = expected_perp_section(g.spec, t);
    return y;
}

VertexSet complement_set(const Graph& g, const VertexSet& y) {
    if (!(y.graph == g.spec)) throw ConstructError("set belongs to a different graph");
    std::vector<int> indices;
    size_t pos = 0;
    for (long long i = 0; i < g.v(); ++i) {
        if (pos < y.indices.size() && y.indices[pos] == i) {
            ++pos;
        } else {
            indices.push_back(static_cast<int>(i));
        }
    }
    std::optional<Expected> exp;
    if (y.provenance.rfind("construction-I t=", 0) == 0) {
        int t = std::stoi(y.provenance.substr(std::string("construction-I t=").size()));
        exp = expected_complement(g.spec, t);
    } else if (y.expected) {
        SrgParams p = expected_params(g.spec);
        Expected e;
        e.h1 = p.k - y.expected->h2;
        e.h2 = p.k - y.expected->h1;
        e.type = y.expected->type;
        e.size = p.v - y.expected->size;
        exp = e;
    }
    return make_set(g, std::move(indices), "complement of {" + y.provenance + "}", std::move(exp));
}

VertexSet difference_set(const Graph& g, const VertexSet& outer, const VertexSet& inner) {
    if (!(outer.graph == g.spec) || !(inner.graph == g.spec)) throw ConstructError("set belongs to a different graph");
    if (!std::includes(outer.indices.begin(), outer.indices.end(), inner.indices.begin(), inner.indices.end()))
        throw NotNested("inner set is not contained in the outer set");
    std::vector<int> indices;
    std::set_difference(outer.indices.begin(), outer.indices.end(), inner.indices.begin(), inner.indices.end(),
                        std::back_inserter(indices));
    std::optional<Expected> exp;
    if (outer.expected && inner.expected) {
        if (outer.expected->type != inner.expected->type) throw MixedTypes("difference of sets of opposite type");
        Expected e;
        e.h1 = outer.expected->h1 - inner.expected->h2;
        e.h2 = outer.expected->h2 - inner.expected->h2;
        e.type = outer.expected->type;
        e.size = outer.expected->size - inner.expected->size;
        exp = e;
    }
    return make_set(g, std::move(indices), "{" + outer.provenance + "} minus {" + inner.provenance + "}",
                    std::move(exp));
}

VertexSet union_set(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (!(a.graph == g.spec) || !(b.graph == g.spec)) throw ConstructError("set belongs to a different graph");
    std::vector<int> common;
    std::set_intersection(a.indices.begin(), a.indices.end(), b.indices.begin(), b.indices.end(),
                          std::back_inserter(common));
    if (!common.empty()) throw NotDisjoint("operands share " + std::to_string(common.size()) + " vertices");
    std::vector<int> indices;
    std::set_union(a.indices.begin(), a.indices.end(), b.indices.begin(), b.indices.end(),
                   std::back_inserter(indices));
    std::optional<Expected> exp;
    if (a.expected && b.expected) {
        if (a.expected->type != b.expected->type) throw MixedTypes("union of sets of opposite type");
        Expected e;
        e.h1 = a.expected->h1 + b.expected->h2;
        e.h2 = a.expected->h2 + b.expected->h2;
        e.type = a.expected->type;
        e.size = a.expected->size + b.expected->size;
        exp = e;
    }
    return make_set(g, std::move(indices), "{" + a.provenance + "} union {" + b.provenance + "}", std::move(exp));
}

GroupKind group_for(const GraphSpec& spec) {
    switch (spec.family) {
        case Family::NO_perp:
        case Family::NO_odd:
            return GroupKind::K;
        case Family::NO_even3:
        case Family::NO_even2:
            return GroupKind::L;
        case Family::NU:
            return GroupKind::G;
    }
    throw WrongFamily("no group action for this family");
}

namespace {

// ---- K = { A_{u,S} } acting on the split parabolic model ----

struct KElements {
    std::vector<Vec> us;                     // each of length r
    std::vector<std::vector<Vec>> ss;        // alternating r x r matrices
    Fel a;                                   // 4a + 1 = 0
};

std::vector<std::vector<Vec>> alternating_matrices(const Field& F, int r) {
    int m = r * (r - 1) / 2;
    long long total = 1;
    for (int i = 0; i < m; ++i) total *= F.order();
    std::vector<std::vector<Vec>> out;
    out.reserve(total);
    std::vector<int> entry(m, 0);
    while (true) {
        std::vector<Vec> S(r, Vec(r, 0));
        int pos = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) {
                S[i][j] = static_cast<Fel>(entry[pos]);
                S[j][i] = F.neg(S[i][j]);
                ++pos;
            }
        out.push_back(std::move(S));
        int i = 0;
        while (i < m) {
            if (entry[i] + 1 < F.order()) {
                ++entry[i];
                break;
            }
            entry[i] = 0;
            ++i;
        }
        if (i == m) break;
        if (m == 0) break;
    }
    if (m == 0) out.resize(1, std::vector<Vec>(r, Vec(r, 0)));
    return out;
}

std::vector<Vec> all_vectors(const Field& F, int len) {
    std::vector<Vec> out;
    Vec v(len, 0);
    while (true) {
        out.push_back(v);
        int i = 0;
        while (i < len) {
            if (v[i] + 1 < F.order()) {
                v[i] = static_cast<Fel>(v[i] + 1);
                break;
            }
            v[i] = 0;
            ++i;
        }
        if (i == len) break;
    }
    return out;
}

Fel k_constant(const Field& F) { return F.neg(F.inv(F.scalar(4))); }

// (x,y,z) -> (x, x(a u^T u + S) + y + z u, 2a x u^T + z), layout [x|y|z].
Vec apply_K(const Field& F, int r, Fel a, const Vec& u, const std::vector<Vec>& S, const Vec& p) {
    Vec out(2 * r + 1);
    Fel xu = F.zero();
    for (int i = 0; i < r; ++i) xu = F.add(xu, F.mul(p[i], u[i]));
    for (int i = 0; i < r; ++i) out[i] = p[i];
    Fel axu = F.mul(a, xu);
    for (int j = 0; j < r; ++j) {
        Fel acc = F.add(p[r + j], F.mul(axu, u[j]));
        for (int i = 0; i < r; ++i) acc = F.add(acc, F.mul(p[i], S[i][j]));
        acc = F.add(acc, F.mul(p[2 * r], u[j]));
        out[r + j] = acc;
    }
    out[2 * r] = F.add(F.mul(F.scalar(2), F.mul(axu, F.one())), p[2 * r]);
    return out;
}

// ---- L = { (x,y) -> (x, xS + y) } on the split hyperbolic model ----

Vec apply_L(const Field& F, int r, const std::vector<Vec>& S, const Vec& p) {
    Vec out(2 * r);
    for (int i = 0; i < r; ++i) out[i] = p[i];
    for (int j = 0; j < r; ++j) {
        Fel acc = p[r + j];
        for (int i = 0; i < r; ++i) acc = F.add(acc, F.mul(p[i], S[i][j]));
        out[r + j] = acc;
    }
    return out;
}

// ---- G = { (u,v) -> (u, v + sum c_i u^{q^{2i}}) } on the hermitian pairs ----

bool g_member(const HermitianSpace& hs, const std::vector<Fel>& c) {
    const Field& F = hs.big();
    int r = hs.r();
    if (hs.frob_q(c[0], r) != c[0]) return false;  // c_0 in F_{q^r}
    for (int i = 1; i < r; ++i) {
        if (F.add(c[i], hs.frob_q(c[r - i], (r + 2 * i) % (2 * r))) != F.zero()) return false;
    }
    return true;
}

std::vector<std::vector<Fel>> enumerate_G(const HermitianSpace& hs) {
    const Field& F = hs.big();
    int r = hs.r();
    std::vector<Fel> subfield_qr;
    for (int x = 0; x < F.order(); ++x)
        if (hs.frob_q(static_cast<Fel>(x), r) == static_cast<Fel>(x)) subfield_qr.push_back(static_cast<Fel>(x));

    int free = (r - 1) / 2;
    std::vector<std::vector<Fel>> out;
    std::vector<int> idx(free, 0);
    for (Fel c0 : subfield_qr) {
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<Fel> c(r, 0);
            c[0] = c0;
            for (int i = 1; i <= free; ++i) {
                c[i] = static_cast<Fel>(idx[i - 1]);
                c[r - i] = F.neg(hs.frob_q(c[i], r - 2 * i));
            }
            out.push_back(std::move(c));
            int i = 0;
            while (i < free) {
                if (idx[i] + 1 < F.order()) {
                    ++idx[i];
                    break;
                }
                idx[i] = 0;
                ++i;
            }
            if (i == free) break;
        }
        if (free == 0) {
            // Only c0 varies.
        }
    }
    return out;
}

Vec apply_G(const HermitianSpace& hs, const std::vector<Fel>& c, const Vec& p) {
    const Field& F = hs.big();
    Fel shift = F.zero();
    for (int i = 0; i < hs.r(); ++i) shift = F.add(shift, F.mul(c[i], hs.frob_q(p[0], 2 * i)));
    return Vec{p[0], F.add(p[1], shift)};
}

// An additive generating set: a GF(p)-basis of the c_0 subfield plus, for
// each free index, the basis monomials of the big field.
std::vector<std::vector<Fel>> g_generators(const HermitianSpace& hs) {
    const Field& F = hs.big();
    const Field& F2 = Field::get(F.characteristic(), 1);
    int r = hs.r();
    std::vector<std::vector<Fel>> gens;
    std::vector<Vec> indep;
    for (int x = 1; x < F.order(); ++x) {
        if (hs.frob_q(static_cast<Fel>(x), r) != static_cast<Fel>(x)) continue;
        std::vector<int> co = F.coeffs(static_cast<Fel>(x));
        Vec row(co.begin(), co.end());
        std::vector<Vec> probe = indep;
        probe.push_back(row);
        if (echelonize(F2, probe) == static_cast<int>(indep.size()) + 1) {
            indep.push_back(row);
            std::vector<Fel> c(r, 0);
            c[0] = static_cast<Fel>(x);
            gens.push_back(std::move(c));
        }
    }
    for (int i = 1; i <= (r - 1) / 2; ++i)
        for (int j = 0; j < F.degree(); ++j) {
            std::vector<int> mono(j + 1, 0);
            mono[j] = 1;
            std::vector<Fel> c(r, 0);
            c[i] = F.from_coeffs(mono);
            c[r - i] = F.neg(hs.frob_q(c[i], r - 2 * i));
            gens.push_back(std::move(c));
        }
    return gens;
}

}  // namespace

long long group_size(const Graph& g, GroupKind kind) {
    switch (kind) {
        case GroupKind::K:
            return ipow(g.spec.q, g.spec.r) * ipow(g.spec.q, g.spec.r * (g.spec.r - 1) / 2);
        case GroupKind::L:
            return ipow(g.spec.q, g.spec.r * (g.spec.r - 1) / 2);
        case GroupKind::G:
            return ipow(g.spec.q, g.spec.r) * ipow(ipow(g.spec.q, 2 * g.spec.r), (g.spec.r - 1) / 2);
    }
    return 0;
}

std::vector<int> orbit_of_point(const Graph& g, GroupKind kind, const Vec& point) {
    const Field& F = *g.field;
    std::set<int> members;
    auto add = [&](Vec img) {
        Vec norm = g.spec.family == Family::NU ? g.herm->normalize_point(std::move(img))
                                               : normalize_point(F, std::move(img));
        int idx = g.index_of(norm);
        if (idx < 0) throw ConstructError("group image left the vertex set");
        members.insert(idx);
    };
    if (kind == GroupKind::K) {
        if ((g.spec.family != Family::NO_perp && g.spec.family != Family::NO_odd) || g.spec.model != Model::split)
            throw WrongFamily("K acts on the split parabolic builds");
        int r = g.spec.r;
        Fel a = k_constant(F);
        auto ss = alternating_matrices(F, r);
        for (const Vec& u : all_vectors(F, r))
            for (const auto& S : ss) add(apply_K(F, r, a, u, S, point));
    } else if (kind == GroupKind::L) {
        if ((g.spec.family != Family::NO_even3 && g.spec.family != Family::NO_even2) ||
            g.spec.model != Model::split || g.spec.eps != 1)
            throw WrongFamily("L acts on the split hyperbolic builds");
        for (const auto& S : alternating_matrices(F, g.spec.r)) add(apply_L(F, g.spec.r, S, point));
    } else {
        if (g.spec.family != Family::NU) throw WrongFamily("G acts on the hermitian graph");
        for (const auto& c : enumerate_G(*g.herm)) add(apply_G(*g.herm, c, point));
    }
    return std::vector<int>(members.begin(), members.end());
}

std::vector<VertexSet> group_orbits(const Graph& g, GroupKind kind) {
    long long v = g.v();
    std::vector<bool> seen(v, false);
    std::vector<VertexSet> orbits;
    std::string label = kind == GroupKind::K ? "K" : kind == GroupKind::L ? "L" : "G";
    for (long long i = 0; i < v; ++i) {
        if (seen[i]) continue;
        std::vector<int> members = orbit_of_point(g, kind, g.vertices[i]);
        for (int m : members) seen[m] = true;
        orbits.push_back(make_set(g, std::move(members), label + "-orbit " + std::to_string(orbits.size()),
                                  std::nullopt));
    }
    return orbits;
}

std::vector<VertexSet> orbit_union_sets(const Graph& g) {
    const GraphSpec& spec = g.spec;
    long long q = spec.q;
    int r = spec.r;
    const Field& F = *g.field;

    if (spec.family == Family::NO_perp) {
        std::vector<VertexSet> orbits = group_orbits(g, GroupKind::K);
        Expected e;
        e.h1 = (1 - spec.eps) * ipow(q, r - 1);
        e.h2 = ipow(q, r - 1);
        e.type = spec.eps == 1 ? SetType::negative : SetType::positive;
        e.size = ipow(q, r);
        for (VertexSet& o : orbits) o.expected = e;
        return orbits;
    }

    if (spec.family == Family::NO_even3 || spec.family == Family::NO_even2) {
        std::vector<VertexSet> orbits = group_orbits(g, GroupKind::L);
        Expected e;
        if (spec.family == Family::NO_even3) {
            e.h1 = 0;
            e.h2 = ipow(3, r - 2);
            e.type = SetType::negative;
        } else {
            e.h1 = ipow(2, r - 1) - 1;
            e.h2 = ipow(2, r - 2);
            e.type = SetType::positive;
        }
        e.size = ipow(q, r - 1);
        for (VertexSet& o : orbits) o.expected = e;
        return orbits;
    }

    if (spec.family == Family::NO_odd) {
        std::vector<VertexSet> orbits = group_orbits(g, GroupKind::K);
        std::vector<VertexSet> out;
        // Group the x != 0 orbits by the projective class of their first
        // block; the x = 0 orbit (eps = +1 only) stands alone.
        std::map<std::uint64_t, std::vector<const VertexSet*>> by_class;
        const VertexSet* z_orbit = nullptr;
        for (const VertexSet& o : orbits) {
            const Vec& rep = g.vertices[o.indices.front()];
            Vec xblock(rep.begin(), rep.begin() + r);
            if (vec_is_zero(xblock)) {
                z_orbit = &o;
                continue;
            }
            Vec cls = normalize_point(F, xblock);
            std::uint64_t key = 0;
            for (Fel c : cls) key = key * F.order() + c;
            by_class[key].push_back(&o);
        }
        if (spec.eps == 1) {
            if (!z_orbit) throw ConstructError("missing the x=0 orbit");
            VertexSet zs = *z_orbit;
            Expected e;
            e.h1 = ipow(q, r) - 1;
            e.h2 = 2 * ipow(q, r - 1);
            e.type = SetType::positive;
            e.size = ipow(q, r);
            zs.expected = e;
            zs.provenance = "K-orbit of the z-axis";
            out.push_back(std::move(zs));
        }
        // Deterministic order: by smallest member over the union.
        std::vector<std::vector<const VertexSet*>> groups;
        for (auto& [key, members] : by_class) groups.push_back(members);
        std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
            return a.front()->indices.front() < b.front()->indices.front();
        });
        int gi = 0;
        for (const auto& members : groups) {
            if (static_cast<long long>(members.size()) != (q - 1) / 2)
                throw ConstructError("unexpected orbit count in a square-class union");
            std::vector<int> indices;
            for (const VertexSet* o : members) indices.insert(indices.end(), o->indices.begin(), o->indices.end());
            Expected e;
            if (spec.eps == 1) {
                e.h1 = (2 * q - 3) * ipow(q, r - 1) - 1;
            } else {
                e.h1 = ipow(q, r - 1) - 1;
            }
            e.h2 = (q - 1) * ipow(q, r - 1);
            e.type = spec.eps == 1 ? SetType::positive : SetType::negative;
            e.size = ipow(q, r) * (q - 1) / 2;
            out.push_back(make_set(g, std::move(indices),
                                   "K-orbit union " + std::to_string(gi) +
                                       (spec.eps == 1 ? " (square classes)" : " (nonsquare classes)"),
                                   e));
            ++gi;
        }
        return out;
    }

    if (spec.family == Family::NU) {
        std::vector<VertexSet> orbits = group_orbits(g, GroupKind::G);
        // Key each orbit by the power class of its first coordinate.
        Fel omega = F.primitive();
        std::vector<int> dlog(F.order(), -1);
        Fel acc = F.one();
        for (int i = 0; i < F.order() - 1; ++i) {
            dlog[acc] = i;
            acc = F.mul(acc, omega);
        }
        long long e_period = (ipow(q, 2 * r) - 1) / (q * q - 1);
        std::map<long long, std::vector<const VertexSet*>> by_k;
        for (const VertexSet& o : orbits) {
            Fel u = g.vertices[o.indices.front()][0];
            if (u == F.zero()) throw ConstructError("vertex with zero first coordinate");
            by_k[dlog[u] % e_period].push_back(&o);
        }
        std::vector<VertexSet> out;
        for (long long k = 0; k < e_period; ++k) {
            auto it = by_k.find(k);
            if (it == by_k.end() || static_cast<long long>(it->second.size()) != q - 1)
                throw ConstructError("expected q-1 orbits per power class");
            std::vector<int> indices;
            for (const VertexSet* o : it->second) indices.insert(indices.end(), o->indices.begin(), o->indices.end());
            Expected e;
            e.h1 = ipow(q, 2 * (r - 1)) - 1;
            e.h2 = ipow(q, 2 * r - 3) * (q * q - 1);
            e.type = SetType::negative;
            e.size = (q - 1) * ipow(q, 2 * r - 1);
            out.push_back(make_set(g, std::move(indices), "M_k k=" + std::to_string(k), e));
        }
        return out;
    }
    throw WrongFamily("no designated orbit sets for this family");
}

std::vector<Vec> construction_III_candidates(const Graph& g) {
    const GraphSpec& spec = g.spec;
    if (!g.form) throw WrongFamily("the nonsingular-point construction needs a quadratic form");
    const Field& F = *g.field;
    SquareClass want;
    if (spec.family == Family::NO_perp) {
        want = spec.eps == 1 ? SquareClass::nonsquare : SquareClass::square;
    } else if (spec.family == Family::NO_even3 && spec.eps == 1) {
        if (spec.q3_class != 1) throw WrongFamily("the nonsingular-point construction expects the Q=1 vertex class");
        want = SquareClass::nonsquare;
    } else {
        throw WrongFamily("the nonsingular-point construction covers NO_perp and NO_even3 with eps=+1");
    }
    std::vector<Vec> out;
    for (Vec& p : enumerate_projective_points(F, g.form->dim()))
        if (F.square_class(g.form->eval(p)) == want) out.push_back(std::move(p));
    return out;
}

VertexSet construction_III(const Graph& g, const Vec& y) {
    const GraphSpec& spec = g.spec;
    if (!g.form) throw WrongFamily("the nonsingular-point construction needs a quadratic form");
    const Field& F = *g.field;
    SquareClass want;
    if (spec.family == Family::NO_perp) {
        want = spec.eps == 1 ? SquareClass::nonsquare : SquareClass::square;
    } else if (spec.family == Family::NO_even3 && spec.eps == 1 && spec.q3_class == 1) {
        want = SquareClass::nonsquare;
    } else {
        throw WrongFamily("the nonsingular-point construction covers NO_perp and NO_even3 with eps=+1");
    }
    Fel qy = g.form->eval(y);
    if (F.square_class(qy) != want)
        throw WrongSquareClass("Q(y) has the wrong square class for this family");
    Vec row = g.form->polar_row(y);
    std::vector<int> indices;
    for (long long i = 0; i < g.v(); ++i) {
        Fel b = vec_dot(F, row, g.vertices[i]);
        Fel val = F.sub(F.mul(b, b), F.mul(g.qvals[i], qy));
        if (F.square_class(val) == SquareClass::square) indices.push_back(static_cast<int>(i));
    }
    std::ostringstream prov;
    prov << "construction-III y=(";
    for (size_t c = 0; c < y.size(); ++c) {
        if (c) prov << ",";
        prov << F.to_string(y[c]);
    }
    prov << ")";
    VertexSet out = make_set(g, std::move(indices), prov.str(), expected_point_class_set(spec));
    return out;
}

Expected expected_point_class_set(const GraphSpec& spec) {
    long long q = spec.q;
    int r = spec.r;
    Expected out;
    if (spec.family == Family::NO_perp) {
        long long half = (q - 1) / 2;
        long long plus = ipow(q, r - 1) * (ipow(q, r - 1) + 1) / 2;
        long long minus = ipow(q, r - 1) * (ipow(q, r - 1) - 1) / 2;
        if (spec.eps == 1) {
            out.h1 = half * plus;
            out.h2 = half * minus;
            out.type = SetType::positive;
        } else {
            out.h1 = half * minus;
            out.h2 = half * plus;
            out.type = SetType::negative;
        }
    } else if (spec.family == Family::NO_even3 && spec.eps == 1) {
        out.h1 = ipow(3, r - 2) * (ipow(3, r - 1) - 1) / 2;
        out.h2 = ipow(3, r - 2) * (ipow(3, r - 1) + 1) / 2;
        out.type = SetType::negative;
    } else {
        throw WrongFamily("no nonsingular-point table row for this family");
    }
    out.size = expected_size(spec, out.h1, out.h2);
    return out;
}

std::vector<Subspace> all_totally_singular_subspaces(const QuadraticForm& form, int t) {
    const Field& F = form.field();
    std::vector<Vec> singular;
    for (Vec& p : enumerate_projective_points(F, form.dim()))
        if (form.eval(p) == F.zero()) singular.push_back(std::move(p));
    if (t == 1) {
        std::vector<Subspace> out;
        for (const Vec& p : singular) out.push_back(Subspace{{p}});
        return out;
    }
    if (t != 2) throw ConstructError("only dimensions 1 and 2 are enumerated");
    std::map<std::vector<Fel>, Subspace> dedup;
    for (size_t i = 0; i < singular.size(); ++i)
        for (size_t j = i + 1; j < singular.size(); ++j) {
            if (form.polar(singular[i], singular[j]) != F.zero()) continue;
            // Q(a p + b q) = a^2 Q(p) + b^2 Q(q) + ab B(p,q) = 0, so the span
            // is totally singular; canonicalize by echelon basis.
            std::vector<Vec> rows = {singular[i], singular[j]};
            echelonize(F, rows);
            std::vector<Fel> key;
            for (const Vec& row : rows) key.insert(key.end(), row.begin(), row.end());
            dedup.emplace(std::move(key), Subspace{{singular[i], singular[j]}});
        }
    std::vector<Subspace> out;
    for (auto& [key, sub] : dedup) out.push_back(std::move(sub));
    return out;
}

// ---- Lemma checks ----

LemmaReport lemma_A_eq_B(int q, int r, int samples, std::uint64_t seed) {
    HermitianSpace hs(q, r);
    const Field& F = hs.big();
    auto elems = enumerate_G(hs);
    std::mt19937_64 rng(seed);
    std::ostringstream detail;
    long long expect_size = 1;
    for (int i = 0; i < 2 * r - 1; ++i) expect_size *= q;
    for (int s = 0; s < samples; ++s) {
        Fel u = static_cast<Fel>(1 + rng() % (F.order() - 1));
        std::set<Fel> A;
        for (const auto& c : elems) {
            Fel acc = F.zero();
            for (int i = 0; i < r; ++i) acc = F.add(acc, F.mul(c[i], hs.frob_q(u, 2 * i)));
            A.insert(acc);
        }
        std::set<Fel> B;
        Fel uq = hs.frob_q(u, r);
        for (int x = 0; x < F.order(); ++x) {
            if (F.subfield_trace(F.mul(uq, static_cast<Fel>(x)), hs.base().degree()) == F.zero())
                B.insert(static_cast<Fel>(x));
        }
        if (A != B || static_cast<long long>(A.size()) != expect_size) {
            detail << "mismatch at u=" << F.to_string(u) << " |A|=" << A.size() << " |B|=" << B.size();
            return {false, detail.str()};
        }
    }
    detail << samples << " sampled u, |A|=|B|=" << expect_size << " each";
    return {true, detail.str()};
}

LemmaReport lemma_nonvanishing(int q) {
    if (q == 2) return {true, "vacuous at q=2 (no pair l != l0)"};
    int k0 = 0;
    for (int t = q; t > 1; t >>= 1) {
        if (t % 2 != 0) throw UnsupportedParameters("q must be a power of 2");
        ++k0;
    }
    const Field& F = Field::get(2, 2 * k0);  // GF(q^2)
    Fel gamma = F.primitive();
    int checked = 0;
    for (int l0 = 0; l0 <= q - 2; ++l0)
        for (int l = 0; l <= q - 2; ++l) {
            if (l == l0) continue;
            for (int m = 0; m <= q; ++m) {
                Fel a = F.pow(gamma, static_cast<std::uint64_t>((q + 1) * l0));
                Fel b = F.pow(gamma, static_cast<std::uint64_t>((q + 1) * l));
                Fel inner = F.pow(gamma, static_cast<std::uint64_t>(l + l0 + m * (q - 1)));
                Fel tr = F.subfield_trace(inner, k0);
                Fel val = F.sub(F.add(a, b), tr);
                ++checked;
                if (val == F.zero())
                    return {false, "vanishes at l0=" + std::to_string(l0) + " l=" + std::to_string(l) +
                                       " m=" + std::to_string(m)};
            }
        }
    return {true, std::to_string(checked) + " combinations nonzero"};
}

namespace {

std::vector<Vec> k_matrix(const Field& F, int r, Fel a, const Vec& u, const std::vector<Vec>& S) {
    int d = 2 * r + 1;
    std::vector<Vec> M(d, Vec(d, 0));
    for (int i = 0; i < r; ++i) M[i][i] = F.one();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) M[i][r + j] = F.add(F.mul(a, F.mul(u[i], u[j])), S[i][j]);
    for (int i = 0; i < r; ++i) M[i][2 * r] = F.mul(F.scalar(2), F.mul(a, u[i]));
    for (int i = 0; i < r; ++i) M[r + i][r + i] = F.one();
    for (int j = 0; j < r; ++j) M[2 * r][r + j] = u[j];
    M[2 * r][2 * r] = F.one();
    return M;
}

std::vector<Vec> mat_mul(const Field& F, const std::vector<Vec>& A, const std::vector<Vec>& B) {
    int n = static_cast<int>(A.size());
    std::vector<Vec> C(n, Vec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (A[i][k] == 0) continue;
            for (int j = 0; j < n; ++j) C[i][j] = F.add(C[i][j], F.mul(A[i][k], B[k][j]));
        }
    return C;
}

Vec row_times_mat(const Field& F, const Vec& x, const std::vector<Vec>& A) {
    int n = static_cast<int>(A.size());
    Vec out(n, 0);
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j) out[j] = F.add(out[j], F.mul(x[i], A[i][j]));
    }
    return out;
}

bool k_pattern_match(const Field& F, int r, Fel a, const std::vector<Vec>& M) {
    int d = 2 * r + 1;
    // Identity blocks and zero blocks.
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (M[i][j] != (i == j ? F.one() : F.zero())) return false;
            if (M[r + i][j] != F.zero()) return false;
            if (M[r + i][r + j] != (i == j ? F.one() : F.zero())) return false;
        }
    for (int i = 0; i < r; ++i) {
        if (M[r + i][2 * r] != F.zero()) return false;
        if (M[2 * r][i] != F.zero()) return false;
    }
    if (M[2 * r][2 * r] != F.one()) return false;
    Vec u(r);
    for (int j = 0; j < r; ++j) u[j] = M[2 * r][r + j];
    for (int i = 0; i < r; ++i)
        if (M[i][2 * r] != F.mul(F.scalar(2), F.mul(a, u[i]))) return false;
    // Top middle minus a u^T u must be alternating.
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Fel s = F.sub(M[i][r + j], F.mul(a, F.mul(u[i], u[j])));
            Fel st = F.sub(M[j][r + i], F.mul(a, F.mul(u[j], u[i])));
            if (i == j && s != F.zero()) return false;
            if (F.add(s, st) != F.zero()) return false;
        }
    (void)d;
    return true;
}

}  // namespace

LemmaReport lemma_K_closure(int q, int r) {
    const Field& F = Field::get(q, 1);
    Fel a = k_constant(F);
    if (F.add(F.mul(F.scalar(4), a), F.one()) != F.zero()) return {false, "no a with 4a+1=0"};
    QuadraticForm form = QuadraticForm::parabolic_split(F, r);
    auto us = all_vectors(F, r);
    auto ss = alternating_matrices(F, r);
    std::vector<std::vector<Vec>> mats;
    for (const Vec& u : us)
        for (const auto& S : ss) mats.push_back(k_matrix(F, r, a, u, S));

    for (const auto& A : mats)
        for (const auto& B : mats)
            if (!k_pattern_match(F, r, a, mat_mul(F, A, B)))
                return {false, "a product left the group"};

    long long vectors = 0;
    for (const auto& M : mats) {
        for (const Vec& x : all_vectors(F, 2 * r + 1)) {
            if (form.eval(row_times_mat(F, x, M)) != form.eval(x))
                return {false, "an element does not preserve Q"};
            ++vectors;
        }
    }
    return {true, std::to_string(mats.size()) + " elements, " + std::to_string(mats.size() * mats.size()) +
                      " products closed, Q preserved on " + std::to_string(vectors) + " images"};
}

LemmaReport lemma_L_closure(int q, int r) {
    const Field& F = Field::get(q, 1);
    QuadraticForm form = QuadraticForm::hyperbolic_split(F, r);
    auto ss = alternating_matrices(F, r);
    // Closure: (I S)(I S') = (I S+S'), alternating again; verify literally.
    for (const auto& S1 : ss)
        for (const auto& S2 : ss) {
            std::vector<Vec> sum(r, Vec(r, 0));
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) sum[i][j] = F.add(S1[i][j], S2[i][j]);
            for (int i = 0; i < r; ++i) {
                if (sum[i][i] != F.zero()) return {false, "sum has a nonzero diagonal"};
                for (int j = 0; j < r; ++j)
                    if (F.add(sum[i][j], sum[j][i]) != F.zero()) return {false, "sum is not alternating"};
            }
        }
    long long vectors = 0;
    for (const auto& S : ss)
        for (const Vec& x : all_vectors(F, 2 * r)) {
            if (form.eval(apply_L(F, r, S, x)) != form.eval(x)) return {false, "an element does not preserve Q"};
            ++vectors;
        }
    return {true, std::to_string(ss.size()) + " elements, Q preserved on " + std::to_string(vectors) + " images"};
}

LemmaReport lemma_G_closure(int q, int r) {
    HermitianSpace hs(q, r);
    const Field& F = hs.big();
    auto elems = enumerate_G(hs);
    for (const auto& c : elems)
        if (!g_member(hs, c)) return {false, "an enumerated tuple violates the constraints"};
    // Composition adds parameter tuples.
    for (const auto& c1 : elems)
        for (const auto& c2 : elems) {
            std::vector<Fel> sum(r);
            for (int i = 0; i < r; ++i) sum[i] = F.add(c1[i], c2[i]);
            if (!g_member(hs, sum)) return {false, "a composition left the group"};
        }
    // h preserved for every element on every vector.
    for (const auto& c : elems) {
        for (int u = 0; u < F.order(); ++u)
            for (int v = 0; v < F.order(); ++v) {
                Vec x = {static_cast<Fel>(u), static_cast<Fel>(v)};
                if (hs.h_up(apply_G(hs, c, x)) != hs.h_up(x)) return {false, "an element does not preserve h"};
            }
    }
    // H preserved for an additive generating set, on every vector pair.
    int n = F.order();
    std::vector<Fel> conj(n), tr2(n);
    for (int x = 0; x < n; ++x) {
        conj[x] = hs.frob_q(static_cast<Fel>(x), r);
        Fel acc = F.zero();
        for (int i = 0; i < r; ++i) acc = F.add(acc, hs.frob_q(static_cast<Fel>(x), 2 * i));
        tr2[x] = acc;
    }
    auto H = [&](Fel u1, Fel v1, Fel u2, Fel v2) {
        return tr2[F.add(F.mul(u1, conj[v2]), F.mul(v1, conj[u2]))];
    };
    auto gens = g_generators(hs);
    for (const auto& c : gens) {
        std::vector<Fel> shift(n);
        for (int u = 0; u < n; ++u) {
            Fel s = F.zero();
            for (int i = 0; i < r; ++i) s = F.add(s, F.mul(c[i], hs.frob_q(static_cast<Fel>(u), 2 * i)));
            shift[u] = s;
        }
        for (int u1 = 0; u1 < n; ++u1)
            for (int v1 = 0; v1 < n; ++v1) {
                Fel w1 = F.add(static_cast<Fel>(v1), shift[u1]);
                for (int u2 = 0; u2 < n; ++u2)
                    for (int v2 = 0; v2 < n; ++v2) {
                        Fel w2 = F.add(static_cast<Fel>(v2), shift[u2]);
                        if (H(static_cast<Fel>(u1), w1, static_cast<Fel>(u2), w2) !=
                            H(static_cast<Fel>(u1), static_cast<Fel>(v1), static_cast<Fel>(u2),
                              static_cast<Fel>(v2)))
                            return {false, "a generator does not preserve H"};
                    }
            }
    }
    return {true, std::to_string(elems.size()) + " elements closed; h preserved everywhere; H preserved for " +
                      std::to_string(gens.size()) + " generators on all vector pairs"};
}

LemmaReport t_translation_check(int q, int r) {
    const Field& F = Field::get(q, 1);
    auto vectors = all_vectors(F, r);
    for (const Vec& x : vectors) {
        if (vec_is_zero(x)) continue;
        // T_{lambda x} = { w : x w^T = lambda }.
        std::vector<std::set<std::uint64_t>> T(F.order());
        auto pack = [&](const Vec& w) {
            std::uint64_t key = 0;
            for (Fel c : w) key = key * F.order() + c;
            return key;
        };
        std::map<std::uint64_t, Vec> unpacked;
        for (const Vec& w : vectors) {
            Fel lam = vec_dot(F, x, w);
            T[lam].insert(pack(w));
            unpacked[pack(w)] = w;
        }
        for (int i = 0; i < F.order(); ++i)
            for (int j = 0; j < F.order(); ++j) {
                std::set<std::uint64_t> sums;
                for (std::uint64_t ka : T[i])
                    for (std::uint64_t kb : T[j]) sums.insert(pack(vec_add(F, unpacked[ka], unpacked[kb])));
                Fel target = F.add(static_cast<Fel>(i), static_cast<Fel>(j));
                if (sums != T[target]) return {false, "translation identity fails"};
            }
    }
    return {true, "T_{ix}+T_{jx}=T_{(i+j)x} for all x, i, j"};
}

}  // namespace polarsrg
