#include "polarsrg/srg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polarsrg {

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

long long isqrt_exact(long long m) {
    if (m < 0) return -1;
    long long s = static_cast<long long>(std::sqrt(static_cast<double>(m)));
    while (s > 0 && s * s > m) --s;
    while ((s + 1) * (s + 1) <= m) ++s;
    return s * s == m ? s : -1;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::NO_perp: return "no-perp";
        case Family::NO_even3: return "no-even3";
        case Family::NO_even2: return "no-even2";
        case Family::NO_odd: return "no-odd";
        case Family::NU: return "nu";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
    if (s == "no-perp") return Family::NO_perp;
    if (s == "no-even3") return Family::NO_even3;
    if (s == "no-even2") return Family::NO_even2;
    if (s == "no-odd") return Family::NO_odd;
    if (s == "nu") return Family::NU;
    return std::nullopt;
}

std::string GraphSpec::name() const {
    std::ostringstream os;
    os << family_name(family) << " q=" << q << " r=" << r;
    if (family != Family::NU) os << " eps=" << (eps > 0 ? "+1" : "-1");
    if (model == Model::split) os << " model=split";
    return os.str();
}

void validate_spec(const GraphSpec& spec) {
    auto fail = [&](const std::string& why) { throw UnsupportedParameters(spec.name() + ": " + why); };
    if (spec.family != Family::NU && spec.eps != 1 && spec.eps != -1) fail("eps must be +-1");
    switch (spec.family) {
        case Family::NO_perp:
            if (spec.q != 3 && spec.q != 5) fail("needs q in {3,5}");
            if (spec.r < 1) fail("needs r >= 1");
            break;
        case Family::NO_even3:
            if (spec.q != 3) fail("needs q = 3");
            if (spec.r < 2) fail("needs r >= 2");
            if (spec.q3_class != 1 && spec.q3_class != 2) fail("vertex class must be Q=1 or Q=2");
            if (spec.model == Model::split && spec.eps != 1) fail("the split hyperbolic model is the eps=+1 graph");
            break;
        case Family::NO_even2:
            if (spec.q != 2) fail("needs q = 2");
            if (spec.r < 2) fail("needs r >= 2");
            if (spec.model == Model::split && spec.eps != 1) fail("the split hyperbolic model is the eps=+1 graph");
            break;
        case Family::NO_odd:
            if (spec.q % 2 == 0 || !is_prime(spec.q)) fail("needs odd prime q");
            if (spec.r < 1) fail("needs r >= 1");
            break;
        case Family::NU:
            if (spec.q < 2 || (spec.q & (spec.q - 1)) != 0) fail("needs q a power of 2");
            if (spec.r < 3 || spec.r % 2 == 0) fail("needs odd r >= 3");
            if (spec.model == Model::split) fail("NU has a single coordinate model");
            break;
    }
}

void check_caps(const GraphSpec& spec, const BuildOptions& opts) {
    if (opts.ignore_caps) return;
    auto fail = [&](const std::string& why) {
        throw UnsupportedParameters(spec.name() + ": " + why + " (cap; override with --no-caps)");
    };
    if (spec.family == Family::NU) {
        if (spec.q != 2 || spec.r != 3) fail("NU capped to (q=2, r=3)");
        return;
    }
    if ((spec.q == 2 || spec.q == 3) && spec.r > 4) fail("r capped at 4 for q in {2,3}");
    if ((spec.q == 5 || spec.q == 7) && spec.r > 3) fail("r capped at 3 for q in {5,7}");
    if (spec.q > 7) fail("q capped at 7");
}

SrgParams expected_params(const GraphSpec& spec) {
    validate_spec(spec);
    long long q = spec.q, r = spec.r, e = spec.eps;
    SrgParams p;
    switch (spec.family) {
        case Family::NO_perp: {
            long long qr = ipow(q, spec.r), qr1 = ipow(q, spec.r - 1);
            p.v = qr * (qr + e) / 2;
            p.k = qr1 * (qr - e) / 2;
            p.lambda = (q == 3) ? qr1 * (qr1 - e) / 2 : qr1 * (qr1 + e) / 2;
            p.mu = qr1 * (qr1 - e) / 2;
            break;
        }
        case Family::NO_even3: {
            long long qr = ipow(3, spec.r), qr1 = ipow(3, spec.r - 1), qr2 = ipow(3, spec.r - 2);
            p.v = qr1 * (qr - e) / 2;
            p.k = qr1 * (qr1 - e) / 2;
            p.lambda = qr2 * (qr1 + e) / 2;
            p.mu = qr1 * (qr2 - e) / 2;
            break;
        }
        case Family::NO_even2: {
            p.v = ipow(2, 2 * spec.r - 1) - e * ipow(2, spec.r - 1);
            p.k = ipow(2, 2 * spec.r - 2) - 1;
            p.lambda = ipow(2, 2 * spec.r - 3) - 2;
            p.mu = ipow(2, 2 * spec.r - 3) + e * ipow(2, spec.r - 2);
            break;
        }
        case Family::NO_odd: {
            long long qr = ipow(q, spec.r), qr1 = ipow(q, spec.r - 1);
            p.v = qr * (qr + e) / 2;
            p.k = (qr1 + e) * (qr - e);
            p.lambda = 2 * (qr1 * qr1 - 1) + e * qr1 * (q - 1);
            p.mu = 2 * qr1 * (qr1 + e);
            break;
        }
        case Family::NU: {
            (void)r;
            long long q2r = ipow(q, 2 * spec.r);
            long long q2r1 = ipow(q, 2 * spec.r - 1);
            long long q2r2 = ipow(q, 2 * spec.r - 2);
            long long q2r3 = ipow(q, 2 * spec.r - 3);
            p.v = q2r1 * (q2r - 1) / (q + 1);
            p.k = (q2r1 + 1) * (q2r2 - 1);
            p.lambda = ipow(q, 4 * spec.r - 5) * (q + 1) - q2r2 * (q - 1) - 2;
            p.mu = q2r3 * (q + 1) * (q2r2 - 1);
            break;
        }
    }
    auto [ep, em] = srg_eigenvalues(p.v, p.k, p.lambda, p.mu);
    p.e_plus = ep;
    p.e_minus = em;
    return p;
}

std::pair<long long, long long> srg_eigenvalues(long long v, long long k, long long lambda, long long mu) {
    (void)v;
    long long disc = (lambda - mu) * (lambda - mu) + 4 * (k - mu);
    long long s = isqrt_exact(disc);
    if (s < 0) throw IrrationalEigenvalues("discriminant " + std::to_string(disc) + " is not a perfect square");
    if (((lambda - mu) + s) % 2 != 0)
        throw IrrationalEigenvalues("eigenvalues are not integers");
    long long ep = ((lambda - mu) + s) / 2;
    long long em = ((lambda - mu) - s) / 2;
    return {ep, em};
}

std::uint64_t Graph::pack(const Vec& x) const {
    std::uint64_t key = 0;
    for (size_t i = 0; i < x.size(); ++i) key = key * field->order() + x[i];
    return key;
}

int Graph::index_of(const Vec& normalized_point) const {
    std::uint64_t key = pack(normalized_point);
    if (key >= index_lookup.size()) return -1;
    return index_lookup[key];
}

namespace {

QuadraticForm make_form(const GraphSpec& spec, const Field& F) {
    switch (spec.family) {
        case Family::NO_perp:
        case Family::NO_odd:
            return spec.model == Model::split ? QuadraticForm::parabolic_split(F, spec.r)
                                              : QuadraticForm::parabolic(F, spec.r);
        case Family::NO_even3:
        case Family::NO_even2:
            if (spec.model == Model::split) return QuadraticForm::hyperbolic_split(F, spec.r);
            return spec.eps == 1 ? QuadraticForm::hyperbolic(F, spec.r) : QuadraticForm::elliptic(F, spec.r);
        default:
            throw UnsupportedParameters("NU carries a hermitian form");
    }
}

}  // namespace

std::vector<Vec> enumerate_vertices(const GraphSpec& spec) {
    validate_spec(spec);
    std::vector<Vec> out;
    if (spec.family == Family::NU) {
        HermitianSpace hs(spec.q, spec.r);
        const Field& big = hs.big();
        // Lex scan over pairs; keep scalar-class representatives with h != 0.
        for (int u = 0; u < big.order(); ++u)
            for (int v = 0; v < big.order(); ++v) {
                if (u == 0 && v == 0) continue;
                Vec x = {static_cast<Fel>(u), static_cast<Fel>(v)};
                if (hs.normalize_point(x) != x) continue;
                if (hs.h_up(x) != big.zero()) out.push_back(std::move(x));
            }
        return out;
    }
    const Field& F = Field::get(spec.q, 1);
    QuadraticForm form = make_form(spec, F);
    for (Vec& p : enumerate_projective_points(F, form.dim())) {
        Fel qv = form.eval(p);
        bool keep = false;
        switch (spec.family) {
            case Family::NO_perp:
            case Family::NO_odd: {
                SquareClass want = spec.eps == 1 ? SquareClass::square : SquareClass::nonsquare;
                keep = F.square_class(qv) == want;
                break;
            }
            case Family::NO_even3:
                keep = qv == F.scalar(spec.q3_class);
                break;
            case Family::NO_even2:
                keep = qv != F.zero();
                break;
            default:
                break;
        }
        if (keep) out.push_back(std::move(p));
    }
    return out;
}

Graph build_graph(const GraphSpec& spec, const BuildOptions& opts) {
    validate_spec(spec);
    check_caps(spec, opts);
    Graph g;
    g.spec = spec;
    if (spec.family == Family::NU) {
        g.herm.emplace(spec.q, spec.r);
        g.field = &g.herm->big();
    } else {
        g.field = &Field::get(spec.q, 1);
        g.form.emplace(make_form(spec, *g.field));
    }
    g.vertices = enumerate_vertices(spec);
    long long v = g.v();
    if (v > opts.max_vertices)
        throw UnsupportedParameters(spec.name() + ": " + std::to_string(v) + " vertices exceed the cap of " +
                                    std::to_string(opts.max_vertices));

    std::uint64_t space = 1;
    for (size_t i = 0; i < g.vertices[0].size(); ++i) space *= g.field->order();
    g.index_lookup.assign(space, -1);
    for (long long i = 0; i < v; ++i) g.index_lookup[g.pack(g.vertices[i])] = static_cast<int>(i);

    g.adj = BitMatrix(static_cast<size_t>(v));
    const Field& F = *g.field;

    if (spec.family == Family::NU) {
        const HermitianSpace& hs = *g.herm;
        int rr = spec.r;
        int k0 = hs.big().degree() / (2 * rr);
        std::vector<Fel> u_conj(v), v_conj(v), hvals(v);
        for (long long i = 0; i < v; ++i) {
            u_conj[i] = hs.frob_q(g.vertices[i][0], rr);
            v_conj[i] = hs.frob_q(g.vertices[i][1], rr);
            hvals[i] = hs.h_up(g.vertices[i]);
        }
        g.qvals = hvals;
        for (long long i = 0; i < v; ++i) {
            for (long long j = i + 1; j < v; ++j) {
                Fel inner = F.add(F.mul(g.vertices[i][0], v_conj[j]), F.mul(g.vertices[i][1], u_conj[j]));
                Fel H = F.subfield_trace(inner, 2 * k0);
                Fel lhs = F.pow(H, static_cast<std::uint64_t>(spec.q + 1));
                if (lhs == F.mul(hvals[i], hvals[j])) g.adj.set_pair(i, j);
            }
        }
        return g;
    }

    const QuadraticForm& form = *g.form;
    std::vector<Vec> rows(v);
    g.qvals.resize(v);
    for (long long i = 0; i < v; ++i) {
        rows[i] = form.polar_row(g.vertices[i]);
        g.qvals[i] = form.eval(g.vertices[i]);
    }
    bool tangency = spec.family == Family::NO_odd;
    Fel four = F.scalar(4);
    for (long long i = 0; i < v; ++i) {
        const Vec& row = rows[i];
        for (long long j = i + 1; j < v; ++j) {
            Fel b = vec_dot(F, row, g.vertices[j]);
            bool adjacent;
            if (tangency) {
                adjacent = F.mul(b, b) == F.mul(four, F.mul(g.qvals[i], g.qvals[j]));
            } else {
                adjacent = b == F.zero();
            }
            if (adjacent) g.adj.set_pair(i, j);
        }
    }
    return g;
}

SrgParams measure_params(const Graph& g) {
    long long v = g.v();
    SrgParams p;
    p.v = v;
    long long k = -1;
    for (long long i = 0; i < v; ++i) {
        long long d = static_cast<long long>(g.adj.row_popcount(i));
        if (k < 0) k = d;
        if (d != k)
            throw NotRegular("vertex " + std::to_string(i) + " has degree " + std::to_string(d) + " != " +
                             std::to_string(k));
    }
    p.k = k;
    long long lambda = -1, mu = -1;
    for (long long i = 0; i < v; ++i) {
        for (long long j = i + 1; j < v; ++j) {
            long long c = static_cast<long long>(g.adj.and_popcount(i, j));
            if (g.adj.get(i, j)) {
                if (lambda < 0) lambda = c;
                if (c != lambda)
                    throw NotStronglyRegular("adjacent pair (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") has " + std::to_string(c) + " common neighbors, expected " +
                                             std::to_string(lambda));
            } else {
                if (mu < 0) mu = c;
                if (c != mu)
                    throw NotStronglyRegular("non-adjacent pair (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") has " + std::to_string(c) + " common neighbors, expected " +
                                             std::to_string(mu));
            }
        }
    }
    p.lambda = lambda < 0 ? 0 : lambda;
    p.mu = mu < 0 ? 0 : mu;
    auto [ep, em] = srg_eigenvalues(p.v, p.k, p.lambda, p.mu);
    p.e_plus = ep;
    p.e_minus = em;
    return p;
}

int tangent_points_on_line(const Graph& g, const Vec& p1, const Vec& p2) {
    const Field& F = *g.field;
    if (p1 == p2) throw GeomError("tangency needs two distinct points");
    int count = 0;
    if (g.spec.family == Family::NU) {
        const HermitianSpace& hs = *g.herm;
        if (hs.h_up(p1) == F.zero()) ++count;
        // lambda ranges over F_{q^2}: zero plus the point scalars.
        std::vector<Fel> lams = {F.zero()};
        for (Fel s : hs.point_scalars()) lams.push_back(s);
        for (Fel lam : lams) {
            Vec pt = vec_add(F, vec_scale(F, lam, p1), p2);
            if (hs.h_up(pt) == F.zero()) ++count;
        }
        return count;
    }
    const QuadraticForm& form = *g.form;
    if (form.eval(p1) == F.zero()) ++count;
    for (int lam = 0; lam < F.order(); ++lam) {
        Vec pt = vec_add(F, vec_scale(F, static_cast<Fel>(lam), p1), p2);
        if (form.eval(pt) == F.zero()) ++count;
    }
    return count;
}

bool is_offdiag_complement(const Graph& a, const Graph& b) {
    if (a.v() != b.v() || a.vertices != b.vertices) return false;
    long long v = a.v();
    for (long long i = 0; i < v; ++i)
        for (long long j = i + 1; j < v; ++j)
            if (a.adj.get(i, j) == b.adj.get(i, j)) return false;
    return true;
}

std::string to_dot(const Graph& g) {
    std::ostringstream os;
    os << "graph \"" << g.spec.name() << "\" {\n";
    const Field& F = *g.field;
    for (long long i = 0; i < g.v(); ++i) {
        os << "  n" << i << " [label=\"(";
        for (size_t c = 0; c < g.vertices[i].size(); ++c) {
            if (c) os << ",";
            os << F.to_string(g.vertices[i][c]);
        }
        os << ")\"];\n";
    }
    for (long long i = 0; i < g.v(); ++i)
        for (long long j = i + 1; j < g.v(); ++j)
            if (g.adj.get(i, j)) os << "  n" << i << " -- n" << j << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace polarsrg
