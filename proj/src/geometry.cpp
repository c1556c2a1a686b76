#include "polarsrg/geometry.hpp"

#include <algorithm>

namespace polarsrg {

Vec vec_add(const Field& F, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = F.add(a[i], b[i]);
    return out;
}

Vec vec_scale(const Field& F, Fel c, const Vec& v) {
    Vec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = F.mul(c, v[i]);
    return out;
}

Fel vec_dot(const Field& F, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector lengths differ");
    Fel acc = F.zero();
    for (size_t i = 0; i < a.size(); ++i) acc = F.add(acc, F.mul(a[i], b[i]));
    return acc;
}

bool vec_is_zero(const Vec& v) {
    for (Fel c : v)
        if (c != 0) return false;
    return true;
}

Vec unit_vector(int dim, int i) {
    Vec v(dim, 0);
    v[i] = 1;
    return v;
}

Vec normalize_point(const Field& F, Vec x) {
    for (Fel c : x) {
        if (c != 0) return vec_scale(F, F.inv(c), x);
    }
    throw GeomError("cannot normalize the zero vector");
}

std::vector<Vec> enumerate_projective_points(const Field& F, int dim) {
    // Odometer over index tuples, leftmost coordinate most significant;
    // keep exactly the normalized representatives.
    std::vector<Vec> out;
    Vec v(dim, 0);
    while (true) {
        bool normalized = false, nonzero = false;
        for (int i = 0; i < dim; ++i) {
            if (v[i] != 0) {
                nonzero = true;
                normalized = (v[i] == F.one());
                break;
            }
        }
        if (nonzero && normalized) out.push_back(v);
        int i = dim - 1;
        while (i >= 0) {
            if (v[i] + 1 < F.order()) {
                v[i] = static_cast<Fel>(v[i] + 1);
                break;
            }
            v[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

int echelonize(const Field& F, std::vector<Vec>& rows) {
    if (rows.empty()) return 0;
    size_t ncols = rows[0].size();
    size_t pivot_row = 0;
    for (size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
        size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        Fel lead = rows[pivot_row][col];
        rows[pivot_row] = vec_scale(F, F.inv(lead), rows[pivot_row]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col] == 0) continue;
            Fel factor = rows[r][col];
            for (size_t c = 0; c < ncols; ++c)
                rows[r][c] = F.sub(rows[r][c], F.mul(factor, rows[pivot_row][c]));
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return static_cast<int>(pivot_row);
}

std::vector<Vec> kernel_basis(const Field& F, std::vector<Vec> rows, int ncols) {
    echelonize(F, rows);
    std::vector<int> pivot_col_of_row(rows.size(), -1);
    std::vector<bool> is_pivot(ncols, false);
    for (size_t r = 0; r < rows.size(); ++r) {
        for (int c = 0; c < ncols; ++c) {
            if (rows[r][c] != 0) {
                pivot_col_of_row[r] = c;
                is_pivot[c] = true;
                break;
            }
        }
    }
    std::vector<Vec> basis;
    for (int free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec v(ncols, 0);
        v[free_col] = 1;
        for (size_t r = 0; r < rows.size(); ++r) {
            int pc = pivot_col_of_row[r];
            if (pc >= 0) v[pc] = F.neg(rows[r][free_col]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

Subspace make_subspace(const Field& F, std::vector<Vec> gens) {
    std::vector<Vec> copy = gens;
    int rank = echelonize(F, copy);
    if (rank != static_cast<int>(gens.size())) throw GeomError("generators are linearly dependent");
    return Subspace{std::move(gens)};
}

std::vector<Vec> span_vectors(const Field& F, const Subspace& s) {
    int t = s.dim();
    if (t == 0) return {Vec(0)};
    size_t dim = s.basis[0].size();
    long long total = 1;
    for (int i = 0; i < t; ++i) total *= F.order();
    std::vector<Vec> out;
    out.reserve(total);
    std::vector<int> lam(t, 0);
    while (true) {
        Vec v(dim, 0);
        for (int i = 0; i < t; ++i)
            if (lam[i] != 0) v = vec_add(F, v, vec_scale(F, static_cast<Fel>(lam[i]), s.basis[i]));
        out.push_back(std::move(v));
        int i = 0;
        while (i < t) {
            if (lam[i] + 1 < F.order()) {
                ++lam[i];
                break;
            }
            lam[i] = 0;
            ++i;
        }
        if (i == t) break;
    }
    return out;
}

QuadraticForm::QuadraticForm(const Field& F, int dim, const std::vector<Term>& terms, FormKind kind)
    : F_(&F), dim_(dim), kind_(kind) {
    upper_.assign(dim, Vec(dim, 0));
    for (const Term& t : terms) {
        if (t.i > t.j || t.j >= dim || t.i < 0) throw GeomError("bad quadratic form term");
        upper_[t.i][t.j] = F.add(upper_[t.i][t.j], F.scalar(t.c));
    }
    polar_.assign(dim, Vec(dim, 0));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Fel c = i <= j ? upper_[i][j] : 0;
            Fel ct = j <= i ? upper_[j][i] : 0;
            polar_[i][j] = F.add(c, ct);  // diagonal picks up 2 c_ii
        }
}

QuadraticForm QuadraticForm::parabolic(const Field& F, int r) {
    std::vector<Term> terms;
    for (int i = 0; i < r; ++i) terms.push_back({i, 2 * r - i, 1});
    terms.push_back({r, r, 1});
    return QuadraticForm(F, 2 * r + 1, terms, FormKind::parabolic);
}

QuadraticForm QuadraticForm::hyperbolic(const Field& F, int r) {
    std::vector<Term> terms;
    for (int i = 0; i < r; ++i) terms.push_back({2 * i, 2 * i + 1, 1});
    return QuadraticForm(F, 2 * r, terms, FormKind::hyperbolic);
}

QuadraticForm QuadraticForm::elliptic(const Field& F, int r) {
    std::vector<Term> terms;
    for (int i = 0; i + 1 < r; ++i) terms.push_back({2 * i, 2 * i + 1, 1});
    // First delta in counter order with x^2 + xy + d y^2 anisotropic.
    int delta = -1;
    for (int d = 0; d < F.order(); ++d) {
        bool anisotropic = true;
        for (int x = 0; x < F.order() && anisotropic; ++x)
            for (int y = 0; y < F.order() && anisotropic; ++y) {
                if (x == 0 && y == 0) continue;
                Fel gx = static_cast<Fel>(x), gy = static_cast<Fel>(y);
                Fel val = F.add(F.add(F.mul(gx, gx), F.mul(gx, gy)),
                                F.mul(static_cast<Fel>(d), F.mul(gy, gy)));
                if (val == F.zero()) anisotropic = false;
            }
        if (anisotropic) {
            delta = d;
            break;
        }
    }
    if (delta < 0) throw GeomError("no anisotropic binary form found");
    terms.push_back({2 * r - 2, 2 * r - 2, 1});
    terms.push_back({2 * r - 2, 2 * r - 1, 1});
    terms.push_back({2 * r - 1, 2 * r - 1, delta});
    return QuadraticForm(F, 2 * r, terms, FormKind::elliptic);
}

QuadraticForm QuadraticForm::parabolic_split(const Field& F, int r) {
    std::vector<Term> terms;
    for (int i = 0; i < r; ++i) terms.push_back({i, r + i, 1});
    terms.push_back({2 * r, 2 * r, 1});
    return QuadraticForm(F, 2 * r + 1, terms, FormKind::parabolic_split);
}

QuadraticForm QuadraticForm::hyperbolic_split(const Field& F, int r) {
    std::vector<Term> terms;
    for (int i = 0; i < r; ++i) terms.push_back({i, r + i, 1});
    return QuadraticForm(F, 2 * r, terms, FormKind::hyperbolic_split);
}

Fel QuadraticForm::eval(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("vector size != form dimension");
    const Field& F = *F_;
    Fel acc = F.zero();
    for (int i = 0; i < dim_; ++i) {
        if (x[i] == 0) continue;
        for (int j = i; j < dim_; ++j) {
            if (upper_[i][j] == 0 || x[j] == 0) continue;
            acc = F.add(acc, F.mul(upper_[i][j], F.mul(x[i], x[j])));
        }
    }
    return acc;
}

Vec QuadraticForm::polar_row(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("vector size != form dimension");
    const Field& F = *F_;
    Vec row(dim_, 0);
    for (int j = 0; j < dim_; ++j) {
        Fel acc = F.zero();
        for (int i = 0; i < dim_; ++i) {
            if (x[i] == 0 || polar_[i][j] == 0) continue;
            acc = F.add(acc, F.mul(x[i], polar_[i][j]));
        }
        row[j] = acc;
    }
    return row;
}

Fel QuadraticForm::polar(const Vec& x, const Vec& y) const {
    if (static_cast<int>(y.size()) != dim_) throw DimensionMismatch("vector size != form dimension");
    return vec_dot(*F_, polar_row(x), y);
}

bool QuadraticForm::nondegenerate() const {
    const Field& F = *F_;
    std::vector<Vec> rows = polar_;
    int rank = echelonize(F, rows);
    if (rank == dim_) return true;
    if (F.characteristic() != 2) return false;
    // Characteristic 2: the radical may be nontrivial (odd dimension); the
    // form is nondegenerate when Q does not vanish on any nonzero radical
    // vector.
    std::vector<Vec> rad = kernel_basis(F, polar_, dim_);
    Subspace radical{rad};
    for (const Vec& v : span_vectors(F, radical)) {
        if (!vec_is_zero(v) && eval(v) == F.zero()) return false;
    }
    return true;
}

Subspace perp(const QuadraticForm& form, const std::vector<Vec>& gens) {
    if (!form.nondegenerate()) throw DegenerateForm("perp needs a nondegenerate form");
    const Field& F = form.field();
    std::vector<Vec> rows;
    for (const Vec& g : gens) rows.push_back(form.polar_row(g));
    std::vector<Vec> basis = kernel_basis(F, std::move(rows), form.dim());
    return Subspace{std::move(basis)};
}

bool is_totally_singular(const QuadraticForm& form, const Subspace& s) {
    const Field& F = form.field();
    for (int i = 0; i < s.dim(); ++i) {
        if (form.eval(s.basis[i]) != F.zero()) return false;
        for (int j = i + 1; j < s.dim(); ++j)
            if (form.polar(s.basis[i], s.basis[j]) != F.zero()) return false;
    }
    return true;
}

bool is_totally_singular_enumerated(const QuadraticForm& form, const Subspace& s) {
    const Field& F = form.field();
    for (const Vec& v : span_vectors(F, s))
        if (form.eval(v) != F.zero()) return false;
    return true;
}

int HermitianSpace::validate_and_exp(int q, int r) {
    if (q < 2 || (q & (q - 1)) != 0) throw UnsupportedParameters("NU needs q a power of 2");
    if (r < 3 || r % 2 == 0) throw UnsupportedParameters("NU needs odd r >= 3");
    int k0 = 0;
    for (int t = q; t > 1; t >>= 1) ++k0;
    return k0;
}

HermitianSpace::HermitianSpace(int q, int r)
    : q_(q),
      r_(r),
      k0_(validate_and_exp(q, r)),
      big_(&Field::get(2, 2 * r * k0_)),
      mid_(&Field::get(2, 2 * k0_)),
      base_(&Field::get(2, k0_)),
      mid_in_big_(*mid_, *big_),
      base_in_big_(*base_, *big_),
      base_in_mid_(*base_, *mid_) {
    for (int x = 1; x < mid_->order(); ++x) scalars_.push_back(mid_in_big_.up(static_cast<Fel>(x)));
    std::sort(scalars_.begin(), scalars_.end());
    frob_tab_.assign(2 * r_, std::vector<Fel>(big_->order()));
    for (int j = 0; j < 2 * r_; ++j)
        for (int x = 0; x < big_->order(); ++x)
            frob_tab_[j][x] = big_->frobenius(static_cast<Fel>(x), k0_ * j);
}

Fel HermitianSpace::frob_q(Fel x, int j) const { return frob_tab_[((j % (2 * r_)) + 2 * r_) % (2 * r_)][x]; }

Fel HermitianSpace::H_up(const Vec& a, const Vec& b) const {
    if (a.size() != 2 || b.size() != 2) throw DimensionMismatch("hermitian pairs have two components");
    const Field& F = *big_;
    Fel inner = F.add(F.mul(a[0], frob_q(b[1], r_)), F.mul(a[1], frob_q(b[0], r_)));
    Fel acc = F.zero();
    for (int i = 0; i < r_; ++i) acc = F.add(acc, frob_q(inner, 2 * i));
    return acc;
}

Fel HermitianSpace::h_up(const Vec& a) const {
    if (a.size() != 2) throw DimensionMismatch("hermitian pairs have two components");
    const Field& F = *big_;
    Fel inner = F.mul(a[0], frob_q(a[1], r_));
    Fel acc = F.zero();
    for (int i = 0; i < 2 * r_; ++i) acc = F.add(acc, frob_q(inner, i));
    return acc;
}

Fel HermitianSpace::H_value(const Vec& a, const Vec& b) const { return mid_in_big_.down(H_up(a, b)); }

Fel HermitianSpace::h_value(const Vec& a) const { return base_in_big_.down(h_up(a)); }

Vec HermitianSpace::normalize_point(Vec x) const {
    if (vec_is_zero(x)) throw GeomError("cannot normalize the zero vector");
    Vec best = x;
    for (Fel s : scalars_) {
        Vec cand = vec_scale(*big_, s, x);
        if (cand < best) best = cand;
    }
    return best;
}

}  // namespace polarsrg
