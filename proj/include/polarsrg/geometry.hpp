#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "polarsrg/gf.hpp"

namespace polarsrg {

struct GeomError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : GeomError {
    using GeomError::GeomError;
};
struct DegenerateForm : GeomError {
    using GeomError::GeomError;
};
struct UnsupportedParameters : GeomError {
    using GeomError::GeomError;
};

// Coordinate vector over a fixed field; length = ambient dimension.
using Vec = std::vector<Fel>;

Vec vec_add(const Field& F, const Vec& a, const Vec& b);
Vec vec_scale(const Field& F, Fel c, const Vec& v);
Fel vec_dot(const Field& F, const Vec& a, const Vec& b);
bool vec_is_zero(const Vec& v);
Vec unit_vector(int dim, int i);

// Canonical representative of <x>: first nonzero coordinate scaled to 1.
Vec normalize_point(const Field& F, Vec x);

// All points of PG(dim-1, F) as normalized representatives in lex order on
// the coordinate index tuples.
std::vector<Vec> enumerate_projective_points(const Field& F, int dim);

// In-place reduced row echelon form; returns the rank. Zero rows are removed.
int echelonize(const Field& F, std::vector<Vec>& rows);
// Basis of { v : rows * v = 0 } for the row space of an m x ncols matrix.
std::vector<Vec> kernel_basis(const Field& F, std::vector<Vec> rows, int ncols);

struct Subspace {
    std::vector<Vec> basis;  // linearly independent
    int dim() const { return static_cast<int>(basis.size()); }
};

// Verifies independence by echelon reduction.
Subspace make_subspace(const Field& F, std::vector<Vec> gens);
// All q^t vectors of the span.
std::vector<Vec> span_vectors(const Field& F, const Subspace& s);

enum class FormKind { parabolic, hyperbolic, elliptic, parabolic_split, hyperbolic_split };

// Quadratic form Q(x) = sum_{i<=j} c_ij x_i x_j with polar
// B(u,v) = Q(u+v) - Q(u) - Q(v).
class QuadraticForm {
  public:
    struct Term {
        int i, j;  // 0-based, i <= j
        int c;     // integer scalar, reduced mod p
    };

    QuadraticForm(const Field& F, int dim, const std::vector<Term>& terms, FormKind kind);

    // x_1 x_{2r+1} + x_2 x_{2r} + ... + x_r x_{r+2} + x_{r+1}^2 in dim 2r+1.
    static QuadraticForm parabolic(const Field& F, int r);
    // x_1 x_2 + x_3 x_4 + ... + x_{2r-1} x_{2r} in dim 2r.
    static QuadraticForm hyperbolic(const Field& F, int r);
    // x_1 x_2 + ... + x_{2r-3} x_{2r-2} + g(x_{2r-1}, x_{2r}) with g an
    // anisotropic binary form x^2 + xy + d y^2, d minimal in counter order.
    static QuadraticForm elliptic(const Field& F, int r);
    // Q((x,y,z)) = x y^T + z^2 on F^r x F^r x F.
    static QuadraticForm parabolic_split(const Field& F, int r);
    // Q((x,y)) = x y^T on F^r x F^r.
    static QuadraticForm hyperbolic_split(const Field& F, int r);

    const Field& field() const { return *F_; }
    int dim() const { return dim_; }
    FormKind kind() const { return kind_; }

    Fel eval(const Vec& x) const;                    // Q(x)
    Fel polar(const Vec& x, const Vec& y) const;     // B(x,y)
    Vec polar_row(const Vec& x) const;               // y -> B(x,y) as a covector
    const std::vector<Vec>& polar_matrix() const { return polar_; }
    bool nondegenerate() const;

  private:
    const Field* F_;
    int dim_;
    FormKind kind_;
    std::vector<Vec> upper_;  // c[i][j] for i <= j, zero elsewhere
    std::vector<Vec> polar_;  // M = C + C^T so that B(x,y) = x^T M y
};

// Basis of S^perp = { v : B(v, s) = 0 for all s in S }.
Subspace perp(const QuadraticForm& form, const std::vector<Vec>& gens);

// Basis criterion: Q vanishes on the basis and B vanishes on basis pairs.
bool is_totally_singular(const QuadraticForm& form, const Subspace& s);
// Direct check of Q on every vector of the span.
bool is_totally_singular_enumerated(const QuadraticForm& form, const Subspace& s);

// The hermitian pair space for the NU graphs: V = F_{q^{2r}} x F_{q^{2r}}
// carrying H((u1,v1),(u2,v2)) = Tr_{q^{2r}/q^2}(u1 v2^{q^r} + v1 u2^{q^r})
// and h((u,v)) = Tr_{q^{2r}/q}(u v^{q^r}); q even, r odd >= 3.
class HermitianSpace {
  public:
    HermitianSpace(int q, int r);

    int q() const { return q_; }
    int r() const { return r_; }
    const Field& big() const { return *big_; }
    const Field& mid() const { return *mid_; }
    const Field& base() const { return *base_; }
    const Embedding& mid_in_big() const { return mid_in_big_; }
    const Embedding& base_in_big() const { return base_in_big_; }
    const Embedding& base_in_mid() const { return base_in_mid_; }

    Fel frob_q(Fel x, int j) const;  // x^{q^j} inside the big field

    // Values inside the big field (images of the subfields).
    Fel H_up(const Vec& a, const Vec& b) const;
    Fel h_up(const Vec& a) const;
    // Values pulled back to their home fields.
    Fel H_value(const Vec& a, const Vec& b) const;  // element of GF(q^2)
    Fel h_value(const Vec& a) const;                // element of GF(q)

    // Images of F_{q^2}^* in the big field: the projectivizing scalars.
    const std::vector<Fel>& point_scalars() const { return scalars_; }
    // Lexicographic minimum over the scalar multiples of a pair.
    Vec normalize_point(Vec x) const;

  private:
    static int validate_and_exp(int q, int r);  // k0 with q = 2^{k0}

    int q_, r_, k0_;
    const Field* big_;
    const Field* mid_;
    const Field* base_;
    Embedding mid_in_big_;
    Embedding base_in_big_;
    Embedding base_in_mid_;
    std::vector<Fel> scalars_;
    std::vector<std::vector<Fel>> frob_tab_;  // frob_tab_[j][x] = x^{q^j}
};

}  // namespace polarsrg
