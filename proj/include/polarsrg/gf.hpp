#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarsrg {

struct GfError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonPrimeCharacteristic : GfError {
    using GfError::GfError;
};
struct ReducibleModulus : GfError {
    using GfError::GfError;
};
struct EvenCharacteristic : GfError {
    using GfError::GfError;
};
struct NotASubfield : GfError {
    using GfError::GfError;
};
struct WrongField : GfError {
    using GfError::GfError;
};
struct FieldTooLarge : GfError {
    using GfError::GfError;
};

// Element of GF(p^n) as its canonical index: sum c_i * p^i over the
// polynomial-basis coefficients c_0..c_{n-1}. Index order doubles as the
// canonical total order on elements.
using Fel = std::uint16_t;

enum class SquareClass { zero, square, nonsquare };

// GF(p^n) in polynomial basis modulo a monic irreducible of degree n.
// Immutable after construction; arithmetic is pure.
class Field {
  public:
    // Default modulus: built-in table for the cached sizes, otherwise the
    // first monic irreducible of degree n in counter order.
    Field(int p, int n);
    Field(int p, int n, std::vector<int> modulus);
    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    // Shared default-modulus instances (registry-owned, live for the process).
    static const Field& get(int p, int n);

    int characteristic() const { return p_; }
    int degree() const { return n_; }
    int order() const { return q_; }
    // n+1 coefficients, low to high, last one 1.
    const std::vector<int>& modulus() const { return modulus_; }

    Fel zero() const { return 0; }
    Fel one() const { return 1; }
    Fel from_coeffs(const std::vector<int>& c) const;
    std::vector<int> coeffs(Fel x) const;
    Fel scalar(long long c) const;  // constant c mod p

    Fel add(Fel a, Fel b) const {
        if (tabled_) return add_tab_[static_cast<std::size_t>(a) * q_ + b];
        return add_slow(a, b);
    }
    Fel sub(Fel a, Fel b) const { return add(a, neg(b)); }
    Fel neg(Fel a) const;
    Fel mul(Fel a, Fel b) const {
        if (tabled_) return mul_tab_[static_cast<std::size_t>(a) * q_ + b];
        return mul_slow(a, b);
    }
    Fel inv(Fel a) const;  // a != 0
    Fel pow(Fel a, std::uint64_t e) const;
    Fel frobenius(Fel a, int k) const;  // a^{p^k}
    // Tr to the degree-m subfield, returned as an element of this field
    // (a fixed point of x -> x^{p^m}). Requires m | n.
    Fel subfield_trace(Fel a, int m) const;

    int multiplicative_order(Fel a) const;  // a != 0
    Fel primitive() const;                  // first generator in counter order; cached
    SquareClass square_class(Fel a) const;  // odd characteristic only

    std::string to_string(Fel x) const;  // "[c0,c1,...]"

    struct ModulusEntry {
        int p, n;
        std::vector<int> modulus;
    };
    static const std::vector<ModulusEntry>& default_moduli();

  private:
    int p_, n_, q_;
    std::vector<int> modulus_;
    std::vector<Fel> red_;  // x^{n+j} mod f, packed as indices, j = 0..n-2
    bool tabled_ = false;
    std::vector<Fel> add_tab_, mul_tab_;
    mutable std::once_flag prim_once_;
    mutable Fel primitive_ = 0;

    void init();
    Fel add_slow(Fel a, Fel b) const;
    Fel mul_slow(Fel a, Fel b) const;
};

// Injective ring homomorphism GF(p^m) -> GF(p^n), m | n, determined by
// sending the canonical generator of the subfield to the first root of the
// subfield modulus in the superfield (counter order).
class Embedding {
  public:
    Embedding(const Field& sub, const Field& sup);

    const Field& sub() const { return *sub_; }
    const Field& sup() const { return *sup_; }

    Fel up(Fel x) const;
    bool in_image(Fel y) const;
    Fel down(Fel y) const;  // throws WrongField when y is not in the image
    // Tr_{sup/sub}(y) as a subfield element.
    Fel trace_down(Fel y) const;

  private:
    const Field* sub_;
    const Field* sup_;
    std::vector<Fel> up_;
    std::vector<Fel> down_;  // 0xFFFF marks "not in image"
};

bool is_prime(int p);

}  // namespace polarsrg
