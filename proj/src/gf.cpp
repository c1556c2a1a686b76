#include "polarsrg/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace polarsrg {

namespace {

// Dense polynomials over GF(p), coefficients low to high, not trimmed.
using Poly = std::vector<int>;

int poly_deg(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

Poly poly_mod(Poly a, const Poly& f, int p) {
    int df = poly_deg(f);
    int inv_lead = 1;
    // f is monic in all call sites; keep the general reduction anyway.
    for (int t = 1; t < p; ++t)
        if (t * f[df] % p == 1) inv_lead = t;
    for (int i = poly_deg(a); i >= df; --i) {
        int c = a[i] % p;
        if (c == 0) continue;
        int factor = c * inv_lead % p;
        for (int j = 0; j <= df; ++j) {
            a[i - df + j] = ((a[i - df + j] - factor * f[j]) % p + p) % p;
        }
    }
    a.resize(df);
    return a;
}

bool poly_divides(const Poly& g, const Poly& f, int p) {
    Poly r = poly_mod(f, g, p);
    return poly_deg(r) < 0;
}

bool poly_irreducible(const Poly& f, int p) {
    int n = poly_deg(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    // No monic divisor of degree 1..n/2.
    for (int d = 1; 2 * d <= n; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long m = 0; m < count; ++m) {
            Poly g(d + 1, 0);
            long long t = m;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(t % p);
                t /= p;
            }
            g[d] = 1;
            if (poly_divides(g, f, p)) return false;
        }
    }
    return true;
}

std::vector<int> prime_factors(int m) {
    std::vector<int> out;
    for (int d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

constexpr int kTableLimit = 512;

}  // namespace

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

const std::vector<Field::ModulusEntry>& Field::default_moduli() {
    static const std::vector<ModulusEntry> table = {
        {2, 2, {1, 1, 1}},           // x^2+x+1
        {2, 3, {1, 1, 0, 1}},        // x^3+x+1
        {2, 4, {1, 1, 0, 0, 1}},     // x^4+x+1
        {2, 6, {1, 1, 0, 0, 0, 0, 1}},  // x^6+x+1
        {3, 2, {1, 0, 1}},           // x^2+1
        {5, 2, {2, 0, 1}},           // x^2+2
        {7, 2, {1, 0, 1}},           // x^2+1
    };
    return table;
}

static std::vector<int> find_default_modulus(int p, int n) {
    long long q = 1;
    for (int i = 0; i < n; ++i) {
        q *= p;
        if (q > 65536) throw FieldTooLarge("field order exceeds 2^16");
    }
    if (n == 1) return {0, 1};
    for (const auto& e : Field::default_moduli())
        if (e.p == p && e.n == n) return e.modulus;
    // First monic irreducible in counter order on (c_0,...,c_{n-1}).
    long long count = 1;
    for (int i = 0; i < n; ++i) count *= p;
    for (long long m = 0; m < count; ++m) {
        std::vector<int> f(n + 1, 0);
        long long t = m;
        for (int i = 0; i < n; ++i) {
            f[i] = static_cast<int>(t % p);
            t /= p;
        }
        f[n] = 1;
        if (poly_irreducible(f, p)) return f;
    }
    throw GfError("no irreducible modulus found");  // unreachable
}

Field::Field(int p, int n) : Field(p, n, find_default_modulus(p, n)) {}

Field::Field(int p, int n, std::vector<int> modulus) : p_(p), n_(n), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw NonPrimeCharacteristic("characteristic " + std::to_string(p_) + " is not prime");
    if (n_ < 1) throw GfError("extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < n_; ++i) {
        q *= p_;
        if (q > 65536) throw FieldTooLarge("field order exceeds 2^16");
    }
    q_ = static_cast<int>(q);
    if (static_cast<int>(modulus_.size()) != n_ + 1 || modulus_[n_] != 1)
        throw GfError("modulus must be monic of degree n");
    for (int& c : modulus_) c = ((c % p_) + p_) % p_;
    if (!poly_irreducible(modulus_, p_))
        throw ReducibleModulus("modulus factors over GF(" + std::to_string(p_) + ")");
    init();
}

void Field::init() {
    // red_[j] = x^{n+j} mod f for j = 0..n-2, needed to fold products.
    red_.assign(std::max(0, n_ - 1), 0);
    for (int j = 0; j + 1 < n_; ++j) {
        Poly xp(n_ + j + 1, 0);
        xp[n_ + j] = 1;
        Poly r = poly_mod(std::move(xp), modulus_, p_);
        Fel idx = 0;
        for (int i = n_ - 1; i >= 0; --i) idx = static_cast<Fel>(idx * p_ + (i < static_cast<int>(r.size()) ? r[i] : 0));
        red_[j] = idx;
    }
    if (q_ <= kTableLimit) {
        add_tab_.resize(static_cast<size_t>(q_) * q_);
        mul_tab_.resize(static_cast<size_t>(q_) * q_);
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b) {
                add_tab_[static_cast<size_t>(a) * q_ + b] = add_slow(static_cast<Fel>(a), static_cast<Fel>(b));
                mul_tab_[static_cast<size_t>(a) * q_ + b] = mul_slow(static_cast<Fel>(a), static_cast<Fel>(b));
            }
        }
        tabled_ = true;
    }
}

const Field& Field::get(int p, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Field>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = registry[{p, n}];
    if (!slot) slot = std::make_unique<Field>(p, n);
    return *slot;
}

Fel Field::from_coeffs(const std::vector<int>& c) const {
    if (static_cast<int>(c.size()) > n_) throw GfError("too many coefficients");
    long long idx = 0;
    long long place = 1;
    for (size_t i = 0; i < c.size(); ++i) {
        idx += (((c[i] % p_) + p_) % p_) * place;
        place *= p_;
    }
    return static_cast<Fel>(idx);
}

std::vector<int> Field::coeffs(Fel x) const {
    std::vector<int> c(n_, 0);
    int t = x;
    for (int i = 0; i < n_; ++i) {
        c[i] = t % p_;
        t /= p_;
    }
    return c;
}

Fel Field::scalar(long long c) const {
    long long r = ((c % p_) + p_) % p_;
    return static_cast<Fel>(r);
}

Fel Field::add_slow(Fel a, Fel b) const {
    int out = 0, place = 1, x = a, y = b;
    for (int i = 0; i < n_; ++i) {
        out += ((x % p_) + (y % p_)) % p_ * place;
        x /= p_;
        y /= p_;
        place *= p_;
    }
    return static_cast<Fel>(out);
}

Fel Field::mul_slow(Fel a, Fel b) const {
    // Schoolbook product of the coefficient vectors, folded with red_.
    std::vector<int> prod(2 * n_ - 1, 0);
    std::vector<int> ca = coeffs(a), cb = coeffs(b);
    for (int i = 0; i < n_; ++i) {
        if (ca[i] == 0) continue;
        for (int j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    }
    std::vector<int> acc(n_, 0);
    for (int i = 0; i < n_; ++i) acc[i] = prod[i];
    for (int j = 0; j + 1 < n_; ++j) {
        int c = prod[n_ + j];
        if (c == 0) continue;
        std::vector<int> r = coeffs(red_[j]);
        for (int i = 0; i < n_; ++i) acc[i] = (acc[i] + c * r[i]) % p_;
    }
    return from_coeffs(acc);
}

Fel Field::neg(Fel a) const {
    int out = 0, place = 1, x = a;
    for (int i = 0; i < n_; ++i) {
        out += (p_ - x % p_) % p_ * place;
        x /= p_;
        place *= p_;
    }
    return static_cast<Fel>(out);
}

Fel Field::pow(Fel a, std::uint64_t e) const {
    Fel result = one();
    Fel base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Fel Field::inv(Fel a) const {
    if (a == 0) throw GfError("inverse of zero");
    return pow(a, static_cast<std::uint64_t>(q_ - 2));
}

Fel Field::frobenius(Fel a, int k) const {
    k %= n_;
    if (k < 0) k += n_;
    std::uint64_t e = 1;
    for (int i = 0; i < k; ++i) e *= static_cast<std::uint64_t>(p_);
    return pow(a, e);
}

Fel Field::subfield_trace(Fel a, int m) const {
    if (m < 1 || n_ % m != 0) throw NotASubfield("degree " + std::to_string(m) + " does not divide " + std::to_string(n_));
    Fel acc = zero();
    for (int i = 0; i < n_ / m; ++i) acc = add(acc, frobenius(a, m * i));
    return acc;
}

int Field::multiplicative_order(Fel a) const {
    if (a == 0) throw GfError("order of zero");
    int o = q_ - 1;
    for (int ell : prime_factors(q_ - 1)) {
        while (o % ell == 0 && pow(a, static_cast<std::uint64_t>(o / ell)) == one()) o /= ell;
    }
    return o;
}

Fel Field::primitive() const {
    std::call_once(prim_once_, [this] {
        std::vector<int> factors = prime_factors(q_ - 1);
        for (int a = 1; a < q_; ++a) {
            bool gen = true;
            for (int ell : factors) {
                if (pow(static_cast<Fel>(a), static_cast<std::uint64_t>((q_ - 1) / ell)) == one()) {
                    gen = false;
                    break;
                }
            }
            if (gen) {
                primitive_ = static_cast<Fel>(a);
                return;
            }
        }
        throw GfError("no primitive element found");  // unreachable
    });
    return primitive_;
}

SquareClass Field::square_class(Fel a) const {
    if (p_ == 2) throw EvenCharacteristic("square classes need odd characteristic");
    if (a == 0) return SquareClass::zero;
    Fel t = pow(a, static_cast<std::uint64_t>((q_ - 1) / 2));
    return t == one() ? SquareClass::square : SquareClass::nonsquare;
}

std::string Field::to_string(Fel x) const {
    std::string out = "[";
    std::vector<int> c = coeffs(x);
    for (int i = 0; i < n_; ++i) {
        if (i) out += ",";
        out += std::to_string(c[i]);
    }
    out += "]";
    return out;
}

Embedding::Embedding(const Field& sub, const Field& sup) : sub_(&sub), sup_(&sup) {
    if (sub.characteristic() != sup.characteristic())
        throw NotASubfield("different characteristics");
    if (sup.degree() % sub.degree() != 0)
        throw NotASubfield("degree " + std::to_string(sub.degree()) + " does not divide " + std::to_string(sup.degree()));
    // First root of the subfield modulus in the superfield.
    const std::vector<int>& f = sub.modulus();
    Fel beta = 0;
    bool found = false;
    for (int y = 0; y < sup.order(); ++y) {
        Fel acc = sup.zero();
        for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
            acc = sup.add(sup.mul(acc, static_cast<Fel>(y)), sup.scalar(f[i]));
        if (acc == sup.zero()) {
            beta = static_cast<Fel>(y);
            found = true;
            break;
        }
    }
    if (!found) throw NotASubfield("subfield modulus has no root in the superfield");
    up_.assign(sub.order(), 0);
    down_.assign(sup.order(), 0xFFFF);
    for (int x = 0; x < sub.order(); ++x) {
        std::vector<int> c = sub.coeffs(static_cast<Fel>(x));
        Fel acc = sup.zero();
        for (int i = sub.degree() - 1; i >= 0; --i)
            acc = sup.add(sup.mul(acc, beta), sup.scalar(c[i]));
        up_[x] = acc;
        down_[acc] = static_cast<Fel>(x);
    }
}

Fel Embedding::up(Fel x) const {
    if (x >= up_.size()) throw WrongField("element outside the subfield");
    return up_[x];
}

bool Embedding::in_image(Fel y) const {
    return y < down_.size() && down_[y] != 0xFFFF;
}

Fel Embedding::down(Fel y) const {
    if (!in_image(y)) throw WrongField("element not in the subfield image");
    return down_[y];
}

Fel Embedding::trace_down(Fel y) const {
    return down(sup_->subfield_trace(y, sub_->degree()));
}

}  // namespace polarsrg
