#include "polarsrg/gf.hpp"

#include <random>
#include <set>

#include "doctest.h"

using namespace polarsrg;

TEST_CASE("field construction and moduli") {
    Field f9(3, 2, {1, 0, 1});  // x^2+1, irreducible since -1 is a nonsquare mod 3
    CHECK(f9.order() == 9);

    CHECK_THROWS_AS(Field(2, 2, std::vector<int>{1, 0, 1}), ReducibleModulus);  // x^2+1=(x+1)^2
    CHECK_THROWS_AS(Field(4, 1), NonPrimeCharacteristic);
    CHECK_THROWS_AS(Field(2, 17), FieldTooLarge);

    // Every built-in default equals the first monic irreducible in counter order.
    for (const auto& e : Field::default_moduli()) {
        long long count = 1;
        for (int i = 0; i < e.n; ++i) count *= e.p;
        bool found_first = false;
        for (long long m = 0; m < count && !found_first; ++m) {
            std::vector<int> f(e.n + 1, 0);
            long long t = m;
            for (int i = 0; i < e.n; ++i) {
                f[i] = static_cast<int>(t % e.p);
                t /= e.p;
            }
            f[e.n] = 1;
            bool irred = true;
            try {
                Field probe(e.p, e.n, f);
            } catch (const ReducibleModulus&) {
                irred = false;
            }
            if (irred) {
                CHECK(f == e.modulus);
                found_first = true;
            }
        }
        CHECK(found_first);
    }
}

TEST_CASE("gf(4) multiplication forced by the modulus") {
    const Field& f4 = Field::get(2, 2);
    Fel w = f4.from_coeffs({0, 1});
    CHECK(f4.mul(w, w) == f4.from_coeffs({1, 1}));  // w^2 = w+1
}

static void check_axioms_full(const Field& F) {
    int q = F.order();
    for (int a = 0; a < q; ++a) {
        Fel x = static_cast<Fel>(a);
        CHECK(F.add(x, F.zero()) == x);
        CHECK(F.mul(x, F.one()) == x);
        CHECK(F.add(x, F.neg(x)) == F.zero());
        CHECK(F.pow(x, static_cast<std::uint64_t>(q)) == x);  // Frobenius orbit closes
        if (x != F.zero()) CHECK(F.mul(x, F.inv(x)) == F.one());
    }
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            Fel x = static_cast<Fel>(a), y = static_cast<Fel>(b);
            CHECK(F.add(x, y) == F.add(y, x));
            CHECK(F.mul(x, y) == F.mul(y, x));
            for (int c = 0; c < q; ++c) {
                Fel z = static_cast<Fel>(c);
                CHECK(F.add(F.add(x, y), z) == F.add(x, F.add(y, z)));
                CHECK(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)));
                CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
            }
        }
}

TEST_CASE("field axioms by full enumeration for order <= 81") {
    check_axioms_full(Field::get(2, 2));
    check_axioms_full(Field::get(2, 3));
    check_axioms_full(Field::get(3, 2));
    check_axioms_full(Field::get(5, 1));
    check_axioms_full(Field::get(7, 1));
    check_axioms_full(Field::get(2, 4));
    check_axioms_full(Field::get(5, 2));
    check_axioms_full(Field::get(7, 2));
    check_axioms_full(Field::get(2, 6));

    // Spot checks on random triples above order 81.
    Field F(2, 7);
    std::mt19937_64 rng(8141);
    for (int it = 0; it < 500; ++it) {
        Fel x = static_cast<Fel>(rng() % F.order());
        Fel y = static_cast<Fel>(rng() % F.order());
        Fel z = static_cast<Fel>(rng() % F.order());
        CHECK(F.add(F.add(x, y), z) == F.add(x, F.add(y, z)));
        CHECK(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)));
        CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
        CHECK(F.pow(x, 128) == x);
    }
}

TEST_CASE("trace values and properties") {
    const Field& f4 = Field::get(2, 2);
    Fel w = f4.from_coeffs({0, 1});
    CHECK(f4.subfield_trace(w, 1) == f4.one());  // Tr_{4/2}(w) = w + w^2 = 1

    const Field& f64 = Field::get(2, 6);
    CHECK(f64.subfield_trace(f64.one(), 1) == f64.zero());  // six summands of 1 in char 2

    // Transitivity Tr_{64/2} = Tr_{4/2} o Tr_{64/4} on all 64 elements.
    Embedding e4(f4, f64);
    const Field& f2 = Field::get(2, 1);
    Embedding e2(f2, f4);
    for (int x = 0; x < 64; ++x) {
        Fel inner = e4.trace_down(static_cast<Fel>(x));       // element of GF(4)
        Fel outer = e2.trace_down(inner);                     // element of GF(2)
        Fel direct = f64.subfield_trace(static_cast<Fel>(x), 1);
        CHECK((direct == f64.zero()) == (outer == f2.zero()));
    }

    // Additivity and surjectivity by full enumeration, order <= 64.
    for (const Field* Fp : {&f4, &f64}) {
        const Field& F = *Fp;
        std::set<Fel> image;
        for (int a = 0; a < F.order(); ++a) {
            image.insert(F.subfield_trace(static_cast<Fel>(a), 1));
            for (int b = 0; b < F.order(); ++b) {
                CHECK(F.subfield_trace(F.add(static_cast<Fel>(a), static_cast<Fel>(b)), 1) ==
                      F.add(F.subfield_trace(static_cast<Fel>(a), 1), F.subfield_trace(static_cast<Fel>(b), 1)));
            }
            // Frobenius invariance of the trace value.
            CHECK(F.frobenius(F.subfield_trace(static_cast<Fel>(a), 1), 1) ==
                  F.subfield_trace(static_cast<Fel>(a), 1));
        }
        CHECK(image.size() == 2);  // onto GF(2)
    }

    CHECK_THROWS_AS(f64.subfield_trace(1, 4), NotASubfield);
}

TEST_CASE("square classes") {
    const Field& f5 = Field::get(5, 1);
    CHECK(f5.square_class(0) == SquareClass::zero);
    CHECK(f5.square_class(1) == SquareClass::square);
    CHECK(f5.square_class(2) == SquareClass::nonsquare);
    CHECK(f5.square_class(3) == SquareClass::nonsquare);
    CHECK(f5.square_class(4) == SquareClass::square);

    const Field& f9 = Field::get(3, 2);
    int squares = 0;
    for (int a = 1; a < 9; ++a)
        if (f9.square_class(static_cast<Fel>(a)) == SquareClass::square) ++squares;
    CHECK(squares == 4);  // (q-1)/2

    // Multiplicativity of classes on all nonzero pairs.
    for (int a = 1; a < 9; ++a)
        for (int b = 1; b < 9; ++b) {
            SquareClass ca = f9.square_class(static_cast<Fel>(a));
            SquareClass cb = f9.square_class(static_cast<Fel>(b));
            SquareClass cab = f9.square_class(f9.mul(static_cast<Fel>(a), static_cast<Fel>(b)));
            CHECK(cab == ((ca == cb) ? SquareClass::square : SquareClass::nonsquare));
        }

    CHECK_THROWS_AS(Field::get(2, 2).square_class(1), EvenCharacteristic);
}

TEST_CASE("primitive elements") {
    CHECK(Field::get(5, 1).primitive() == 2);  // powers of 2 are 2,4,3,1
    const Field& f4 = Field::get(2, 2);
    CHECK(f4.primitive() == f4.from_coeffs({0, 1}));

    const Field& f64 = Field::get(2, 6);
    Fel g = f64.primitive();
    CHECK(f64.multiplicative_order(g) == 63);
    CHECK(f64.pow(g, 63) == f64.one());
    // g^21 generates the order-3 subgroup: in GF(4) but not GF(2).
    Fel g21 = f64.pow(g, 21);
    CHECK(f64.frobenius(g21, 2) == g21);   // fixed by x -> x^4
    CHECK(f64.frobenius(g21, 1) != g21);   // not fixed by x -> x^2

    // Determinism: a second field with the same modulus yields the same element.
    Field again(2, 6, f64.modulus());
    CHECK(again.primitive() == g);
}

TEST_CASE("subfield embeddings") {
    const Field& f2 = Field::get(2, 1);
    const Field& f4 = Field::get(2, 2);
    const Field& f64 = Field::get(2, 6);
    Embedding e2_64(f2, f64);
    Embedding e4_64(f4, f64);

    CHECK(e2_64.up(f2.one()) == f64.one());
    CHECK(e2_64.up(f2.zero()) == f64.zero());

    // Homomorphism on all 16 pairs of GF(4).
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Fel x = static_cast<Fel>(a), y = static_cast<Fel>(b);
            CHECK(e4_64.up(f4.mul(x, y)) == f64.mul(e4_64.up(x), e4_64.up(y)));
            CHECK(e4_64.up(f4.add(x, y)) == f64.add(e4_64.up(x), e4_64.up(y)));
        }

    // Image of GF(4)^* has order 3.
    std::set<Fel> image;
    for (int a = 1; a < 4; ++a) image.insert(e4_64.up(static_cast<Fel>(a)));
    CHECK(image.size() == 3);
    for (Fel y : image) CHECK(f64.multiplicative_order(y) <= 3);

    // Membership: x lies in the GF(4) image iff x^{q^2} = x with q=2.
    for (int x = 0; x < 64; ++x) {
        bool fixed = f64.frobenius(static_cast<Fel>(x), 2) == static_cast<Fel>(x);
        CHECK(fixed == e4_64.in_image(static_cast<Fel>(x)));
    }

    CHECK_THROWS_AS(e4_64.down(f64.primitive()), WrongField);
    CHECK_THROWS_AS(Embedding(Field::get(2, 4), f64), NotASubfield);  // 4 does not divide 6
}
