#include "polarsrg/srg.hpp"

#include <random>

#include "doctest.h"

using namespace polarsrg;

TEST_CASE("closed-form parameters at the anchors") {
    CHECK(expected_params({Family::NO_even2, 2, 2, -1}) == SrgParams{10, 3, 0, 1, 1, -2});
    CHECK(expected_params({Family::NO_even2, 2, 2, +1}) == SrgParams{6, 3, 0, 3, 0, -3});
    CHECK(expected_params({Family::NO_perp, 5, 2, +1}) == SrgParams{325, 60, 15, 10, 10, -5});
    CHECK(expected_params({Family::NO_perp, 3, 2, +1}) == SrgParams{45, 12, 3, 3, 3, -3});
    CHECK(expected_params({Family::NO_even3, 3, 3, +1}) == SrgParams{117, 36, 15, 9, 9, -3});
    CHECK(expected_params({Family::NO_odd, 5, 2, +1}) == SrgParams{325, 144, 68, 60, 14, -6});
    CHECK(expected_params({Family::NO_odd, 5, 2, -1}) == SrgParams{300, 104, 28, 40, 4, -16});
    CHECK(expected_params({Family::NU, 2, 3}) == SrgParams{672, 495, 366, 360, 15, -9});
}

TEST_CASE("eigenvalue computation") {
    CHECK(srg_eigenvalues(10, 3, 0, 1) == std::pair<long long, long long>{1, -2});
    CHECK(srg_eigenvalues(325, 60, 15, 10) == std::pair<long long, long long>{10, -5});
    CHECK(srg_eigenvalues(672, 495, 366, 360) == std::pair<long long, long long>{15, -9});
    // Conference-graph parameters have an irrational spectrum.
    CHECK_THROWS_AS(srg_eigenvalues(5, 2, 0, 1), IrrationalEigenvalues);

    for (const GraphSpec& s : std::vector<GraphSpec>{{Family::NO_perp, 3, 2, -1},
                                                     {Family::NO_even3, 3, 2, -1},
                                                     {Family::NO_even2, 2, 3, +1},
                                                     {Family::NO_odd, 7, 2, -1}}) {
        SrgParams p = expected_params(s);
        CHECK(p.e_plus * p.e_minus == p.mu - p.k);
        CHECK(p.e_plus + p.e_minus == p.lambda - p.mu);
        CHECK(p.e_plus >= 0);
        CHECK(p.e_minus < 0);
    }
}

TEST_CASE("vertex enumeration counts and canonical order") {
    CHECK(enumerate_vertices({Family::NO_even2, 2, 2, -1}).size() == 10);
    CHECK(enumerate_vertices({Family::NO_perp, 5, 2, +1}).size() == 325);
    CHECK(enumerate_vertices({Family::NU, 2, 3}).size() == 672);
    auto verts = enumerate_vertices({Family::NO_perp, 3, 2, +1});
    CHECK(std::is_sorted(verts.begin(), verts.end()));

    // The Q-value square class of a point survives rescaling.
    const Field& F = Field::get(5, 1);
    QuadraticForm par = QuadraticForm::parabolic(F, 2);
    for (const Vec& x : verts) (void)x;
    for (const Vec& x : enumerate_vertices({Family::NO_perp, 5, 2, -1})) {
        SquareClass c = F.square_class(par.eval(x));
        for (int lam = 2; lam < 5; ++lam)
            CHECK(F.square_class(par.eval(vec_scale(F, static_cast<Fel>(lam), x))) == c);
    }

    // Both Q-classes of the q=3 even-dimensional graphs give the same parameters.
    GraphSpec c1{Family::NO_even3, 3, 2, +1};
    GraphSpec c2 = c1;
    c2.q3_class = 2;
    Graph g1 = build_graph(c1), g2 = build_graph(c2);
    CHECK(measure_params(g1) == measure_params(g2));
}

TEST_CASE("small builds match the formulas") {
    for (const GraphSpec& s : std::vector<GraphSpec>{
             {Family::NO_even2, 2, 2, -1},  // Petersen
             {Family::NO_even2, 2, 2, +1},  // K_{3,3}
             {Family::NO_even2, 2, 3, -1},
             {Family::NO_perp, 3, 2, +1},
             {Family::NO_perp, 3, 2, -1},
             {Family::NO_perp, 5, 1, +1},
             {Family::NO_even3, 3, 2, +1},
             {Family::NO_even3, 3, 2, -1},
             {Family::NO_odd, 3, 2, +1},
             {Family::NO_odd, 3, 2, -1},
             {Family::NO_odd, 5, 1, +1},
         }) {
        Graph g = build_graph(s);
        CHECK(measure_params(g) == expected_params(s));
    }

    // Split-coordinate builds give the same parameters as the canonical ones.
    for (const GraphSpec& s : std::vector<GraphSpec>{
             {Family::NO_perp, 3, 2, +1, Model::split},
             {Family::NO_perp, 3, 2, -1, Model::split},
             {Family::NO_odd, 3, 2, -1, Model::split},
             {Family::NO_even3, 3, 2, +1, Model::split},
             {Family::NO_even2, 2, 3, +1, Model::split},
         }) {
        Graph g = build_graph(s);
        GraphSpec canon = s;
        canon.model = Model::canonical;
        CHECK(measure_params(g) == expected_params(canon));
    }
}

TEST_CASE("petersen is the elliptic q=2 r=2 graph") {
    Graph g = build_graph({Family::NO_even2, 2, 2, -1});
    SrgParams p = measure_params(g);
    CHECK(p.v == 10);
    CHECK(p.k == 3);
    CHECK(p.lambda == 0);
    CHECK(p.mu == 1);

    // Removing one edge breaks the degree count.
    std::size_t j = 1;
    while (j < 10 && !g.adj.get(0, j)) ++j;
    REQUIRE(j < 10);
    g.adj.clear_pair(0, j);
    CHECK_THROWS_AS(measure_params(g), NotStronglyRegular);
}

TEST_CASE("complement relation at q=3") {
    for (int eps : {+1, -1}) {
        Graph perp = build_graph({Family::NO_perp, 3, 2, eps});
        Graph tang = build_graph({Family::NO_odd, 3, 2, eps});
        CHECK(is_offdiag_complement(perp, tang));
    }
}

TEST_CASE("tangency criterion equals the one-singular-point oracle") {
    Graph g = build_graph({Family::NO_odd, 5, 1, +1});
    for (long long i = 0; i < g.v(); ++i)
        for (long long j = i + 1; j < g.v(); ++j) {
            bool alg = g.adj.get(i, j);
            bool geo = tangent_points_on_line(g, g.vertices[i], g.vertices[j]) == 1;
            CHECK(alg == geo);
        }

    // Lines through a singular point meet the quadric at least once.
    const Field& F = *g.field;
    Vec singular;
    for (const Vec& p : enumerate_projective_points(F, 3))
        if (g.form->eval(p) == F.zero()) {
            singular = p;
            break;
        }
    REQUIRE(!singular.empty());
    for (int i = 0; i < 5; ++i)
        CHECK(tangent_points_on_line(g, g.vertices[i], singular) >= 1);
}

TEST_CASE("NU graph build") {
    Graph g = build_graph({Family::NU, 2, 3});
    CHECK(g.v() == 672);
    CHECK(g.adj.row_popcount(0) == 495);
    SrgParams p = measure_params(g);
    CHECK(p == expected_params(g.spec));

    // Sampled pairs: adjacency iff the joining line is a tangent.
    std::mt19937_64 rng(4242);
    for (int it = 0; it < 500; ++it) {
        long long i = static_cast<long long>(rng() % g.v());
        long long j = static_cast<long long>(rng() % g.v());
        if (i == j) continue;
        bool alg = g.adj.get(i, j);
        bool geo = tangent_points_on_line(g, g.vertices[i], g.vertices[j]) == 1;
        CHECK(alg == geo);
    }
}

TEST_CASE("validity and caps") {
    CHECK_THROWS_AS(validate_spec({Family::NO_perp, 7, 2, +1}), UnsupportedParameters);
    CHECK_THROWS_AS(validate_spec({Family::NO_even3, 3, 1, +1}), UnsupportedParameters);
    CHECK_THROWS_AS(validate_spec({Family::NU, 2, 4}), UnsupportedParameters);
    CHECK_THROWS_AS(validate_spec({Family::NU, 2, 2}), UnsupportedParameters);
    CHECK_THROWS_AS(build_graph({Family::NU, 2, 5}), UnsupportedParameters);  // cap
    CHECK_THROWS_AS(build_graph({Family::NO_even2, 2, 5, +1}), UnsupportedParameters);  // cap
    BuildOptions loose;
    loose.ignore_caps = true;
    loose.max_vertices = 100;
    CHECK_THROWS_AS(build_graph({Family::NO_perp, 5, 2, +1}, loose), UnsupportedParameters);  // vertex cap
}
