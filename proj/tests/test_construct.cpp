#include "polarsrg/construct.hpp"

#include "doctest.h"
#include "polarsrg/verify.hpp"

using namespace polarsrg;

namespace {

IntriguingReport checked(const Graph& g, const VertexSet& y) {
    IntriguingReport rep = check_intriguing(g, y);
    REQUIRE(rep.is_intriguing);
    REQUIRE(rep.counting_identity_ok);
    CHECK(eigenvector_check(g, y, rep));
    return rep;
}

}  // namespace

TEST_CASE("singular chains") {
    Graph g1 = build_graph({Family::NO_perp, 5, 2, +1});
    auto chain = singular_chain(g1);
    CHECK(chain.size() == 2);
    for (const auto& w : chain) CHECK(is_totally_singular(*g1.form, w));

    Graph g3 = build_graph({Family::NO_even2, 2, 2, -1});
    CHECK(singular_chain(g3).size() == 1);
    CHECK_THROWS_AS(construction_I(g3, 2), UnsupportedParameters);

    Graph g2 = build_graph({Family::NO_even3, 3, 3, +1});
    auto c2 = singular_chain(g2);
    CHECK(c2.size() == 2);
    for (const auto& w : c2) CHECK(is_totally_singular_enumerated(*g2.form, w));
}

TEST_CASE("perp-section sets match the table") {
    // Petersen: size 6, (1,3), negative.
    Graph pet = build_graph({Family::NO_even2, 2, 2, -1});
    VertexSet y = construction_I(pet, 1);
    CHECK(y.size() == 6);
    IntriguingReport rep = checked(pet, y);
    CHECK(*rep.h1 == 1);
    CHECK(*rep.h2 == 3);
    CHECK(rep.type == ReportType::negative);
    CHECK(*rep.matches_expected);

    Graph g1 = build_graph({Family::NO_perp, 5, 2, +1});
    VertexSet y1 = construction_I(g1, 1);
    CHECK(y1.size() == 75);
    IntriguingReport rep1 = checked(g1, y1);
    CHECK(*rep1.h1 == 10);
    CHECK(*rep1.h2 == 15);
    CHECK(rep1.type == ReportType::negative);
    CHECK(*rep1.matches_expected);

    Graph g4 = build_graph({Family::NO_odd, 5, 2, +1});
    VertexSet y4 = construction_I(g4, 1);
    IntriguingReport rep4 = checked(g4, y4);
    CHECK(*rep4.h1 == 44);
    CHECK(*rep4.h2 == 30);
    CHECK(rep4.type == ReportType::positive);
    CHECK(*rep4.matches_expected);
}

TEST_CASE("complement and difference tables") {
    Graph pet = build_graph({Family::NO_even2, 2, 2, -1});
    VertexSet y = construction_I(pet, 1);
    VertexSet comp = complement_set(pet, y);
    CHECK(comp.size() == 4);
    REQUIRE(comp.expected.has_value());
    CHECK(comp.expected->h1 == 0);
    CHECK(comp.expected->h2 == 2);
    IntriguingReport rep = checked(pet, comp);
    CHECK(*rep.matches_expected);

    // Complement row versus degree-complement identity, across the board.
    for (const GraphSpec& s : std::vector<GraphSpec>{{Family::NO_perp, 3, 2, +1},
                                                     {Family::NO_perp, 5, 3, -1},
                                                     {Family::NO_even3, 3, 3, +1},
                                                     {Family::NO_even2, 2, 4, -1},
                                                     {Family::NO_odd, 7, 2, +1}}) {
        SrgParams p = expected_params(s);
        for (int t = 1; t <= (s.family == Family::NO_perp || s.family == Family::NO_odd ? s.r : s.r - 1); ++t) {
            Expected base = expected_perp_section(s, t);
            Expected comp2 = expected_complement(s, t);
            CHECK(comp2.h1 == p.k - base.h2);
            CHECK(comp2.h2 == p.k - base.h1);
        }
    }

    // Chain difference on the q=3 even graph: derived values carry the day.
    Graph g2 = build_graph({Family::NO_even3, 3, 3, +1});
    VertexSet outer = construction_I(g2, 1);
    VertexSet inner = construction_I(g2, 2);
    VertexSet diff = difference_set(g2, outer, inner);
    REQUIRE(diff.expected.has_value());
    CHECK(diff.expected->h1 == 6);
    CHECK(diff.expected->h2 == 9);
    CHECK(diff.expected->h1 == expected_difference(g2.spec, 1).h1);
    IntriguingReport rep2 = checked(g2, diff);
    CHECK(*rep2.h1 == 6);
    CHECK(*rep2.h2 == 9);
    CHECK(*rep2.matches_expected);

    CHECK_THROWS_AS(difference_set(g2, inner, outer), NotNested);
}

TEST_CASE("K-orbits on the perp graphs") {
    Graph g = build_graph({Family::NO_perp, 5, 2, +1, Model::split});
    auto orbits = group_orbits(g, GroupKind::K);
    CHECK(orbits.size() == 13);  // (q^r + 1)/2
    for (const auto& o : orbits) CHECK(o.size() == 25);

    auto sets = orbit_union_sets(g);
    CHECK(sets.size() == 13);
    for (const auto& o : sets) {
        IntriguingReport rep = checked(g, o);
        CHECK(*rep.h1 == 0);
        CHECK(*rep.h2 == 5);
        CHECK(rep.type == ReportType::negative);
        CHECK(*rep.matches_expected);
    }

    // Union of two disjoint same-type orbits: counts add.
    VertexSet u = union_set(g, sets[0], sets[1]);
    IntriguingReport urep = checked(g, u);
    CHECK(*urep.h1 == 5);
    CHECK(*urep.h2 == 10);
    CHECK(urep.type == ReportType::negative);
    CHECK_THROWS_AS(union_set(g, sets[0], sets[0]), NotDisjoint);

    Graph gm = build_graph({Family::NO_perp, 5, 2, -1, Model::split});
    auto om = orbit_union_sets(gm);
    CHECK(om.size() == 12);  // (q^r - 1)/2
    for (const auto& o : om) {
        CHECK(o.size() == 25);
        IntriguingReport rep = checked(gm, o);
        CHECK(*rep.h1 == 10);
        CHECK(*rep.h2 == 5);
        CHECK(rep.type == ReportType::positive);
    }

    CHECK_THROWS_AS(group_orbits(build_graph({Family::NO_perp, 5, 2, +1}), GroupKind::K), WrongFamily);
}

TEST_CASE("L-orbits") {
    Graph g3 = build_graph({Family::NO_even2, 2, 3, +1, Model::split});
    auto o3 = orbit_union_sets(g3);
    CHECK(o3.size() == 7);  // (q^r-1)/(q-1)
    for (const auto& o : o3) {
        CHECK(o.size() == 4);
        IntriguingReport rep = checked(g3, o);
        CHECK(*rep.h1 == 3);
        CHECK(*rep.h2 == 2);
        CHECK(rep.type == ReportType::positive);
        CHECK(*rep.matches_expected);
    }

    Graph g2 = build_graph({Family::NO_even3, 3, 3, +1, Model::split});
    auto o2 = orbit_union_sets(g2);
    CHECK(o2.size() == 13);
    for (const auto& o : o2) {
        CHECK(o.size() == 9);
        IntriguingReport rep = checked(g2, o);
        CHECK(*rep.h1 == 0);
        CHECK(*rep.h2 == 3);
        CHECK(rep.type == ReportType::negative);
    }
}

TEST_CASE("tangent-graph orbit unions") {
    Graph gp = build_graph({Family::NO_odd, 5, 2, +1, Model::split});
    auto sets = orbit_union_sets(gp);
    REQUIRE(sets.size() == 7);  // z-axis orbit + (q^r-1)/(q-1) unions
    IntriguingReport zrep = checked(gp, sets[0]);
    CHECK(sets[0].size() == 25);
    CHECK(*zrep.h1 == 24);
    CHECK(*zrep.h2 == 10);
    CHECK(zrep.type == ReportType::positive);
    for (size_t i = 1; i < sets.size(); ++i) {
        CHECK(sets[i].size() == 50);
        IntriguingReport rep = checked(gp, sets[i]);
        CHECK(*rep.h1 == 34);
        CHECK(*rep.h2 == 20);
        CHECK(rep.type == ReportType::positive);
        CHECK(*rep.matches_expected);
    }

    Graph gm = build_graph({Family::NO_odd, 5, 2, -1, Model::split});
    auto sm = orbit_union_sets(gm);
    CHECK(sm.size() == 6);
    for (const auto& s : sm) {
        CHECK(s.size() == 50);
        IntriguingReport rep = checked(gm, s);
        CHECK(*rep.h1 == 4);
        CHECK(*rep.h2 == 20);
        CHECK(rep.type == ReportType::negative);
        CHECK(*rep.matches_expected);
    }
}

TEST_CASE("G-orbits and the sets M_k") {
    Graph g = build_graph({Family::NU, 2, 3});
    auto orbits = group_orbits(g, GroupKind::G);
    CHECK(orbits.size() == 21);  // (q^{2r}-1)/(q+1)
    for (const auto& o : orbits) CHECK(o.size() == 32);

    auto mk = orbit_union_sets(g);
    CHECK(mk.size() == 21);
    for (const auto& m : mk) {
        CHECK(m.size() == 32);
        IntriguingReport rep = checked(g, m);
        CHECK(*rep.h1 == 15);  // q^{2(r-1)} - 1, not q^{2(r-2)} - 1
        CHECK(*rep.h2 == 24);
        CHECK(rep.type == ReportType::negative);
        CHECK(*rep.matches_expected);
    }

    // Orbit membership is independent of the chosen representative with the
    // same trace value.
    const Field& F = g.herm->big();
    Fel omega = F.primitive();
    for (int k : {0, 5}) {
        Fel u = F.pow(omega, static_cast<std::uint64_t>(k));
        std::vector<Fel> reps;
        for (int x = 0; x < F.order() && reps.size() < 2; ++x) {
            Vec cand = {u, static_cast<Fel>(x)};
            if (g.herm->h_up(cand) == F.one()) reps.push_back(static_cast<Fel>(x));
        }
        REQUIRE(reps.size() == 2);
        auto o1 = orbit_of_point(g, GroupKind::G, Vec{u, reps[0]});
        auto o2 = orbit_of_point(g, GroupKind::G, Vec{u, reps[1]});
        CHECK(o1 == o2);
    }
}

TEST_CASE("nonsingular-point construction") {
    Graph g1 = build_graph({Family::NO_perp, 5, 2, +1});
    auto ys = construction_III_candidates(g1);
    REQUIRE(!ys.empty());
    VertexSet m = construction_III(g1, ys.front());
    CHECK(m.size() == 130);
    IntriguingReport rep = checked(g1, m);
    CHECK(*rep.h1 == 30);
    CHECK(*rep.h2 == 20);
    CHECK(rep.type == ReportType::positive);
    CHECK(*rep.matches_expected);

    Graph gm = build_graph({Family::NO_perp, 5, 2, -1});
    auto ysm = construction_III_candidates(gm);
    VertexSet mm = construction_III(gm, ysm.front());
    IntriguingReport repm = checked(gm, mm);
    CHECK(*repm.h1 == 20);
    CHECK(*repm.h2 == 30);
    CHECK(repm.type == ReportType::negative);

    Graph g2 = build_graph({Family::NO_even3, 3, 3, +1});
    auto ys2 = construction_III_candidates(g2);
    VertexSet m2 = construction_III(g2, ys2.front());
    IntriguingReport rep2 = checked(g2, m2);
    CHECK(*rep2.h1 == 12);
    CHECK(*rep2.h2 == 15);
    CHECK(rep2.type == ReportType::negative);
    CHECK(*rep2.matches_expected);

    // Wrong square class of y is rejected.
    auto wrong = construction_III_candidates(gm);  // squares, wrong for eps=+1
    CHECK_THROWS_AS(construction_III(g1, wrong.front()), WrongSquareClass);

    // q=3: the set coincides with the perp of y intersected with X.
    Graph g13 = build_graph({Family::NO_perp, 3, 2, +1});
    auto ys3 = construction_III_candidates(g13);
    VertexSet m3 = construction_III(g13, ys3.front());
    Subspace yspan{{ys3.front()}};
    VertexSet perp_y = perp_section(g13, yspan);
    CHECK(m3.indices == perp_y.indices);
}

TEST_CASE("same intersection numbers for every singular subspace") {
    // Exhaustive over all totally singular subspaces of each legal dimension.
    Graph g = build_graph({Family::NO_perp, 3, 2, +1});
    for (int t = 1; t <= 2; ++t) {
        auto subs = all_totally_singular_subspaces(*g.form, t);
        CHECK(subs.size() == 40);  // points of / lines on the parabolic quadric
        Expected want = expected_perp_section(g.spec, t);
        for (const auto& w : subs) {
            VertexSet y = perp_section(g, w);
            IntriguingReport rep = check_intriguing(g, y);
            REQUIRE(rep.is_intriguing);
            CHECK(*rep.h1 == want.h1);
            CHECK(*rep.h2 == want.h2);
        }
    }

    for (int eps : {+1, -1}) {
        Graph g3 = build_graph({Family::NO_even2, 2, 2, eps});
        auto subs = all_totally_singular_subspaces(*g3.form, 1);
        CHECK(subs.size() == (eps == 1 ? 9 : 5));
        Expected want = expected_perp_section(g3.spec, 1);
        for (const auto& w : subs) {
            VertexSet y = perp_section(g3, w);
            IntriguingReport rep = check_intriguing(g3, y);
            REQUIRE(rep.is_intriguing);
            CHECK(*rep.h1 == want.h1);
            CHECK(*rep.h2 == want.h2);
        }
    }
}

TEST_CASE("lemma reports") {
    LemmaReport ab = lemma_A_eq_B(2, 3, 2, 99);
    CHECK(ab.ok);

    CHECK(lemma_nonvanishing(2).ok);  // vacuous
    CHECK(lemma_nonvanishing(4).ok);

    CHECK(lemma_K_closure(3, 2).ok);
    CHECK(lemma_L_closure(2, 2).ok);
    CHECK(lemma_L_closure(3, 2).ok);
    CHECK(t_translation_check(5, 2).ok);
}
