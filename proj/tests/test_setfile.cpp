#include "polarsrg/setfile.hpp"

#include <sstream>

#include "doctest.h"
#include "polarsrg/verify.hpp"

using namespace polarsrg;

TEST_CASE("set files round-trip bit-exactly") {
    Graph g = build_graph({Family::NO_even2, 2, 2, -1});
    VertexSet y = construction_I(g, 1);

    std::ostringstream out;
    save_set_file(out, g, y);
    std::string bytes = out.str();

    std::istringstream in(bytes);
    SetFile sf = load_set_file(in);
    CHECK(sf.spec == g.spec);
    VertexSet back = resolve_set(sf, g);
    CHECK(back.indices == y.indices);
    CHECK(back.provenance == y.provenance);
    REQUIRE(back.expected.has_value());
    CHECK(back.expected->h1 == y.expected->h1);
    CHECK(back.expected->h2 == y.expected->h2);
    CHECK(back.expected->size == y.expected->size);

    std::ostringstream out2;
    save_set_file(out2, g, back);
    CHECK(out2.str() == bytes);

    // Identical verification reports on both sides of the trip.
    IntriguingReport a = check_intriguing(g, y);
    IntriguingReport b = check_intriguing(g, back);
    CHECK(a.h1 == b.h1);
    CHECK(a.h2 == b.h2);
    CHECK(a.type == b.type);
    CHECK(a.matches_expected == b.matches_expected);
}

TEST_CASE("hermitian pair coordinates round-trip") {
    Graph g = build_graph({Family::NU, 2, 3});
    VertexSet m0 = orbit_union_sets(g).front();
    std::ostringstream out;
    save_set_file(out, g, m0);
    std::istringstream in(out.str());
    VertexSet back = resolve_set(load_set_file(in), g);
    CHECK(back.indices == m0.indices);
}

TEST_CASE("split-model graphs are named in the header") {
    Graph g = build_graph({Family::NO_perp, 3, 2, +1, Model::split});
    VertexSet o = orbit_union_sets(g).front();
    std::ostringstream out;
    save_set_file(out, g, o);
    CHECK(out.str().find("model=split") != std::string::npos);
    std::istringstream in(out.str());
    SetFile sf = load_set_file(in);
    CHECK(sf.spec.model == Model::split);
    CHECK(resolve_set(sf, g).indices == o.indices);
}

TEST_CASE("malformed files are rejected") {
    Graph g = build_graph({Family::NO_even2, 2, 2, -1});
    {
        std::istringstream in("no header\n");
        CHECK_THROWS_AS(load_set_file(in), SetFileError);
    }
    {
        // A singular point is not a vertex.
        std::istringstream in("# graph: no-even2 q=2 r=2 eps=-1\n([1],[0],[0],[0])\n");
        SetFile sf = load_set_file(in);
        CHECK_THROWS_AS(resolve_set(sf, g), SetFileError);
    }
    {
        std::istringstream in("# graph: no-even2 q=2 r=2 eps=-1\n([1],[0],[0)\n");
        CHECK_THROWS_AS(load_set_file(in), SetFileError);
    }
}
