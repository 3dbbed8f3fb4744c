#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "genrank/annotation.hpp"
#include "genrank/random.hpp"

using namespace genrank;
using fixtures::complex_of;

TEST_CASE("simplex ordering and faces", "[complex-filtration]") {
    Simplex t{2, 0, 1};
    CHECK(t.vertices() == std::vector<Vertex>{0, 1, 2});
    CHECK(t.dim() == 2);
    CHECK(Simplex{5} < Simplex{0, 1});
    CHECK(Simplex{0, 2} < Simplex{1, 2});
    CHECK(t.facet(0) == Simplex{1, 2});
    CHECK_THROWS_AS(Simplex({1, 1}), InputError);
    CHECK_THROWS_AS(Simplex(std::vector<Vertex>{}), InputError);
    CHECK(to_string(t) == "0-1-2");
}

TEST_CASE("validate_filtration examples", "[complex-filtration]") {
    CHECK_FALSE(validate_filtration(fixtures::single("0 1 2 0-1 1-2 0-2 0-1-2", 1)));

    PFiltration drop;
    drop.poset = {{"p", "q"}, {{0, 1}}};
    drop.complexes = {complex_of("0 1 0-1"), complex_of("0 1")};
    auto d = validate_filtration(drop);
    REQUIRE(d);
    CHECK(d->message.find("p -> q") != std::string::npos);
    CHECK(d->message.find("0-1") != std::string::npos);

    auto open = validate_filtration(fixtures::single("2 1-2", 1));
    REQUIRE(open);
    CHECK(open->message.find("not face-closed") != std::string::npos);
}

TEST_CASE("size_stats examples", "[complex-filtration]") {
    auto s = size_stats(fixtures::single("0 1 2 0-1 1-2 0-2 0-1-2", 1));
    CHECK(s == SizeStats{1, 0, 1, 7});

    PFiltration two;
    two.poset = {{"p", "q"}, {{0, 1}}};
    two.complexes = {complex_of("0"), complex_of("0 1 0-1 2")};
    CHECK(size_stats(two).e == 3);

    // A->D and B->D add the chord 0-2, D->C adds the triangle 0-1-2.
    CHECK(size_stats(fixtures::filtration("fig2_top.grk")) == SizeStats{7, 3, 7, 10});
    // A->D and B->D add a whole loop (6 each), D->C adds the annulus (12).
    CHECK(size_stats(fixtures::filtration("fig2_bottom.grk")) == SizeStats{7, 24, 24, 24});
}

TEST_CASE("unfold_filtration examples", "[complex-filtration]") {
    PFiltration f;
    f.poset = {{"A", "B"}, {{0, 1}}};
    f.complexes = {complex_of("0 1"), complex_of("0 1 0-1")};
    auto zf = unfold_filtration(f, unfold(f.poset));
    REQUIRE(zf.elementary.size() == 2);
    CHECK(zf.elementary[0] == std::vector<Elementary>{{Simplex{0, 1}, true}});
    CHECK(zf.elementary[1] == std::vector<Elementary>{{Simplex{0, 1}, false}});

    PFiltration flat;
    flat.poset = {{"A", "B", "C"}, {{0, 1}, {2, 1}}};
    flat.complexes.assign(3, complex_of("0 1 0-1"));
    for (const auto& ops : unfold_filtration(flat, unfold(flat.poset)).elementary) CHECK(ops.empty());
}

TEST_CASE("replaying elementary lists reproduces every complex", "[complex-filtration]") {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_filtration(rng, {});
        auto zf = unfold_filtration(f, unfold(f.poset));
        for (std::size_t i = 0; i + 1 < zf.size(); ++i) {
            SimplicialComplex c = zf.complex(i);
            for (const auto& op : zf.elementary[i]) {
                c = apply_elementary(c, {op});
                REQUIRE_FALSE(c.closure_violation());
            }
            CHECK(c == zf.complex(i + 1));
        }
    }
}

TEST_CASE("cone examples", "[complex-filtration]") {
    PrimeField f2(2);
    auto tri = fixtures::single("0 1 2 0-1 1-2 0-2", 1);
    auto index = index_of(tri);

    auto empty = cone(tri, index, {Chain{}}, f2);
    CHECK(empty.complexes[0].size() == tri.complexes[0].size() + 1);
    CHECK(empty.complexes[0].contains(Simplex{3}));

    auto filled = cone(tri, index, {fixtures::chain_of(index, "0-1 1-2 0-2")}, f2);
    CHECK(filled.complexes[0].size() == 6 + 1 + 3 + 3);
    CHECK(annotate_complex(filled.complexes[0], 1, f2).g == 0);

    CHECK_THROWS_AS(cone(tri, index, {fixtures::chain_of(index, "0-1")}, f2), InputError);
    CHECK_THROWS_AS(cone(tri, index, {Chain{}}, f2, 1), InputError);
}

TEST_CASE("coning a foldable full interval kills its class everywhere", "[complex-filtration]") {
    PrimeField f2(2);
    auto f = fixtures::filtration("fig2_top.grk");
    auto ctx = make_context(f, f2, fixtures::tour("fig2_top.grk"));
    auto r = generalized_rank(ctx);
    REQUIRE(r.rank == 1);
    auto coned = cone(f, *ctx.index, r.complete_modules[0], f2);
    REQUIRE_FALSE(validate_filtration(coned));
    auto coned_index = std::make_shared<const SimplexIndex>(index_of(coned));
    auto tables = annotate_filtration(coned, coned_index, f2);
    for (PointId p = 0; p < f.poset.size(); ++p) {
        Chain z;
        for (const auto& t : r.complete_modules[0][p])
            z.push_back({coned_index->id(ctx.index->simplex(t.cell)), t.coeff});
        CHECK(annotate_cycle(tables[p], normalized(z, f2), f2).isZero());
    }
}

TEST_CASE("coning the converted figure 4 module leaves rank zero", "[complex-filtration]") {
    PrimeField f2(2);
    auto f = fixtures::filtration("fig4.grk");
    auto ctx = make_context(f, f2, fixtures::tour("fig4.grk"));
    auto r = generalized_rank(ctx);
    REQUIRE(r.rank == 1);
    auto coned = cone(f, *ctx.index, r.complete_modules[0], f2);
    CHECK(limit_to_colimit_rank(module_from_filtration(coned, f2), f2) == 0);
}
