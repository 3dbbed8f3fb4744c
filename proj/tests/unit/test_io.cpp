#include <catch_amalgamated.hpp>

#include <functional>
#include <sstream>

#include "fixtures.hpp"
#include "genrank/random.hpp"

using namespace genrank;

namespace {

InputDocument text(const std::string& s) {
    std::istringstream in(s);
    return parse_text(in);
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("text documents", "[cli]") {
    auto doc = text("field 3\ndegree 0\npoints A B # two\nedge A B\ncomplex A: 0\ncomplex B: 0 1\n");
    CHECK(doc.field == 3);
    CHECK(doc.degree == 0);
    CHECK(doc.poset.labels == std::vector<std::string>{"A", "B"});
    CHECK(doc.edge_lines == std::vector<int>{4});
    auto f = to_filtration(doc);
    CHECK(f.complexes[1].size() == 2);

    auto births = to_filtration(text("points A B C\nedge A B\nedge B C\nbirth A: 0\nbirth C: 1 0-1\n"));
    CHECK(births.complexes[0].size() == 1);
    CHECK(births.complexes[1].size() == 1);
    CHECK(births.complexes[2].size() == 3);
}

TEST_CASE("parse errors carry line numbers", "[cli]") {
    CHECK(error_of([] { text("points A\nfield 4\n"); }) == "line 2: field characteristic 4 is not prime");
    CHECK(error_of([] { text("points A\nedge A B\n"); }) == "line 2: undeclared point B");
    CHECK(error_of([] { text("points A\nfoo\n"); }) == "line 2: unknown statement 'foo'");
    CHECK(error_of([] { text("points A\ncomplex A: 0-x\n"); }) == "line 2: expected vertex id, got 'x'");
    CHECK(error_of([] { text("points A\ncomplex A: 0\nbirth A: 1\n"); }) ==
          "line 3: mixing 'complex' and 'birth' statements");
    CHECK(error_of([] { text("points A\ncomplex A: 0\ndim A 1\n"); }) ==
          "line 3: module block mixed with a filtration block");
    CHECK(error_of([] { to_filtration(text("points A\n\ncomplex A: 0-1\n")); }) ==
          "line 3: complex at A is not face-closed: simplex 0-1 misses a face");
    CHECK(error_of([] { to_filtration(fixtures::document("nonmonotone.grk")); }) ==
          "line 2: filtration not monotone along edge A -> B: simplex 0-1 of A missing from B");
    CHECK(error_of([] { to_filtration(text("points A B\ncomplex A: 0\n")); }).find("disconnected") !=
          std::string::npos);
}

TEST_CASE("module documents", "[cli]") {
    PrimeField f2(2);
    auto m = to_module(fixtures::document("fig2_top_module.grk"), f2);
    CHECK(m.dims == std::vector<Index>{1, 1, 1, 2});
    CHECK(m.edge_maps[2] == (Matrix(1, 2) << 0, 1).finished());
    CHECK(error_of([&] { to_module(text("points A B\nedge A B\ndim A 1\ndim B 1\nmap A B: 1 1\n"), f2); }) ==
          "line 5: map A -> B needs 1 columns");
    CHECK(error_of([&] { to_module(text("points A B\nedge A B\ndim A 1\nmap B A: 1\n"), f2); }) ==
          "line 4: map B -> A is not along an edge");
    CHECK(error_of([&] {
              to_module(text("points a b c d\nedge a b\nedge a c\nedge b d\nedge c d\n"
                             "dim a 1\ndim b 1\ndim c 1\ndim d 1\n"
                             "map a b: 1\nmap a c: 1\nmap b d: 1\nmap c d: 0\n"),
                        f2);
          }) == "paths from a to d do not commute");
}

TEST_CASE("JSON and text fixtures describe the same filtration", "[cli]") {
    auto a = fixtures::document("fig2_bottom.grk");
    auto b = fixtures::document("fig2_bottom.json");
    auto fa = to_filtration(a);
    auto fb = to_filtration(b);
    CHECK(fa.poset.labels == fb.poset.labels);
    CHECK(fa.poset.edges == fb.poset.edges);
    CHECK(fa.complexes == fb.complexes);
    CHECK(a.tour == b.tour);
    CHECK(error_of([] { parse_json("{\"points\": [\"A\"], \"edges\": [[\"A\", \"Z\"]]}"); }) == "undeclared point Z");
    CHECK(error_of([] { parse_json("{\"points\": "); }).rfind("malformed JSON", 0) == 0);
}

TEST_CASE("tour files", "[cli]") {
    auto p = fixtures::filtration("fig2_top.grk").poset;
    CHECK(parse_tour("A D C D B\n", p) == std::vector<PointId>{0, 3, 2, 3, 1});
    CHECK(parse_tour("tour A D\nC D B", p) == std::vector<PointId>{0, 3, 2, 3, 1});
    CHECK(error_of([&] { parse_tour("A X", p); }) == "line 1: undeclared point X in tour");
}

TEST_CASE("write_text round-trips random filtrations", "[cli]") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_filtration(rng, {});
        auto g = to_filtration(text(write_text(f, 2)));
        CHECK(g.poset.labels == f.poset.labels);
        CHECK(g.poset.edges == f.poset.edges);
        CHECK(g.complexes == f.complexes);
        CHECK(g.degree == f.degree);
    }
}
