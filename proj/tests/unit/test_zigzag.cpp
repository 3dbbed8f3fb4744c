#include <catch_amalgamated.hpp>

#include <map>

#include "fixtures.hpp"
#include "genrank/oracle.hpp"
#include "genrank/random.hpp"

using namespace genrank;

namespace {

using Barcode = std::map<std::pair<std::size_t, std::size_t>, Index>;

// Multiplicity of [b,d] by inclusion-exclusion of generalized ranks over sub-paths.
Barcode rank_barcode(const ZigzagModule& m, const PrimeField& f) {
    const std::size_t n = m.dims.size();
    auto r = [&](long b, long d) -> Index {
        if (b < 0 || d >= static_cast<long>(n)) return 0;
        return limit_to_colimit_rank(restrict_zigzag(m, static_cast<std::size_t>(b), static_cast<std::size_t>(d)), f);
    };
    Barcode out;
    for (long b = 0; b < static_cast<long>(n); ++b)
        for (long d = b; d < static_cast<long>(n); ++d) {
            Index k = r(b, d) - r(b - 1, d) - r(b, d + 1) + r(b - 1, d + 1);
            if (k) out[{b, d}] = k;
        }
    return out;
}

Barcode barcode_of(const Decomposition& d) {
    Barcode out;
    for (const auto& iv : d.intervals) ++out[{iv.birth, iv.death}];
    return out;
}

}  // namespace

TEST_CASE("constant point complex in degree 0 is one full bar", "[zigzag-reps]") {
    PFiltration f;
    f.poset = {{"A", "B"}, {{0, 1}}};
    f.complexes.assign(2, fixtures::complex_of("0"));
    f.degree = 0;
    auto zf = unfold_filtration(f, unfold(f.poset));
    auto d = decompose(zf, 0, PrimeField(2));
    REQUIRE(d.intervals.size() == 1);
    CHECK(d.intervals[0].full(zf.size() - 1));
    CHECK(is_limit_module(d.intervals[0], zf));
}

TEST_CASE("figure 2 top decomposes into a full bar and two D bars", "[zigzag-reps]") {
    auto f = fixtures::filtration("fig2_top.grk");
    auto zf = unfold_filtration(f, unfold(f.poset, fixtures::tour("fig2_top.grk")));
    auto d = decompose(zf, 1, PrimeField(2));
    CHECK(barcode_of(d) == Barcode{{{0, 4}, 1}, {{1, 1}, 1}, {{3, 3}, 1}});
    CHECK(d.intervals[0].full(4));
    CHECK(is_limit_module(d.intervals[0], zf));
}

TEST_CASE("limit modules are the open-open intervals", "[zigzag-reps]") {
    // A <- D -> C <- D -> B: the D points are local maxima.
    auto f = fixtures::filtration("three_loops.grk");
    auto zf = unfold_filtration(f, unfold(f.poset, fixtures::tour("three_loops.grk")));
    auto d = decompose(zf, 1, PrimeField(2));
    bool saw_peak = false, saw_closed = false;
    for (const auto& iv : d.intervals) {
        bool open = iv.birth_type == Endpoint::open && iv.death_type == Endpoint::open;
        CHECK(is_limit_module(iv, zf) == open);
        if (iv.birth == 1 && iv.death == 1) {
            saw_peak = true;
            CHECK(is_limit_module(iv, zf));
        }
    }
    CHECK(saw_peak);

    auto g = fixtures::filtration("fig2_top.grk");
    auto zg = unfold_filtration(g, unfold(g.poset, fixtures::tour("fig2_top.grk")));
    for (const auto& iv : decompose(zg, 1, PrimeField(2)).intervals)
        if (iv.birth == 1) {
            saw_closed = true;
            CHECK(iv.birth_type == Endpoint::closed);
            CHECK_FALSE(is_limit_module(iv, zg));
        }
    CHECK(saw_closed);
}

TEST_CASE("rep_sum examples", "[zigzag-reps]") {
    PrimeField f2(2);
    auto f = fixtures::filtration("fig2_top.grk");
    auto zf = unfold_filtration(f, unfold(f.poset, fixtures::tour("fig2_top.grk")));
    auto d = decompose(zf, 1, f2);
    const auto& full = d.intervals[0];
    auto one = rep_sum({{1, &full}}, zf.size(), f2);
    CHECK(one == full.reps);
    for (const auto& c : rep_sum({{1, &full}, {1, &full}}, zf.size(), f2)) CHECK(c.empty());
}

TEST_CASE("decompositions satisfy their invariants and match the rank barcode", "[zigzag-reps]") {
    Rng rng(17);
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        RandomOptions opt;
        opt.max_points = 5;
        opt.max_edges = 5;
        auto f = random_filtration(rng, opt);
        Residue p = trial % 3 == 0 ? 3 : 2;
        PrimeField field(p);
        auto ctx = make_context(f, field, random_tour(rng, f.poset));
        if (ctx.zigzag.size() > 12) continue;
        ++checked;
        auto d = decompose_tables(ctx.point_tables, ctx.zigzag.arrows, field);
        auto diag = check_decomposition(d, ctx.point_tables, ctx.zigzag.arrows, field);
        INFO((diag ? diag->message : ""));
        CHECK_FALSE(diag);
        CHECK(barcode_of(d) == rank_barcode(induced_module(ctx.point_tables, ctx.zigzag.arrows, field), field));
        for (std::size_t k = 0; k + 1 < d.intervals.size(); ++k) {
            const auto& a = d.intervals[k];
            const auto& b = d.intervals[k + 1];
            CHECK(std::tuple(a.birth, a.death, a.reps.front().front().cell) <=
                  std::tuple(b.birth, b.death, b.reps.front().front().cell));
        }
        for (const auto& iv : d.intervals) CHECK(iv.reps.front().front().coeff == 1);
    }
    CHECK(checked > 50);
}

TEST_CASE("coefficients of a sum of limit modules are recovered uniquely", "[zigzag-reps]") {
    PrimeField f2(2);
    Rng rng(29);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 40; ++trial) {
        auto f = random_filtration(rng, {});
        auto ctx = make_context(f, f2);
        auto d = decompose_tables(ctx.point_tables, ctx.zigzag.arrows, f2);
        std::vector<const IntervalModule*> limits;
        for (const auto& iv : d.intervals)
            if (iv.birth_type == Endpoint::open && iv.death_type == Endpoint::open) limits.push_back(&iv);
        if (limits.size() < 2) continue;
        ++tested;
        std::vector<std::pair<Residue, const IntervalModule*>> terms;
        Vector want(static_cast<Index>(limits.size()));
        for (std::size_t r = 0; r < limits.size(); ++r) {
            want(static_cast<Index>(r)) = static_cast<Residue>(rng() % 2);
            terms.push_back({want(static_cast<Index>(r)), limits[r]});
        }
        auto sum = rep_sum(terms, ctx.zigzag.size(), f2);
        auto stacked = [&](const std::vector<Chain>& reps) {
            std::vector<Residue> out;
            for (std::size_t q = 0; q < reps.size(); ++q) {
                Vector a = annotate_cycle(ctx.table_at(q), reps[q], f2);
                out.insert(out.end(), a.data(), a.data() + a.size());
            }
            return out;
        };
        auto target = stacked(sum);
        Matrix a(static_cast<Index>(target.size()), static_cast<Index>(limits.size()));
        for (std::size_t r = 0; r < limits.size(); ++r) {
            auto col = stacked(rep_sum({{1, limits[r]}}, ctx.zigzag.size(), f2));
            for (std::size_t i = 0; i < col.size(); ++i) a(static_cast<Index>(i), static_cast<Index>(r)) = col[i];
        }
        CHECK(rank(a, f2) == static_cast<Index>(limits.size()));
        auto got = solve(a, Eigen::Map<Vector>(target.data(), static_cast<Index>(target.size())), f2);
        REQUIRE(got);
        CHECK(*got == want);
    }
    CHECK(tested > 10);
}
