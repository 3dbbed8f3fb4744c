#include "genrank/random.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace genrank {

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<Vertex> random_vertices(Rng& rng, Vertex pool, int count) {
    std::vector<Vertex> all(static_cast<std::size_t>(pool));
    std::iota(all.begin(), all.end(), Vertex{0});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(count));
    return all;
}

}  // namespace

Poset random_poset(Rng& rng, std::size_t points, std::size_t max_edges) {
    Poset p;
    for (std::size_t i = 0; i < points; ++i) p.labels.push_back("P" + std::to_string(i));
    std::vector<std::size_t> rank_of(points);
    std::iota(rank_of.begin(), rank_of.end(), std::size_t{0});
    std::shuffle(rank_of.begin(), rank_of.end(), rng);
    std::set<Edge> have;
    auto link = [&](PointId a, PointId b) {
        Edge e = rank_of[a] < rank_of[b] ? Edge{a, b} : Edge{b, a};
        if (!have.insert(e).second) return false;
        p.edges.push_back(e);
        return true;
    };
    for (PointId v = 1; v < points; ++v) link(v, pick(rng, 0, v - 1));
    std::size_t possible = points * (points - 1) / 2;
    std::size_t target = std::min(max_edges, possible);
    if (target > p.edges.size()) target = pick(rng, p.edges.size(), target);
    while (p.edges.size() < target) {
        PointId a = pick(rng, 0, points - 1), b = pick(rng, 0, points - 1);
        if (a != b) link(a, b);
    }
    return p;
}

PFiltration random_filtration(Rng& rng, const RandomOptions& options) {
    for (;;) {
        PFiltration f;
        f.poset = random_poset(rng, pick(rng, options.min_points, options.max_points), options.max_edges);
        f.degree = static_cast<int>(pick(rng, static_cast<std::size_t>(options.min_degree),
                                         static_cast<std::size_t>(options.max_degree)));
        // A hollow simplex may sit one dimension above max_dim since only its boundary is added.
        const int top = std::min<int>(options.max_dim + 1, static_cast<int>(options.vertices) - 1);
        std::vector<SimplicialComplex> births(f.poset.size());
        for (auto& b : births) {
            std::size_t count = pick(rng, 0, options.max_generators);
            for (std::size_t g = 0; g < count; ++g) {
                // Hollow (k+1)-simplices seed k-cycles; solid simplices fill them.
                int d = static_cast<int>(pick(rng, 0, static_cast<std::size_t>(top)));
                bool hollow = d > options.max_dim || (d > 0 && pick(rng, 0, 1) == 0);
                Simplex s(random_vertices(rng, options.vertices, d + 1));
                if (hollow)
                    for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i) b.insert_closed(s.facet(i));
                else
                    b.insert_closed(s);
            }
        }
        // Inherit along edges in topological order.
        f.complexes = births;
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto [a, c] : f.poset.edges)
                for (const auto& s : f.complexes[a]) changed |= f.complexes[c].insert(s);
        }
        bool ok = true;
        for (const auto& c : f.complexes) ok &= c.size() <= options.max_simplices;
        if (ok) return f;
    }
}

std::vector<PointId> random_tour(Rng& rng, const Poset& p) {
    std::vector<std::vector<std::pair<PointId, std::size_t>>> adj(p.size());
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
        adj[p.edges[e].first].push_back({p.edges[e].second, e});
        adj[p.edges[e].second].push_back({p.edges[e].first, e});
    }
    std::vector<PointId> walk{pick(rng, 0, p.size() - 1)};
    std::vector<bool> covered(p.edges.size(), false);
    std::size_t left = p.edges.size();
    while (left > 0) {
        const auto& nb = adj[walk.back()];
        auto [w, e] = nb[pick(rng, 0, nb.size() - 1)];
        if (!covered[e]) {
            covered[e] = true;
            --left;
        }
        walk.push_back(w);
    }
    return walk;
}

}  // namespace genrank
