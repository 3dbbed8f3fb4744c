#pragma once

#include <random>
#include <vector>

#include "genrank/complex.hpp"

namespace genrank {

using Rng = std::mt19937_64;

struct RandomOptions {
    std::size_t min_points = 1;
    std::size_t max_points = 8;
    std::size_t max_edges = 10;
    Vertex vertices = 6;
    int max_dim = 3;              // largest simplex in any complex
    std::size_t max_simplices = 25;
    int min_degree = 0;
    int max_degree = 2;
    std::size_t max_generators = 3;  // per point
};

// Connected DAG; labels P0, P1, ...
Poset random_poset(Rng& rng, std::size_t points, std::size_t max_edges);

// Births are random simplices and hollow (k+1)-simplices, inherited along edges.
// Retries until every complex has at most max_simplices simplices.
PFiltration random_filtration(Rng& rng, const RandomOptions& options);

// Random walk that covers every edge at least once.
std::vector<PointId> random_tour(Rng& rng, const Poset& p);

}  // namespace genrank
