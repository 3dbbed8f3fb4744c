#pragma once

#include <optional>
#include <vector>

#include "genrank/complex.hpp"
#include "genrank/zigzag.hpp"

namespace genrank {

struct ExplicitModule {
    Poset poset;
    std::vector<Index> dims;
    std::vector<Matrix> edge_maps;  // edge_maps[e] is dims[q] x dims[p] for edge e = (p, q)
};

// Shapes, entry ranges, and commutativity of every pair of parallel paths.
std::optional<Diagnostic> validate_module(const ExplicitModule& m, const PrimeField& field);

ExplicitModule module_from_filtration(const PFiltration& f, const PrimeField& field);

// The zigzag module restricted to points [b, d], as a module over a path poset.
ExplicitModule restrict_zigzag(const ZigzagModule& m, std::size_t b, std::size_t d);

struct LimitResult {
    Index dimension = 0;
    Matrix basis;  // columns are global sections in the stacked coordinates
};

struct ColimitResult {
    Index dimension = 0;
    Matrix projection;  // dimension x total
};

LimitResult limit(const ExplicitModule& m, const PrimeField& field);
ColimitResult colimit(const ExplicitModule& m, const PrimeField& field);

// Throws std::logic_error if the rank depends on the point used.
Index limit_to_colimit_rank(const ExplicitModule& m, const PrimeField& field);

}  // namespace genrank
