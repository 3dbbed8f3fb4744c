#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "genrank/annotation.hpp"

namespace genrank {

enum class Endpoint { open, closed };

struct IntervalModule {
    std::size_t birth = 0;
    std::size_t death = 0;
    Endpoint birth_type = Endpoint::open;
    Endpoint death_type = Endpoint::open;
    std::vector<Chain> reps;  // reps[i] lives at zigzag point birth + i

    bool contains(std::size_t q) const { return birth <= q && q <= death; }
    bool full(std::size_t last) const { return birth == 0 && death == last; }
    const Chain& rep(std::size_t q) const { return reps[q - birth]; }
};

struct Decomposition {
    std::vector<IntervalModule> intervals;
    int degree = 0;
    std::shared_ptr<const SimplexIndex> index;
};

// Homology-level zigzag. maps[i] goes from point i to i+1 for a forward arrow,
// from i+1 to i for a backward one.
struct ZigzagModule {
    std::vector<Index> dims;
    std::vector<Arrow> arrows;
    std::vector<Matrix> maps;
};

struct CoordinateInterval {
    std::size_t birth = 0;
    std::size_t death = 0;
    std::vector<Vector> coords;  // coordinates in the point bases, one per supported point
};

std::vector<CoordinateInterval> decompose_module(const ZigzagModule& m, const PrimeField& field);

ZigzagModule induced_module(const std::vector<const AnnotationTable*>& tables, const std::vector<Arrow>& arrows,
                            const PrimeField& field);

// tables[q] is the table of zigzag point q.
Decomposition decompose_tables(const std::vector<const AnnotationTable*>& tables, const std::vector<Arrow>& arrows,
                               const PrimeField& field);

Decomposition decompose(const ZigzagFiltration& zf, int k, const PrimeField& field);

Endpoint birth_type(std::size_t b, const std::vector<Arrow>& arrows);
Endpoint death_type(std::size_t d, const std::vector<Arrow>& arrows);

bool is_limit_module(const IntervalModule& i, const ZigzagFiltration& zf);

std::vector<Chain> rep_sum(const std::vector<std::pair<Residue, const IntervalModule*>>& targets, std::size_t points,
                           const PrimeField& field);

// Pointwise basis property, rep coherence along in-support arrows, endpoint types.
std::optional<Diagnostic> check_decomposition(const Decomposition& d,
                                              const std::vector<const AnnotationTable*>& tables,
                                              const std::vector<Arrow>& arrows, const PrimeField& field);

}  // namespace genrank
