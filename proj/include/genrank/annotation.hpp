#pragma once

#include <memory>
#include <vector>

#include "genrank/complex.hpp"

namespace genrank {

struct AnnotationTable {
    std::shared_ptr<const SimplexIndex> index;
    PointId point = 0;
    int degree = 0;
    Index g = 0;
    std::vector<Index> simplices;      // ids of the k-simplices, ascending
    Matrix columns;                    // g x simplices.size()
    std::vector<Chain> basis_cycles;   // g cycles, annotated by the unit vectors

    // Position of a k-simplex id in `simplices`, or -1.
    Index column_of(Index id) const;
};

// members: ids of the complex's simplices in `index`. extra_cells: boundaries of
// additional (k+1)-cells glued onto the complex.
AnnotationTable annotate_complex(std::shared_ptr<const SimplexIndex> index, const std::vector<Index>& members, int k,
                                 const PrimeField& field, const std::vector<Chain>& extra_cells = {});

AnnotationTable annotate_complex(const SimplicialComplex& c, int k, const PrimeField& field);

Vector annotate_cycle(const AnnotationTable& t, const Chain& z, const PrimeField& field, bool check_cycle = false);

Matrix annotate_batch(const AnnotationTable& t, const std::vector<Chain>& cycles, const PrimeField& field);

// One table per poset point, all sharing one index.
std::vector<AnnotationTable> annotate_filtration(const PFiltration& f, std::shared_ptr<const SimplexIndex> index,
                                                 const PrimeField& field);

}  // namespace genrank
