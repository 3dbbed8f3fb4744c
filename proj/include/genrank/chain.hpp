#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "genrank/field.hpp"
#include "genrank/linalg.hpp"

namespace genrank {

struct ChainTerm {
    Index cell;
    Residue coeff;
    friend bool operator==(const ChainTerm&, const ChainTerm&) = default;
};

// Sorted by cell, no zero coefficients.
using Chain = std::vector<ChainTerm>;

Chain add_scaled(const Chain& a, const Chain& b, Residue c, const PrimeField& field);
Chain scaled(const Chain& a, Residue c, const PrimeField& field);
Chain normalized(Chain a, const PrimeField& field);

// Columns with pairwise distinct pivots, the pivot being the smallest cell.
class PivotBasis {
public:
    explicit PivotBasis(const PrimeField& field) : field_(field) {}

    // Remainder of c after elimination; `used` collects (slot, coefficient) with c = sum + remainder.
    Chain reduce(Chain c, std::vector<std::pair<std::size_t, Residue>>* used = nullptr) const;
    // Slot of the reduced column, or -1 when c is dependent.
    long add(const Chain& c);
    const Chain& column(std::size_t slot) const { return cols_[slot]; }
    std::size_t size() const { return cols_.size(); }

private:
    PrimeField field_;
    std::vector<Chain> cols_;
    std::unordered_map<Index, std::size_t> owner_;
};

}  // namespace genrank
