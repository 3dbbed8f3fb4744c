#include "genrank/annotation.hpp"

#include <algorithm>
#include <unordered_map>

namespace genrank {

Index AnnotationTable::column_of(Index id) const {
    auto it = std::lower_bound(simplices.begin(), simplices.end(), id);
    if (it == simplices.end() || *it != id) return -1;
    return static_cast<Index>(it - simplices.begin());
}

AnnotationTable annotate_complex(std::shared_ptr<const SimplexIndex> index, const std::vector<Index>& members, int k,
                                 const PrimeField& field, const std::vector<Chain>& extra_cells) {
    AnnotationTable t;
    t.index = index;
    t.degree = k;
    std::vector<Index> lower, upper;
    for (Index id : members) {
        int d = index->simplex(id).dim();
        if (d == k) t.simplices.push_back(id);
        if (d == k + 1) upper.push_back(id);
    }
    std::sort(t.simplices.begin(), t.simplices.end());
    std::sort(upper.begin(), upper.end());

    // Everything below works on chains over local k-cell positions.
    auto to_local = [&](const Chain& c) {
        Chain out;
        for (const auto& term : c) {
            Index pos = t.column_of(term.cell);
            if (pos < 0) throw InputError("cell boundary leaves the complex: " + to_string(index->simplex(term.cell)));
            out.push_back({pos, term.coeff});
        }
        return normalized(std::move(out), field);
    };
    const auto n = static_cast<Index>(t.simplices.size());

    // Cycle basis of C_k from reducing the k-boundaries.
    std::vector<Chain> cycles;
    if (k == 0) {
        for (Index i = 0; i < n; ++i) cycles.push_back({{i, 1}});
    } else {
        std::vector<Chain> transforms;
        std::vector<Chain> reduced;
        std::unordered_map<Index, std::size_t> owner;
        for (Index i = 0; i < n; ++i) {
            Chain col = normalized(index->boundary(t.simplices[static_cast<std::size_t>(i)]), field);
            Chain v{{i, 1}};
            while (!col.empty()) {
                auto it = owner.find(col.front().cell);
                if (it == owner.end()) break;
                Residue coef = field.div(col.front().coeff, reduced[it->second].front().coeff);
                col = add_scaled(col, reduced[it->second], field.neg(coef), field);
                v = add_scaled(v, transforms[it->second], field.neg(coef), field);
            }
            if (col.empty()) {
                cycles.push_back(std::move(v));
            } else {
                owner.emplace(col.front().cell, reduced.size());
                reduced.push_back(std::move(col));
                transforms.push_back(std::move(v));
            }
        }
    }

    enum class Kind { boundary, cycle, unit };
    PivotBasis basis(field);
    std::vector<Kind> kind;
    std::vector<Index> h_slot;  // basis slot -> homology coordinate, or -1
    auto push = [&](const Chain& c, Kind what) {
        long slot = basis.add(c);
        if (slot < 0) return;
        kind.push_back(what);
        h_slot.push_back(what == Kind::cycle ? t.g++ : -1);
    };
    for (Index id : upper) push(to_local(index->boundary(id)), Kind::boundary);
    for (const auto& c : extra_cells) push(to_local(c), Kind::boundary);
    for (const auto& z : cycles) push(z, Kind::cycle);
    for (Index i = 0; i < n; ++i) push({{i, 1}}, Kind::unit);

    for (std::size_t slot = 0; slot < kind.size(); ++slot) {
        if (kind[slot] != Kind::cycle) continue;
        Chain global;
        for (const auto& term : basis.column(slot))
            global.push_back({t.simplices[static_cast<std::size_t>(term.cell)], term.coeff});
        t.basis_cycles.push_back(std::move(global));
    }

    t.columns = Matrix::Zero(t.g, n);
    for (Index i = 0; i < n; ++i) {
        std::vector<std::pair<std::size_t, Residue>> used;
        basis.reduce({{i, 1}}, &used);
        for (auto [slot, coef] : used)
            if (h_slot[slot] >= 0) t.columns(h_slot[slot], i) = field.add(t.columns(h_slot[slot], i), coef);
    }
    return t;
}

AnnotationTable annotate_complex(const SimplicialComplex& c, int k, const PrimeField& field) {
    auto index = std::make_shared<const SimplexIndex>(std::vector<Simplex>(c.begin(), c.end()));
    return annotate_complex(index, index->ids(c), k, field);
}

Vector annotate_cycle(const AnnotationTable& t, const Chain& z, const PrimeField& field, bool check_cycle) {
    Vector out = Vector::Zero(t.g);
    for (const auto& term : z) {
        Index col = t.column_of(term.cell);
        if (col < 0) {
            std::string name = term.cell >= 0 && static_cast<std::size_t>(term.cell) < t.index->size()
                                   ? to_string(t.index->simplex(term.cell))
                                   : std::to_string(term.cell);
            throw InputError("annotate: simplex " + name + " is not a " + std::to_string(t.degree) +
                             "-simplex of the complex");
        }
        out += field.reduce(term.coeff) * t.columns.col(col);
    }
    if (check_cycle && !boundary(*t.index, z, field).empty()) throw InputError("annotate: chain is not a cycle");
    return reduced_entries(out, field);
}

Matrix annotate_batch(const AnnotationTable& t, const std::vector<Chain>& cycles, const PrimeField& field) {
    Matrix g = Matrix::Zero(static_cast<Index>(t.simplices.size()), static_cast<Index>(cycles.size()));
    for (std::size_t j = 0; j < cycles.size(); ++j)
        for (const auto& term : cycles[j]) {
            Index col = t.column_of(term.cell);
            if (col < 0) throw InputError("annotate: chain leaves the complex");
            g(col, static_cast<Index>(j)) = field.add(g(col, static_cast<Index>(j)), term.coeff);
        }
    return multiply(t.columns, g, field);
}

std::vector<AnnotationTable> annotate_filtration(const PFiltration& f, std::shared_ptr<const SimplexIndex> index,
                                                 const PrimeField& field) {
    std::vector<AnnotationTable> out;
    out.reserve(f.poset.size());
    for (PointId p = 0; p < f.poset.size(); ++p) {
        out.push_back(annotate_complex(index, index->ids(f.complexes[p]), f.degree, field));
        out.back().point = p;
    }
    return out;
}

}  // namespace genrank
