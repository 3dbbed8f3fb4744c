#include "genrank/oracle.hpp"

#include <stdexcept>

namespace genrank {

namespace {

std::vector<Index> offsets(const ExplicitModule& m) {
    std::vector<Index> off(m.dims.size() + 1, 0);
    for (std::size_t p = 0; p < m.dims.size(); ++p) off[p + 1] = off[p] + m.dims[p];
    return off;
}

std::vector<PointId> topological_order(const Poset& p) {
    std::vector<int> indeg(p.size(), 0);
    for (auto [a, b] : p.edges) ++indeg[b];
    std::vector<PointId> order, ready;
    for (PointId v = p.size(); v-- > 0;)
        if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        PointId v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (auto [a, b] : p.edges)
            if (a == v && --indeg[b] == 0) ready.push_back(b);
    }
    return order;
}

}  // namespace

std::optional<Diagnostic> validate_module(const ExplicitModule& m, const PrimeField& field) {
    if (auto d = validate(m.poset)) return d;
    if (m.dims.size() != m.poset.size()) return Diagnostic{"dimension count does not match point count"};
    if (m.edge_maps.size() != m.poset.edges.size()) return Diagnostic{"map count does not match edge count"};
    for (std::size_t e = 0; e < m.poset.edges.size(); ++e) {
        auto [p, q] = m.poset.edges[e];
        const auto& a = m.edge_maps[e];
        std::string name = m.poset.labels[p] + " -> " + m.poset.labels[q];
        if (a.rows() != m.dims[q] || a.cols() != m.dims[p]) return Diagnostic{"map " + name + " has the wrong shape"};
        if (a != Matrix(reduced_entries(a, field))) return Diagnostic{"map " + name + " has unreduced entries"};
    }
    auto order = topological_order(m.poset);
    for (PointId s = 0; s < m.poset.size(); ++s) {
        std::vector<std::optional<Matrix>> comp(m.poset.size());
        comp[s] = Matrix::Identity(m.dims[s], m.dims[s]);
        for (PointId v : order) {
            if (!comp[v]) continue;
            for (std::size_t e = 0; e < m.poset.edges.size(); ++e) {
                auto [a, b] = m.poset.edges[e];
                if (a != v) continue;
                Matrix next = multiply(m.edge_maps[e], *comp[v], field);
                if (!comp[b])
                    comp[b] = next;
                else if (*comp[b] != next)
                    return Diagnostic{"paths from " + m.poset.labels[s] + " to " + m.poset.labels[b] +
                                      " do not commute"};
            }
        }
    }
    return std::nullopt;
}

ExplicitModule module_from_filtration(const PFiltration& f, const PrimeField& field) {
    auto index = std::make_shared<const SimplexIndex>(index_of(f));
    auto tables = annotate_filtration(f, index, field);
    ExplicitModule m;
    m.poset = f.poset;
    for (const auto& t : tables) m.dims.push_back(t.g);
    for (auto [p, q] : f.poset.edges) m.edge_maps.push_back(annotate_batch(tables[q], tables[p].basis_cycles, field));
    return m;
}

ExplicitModule restrict_zigzag(const ZigzagModule& z, std::size_t b, std::size_t d) {
    ExplicitModule m;
    for (std::size_t q = b; q <= d; ++q) {
        m.poset.labels.push_back("q" + std::to_string(q));
        m.dims.push_back(z.dims[q]);
    }
    for (std::size_t i = b; i < d; ++i) {
        PointId here = i - b, next = i + 1 - b;
        if (z.arrows[i] == Arrow::forward)
            m.poset.edges.push_back({here, next});
        else
            m.poset.edges.push_back({next, here});
        m.edge_maps.push_back(z.maps[i]);
    }
    return m;
}

LimitResult limit(const ExplicitModule& m, const PrimeField& field) {
    auto off = offsets(m);
    Index rows = 0;
    for (auto [p, q] : m.poset.edges) rows += m.dims[q];
    Matrix c = Matrix::Zero(rows, off.back());
    Index r = 0;
    for (std::size_t e = 0; e < m.poset.edges.size(); ++e) {
        auto [p, q] = m.poset.edges[e];
        c.block(r, off[p], m.dims[q], m.dims[p]) = m.edge_maps[e];
        c.block(r, off[q], m.dims[q], m.dims[q]) -= Matrix::Identity(m.dims[q], m.dims[q]);
        r += m.dims[q];
    }
    LimitResult out;
    out.basis = kernel(Matrix(reduced_entries(c, field)), field);
    out.dimension = out.basis.cols();
    return out;
}

ColimitResult colimit(const ExplicitModule& m, const PrimeField& field) {
    auto off = offsets(m);
    const Index n = off.back();
    Matrix rel = Matrix::Zero(n, 0);
    for (std::size_t e = 0; e < m.poset.edges.size(); ++e) {
        auto [p, q] = m.poset.edges[e];
        Matrix block = Matrix::Zero(n, m.dims[p]);
        block.middleRows(off[p], m.dims[p]) = Matrix::Identity(m.dims[p], m.dims[p]);
        block.middleRows(off[q], m.dims[q]) -= m.edge_maps[e];
        Matrix grown(n, rel.cols() + block.cols());
        grown << rel, block;
        rel = std::move(grown);
    }
    auto red = column_reduce(Matrix(reduced_entries(rel, field)), field);
    std::vector<Index> owner(static_cast<std::size_t>(n), -1);
    for (Index j = 0; j < rel.cols(); ++j)
        if (red.pivots[static_cast<std::size_t>(j)] >= 0) owner[static_cast<std::size_t>(red.pivots[static_cast<std::size_t>(j)])] = j;
    std::vector<Index> free_rows;
    for (Index row = 0; row < n; ++row)
        if (owner[static_cast<std::size_t>(row)] < 0) free_rows.push_back(row);

    ColimitResult out;
    out.dimension = static_cast<Index>(free_rows.size());
    out.projection = Matrix::Zero(out.dimension, n);
    for (Index i = 0; i < n; ++i) {
        Vector x = Vector::Zero(n);
        x(i) = 1;
        Index slot = 0;
        for (Index row = 0; row < n; ++row) {
            if (x(row) == 0) {
                slot += owner[static_cast<std::size_t>(row)] < 0;
                continue;
            }
            Index j = owner[static_cast<std::size_t>(row)];
            if (j >= 0) {
                Residue c = field.div(x(row), red.reduced(row, j));
                x = reduced_entries(x - c * red.reduced.col(j), field);
            } else {
                out.projection(slot++, i) = x(row);
                x(row) = 0;
            }
        }
    }
    return out;
}

Index limit_to_colimit_rank(const ExplicitModule& m, const PrimeField& field) {
    auto off = offsets(m);
    auto lim = limit(m, field);
    auto colim = colimit(m, field);
    std::optional<Index> result;
    for (std::size_t p = 0; p < m.dims.size(); ++p) {
        Matrix at_p = Matrix::Zero(off.back(), lim.dimension);
        at_p.middleRows(off[p], m.dims[p]) = lim.basis.middleRows(off[p], m.dims[p]);
        Index r = rank(multiply(colim.projection, at_p, field), field);
        if (result && *result != r) throw std::logic_error("limit-to-colimit rank depends on the point");
        result = r;
    }
    return result.value_or(0);
}

}  // namespace genrank
