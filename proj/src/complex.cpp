#include "genrank/complex.hpp"

#include <algorithm>

namespace genrank {

Simplex::Simplex(std::vector<Vertex> vertices) : v_(std::move(vertices)) {
    if (v_.empty()) throw InputError("empty simplex");
    std::sort(v_.begin(), v_.end());
    if (std::adjacent_find(v_.begin(), v_.end()) != v_.end()) throw InputError("repeated vertex in simplex");
    if (v_.front() < 0) throw InputError("negative vertex id");
}

Simplex Simplex::facet(std::size_t i) const {
    Simplex f;
    f.v_ = v_;
    f.v_.erase(f.v_.begin() + static_cast<std::ptrdiff_t>(i));
    return f;
}

Simplex Simplex::with_vertex(Vertex w) const {
    auto v = v_;
    v.push_back(w);
    return Simplex(std::move(v));
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    if (auto c = a.v_.size() <=> b.v_.size(); c != 0) return c;
    return a.v_ <=> b.v_;
}

std::string to_string(const Simplex& s) {
    std::string out;
    for (std::size_t i = 0; i < s.vertices().size(); ++i) {
        if (i) out += "-";
        out += std::to_string(s.vertices()[i]);
    }
    return out;
}

void SimplicialComplex::insert_closed(const Simplex& s) {
    if (!s_.insert(s).second) return;
    if (s.dim() == 0) return;
    for (std::size_t i = 0; i < s.vertices().size(); ++i) insert_closed(s.facet(i));
}

std::optional<Simplex> SimplicialComplex::closure_violation() const {
    for (const auto& s : s_) {
        if (s.dim() == 0) continue;
        for (std::size_t i = 0; i < s.vertices().size(); ++i)
            if (!contains(s.facet(i))) return s;
    }
    return std::nullopt;
}

bool SimplicialComplex::is_subset_of(const SimplicialComplex& other) const {
    return std::includes(other.s_.begin(), other.s_.end(), s_.begin(), s_.end());
}

SimplexIndex::SimplexIndex(std::vector<Simplex> simplices) : simplices_(std::move(simplices)) {
    std::sort(simplices_.begin(), simplices_.end());
    simplices_.erase(std::unique(simplices_.begin(), simplices_.end()), simplices_.end());
    boundaries_.reserve(simplices_.size());
    for (const auto& s : simplices_) {
        Chain b;
        if (s.dim() > 0) {
            for (std::size_t i = 0; i < s.vertices().size(); ++i)
                b.push_back({id(s.facet(i)), i % 2 == 0 ? Residue{1} : Residue{-1}});
            std::sort(b.begin(), b.end(), [](const ChainTerm& x, const ChainTerm& y) { return x.cell < y.cell; });
        }
        boundaries_.push_back(std::move(b));
    }
}

std::optional<Index> SimplexIndex::find(const Simplex& s) const {
    auto it = std::lower_bound(simplices_.begin(), simplices_.end(), s);
    if (it == simplices_.end() || *it != s) return std::nullopt;
    return static_cast<Index>(it - simplices_.begin());
}

Index SimplexIndex::id(const Simplex& s) const {
    auto i = find(s);
    if (!i) throw InputError("unknown simplex " + to_string(s));
    return *i;
}

std::vector<Index> SimplexIndex::ids(const SimplicialComplex& c) const {
    std::vector<Index> out;
    out.reserve(c.size());
    for (const auto& s : c) out.push_back(id(s));
    std::sort(out.begin(), out.end());
    return out;
}

Chain boundary(const SimplexIndex& index, const Chain& c, const PrimeField& field) {
    Chain out;
    for (const auto& t : c) out = add_scaled(out, normalized(index.boundary(t.cell), field), t.coeff, field);
    return out;
}

std::string format_chain(const SimplexIndex& index, const Chain& c, const PrimeField& field) {
    if (c.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += " + ";
        Residue v = field.reduce(c[i].coeff);
        if (v != 1) out += std::to_string(v) + "*";
        out += to_string(index.simplex(c[i].cell));
    }
    return out;
}

std::optional<Diagnostic> validate_filtration(const PFiltration& f) {
    if (auto d = validate(f.poset)) return d;
    if (f.complexes.size() != f.poset.size()) return Diagnostic{"complex count does not match point count"};
    if (f.degree < 0) return Diagnostic{"negative degree"};
    for (PointId p = 0; p < f.poset.size(); ++p)
        if (auto bad = f.complexes[p].closure_violation())
            return Diagnostic{"not face-closed at " + f.poset.labels[p] + ": simplex " + to_string(*bad) +
                              " misses a face"};
    for (auto [a, b] : f.poset.edges)
        for (const auto& s : f.complexes[a])
            if (!f.complexes[b].contains(s))
                return Diagnostic{"not monotone along edge " + f.poset.labels[a] + " -> " + f.poset.labels[b] +
                                  ": simplex " + to_string(s) + " missing"};
    return std::nullopt;
}

SimplexIndex index_of(const PFiltration& f) {
    std::vector<Simplex> all;
    for (const auto& c : f.complexes) all.insert(all.end(), c.begin(), c.end());
    return SimplexIndex(std::move(all));
}

SizeStats size_stats(const PFiltration& f) {
    SizeStats s;
    s.m = f.poset.size() + f.poset.edges.size();
    for (auto [a, b] : f.poset.edges)
        for (const auto& x : f.complexes[b]) s.e += !f.complexes[a].contains(x);
    for (const auto& c : f.complexes) s.n = std::max(s.n, c.size());
    s.t = std::max(s.m, s.e);
    return s;
}

ZigzagFiltration unfold_filtration(const PFiltration& f, const ZigzagPoset& z) {
    if (auto d = check_unfolding(f.poset, z)) throw InputError("zigzag does not unfold the poset: " + d->message);
    ZigzagFiltration zf;
    zf.zigzag = z;
    zf.point_complexes = f.complexes;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const auto& from = zf.complex(i);
        const auto& to = zf.complex(i + 1);
        std::vector<Elementary> ops;
        if (z.arrows[i] == Arrow::forward) {
            for (const auto& s : to)
                if (!from.contains(s)) ops.push_back({s, true});
        } else {
            for (auto it = from.end(); it != from.begin();) {
                --it;
                if (!to.contains(*it)) ops.push_back({*it, false});
            }
        }
        zf.elementary.push_back(std::move(ops));
    }
    return zf;
}

SimplicialComplex apply_elementary(SimplicialComplex c, const std::vector<Elementary>& ops) {
    for (const auto& op : ops) {
        bool changed = op.insertion ? c.insert(op.simplex) : c.erase(op.simplex);
        if (!changed) throw InputError("elementary operation on " + to_string(op.simplex) + " does not apply");
    }
    return c;
}

PFiltration cone(const PFiltration& f, const SimplexIndex& index, const std::vector<Chain>& cycles,
                 const PrimeField& field, std::optional<Vertex> omega) {
    if (cycles.size() != f.poset.size()) throw InputError("cone: one cycle per point required");
    Vertex max_vertex = -1;
    for (const auto& c : f.complexes)
        for (const auto& s : c) max_vertex = std::max(max_vertex, s.vertices().back());
    Vertex w = omega.value_or(max_vertex + 1);
    for (const auto& c : f.complexes)
        for (const auto& s : c)
            if (std::binary_search(s.vertices().begin(), s.vertices().end(), w))
                throw InputError("cone vertex " + std::to_string(w) + " already used");

    std::vector<SimplicialComplex> support(f.poset.size());
    for (PointId p = 0; p < f.poset.size(); ++p) {
        for (const auto& t : cycles[p])
            if (!f.complexes[p].contains(index.simplex(t.cell)))
                throw InputError("cone: chain at " + f.poset.labels[p] + " leaves the complex");
        if (!boundary(index, cycles[p], field).empty())
            throw InputError("cone: chain at " + f.poset.labels[p] + " is not a cycle");
        for (const auto& t : cycles[p]) support[p].insert_closed(index.simplex(t.cell));
    }
    // Supports flow up the order so the coned family stays monotone.
    for (bool grew = true; grew;) {
        grew = false;
        for (auto [a, b] : f.poset.edges)
            for (const auto& s : support[a]) grew = support[b].insert(s) || grew;
    }

    PFiltration out = f;
    for (PointId p = 0; p < f.poset.size(); ++p) {
        auto& c = out.complexes[p];
        c.insert(Simplex{w});
        for (const auto& s : support[p]) c.insert(s.with_vertex(w));
    }
    if (auto d = validate_filtration(out)) throw InputError("coned filtration invalid: " + d->message);
    return out;
}

}  // namespace genrank
