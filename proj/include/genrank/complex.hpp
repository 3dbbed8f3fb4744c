#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "genrank/chain.hpp"
#include "genrank/poset.hpp"

namespace genrank {

using Vertex = std::int64_t;

class Simplex {
public:
    Simplex() = default;
    // Sorts; rejects empty or repeated vertex lists.
    explicit Simplex(std::vector<Vertex> vertices);
    Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

    const std::vector<Vertex>& vertices() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()) - 1; }
    // Face opposite vertex i; its boundary sign is (-1)^i.
    Simplex facet(std::size_t i) const;
    Simplex with_vertex(Vertex w) const;

    // Ordered by dimension, then lexicographically.
    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b);
    friend bool operator==(const Simplex&, const Simplex&) = default;

private:
    std::vector<Vertex> v_;
};

std::string to_string(const Simplex& s);

class SimplicialComplex {
public:
    SimplicialComplex() = default;
    SimplicialComplex(std::initializer_list<Simplex> simplices) : s_(simplices) {}

    bool insert(const Simplex& s) { return s_.insert(s).second; }
    // Inserts s together with all of its faces.
    void insert_closed(const Simplex& s);
    bool erase(const Simplex& s) { return s_.erase(s) > 0; }
    bool contains(const Simplex& s) const { return s_.count(s) > 0; }
    std::size_t size() const { return s_.size(); }
    bool empty() const { return s_.empty(); }
    int dimension() const { return s_.empty() ? -1 : s_.rbegin()->dim(); }
    auto begin() const { return s_.begin(); }
    auto end() const { return s_.end(); }

    // First simplex with a missing facet, if any.
    std::optional<Simplex> closure_violation() const;
    bool is_subset_of(const SimplicialComplex& other) const;

    friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

private:
    std::set<Simplex> s_;
};

// Dense ids for a fixed set of simplices, in simplex order, with oriented boundaries.
class SimplexIndex {
public:
    SimplexIndex() = default;
    explicit SimplexIndex(std::vector<Simplex> simplices);

    std::size_t size() const { return simplices_.size(); }
    const Simplex& simplex(Index id) const { return simplices_[static_cast<std::size_t>(id)]; }
    std::optional<Index> find(const Simplex& s) const;
    Index id(const Simplex& s) const;  // throws InputError when absent
    // Coefficients are +1/-1 and must be reduced by the consumer.
    const Chain& boundary(Index id) const { return boundaries_[static_cast<std::size_t>(id)]; }
    std::vector<Index> ids(const SimplicialComplex& c) const;

private:
    std::vector<Simplex> simplices_;
    std::vector<Chain> boundaries_;
};

Chain boundary(const SimplexIndex& index, const Chain& c, const PrimeField& field);
std::string format_chain(const SimplexIndex& index, const Chain& c, const PrimeField& field);

struct PFiltration {
    Poset poset;
    std::vector<SimplicialComplex> complexes;  // one per poset point
    int degree = 1;
};

std::optional<Diagnostic> validate_filtration(const PFiltration& f);

SimplexIndex index_of(const PFiltration& f);

struct SizeStats {
    std::size_t m = 0;  // points + edges
    std::size_t e = 0;  // total insertions over edges
    std::size_t t = 0;  // max(m, e)
    std::size_t n = 0;  // largest complex
    friend bool operator==(const SizeStats&, const SizeStats&) = default;
};

SizeStats size_stats(const PFiltration& f);

struct Elementary {
    Simplex simplex;
    bool insertion;
    friend bool operator==(const Elementary&, const Elementary&) = default;
};

struct ZigzagFiltration {
    ZigzagPoset zigzag;
    std::vector<SimplicialComplex> point_complexes;   // per poset point
    std::vector<std::vector<Elementary>> elementary;  // per step

    std::size_t size() const { return zigzag.size(); }
    const SimplicialComplex& complex(std::size_t q) const { return point_complexes[zigzag.fold[q]]; }
};

ZigzagFiltration unfold_filtration(const PFiltration& f, const ZigzagPoset& z);

SimplicialComplex apply_elementary(SimplicialComplex c, const std::vector<Elementary>& ops);

// cycles[p] is a chain over `index`. Point p cones the supports of cycles at every q <= p.
// omega defaults to one more than the largest vertex.
PFiltration cone(const PFiltration& f, const SimplexIndex& index, const std::vector<Chain>& cycles,
                 const PrimeField& field, std::optional<Vertex> omega = std::nullopt);

}  // namespace genrank
