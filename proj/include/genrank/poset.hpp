#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genrank/error.hpp"

namespace genrank {

using PointId = std::size_t;
using Edge = std::pair<PointId, PointId>;  // first <= second

struct Poset {
    std::vector<std::string> labels;
    std::vector<Edge> edges;

    std::size_t size() const { return labels.size(); }
    std::optional<PointId> find(const std::string& label) const;
    std::optional<std::size_t> edge_index(PointId from, PointId to) const;
};

std::optional<Diagnostic> validate(const Poset& p);

// Edges not implied by transitivity of the others.
std::vector<Edge> hasse_edges(const Poset& p);

enum class Arrow { forward, backward };

struct ZigzagPoset {
    std::vector<PointId> fold;           // zigzag point -> poset point
    std::vector<Arrow> arrows;           // arrows[i] joins points i and i+1
    std::vector<std::size_t> step_edge;  // poset edge realized by step i

    std::size_t size() const { return fold.size(); }
    std::size_t last() const { return fold.size() - 1; }
};

// Without a tour: Hierholzer on the edge-doubled graph, starting at point 0,
// neighbours in input edge order.
ZigzagPoset unfold(const Poset& p, const std::optional<std::vector<PointId>>& tour = std::nullopt);

std::optional<Diagnostic> check_unfolding(const Poset& p, const ZigzagPoset& z);

struct PartnerStructure {
    // classes[c] lists the zigzag points folding to poset point class_point[c], ascending.
    std::vector<std::vector<std::size_t>> classes;
    std::vector<PointId> class_point;
    // Lowest member of every class with more than one member.
    std::vector<std::size_t> leaders;
};

PartnerStructure partners(const ZigzagPoset& z);

std::string describe(const Poset& p, const ZigzagPoset& z);

}  // namespace genrank
