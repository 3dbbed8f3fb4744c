#include "genrank/poset.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace genrank {

std::optional<PointId> Poset::find(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) return std::nullopt;
    return static_cast<PointId>(it - labels.begin());
}

std::optional<std::size_t> Poset::edge_index(PointId from, PointId to) const {
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e] == Edge{from, to}) return e;
    return std::nullopt;
}

namespace {

std::optional<std::vector<PointId>> find_cycle(const Poset& p) {
    std::vector<std::vector<PointId>> out(p.size());
    for (auto [a, b] : p.edges) out[a].push_back(b);
    std::vector<int> state(p.size(), 0);
    std::vector<PointId> stack;
    std::optional<std::vector<PointId>> found;

    auto dfs = [&](auto&& self, PointId v) -> bool {
        state[v] = 1;
        stack.push_back(v);
        for (PointId w : out[v]) {
            if (state[w] == 1) {
                auto it = std::find(stack.begin(), stack.end(), w);
                found = std::vector<PointId>(it, stack.end());
                return true;
            }
            if (state[w] == 0 && self(self, w)) return true;
        }
        stack.pop_back();
        state[v] = 2;
        return false;
    };
    for (PointId v = 0; v < p.size(); ++v)
        if (state[v] == 0 && dfs(dfs, v)) return found;
    return std::nullopt;
}

std::vector<PointId> component_of(const Poset& p, PointId start) {
    std::vector<std::vector<PointId>> adj(p.size());
    for (auto [a, b] : p.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(p.size(), false);
    std::vector<PointId> todo{start}, comp;
    seen[start] = true;
    while (!todo.empty()) {
        PointId v = todo.back();
        todo.pop_back();
        comp.push_back(v);
        for (PointId w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                todo.push_back(w);
            }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

std::string join_labels(const Poset& p, const std::vector<PointId>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ",";
        s += p.labels[pts[i]];
    }
    return s;
}

}  // namespace

std::optional<Diagnostic> validate(const Poset& p) {
    if (p.size() == 0) return Diagnostic{"empty poset"};
    std::set<std::string> names;
    for (const auto& l : p.labels)
        if (!names.insert(l).second) return Diagnostic{"duplicate point " + l};
    std::set<Edge> seen;
    for (auto [a, b] : p.edges) {
        if (a >= p.size() || b >= p.size()) return Diagnostic{"edge endpoint is not a declared point"};
        if (a == b) return Diagnostic{"self-loop at " + p.labels[a]};
        if (!seen.insert({a, b}).second) return Diagnostic{"duplicate edge " + p.labels[a] + "->" + p.labels[b]};
    }
    if (auto cycle = find_cycle(p)) return Diagnostic{"directed cycle " + join_labels(p, *cycle)};
    auto comp = component_of(p, 0);
    if (comp.size() != p.size())
        return Diagnostic{"disconnected: component {" + join_labels(p, comp) + "} misses other points"};
    return std::nullopt;
}

std::vector<Edge> hasse_edges(const Poset& p) {
    std::vector<std::vector<PointId>> out(p.size());
    for (auto [a, b] : p.edges) out[a].push_back(b);
    auto reachable_without = [&](PointId from, PointId to, std::size_t skip) {
        std::vector<bool> seen(p.size(), false);
        std::vector<PointId> todo{from};
        while (!todo.empty()) {
            PointId v = todo.back();
            todo.pop_back();
            for (std::size_t e = 0; e < p.edges.size(); ++e) {
                if (e == skip || p.edges[e].first != v) continue;
                PointId w = p.edges[e].second;
                if (w == to) return true;
                if (!seen[w]) {
                    seen[w] = true;
                    todo.push_back(w);
                }
            }
        }
        return false;
    };
    std::vector<Edge> hasse;
    for (std::size_t e = 0; e < p.edges.size(); ++e)
        if (!reachable_without(p.edges[e].first, p.edges[e].second, e)) hasse.push_back(p.edges[e]);
    return hasse;
}

namespace {

ZigzagPoset from_walk(const Poset& p, const std::vector<PointId>& walk, const std::vector<std::size_t>& edges) {
    ZigzagPoset z;
    z.fold = walk;
    z.step_edge = edges;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
        z.arrows.push_back(p.edges[edges[i]].first == walk[i] ? Arrow::forward : Arrow::backward);
    return z;
}

ZigzagPoset hierholzer(const Poset& p) {
    // used[e] counts traversed copies of the doubled edge e.
    std::vector<std::vector<std::size_t>> incident(p.size());
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
        incident[p.edges[e].first].push_back(e);
        incident[p.edges[e].second].push_back(e);
    }
    std::vector<int> used(p.edges.size(), 0);
    std::vector<std::size_t> cursor(p.size(), 0);
    std::vector<std::pair<PointId, std::size_t>> stack{{0, p.edges.size()}};
    std::vector<std::pair<PointId, std::size_t>> circuit;
    while (!stack.empty()) {
        PointId v = stack.back().first;
        auto& inc = incident[v];
        while (cursor[v] < inc.size() && used[inc[cursor[v]]] >= 2) ++cursor[v];
        if (cursor[v] < inc.size()) {
            std::size_t e = inc[cursor[v]];
            ++used[e];
            PointId w = p.edges[e].first == v ? p.edges[e].second : p.edges[e].first;
            stack.push_back({w, e});
        } else {
            circuit.push_back(stack.back());
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    std::vector<PointId> walk;
    std::vector<std::size_t> edges;
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        walk.push_back(circuit[i].first);
        if (i > 0) edges.push_back(circuit[i].second);
    }
    return from_walk(p, walk, edges);
}

}  // namespace

ZigzagPoset unfold(const Poset& p, const std::optional<std::vector<PointId>>& tour) {
    if (auto d = validate(p)) throw InputError("invalid poset: " + d->message);
    if (!tour) return hierholzer(p);

    const auto& walk = *tour;
    if (walk.empty()) throw InputError("tour is empty");
    std::vector<std::size_t> edges;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        if (walk[i] >= p.size() || walk[i + 1] >= p.size())
            throw InputError("tour step " + std::to_string(i) + " uses an undeclared point");
        auto e = p.edge_index(walk[i], walk[i + 1]);
        if (!e) e = p.edge_index(walk[i + 1], walk[i]);
        if (!e)
            throw InputError("tour step " + std::to_string(i) + " " + p.labels[walk[i]] + "," + p.labels[walk[i + 1]] +
                             " is not an edge");
        edges.push_back(*e);
    }
    if (walk.back() >= p.size()) throw InputError("tour uses an undeclared point");
    auto z = from_walk(p, walk, edges);
    if (auto d = check_unfolding(p, z)) throw InputError("invalid tour: " + d->message);
    return z;
}

std::optional<Diagnostic> check_unfolding(const Poset& p, const ZigzagPoset& z) {
    if (z.fold.empty()) return Diagnostic{"empty zigzag"};
    if (z.arrows.size() + 1 != z.fold.size() || z.step_edge.size() != z.arrows.size())
        return Diagnostic{"arrow count does not match point count"};
    std::vector<bool> point_hit(p.size(), false), edge_hit(p.edges.size(), false);
    for (std::size_t i = 0; i < z.fold.size(); ++i) point_hit[z.fold[i]] = true;
    for (std::size_t i = 0; i < z.arrows.size(); ++i) {
        auto [a, b] = p.edges[z.step_edge[i]];
        Edge step = z.arrows[i] == Arrow::forward ? Edge{z.fold[i], z.fold[i + 1]} : Edge{z.fold[i + 1], z.fold[i]};
        if (step != Edge{a, b}) return Diagnostic{"step " + std::to_string(i) + " does not follow its edge"};
        edge_hit[z.step_edge[i]] = true;
    }
    for (PointId v = 0; v < p.size(); ++v)
        if (!point_hit[v]) return Diagnostic{"point " + p.labels[v] + " is not visited"};
    for (std::size_t e = 0; e < p.edges.size(); ++e)
        if (!edge_hit[e])
            return Diagnostic{"edge " + p.labels[p.edges[e].first] + "->" + p.labels[p.edges[e].second] +
                              " is not traversed"};
    return std::nullopt;
}

PartnerStructure partners(const ZigzagPoset& z) {
    std::map<PointId, std::vector<std::size_t>> by_point;
    for (std::size_t q = 0; q < z.fold.size(); ++q) by_point[z.fold[q]].push_back(q);
    PartnerStructure ps;
    for (auto& [pt, members] : by_point) {
        if (members.size() > 1) ps.leaders.push_back(members.front());
        ps.class_point.push_back(pt);
        ps.classes.push_back(std::move(members));
    }
    std::sort(ps.leaders.begin(), ps.leaders.end());
    return ps;
}

std::string describe(const Poset& p, const ZigzagPoset& z) {
    std::string s = p.labels[z.fold[0]];
    for (std::size_t i = 0; i < z.arrows.size(); ++i) {
        s += z.arrows[i] == Arrow::forward ? " -> " : " <- ";
        s += p.labels[z.fold[i + 1]];
    }
    return s;
}

}  // namespace genrank
