#include "genrank/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace genrank {

namespace {

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

long long parse_int(const std::string& tok, int line, const std::string& what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != tok.size()) throw ParseError(line, "expected " + what + ", got '" + tok + "'");
    return v;
}

Simplex parse_simplex(const std::string& tok, int line) {
    std::vector<Vertex> v;
    std::size_t start = 0;
    for (;;) {
        std::size_t dash = tok.find('-', start);
        v.push_back(parse_int(tok.substr(start, dash - start), line, "vertex id"));
        if (dash == std::string::npos) break;
        start = dash + 1;
    }
    try {
        return Simplex(std::move(v));
    } catch (const InputError& e) {
        throw ParseError(line, std::string(e.what()) + " in '" + tok + "'");
    }
}

class Builder {
public:
    explicit Builder(InputDocument& doc) : doc_(doc) {}

    void points(const std::vector<std::string>& names, int line) {
        for (const auto& n : names) {
            if (doc_.poset.find(n)) throw ParseError(line, "point " + n + " declared twice");
            doc_.poset.labels.push_back(n);
            doc_.point_lines.push_back(line);
        }
    }

    PointId point(const std::string& name, int line) const {
        auto p = doc_.poset.find(name);
        if (!p) throw ParseError(line, "undeclared point " + name);
        return *p;
    }

    void edge(const std::string& a, const std::string& b, int line) {
        doc_.poset.edges.push_back({point(a, line), point(b, line)});
        doc_.edge_lines.push_back(line);
    }

    void simplices(const std::string& name, const std::vector<Simplex>& list, bool birth, int line) {
        if (doc_.has_module) throw ParseError(line, "filtration block mixed with a module block");
        if (doc_.listed && doc_.births != birth) throw ParseError(line, "mixing 'complex' and 'birth' statements");
        PointId p = point(name, line);
        sync();
        doc_.births = birth;
        if (doc_.listed_lines[p] == 0) doc_.listed_lines[p] = line;
        for (const auto& s : list) (*doc_.listed)[p].insert(s);
    }

    void dim(const std::string& name, long long d, int line) {
        module(line);
        if (d < 0) throw ParseError(line, "negative dimension");
        doc_.dims[point(name, line)] = d;
    }

    void map(const std::string& a, const std::string& b, std::vector<std::vector<Residue>> rows, int line) {
        module(line);
        doc_.maps.push_back({point(a, line), point(b, line), std::move(rows), line});
    }

    void finish() {
        if (!doc_.has_module) sync();
        if (doc_.has_module) doc_.dims.resize(doc_.poset.size(), 0);
    }

private:
    void sync() {
        if (!doc_.listed) doc_.listed.emplace();
        doc_.listed->resize(doc_.poset.size());
        doc_.listed_lines.resize(doc_.poset.size(), 0);
    }

    void module(int line) {
        if (doc_.listed)
            throw ParseError(line, "module block mixed with a filtration block");
        doc_.listed.reset();
        doc_.has_module = true;
        doc_.dims.resize(doc_.poset.size(), 0);
    }

    InputDocument& doc_;
};

std::vector<std::vector<PointId>> ancestors(const Poset& p) {
    std::vector<std::vector<PointId>> out(p.size());
    for (PointId v = 0; v < p.size(); ++v) {
        std::vector<bool> seen(p.size(), false);
        std::vector<PointId> todo{v};
        seen[v] = true;
        while (!todo.empty()) {
            PointId w = todo.back();
            todo.pop_back();
            out[v].push_back(w);
            for (auto [a, b] : p.edges)
                if (b == w && !seen[a]) {
                    seen[a] = true;
                    todo.push_back(a);
                }
        }
    }
    return out;
}

}  // namespace

InputDocument parse_text(std::istream& in) {
    InputDocument doc;
    Builder b(doc);
    bool field_seen = false, degree_seen = false;
    int line_no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        auto head = words(line);
        if (head.empty()) continue;
        const std::string& kw = head[0];
        auto colon = line.find(':');
        auto after = colon == std::string::npos ? std::string() : line.substr(colon + 1);
        auto before = words(line.substr(0, colon));

        if (kw == "field" || kw == "degree") {
            if (head.size() != 2) throw ParseError(line_no, kw + " takes one integer");
            bool& seen = kw == "field" ? field_seen : degree_seen;
            if (seen) throw ParseError(line_no, kw + " given twice");
            seen = true;
            long long v = parse_int(head[1], line_no, "integer");
            if (kw == "field") {
                if (!is_prime(v)) throw ParseError(line_no, "field characteristic " + head[1] + " is not prime");
                doc.field = v;
            } else {
                if (v < 0) throw ParseError(line_no, "negative degree");
                doc.degree = static_cast<int>(v);
            }
        } else if (kw == "points" || kw == "point") {
            if (head.size() < 2) throw ParseError(line_no, "points needs at least one name");
            b.points({head.begin() + 1, head.end()}, line_no);
        } else if (kw == "edge") {
            if (head.size() != 3) throw ParseError(line_no, "edge takes two point names");
            b.edge(head[1], head[2], line_no);
        } else if (kw == "tour") {
            if (doc.tour) throw ParseError(line_no, "tour given twice");
            std::vector<PointId> t;
            for (std::size_t i = 1; i < head.size(); ++i) t.push_back(b.point(head[i], line_no));
            if (t.empty()) throw ParseError(line_no, "empty tour");
            doc.tour = std::move(t);
        } else if (kw == "complex" || kw == "birth") {
            if (colon == std::string::npos || before.size() != 2)
                throw ParseError(line_no, kw + " expects '<point>: <simplices>'");
            std::vector<Simplex> list;
            for (const auto& tok : words(after)) list.push_back(parse_simplex(tok, line_no));
            b.simplices(before[1], list, kw == "birth", line_no);
        } else if (kw == "dim") {
            if (head.size() != 3) throw ParseError(line_no, "dim takes a point and an integer");
            b.dim(head[1], parse_int(head[2], line_no, "dimension"), line_no);
        } else if (kw == "map") {
            if (colon == std::string::npos || before.size() != 3)
                throw ParseError(line_no, "map expects '<from> <to>: <rows>'");
            std::vector<std::vector<Residue>> rows;
            if (!words(after).empty()) {
                std::stringstream rs(after);
                for (std::string row; std::getline(rs, row, ';');) {
                    std::vector<Residue> r;
                    for (const auto& tok : words(row)) r.push_back(parse_int(tok, line_no, "matrix entry"));
                    rows.push_back(std::move(r));
                }
            }
            b.map(before[1], before[2], std::move(rows), line_no);
        } else {
            throw ParseError(line_no, "unknown statement '" + kw + "'");
        }
    }
    b.finish();
    return doc;
}

InputDocument parse_json(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(0, std::string("malformed JSON: ") + e.what());
    }
    InputDocument doc;
    Builder b(doc);
    try {
        if (j.contains("field")) {
            doc.field = j.at("field").get<Residue>();
            if (!is_prime(doc.field)) throw ParseError(0, "field characteristic is not prime");
        }
        if (j.contains("degree")) doc.degree = j.at("degree").get<int>();
        if (doc.degree < 0) throw ParseError(0, "negative degree");
        b.points(j.at("points").get<std::vector<std::string>>(), 0);
        for (const auto& e : j.value("edges", json::array())) b.edge(e.at(0).get<std::string>(), e.at(1).get<std::string>(), 0);
        if (j.contains("tour")) {
            std::vector<PointId> t;
            for (const auto& name : j.at("tour")) t.push_back(b.point(name.get<std::string>(), 0));
            doc.tour = std::move(t);
        }
        for (const char* key : {"complexes", "births"})
            if (j.contains(key))
                for (const auto& [name, list] : j.at(key).items()) {
                    std::vector<Simplex> simplices;
                    for (const auto& s : list) simplices.emplace_back(s.get<std::vector<Vertex>>());
                    b.simplices(name, simplices, std::string(key) == "births", 0);
                }
        if (j.contains("module")) {
            const auto& m = j.at("module");
            for (const auto& [name, d] : m.value("dims", json::object()).items()) b.dim(name, d.get<long long>(), 0);
            for (const auto& map : m.value("maps", json::array()))
                b.map(map.at("from").get<std::string>(), map.at("to").get<std::string>(), map.at("rows").get<std::vector<std::vector<Residue>>>(), 0);
        }
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("bad document: ") + e.what());
    }
    b.finish();
    return doc;
}

InputDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json(text);
    std::istringstream s(text);
    return parse_text(s);
}

PFiltration to_filtration(const InputDocument& doc) {
    if (doc.has_module) throw InputError("document holds a module, not a filtration");
    PFiltration f;
    f.poset = doc.poset;
    f.degree = doc.degree;
    if (auto d = validate(f.poset)) throw ParseError(0, d->message);
    std::vector<SimplicialComplex> listed = doc.listed.value_or(std::vector<SimplicialComplex>{});
    listed.resize(f.poset.size());
    auto line_of = [&](PointId p) {
        return p < doc.listed_lines.size() && doc.listed_lines[p] > 0 ? doc.listed_lines[p] : doc.point_lines[p];
    };
    if (doc.births) {
        auto anc = ancestors(f.poset);
        f.complexes.resize(f.poset.size());
        for (PointId p = 0; p < f.poset.size(); ++p)
            for (PointId a : anc[p])
                for (const auto& s : listed[a]) f.complexes[p].insert(s);
    } else {
        f.complexes = listed;
    }
    for (PointId p = 0; p < f.poset.size(); ++p)
        if (auto bad = f.complexes[p].closure_violation())
            throw ParseError(line_of(p), "complex at " + f.poset.labels[p] + " is not face-closed: simplex " +
                                             to_string(*bad) + " misses a face");
    for (std::size_t e = 0; e < f.poset.edges.size(); ++e) {
        auto [a, b] = f.poset.edges[e];
        for (const auto& s : f.complexes[a])
            if (!f.complexes[b].contains(s))
                throw ParseError(doc.edge_lines[e], "filtration not monotone along edge " + f.poset.labels[a] +
                                                        " -> " + f.poset.labels[b] + ": simplex " + to_string(s) +
                                                        " of " + f.poset.labels[a] + " missing from " +
                                                        f.poset.labels[b]);
    }
    return f;
}

ExplicitModule to_module(const InputDocument& doc, const PrimeField& field) {
    if (!doc.has_module) throw InputError("document holds a filtration, not a module");
    ExplicitModule m;
    m.poset = doc.poset;
    if (auto d = validate(m.poset)) throw ParseError(0, d->message);
    m.dims = doc.dims;
    m.dims.resize(m.poset.size(), 0);
    for (auto [p, q] : m.poset.edges) m.edge_maps.push_back(Matrix::Zero(m.dims[q], m.dims[p]));
    std::vector<bool> given(m.poset.edges.size(), false);
    for (const auto& raw : doc.maps) {
        auto e = m.poset.edge_index(raw.from, raw.to);
        std::string name = m.poset.labels[raw.from] + " -> " + m.poset.labels[raw.to];
        if (!e) throw ParseError(raw.line, "map " + name + " is not along an edge");
        if (given[*e]) throw ParseError(raw.line, "map " + name + " given twice");
        given[*e] = true;
        Index rows = m.dims[raw.to], cols = m.dims[raw.from];
        if (static_cast<Index>(raw.rows.size()) != rows)
            throw ParseError(raw.line, "map " + name + " needs " + std::to_string(rows) + " rows");
        for (Index r = 0; r < rows; ++r) {
            const auto& row = raw.rows[static_cast<std::size_t>(r)];
            if (static_cast<Index>(row.size()) != cols)
                throw ParseError(raw.line, "map " + name + " needs " + std::to_string(cols) + " columns");
            for (Index c = 0; c < cols; ++c) m.edge_maps[*e](r, c) = field.reduce(row[static_cast<std::size_t>(c)]);
        }
    }
    if (auto d = validate_module(m, field)) throw ParseError(0, d->message);
    return m;
}

std::vector<PointId> parse_tour(const std::string& text, const Poset& poset) {
    std::istringstream in(text);
    std::vector<PointId> out;
    int line_no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        auto w = words(raw.substr(0, raw.find('#')));
        std::size_t start = !w.empty() && w[0] == "tour" ? 1 : 0;
        for (std::size_t i = start; i < w.size(); ++i) {
            auto p = poset.find(w[i]);
            if (!p) throw ParseError(line_no, "undeclared point " + w[i] + " in tour");
            out.push_back(*p);
        }
    }
    if (out.empty()) throw ParseError(0, "empty tour");
    return out;
}

std::string write_text(const PFiltration& f, Residue field) {
    std::ostringstream out;
    out << "field " << field << "\n";
    out << "degree " << f.degree << "\n";
    out << "points";
    for (const auto& l : f.poset.labels) out << " " << l;
    out << "\n";
    for (auto [a, b] : f.poset.edges) out << "edge " << f.poset.labels[a] << " " << f.poset.labels[b] << "\n";
    for (PointId p = 0; p < f.poset.size(); ++p) {
        out << "complex " << f.poset.labels[p] << ":";
        for (const auto& s : f.complexes[p]) out << " " << to_string(s);
        out << "\n";
    }
    return out.str();
}

}  // namespace genrank
