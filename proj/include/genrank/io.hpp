#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "genrank/complex.hpp"
#include "genrank/oracle.hpp"

namespace genrank {

class ParseError : public InputError {
public:
    ParseError(int line, const std::string& what)
        : InputError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct InputDocument {
    Residue field = 2;
    int degree = 1;
    Poset poset;
    std::vector<int> point_lines;  // declaring line per point
    std::vector<int> edge_lines;   // declaring line per edge
    std::optional<std::vector<PointId>> tour;
    // Filtration block: simplices listed per point, either whole or as births.
    bool births = false;
    std::optional<std::vector<SimplicialComplex>> listed;
    std::vector<int> listed_lines;
    // Explicit module block.
    struct RawMap {
        PointId from = 0;
        PointId to = 0;
        std::vector<std::vector<Residue>> rows;
        int line = 0;
    };
    bool has_module = false;
    std::vector<Index> dims;
    std::vector<RawMap> maps;
};

InputDocument parse_text(std::istream& in);
InputDocument parse_json(const std::string& text);
// JSON if the first non-blank character is '{'.
InputDocument load_document(const std::string& path);

// Resolves births, checks ids, face closure and monotonicity; errors carry line numbers.
PFiltration to_filtration(const InputDocument& doc);
ExplicitModule to_module(const InputDocument& doc, const PrimeField& field);

std::vector<PointId> parse_tour(const std::string& text, const Poset& poset);

std::string write_text(const PFiltration& f, Residue field);

}  // namespace genrank
