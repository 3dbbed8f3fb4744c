#include "fixtures.hpp"

#include <sstream>

namespace fixtures {

using namespace genrank;

std::string path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

InputDocument document(const std::string& name) { return load_document(path(name)); }

PFiltration filtration(const std::string& name) { return to_filtration(document(name)); }

std::vector<PointId> tour(const std::string& name) { return document(name).tour.value(); }

SimplicialComplex complex_of(const std::string& text) {
    std::istringstream in("points X\ncomplex X: " + text + "\n");
    auto doc = parse_text(in);
    return (*doc.listed)[0];
}

Chain chain_of(const SimplexIndex& index, const std::string& text) {
    Chain out;
    for (const auto& s : complex_of(text)) out.push_back({index.id(s), 1});
    return normalized(out, PrimeField(2));
}

PFiltration single(const std::string& complex, int degree) {
    PFiltration f;
    f.poset.labels = {"X"};
    f.complexes = {complex_of(complex)};
    f.degree = degree;
    return f;
}

}  // namespace fixtures
