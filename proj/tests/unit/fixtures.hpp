#pragma once

#include <string>
#include <vector>

#include "genrank/genrank.hpp"
#include "genrank/io.hpp"

namespace fixtures {

std::string path(const std::string& name);
genrank::InputDocument document(const std::string& name);
genrank::PFiltration filtration(const std::string& name);
// The tour stored in a fixture, as point ids.
std::vector<genrank::PointId> tour(const std::string& name);

// "0 1 0-1" -> complex (no closure added)
genrank::SimplicialComplex complex_of(const std::string& text);
genrank::Chain chain_of(const genrank::SimplexIndex& index, const std::string& text);

// One-point filtration.
genrank::PFiltration single(const std::string& complex, int degree);

}  // namespace fixtures
