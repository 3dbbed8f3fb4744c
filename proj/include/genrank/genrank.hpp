#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "genrank/annotation.hpp"
#include "genrank/zigzag.hpp"

namespace genrank {

// Everything derived once from a filtration: unfolding, partners, per-point tables.
struct GenRankContext {
    PFiltration filtration;
    PrimeField field;
    ZigzagPoset zigzag;
    PartnerStructure partners;
    std::shared_ptr<const SimplexIndex> index;
    std::vector<AnnotationTable> tables;               // per poset point
    std::vector<const AnnotationTable*> point_tables;  // per zigzag point

    const AnnotationTable& table_at(std::size_t q) const { return *point_tables[q]; }
};

GenRankContext make_context(const PFiltration& f, const PrimeField& field,
                            const std::optional<std::vector<PointId>>& tour = std::nullopt);

struct FoldCheck {
    bool foldable = true;         // partner annotations are equal vectors
    bool span_equal = true;       // partner annotations span the same line
};

FoldCheck fold_check(const IntervalModule& i, const PartnerStructure& ps, const std::vector<AnnotationTable>& ann,
                     const PrimeField& field);

bool is_foldable(const IntervalModule& i, const PartnerStructure& ps, const std::vector<AnnotationTable>& ann,
                 const PrimeField& field);

struct ConvertibilityWitness {
    std::vector<std::size_t> limit_modules;  // decomposition indices, candidate excluded
    Vector alpha;                            // one coefficient per entry of limit_modules
    std::vector<Chain> converted_reps;       // one per zigzag point
};

std::optional<ConvertibilityWitness> convertibility(std::size_t candidate, const Decomposition& d,
                                                    const PartnerStructure& ps,
                                                    const std::vector<AnnotationTable>& ann, const PrimeField& field);

Decomposition convert(const Decomposition& d, std::size_t candidate, const ConvertibilityWitness& w);

// i must be full and foldable.
bool is_complement_invertible(const IntervalModule& i, const GenRankContext& ctx);

struct AuditRecord {
    std::size_t interval = 0;
    bool foldable = false;
    bool span_equal_only = false;
    bool convertible = false;
    std::vector<std::size_t> alpha_modules;
    Vector alpha;
    bool invertible = false;
    bool complete = false;
    std::optional<std::size_t> kappa_before;
    std::optional<std::size_t> kappa_after;
};

struct Bounds {
    std::size_t kappa = 0;  // full intervals already foldable with invertible complement
    std::size_t tau = 0;    // full intervals convertible to one with invertible complement
};

struct GenRankResult {
    std::size_t rank = 0;
    std::vector<std::vector<Chain>> complete_modules;  // [module][poset point]
    std::vector<AuditRecord> audit;
    std::optional<Bounds> initial_bounds;
    Decomposition initial;
    Decomposition final;
};

struct GenRankOptions {
    PrimeField field{2};
    std::optional<std::vector<PointId>> tour;
    bool track_bounds = false;
};

GenRankResult generalized_rank(const GenRankContext& ctx, bool track_bounds = false);
GenRankResult generalized_rank(const PFiltration& f, const GenRankOptions& options = {});

std::size_t kappa(const Decomposition& d, const GenRankContext& ctx);

// Complete modules are homologous across every edge and pointwise independent.
std::optional<Diagnostic> check_sections(const GenRankResult& r, const GenRankContext& ctx);

std::size_t genrank_dcomplex(const PFiltration& f, int d, const PrimeField& field = PrimeField(2));
std::size_t genrank_graph(const PFiltration& f);

}  // namespace genrank
