#include "genrank/genrank.hpp"

#include <algorithm>
#include <stdexcept>

namespace genrank {

namespace {

Vector annotation_at(const GenRankContext& ctx, std::size_t q, const Chain& c) {
    return annotate_cycle(ctx.table_at(q), c, ctx.field);
}

// Scalar s with v = s * base, if any.
std::optional<Residue> proportion(const Vector& v, const Vector& base, const PrimeField& field) {
    auto x = solve(Matrix(base), v, field);
    if (!x) return std::nullopt;
    return (*x)(0);
}

}  // namespace

GenRankContext make_context(const PFiltration& f, const PrimeField& field,
                            const std::optional<std::vector<PointId>>& tour) {
    if (auto d = validate_filtration(f)) throw InputError(d->message);
    GenRankContext ctx{f, field, unfold(f.poset, tour), {}, {}, {}, {}};
    ctx.partners = partners(ctx.zigzag);
    ctx.index = std::make_shared<const SimplexIndex>(index_of(f));
    ctx.tables = annotate_filtration(f, ctx.index, field);
    for (PointId p : ctx.zigzag.fold) ctx.point_tables.push_back(&ctx.tables[p]);
    return ctx;
}

FoldCheck fold_check(const IntervalModule& i, const PartnerStructure& ps, const std::vector<AnnotationTable>& ann,
                     const PrimeField& field) {
    FoldCheck out;
    for (std::size_t c = 0; c < ps.classes.size(); ++c) {
        const auto& members = ps.classes[c];
        if (members.size() < 2) continue;
        const auto& table = ann[ps.class_point[c]];
        auto at = [&](std::size_t q) {
            return i.contains(q) ? annotate_cycle(table, i.rep(q), field) : Vector(Vector::Zero(table.g));
        };
        Vector lead = at(members.front());
        for (std::size_t k = 1; k < members.size(); ++k) {
            Vector other = at(members[k]);
            if (other == lead) continue;
            out.foldable = false;
            bool same_line = !lead.isZero() && !other.isZero() && proportion(other, lead, field).has_value();
            if (!same_line) out.span_equal = false;
        }
    }
    return out;
}

bool is_foldable(const IntervalModule& i, const PartnerStructure& ps, const std::vector<AnnotationTable>& ann,
                 const PrimeField& field) {
    return fold_check(i, ps, ann, field).foldable;
}

std::optional<ConvertibilityWitness> convertibility(std::size_t candidate, const Decomposition& d,
                                                    const PartnerStructure& ps,
                                                    const std::vector<AnnotationTable>& ann, const PrimeField& field) {
    const auto& target = d.intervals[candidate];
    const std::size_t points = target.reps.size();
    if (target.birth != 0) throw InputError("convertibility: candidate is not a full interval");

    ConvertibilityWitness w;
    for (std::size_t r = 0; r < d.intervals.size(); ++r) {
        const auto& iv = d.intervals[r];
        if (r != candidate && iv.birth_type == Endpoint::open && iv.death_type == Endpoint::open)
            w.limit_modules.push_back(r);
    }

    // For every leader p and partner p_j, the column a(z_p) - a(z_pj); one matrix per module, linearized.
    auto linearized_block = [&](const IntervalModule& iv) {
        Vector out(0);
        for (std::size_t c = 0; c < ps.classes.size(); ++c) {
            const auto& members = ps.classes[c];
            if (members.size() < 2) continue;
            const auto& table = ann[ps.class_point[c]];
            auto at = [&](std::size_t q) {
                return iv.contains(q) ? annotate_cycle(table, iv.rep(q), field) : Vector(Vector::Zero(table.g));
            };
            Vector lead = at(members.front());
            Matrix block(table.g, static_cast<Index>(members.size() - 1));
            for (std::size_t k = 1; k < members.size(); ++k)
                block.col(static_cast<Index>(k - 1)) = reduced_entries(lead - at(members[k]), field);
            Vector flat = linearize(block);
            Vector grown(out.size() + flat.size());
            grown << out, flat;
            out = std::move(grown);
        }
        return out;
    };

    Vector v = linearized_block(target);
    Matrix a(v.size(), static_cast<Index>(w.limit_modules.size()));
    for (std::size_t r = 0; r < w.limit_modules.size(); ++r)
        a.col(static_cast<Index>(r)) = linearized_block(d.intervals[w.limit_modules[r]]);
    auto alpha = solve(a, Vector(reduced_entries(-v, field)), field);
    if (!alpha) return std::nullopt;
    w.alpha = *alpha;

    std::vector<std::pair<Residue, const IntervalModule*>> terms{{1, &target}};
    for (std::size_t r = 0; r < w.limit_modules.size(); ++r)
        if (w.alpha(static_cast<Index>(r)) != 0)
            terms.push_back({w.alpha(static_cast<Index>(r)), &d.intervals[w.limit_modules[r]]});
    w.converted_reps = rep_sum(terms, points, field);
    return w;
}

Decomposition convert(const Decomposition& d, std::size_t candidate, const ConvertibilityWitness& w) {
    Decomposition out = d;
    out.intervals[candidate].reps = w.converted_reps;
    return out;
}

bool is_complement_invertible(const IntervalModule& i, const GenRankContext& ctx) {
    const auto& f = ctx.field;
    const auto& arrows = ctx.zigzag.arrows;
    const std::size_t n = ctx.zigzag.size();
    if (!i.full(n - 1)) throw InputError("complement test needs a full interval");

    // Exact quotient by the class of i: glue one (k+1)-cell with boundary z_q at every point.
    std::vector<AnnotationTable> quotient;
    quotient.reserve(n);
    for (std::size_t q = 0; q < n; ++q) {
        PointId p = ctx.zigzag.fold[q];
        quotient.push_back(annotate_complex(ctx.index, ctx.index->ids(ctx.filtration.complexes[p]),
                                            ctx.filtration.degree, f, {i.rep(q)}));
    }
    std::vector<const AnnotationTable*> qtables;
    for (const auto& t : quotient) qtables.push_back(&t);
    Decomposition hat = decompose_tables(qtables, arrows, f);

    // Lift of J at q is w_q + lambda_q z_q with lambda_q = Lambda_J + shift_q.
    const auto unknowns = static_cast<Index>(hat.intervals.size());
    const Index constant = unknowns;
    std::vector<std::vector<Residue>> shift(hat.intervals.size());
    PivotBasis system(f);
    bool consistent = true;
    auto add_row = [&](Chain row) {
        Chain r = system.reduce(normalized(std::move(row), f));
        if (r.empty()) return;
        if (r.front().cell == constant)
            consistent = false;
        else
            system.add(r);
    };

    for (std::size_t j = 0; j < hat.intervals.size(); ++j) {
        const auto& J = hat.intervals[j];
        auto& s = shift[j];
        s.assign(J.death - J.birth + 1, 0);
        for (std::size_t q = J.birth; q < J.death; ++q) {
            std::size_t big = arrows[q] == Arrow::forward ? q + 1 : q;
            Vector zeta = annotation_at(ctx, big, i.rep(q));
            if (zeta != annotation_at(ctx, big, i.rep(q + 1)))
                throw std::logic_error("full interval reps disagree across a step");
            Vector diff = reduced_entries(annotation_at(ctx, big, J.rep(q)) - annotation_at(ctx, big, J.rep(q + 1)), f);
            auto mu = proportion(diff, zeta, f);
            if (!mu) return false;
            s[q + 1 - J.birth] = f.add(s[q - J.birth], *mu);
        }
        // Arrows leaving the support must send the lift to zero.
        auto outward = [&](std::size_t from, std::size_t to) {
            Vector zeta = annotation_at(ctx, to, i.rep(from));
            auto nu = proportion(annotation_at(ctx, to, J.rep(from)), zeta, f);
            if (!nu) return false;
            add_row({{static_cast<Index>(j), 1}, {constant, f.add(*nu, s[from - J.birth])}});
            return true;
        };
        if (J.birth > 0 && arrows[J.birth - 1] == Arrow::backward && !outward(J.birth, J.birth - 1)) return false;
        if (J.death + 1 < n && arrows[J.death] == Arrow::forward && !outward(J.death, J.death + 1)) return false;
    }

    // Complements must agree at partners.
    for (std::size_t c = 0; c < ctx.partners.classes.size(); ++c) {
        const auto& members = ctx.partners.classes[c];
        if (members.size() < 2) continue;
        const std::size_t q1 = members.front();
        const auto& table = ctx.table_at(q1);
        std::vector<std::size_t> at_lead;
        for (std::size_t j = 0; j < hat.intervals.size(); ++j)
            if (hat.intervals[j].contains(q1)) at_lead.push_back(j);
        Vector zeta = annotation_at(ctx, q1, i.rep(q1));
        Matrix basis(table.g, static_cast<Index>(at_lead.size()) + 1);
        for (std::size_t k = 0; k < at_lead.size(); ++k)
            basis.col(static_cast<Index>(k)) = annotation_at(ctx, q1, hat.intervals[at_lead[k]].rep(q1));
        basis.col(basis.cols() - 1) = zeta;

        for (std::size_t m = 1; m < members.size(); ++m) {
            const std::size_t qi = members[m];
            auto scale = proportion(annotation_at(ctx, qi, i.rep(qi)), zeta, f);
            if (!scale || *scale == 0) return false;
            for (std::size_t j = 0; j < hat.intervals.size(); ++j) {
                const auto& J = hat.intervals[j];
                if (!J.contains(qi)) continue;
                auto coords = solve(basis, annotation_at(ctx, qi, J.rep(qi)), f);
                if (!coords) throw std::logic_error("quotient reps and the removed class do not span");
                Residue gamma = (*coords)(basis.cols() - 1);
                Chain row{{static_cast<Index>(j), *scale}};
                Residue rhs = f.add(gamma, f.mul(*scale, shift[j][qi - J.birth]));
                for (std::size_t k = 0; k < at_lead.size(); ++k) {
                    Residue beta = (*coords)(static_cast<Index>(k));
                    if (beta == 0) continue;
                    std::size_t jp = at_lead[k];
                    row.push_back({static_cast<Index>(jp), f.neg(beta)});
                    rhs = f.sub(rhs, f.mul(beta, shift[jp][q1 - hat.intervals[jp].birth]));
                }
                row.push_back({constant, rhs});
                add_row(std::move(row));
            }
        }
    }
    return consistent;
}

std::size_t kappa(const Decomposition& d, const GenRankContext& ctx) {
    std::size_t count = 0;
    const std::size_t last = ctx.zigzag.last();
    for (const auto& iv : d.intervals)
        if (iv.full(last) && is_foldable(iv, ctx.partners, ctx.tables, ctx.field) && is_complement_invertible(iv, ctx))
            ++count;
    return count;
}

GenRankResult generalized_rank(const GenRankContext& ctx, bool track_bounds) {
    GenRankResult result;
    const std::size_t last = ctx.zigzag.last();
    Decomposition live = decompose_tables(ctx.point_tables, ctx.zigzag.arrows, ctx.field);
    live.degree = ctx.filtration.degree;
    result.initial = live;

    std::vector<std::size_t> full;
    for (std::size_t r = 0; r < live.intervals.size(); ++r)
        if (live.intervals[r].full(last)) full.push_back(r);

    if (track_bounds) {
        Bounds b;
        b.kappa = kappa(live, ctx);
        for (std::size_t r : full) {
            auto w = convertibility(r, live, ctx.partners, ctx.tables, ctx.field);
            if (w && is_complement_invertible(convert(live, r, *w).intervals[r], ctx)) ++b.tau;
        }
        result.initial_bounds = b;
    }

    std::vector<std::size_t> complete;
    for (std::size_t r : full) {
        AuditRecord rec;
        rec.interval = r;
        auto fc = fold_check(live.intervals[r], ctx.partners, ctx.tables, ctx.field);
        rec.foldable = fc.foldable;
        rec.span_equal_only = !fc.foldable && fc.span_equal;
        if (track_bounds) rec.kappa_before = kappa(live, ctx);
        if (auto w = convertibility(r, live, ctx.partners, ctx.tables, ctx.field)) {
            rec.convertible = true;
            rec.alpha_modules = w->limit_modules;
            rec.alpha = w->alpha;
            live = convert(live, r, *w);
            rec.invertible = is_complement_invertible(live.intervals[r], ctx);
            rec.complete = rec.invertible;
            if (rec.complete) complete.push_back(r);
        }
        if (track_bounds) rec.kappa_after = kappa(live, ctx);
        result.audit.push_back(std::move(rec));
    }

    result.rank = complete.size();
    for (std::size_t r : complete) {
        std::vector<Chain> folded(ctx.filtration.poset.size());
        std::vector<bool> seen(folded.size(), false);
        for (std::size_t q = 0; q <= last; ++q) {
            PointId p = ctx.zigzag.fold[q];
            if (seen[p]) continue;
            seen[p] = true;
            folded[p] = live.intervals[r].rep(q);
        }
        result.complete_modules.push_back(std::move(folded));
    }
    result.final = std::move(live);
    return result;
}

GenRankResult generalized_rank(const PFiltration& f, const GenRankOptions& options) {
    return generalized_rank(make_context(f, options.field, options.tour), options.track_bounds);
}

std::optional<Diagnostic> check_sections(const GenRankResult& r, const GenRankContext& ctx) {
    const auto& poset = ctx.filtration.poset;
    const auto& f = ctx.field;
    if (r.complete_modules.size() != r.rank) return Diagnostic{"module count differs from rank"};
    for (std::size_t k = 0; k < r.complete_modules.size(); ++k) {
        const auto& m = r.complete_modules[k];
        for (auto [p, q] : poset.edges)
            if (annotate_cycle(ctx.tables[q], m[p], f) != annotate_cycle(ctx.tables[q], m[q], f))
                return Diagnostic{"section " + std::to_string(k) + " breaks along " + poset.labels[p] + " -> " +
                                  poset.labels[q]};
        for (PointId p = 0; p < poset.size(); ++p)
            if (!boundary(*ctx.index, m[p], f).empty())
                return Diagnostic{"section " + std::to_string(k) + " is not a cycle at " + poset.labels[p]};
    }
    for (PointId p = 0; p < poset.size(); ++p) {
        std::vector<Chain> here;
        for (const auto& m : r.complete_modules) here.push_back(m[p]);
        if (rank(annotate_batch(ctx.tables[p], here, f), f) != static_cast<Index>(here.size()))
            return Diagnostic{"sections are dependent at " + poset.labels[p]};
    }
    return std::nullopt;
}

std::size_t genrank_dcomplex(const PFiltration& f, int d, const PrimeField& field) {
    if (f.degree != d) throw InputError("dcomplex fast path needs degree " + std::to_string(d));
    for (PointId p = 0; p < f.poset.size(); ++p)
        if (f.complexes[p].dimension() > d)
            throw InputError("complex at " + f.poset.labels[p] + " exceeds dimension " + std::to_string(d));
    if (auto diag = validate_filtration(f)) throw InputError(diag->message);
    auto z = unfold(f.poset);
    auto index = std::make_shared<const SimplexIndex>(index_of(f));
    auto tables = annotate_filtration(f, index, field);
    std::vector<const AnnotationTable*> per_point;
    for (PointId p : z.fold) per_point.push_back(&tables[p]);
    std::size_t count = 0;
    for (const auto& ci : decompose_module(induced_module(per_point, z.arrows, field), field))
        count += ci.birth == 0 && ci.death == z.last();
    return count;
}

std::size_t genrank_graph(const PFiltration& f) {
    if (f.degree != 1) throw InputError("graph fast path needs degree 1");
    for (PointId p = 0; p < f.poset.size(); ++p)
        if (f.complexes[p].dimension() > 1) throw InputError("complex at " + f.poset.labels[p] + " is not a graph");
    if (auto diag = validate_filtration(f)) throw InputError(diag->message);
    auto z = unfold(f.poset);
    SimplexIndex index = index_of(f);

    // Deletions along each edge, walked backwards.
    std::vector<std::vector<Index>> lost(f.poset.edges.size());
    for (std::size_t e = 0; e < f.poset.edges.size(); ++e) {
        auto [p, q] = f.poset.edges[e];
        for (const auto& s : f.complexes[q])
            if (!f.complexes[p].contains(s)) lost[e].push_back(index.id(s));
    }
    std::vector<bool> alive(index.size(), false);
    for (Index id : index.ids(f.complexes[z.fold[0]])) alive[static_cast<std::size_t>(id)] = true;
    for (std::size_t i = 0; i < z.arrows.size(); ++i)
        if (z.arrows[i] == Arrow::backward)
            for (Index id : lost[z.step_edge[i]]) alive[static_cast<std::size_t>(id)] = false;

    std::vector<std::vector<std::size_t>> adj(index.size());
    std::size_t vertices = 0, edges = 0;
    for (std::size_t id = 0; id < index.size(); ++id) {
        if (!alive[id]) continue;
        const auto& s = index.simplex(static_cast<Index>(id));
        if (s.dim() == 0) {
            ++vertices;
            continue;
        }
        ++edges;
        auto a = static_cast<std::size_t>(index.id(Simplex{s.vertices()[0]}));
        auto b = static_cast<std::size_t>(index.id(Simplex{s.vertices()[1]}));
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::size_t components = 0;
    std::vector<bool> seen(index.size(), false);
    for (std::size_t id = 0; id < index.size(); ++id) {
        if (!alive[id] || seen[id] || index.simplex(static_cast<Index>(id)).dim() != 0) continue;
        ++components;
        std::vector<std::size_t> todo{id};
        seen[id] = true;
        while (!todo.empty()) {
            std::size_t v = todo.back();
            todo.pop_back();
            for (std::size_t w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    todo.push_back(w);
                }
        }
    }
    return edges + components - vertices;
}

}  // namespace genrank
