#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "genrank/genrank.hpp"
#include "genrank/io.hpp"
#include "genrank/oracle.hpp"
#include "genrank/random.hpp"

using namespace genrank;
using ojson = nlohmann::ordered_json;

namespace {

struct Flags {
    std::string path;
    std::optional<Residue> field;
    std::optional<int> degree;
    std::string tour_path;
    bool audit = false;
    bool sections = false;
    bool json = false;
    bool reps = false;
    bool types = false;
    bool graph = false;
    std::optional<int> dcomplex;
    std::uint64_t seed = 1;
    std::size_t count = 1;
    bool check = false;
};

struct Loaded {
    InputDocument doc;
    PrimeField field;
    std::optional<std::vector<PointId>> tour;
};

Loaded load(const Flags& fl) {
    InputDocument doc = load_document(fl.path);
    if (fl.degree) doc.degree = *fl.degree;
    if (doc.degree < 0) throw InputError("negative degree");
    PrimeField field(fl.field.value_or(doc.field));
    auto tour = doc.tour;
    if (!fl.tour_path.empty()) {
        std::ifstream in(fl.tour_path);
        if (!in) throw InputError("cannot read " + fl.tour_path);
        std::stringstream buf;
        buf << in.rdbuf();
        tour = parse_tour(buf.str(), doc.poset);
    }
    return {std::move(doc), field, std::move(tour)};
}

ojson header(const char* command, const PrimeField& field, int degree) {
    return ojson{{"schema", "genrank-report/1"}, {"command", command}, {"field", field.characteristic()},
                 {"degree", degree}};
}

const char* endpoint_name(Endpoint e) { return e == Endpoint::open ? "open" : "closed"; }

std::string chain_text(const SimplexIndex& index, const Chain& c, const PrimeField& f) {
    return format_chain(index, c, f);
}

ojson chain_json(const SimplexIndex& index, const Chain& c, const PrimeField& f) {
    ojson out = ojson::array();
    for (const auto& t : c) out.push_back({{"simplex", index.simplex(t.cell).vertices()}, {"coeff", f.reduce(t.coeff)}});
    return out;
}

std::string alpha_text(const AuditRecord& r) {
    std::string s = "{";
    bool first = true;
    for (std::size_t k = 0; k < r.alpha_modules.size(); ++k) {
        Residue v = r.alpha(static_cast<Index>(k));
        if (v == 0) continue;
        if (!first) s += ",";
        first = false;
        s += std::to_string(r.alpha_modules[k]) + ":" + std::to_string(v);
    }
    return s + "}";
}

std::string interval_text(const IntervalModule& iv) {
    return "[" + std::to_string(iv.birth) + "," + std::to_string(iv.death) + "]";
}

int cmd_genrank(const Flags& fl) {
    auto in = load(fl);
    PFiltration f = to_filtration(in.doc);
    auto ctx = make_context(f, in.field, in.tour);
    auto result = generalized_rank(ctx);
    const auto& index = *ctx.index;
    const auto& labels = f.poset.labels;

    if (fl.json) {
        ojson out = header("genrank", in.field, f.degree);
        out["rank"] = result.rank;
        out["zigzag"] = describe(f.poset, ctx.zigzag);
        if (fl.audit) {
            ojson intervals = ojson::array();
            for (const auto& iv : result.initial.intervals)
                intervals.push_back({{"birth", iv.birth},
                                     {"death", iv.death},
                                     {"birth_type", endpoint_name(iv.birth_type)},
                                     {"death_type", endpoint_name(iv.death_type)}});
            out["intervals"] = intervals;
            ojson audit = ojson::array();
            for (const auto& r : result.audit) {
                ojson alpha = ojson::array();
                for (std::size_t k = 0; k < r.alpha_modules.size(); ++k)
                    if (r.alpha(static_cast<Index>(k)) != 0)
                        alpha.push_back({{"interval", r.alpha_modules[k]}, {"coeff", r.alpha(static_cast<Index>(k))}});
                audit.push_back({{"interval", r.interval},
                                 {"foldable", r.foldable},
                                 {"span_equal_only", r.span_equal_only},
                                 {"convertible", r.convertible},
                                 {"alpha", alpha},
                                 {"invertible", r.invertible},
                                 {"complete", r.complete}});
            }
            out["audit"] = audit;
        }
        if (fl.sections) {
            ojson sections = ojson::array();
            for (const auto& m : result.complete_modules) {
                ojson per = ojson::object();
                for (PointId p = 0; p < labels.size(); ++p) per[labels[p]] = chain_json(index, m[p], in.field);
                sections.push_back(per);
            }
            out["sections"] = sections;
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    std::cout << "rank: " << result.rank << "\n";
    if (fl.audit) {
        std::cout << "zigzag: " << describe(f.poset, ctx.zigzag) << "\n";
        std::cout << "intervals:\n";
        for (std::size_t k = 0; k < result.initial.intervals.size(); ++k) {
            const auto& iv = result.initial.intervals[k];
            std::cout << "  " << k << " " << interval_text(iv) << " " << endpoint_name(iv.birth_type) << "-"
                      << endpoint_name(iv.death_type) << "\n";
        }
        std::cout << "audit:\n";
        for (const auto& r : result.audit) {
            std::cout << "  interval " << r.interval << ": foldable=" << (r.foldable ? "yes" : "no")
                      << " convertible=" << (r.convertible ? "yes" : "no");
            if (r.convertible) std::cout << " alpha=" << alpha_text(r) << " invertible=" << (r.invertible ? "yes" : "no");
            std::cout << " complete=" << (r.complete ? "yes" : "no");
            if (r.span_equal_only) std::cout << " span-equal-only";
            std::cout << "\n";
        }
    }
    if (fl.sections) {
        for (std::size_t k = 0; k < result.complete_modules.size(); ++k) {
            std::cout << "section " << k << ":\n";
            for (PointId p = 0; p < labels.size(); ++p)
                std::cout << "  " << labels[p] << ": " << chain_text(index, result.complete_modules[k][p], in.field)
                          << "\n";
        }
    }
    return 0;
}

int cmd_oracle(const Flags& fl) {
    auto in = load(fl);
    ExplicitModule m = in.doc.has_module ? to_module(in.doc, in.field)
                                         : module_from_filtration(to_filtration(in.doc), in.field);
    Index r = limit_to_colimit_rank(m, in.field);
    Index lim = limit(m, in.field).dimension, colim = colimit(m, in.field).dimension;
    if (fl.json) {
        ojson out = header("oracle", in.field, in.doc.degree);
        out["rank"] = r;
        out["limit"] = lim;
        out["colimit"] = colim;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "rank: " << r << "\nlimit: " << lim << "\ncolimit: " << colim << "\n";
    }
    return 0;
}

int cmd_unfold(const Flags& fl) {
    auto in = load(fl);
    const Poset& p = in.doc.poset;
    if (auto d = validate(p)) throw InputError(d->message);
    auto z = unfold(p, in.tour);
    auto ps = partners(z);
    std::size_t bound = 2 * p.edges.size() + 1;
    if (fl.json) {
        ojson out = header("unfold", in.field, in.doc.degree);
        out["path"] = describe(p, z);
        out["length"] = z.size();
        out["bound"] = bound;
        ojson fold = ojson::array();
        for (PointId x : z.fold) fold.push_back(p.labels[x]);
        out["fold"] = fold;
        ojson classes = ojson::array();
        for (std::size_t c = 0; c < ps.classes.size(); ++c)
            classes.push_back({{"point", p.labels[ps.class_point[c]]},
                               {"members", ps.classes[c]},
                               {"leader", ps.classes[c].size() > 1 ? ojson(ps.classes[c].front()) : ojson()}});
        out["partners"] = classes;
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "path: " << describe(p, z) << "\n";
    std::cout << "length: " << z.size() << " (bound " << bound << ")\n";
    std::cout << "fold:";
    for (std::size_t q = 0; q < z.size(); ++q) std::cout << " q" << q << "=" << p.labels[z.fold[q]];
    std::cout << "\npartners:\n";
    for (std::size_t c = 0; c < ps.classes.size(); ++c) {
        std::cout << "  " << p.labels[ps.class_point[c]] << ":";
        for (auto q : ps.classes[c]) std::cout << " q" << q;
        if (ps.classes[c].size() > 1) std::cout << " (leader q" << ps.classes[c].front() << ")";
        std::cout << "\n";
    }
    return 0;
}

int cmd_zigzag(const Flags& fl) {
    auto in = load(fl);
    PFiltration f = to_filtration(in.doc);
    auto ctx = make_context(f, in.field, in.tour);
    auto d = decompose_tables(ctx.point_tables, ctx.zigzag.arrows, in.field);
    const std::size_t last = ctx.zigzag.last();
    if (fl.json) {
        ojson out = header("zigzag", in.field, f.degree);
        out["zigzag"] = describe(f.poset, ctx.zigzag);
        ojson bars = ojson::array();
        for (const auto& iv : d.intervals) {
            ojson b{{"birth", iv.birth}, {"death", iv.death}};
            if (fl.types) {
                b["birth_type"] = endpoint_name(iv.birth_type);
                b["death_type"] = endpoint_name(iv.death_type);
            }
            if (fl.reps) {
                ojson reps = ojson::array();
                for (const auto& r : iv.reps) reps.push_back(chain_json(*ctx.index, r, in.field));
                b["reps"] = reps;
            }
            bars.push_back(b);
        }
        out["barcode"] = bars;
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "zigzag: " << describe(f.poset, ctx.zigzag) << "\n";
    std::cout << "barcode:\n";
    for (const auto& iv : d.intervals) {
        std::cout << "  " << interval_text(iv);
        if (fl.types) {
            std::cout << " " << endpoint_name(iv.birth_type) << "-" << endpoint_name(iv.death_type);
            if (iv.full(last)) std::cout << " full";
        }
        std::cout << "\n";
        if (fl.reps)
            for (std::size_t q = iv.birth; q <= iv.death; ++q)
                std::cout << "    q" << q << ": " << chain_text(*ctx.index, iv.rep(q), in.field) << "\n";
    }
    return 0;
}

int cmd_fastpath(const Flags& fl) {
    auto in = load(fl);
    PFiltration f = to_filtration(in.doc);
    std::size_t r = 0;
    if (fl.graph) {
        r = genrank_graph(f);
    } else {
        f.degree = *fl.dcomplex;
        r = genrank_dcomplex(f, *fl.dcomplex, in.field);
    }
    if (fl.json) {
        ojson out = header("fastpath", in.field, f.degree);
        out["method"] = fl.graph ? "graph" : "dcomplex";
        out["rank"] = r;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "rank: " << r << "\n";
    }
    return 0;
}

int cmd_random(const Flags& fl) {
    Rng rng(fl.seed);
    RandomOptions opt;
    PrimeField field(fl.field.value_or(2));
    if (fl.degree) opt.min_degree = opt.max_degree = *fl.degree;
    std::size_t disagreements = 0;
    for (std::size_t i = 0; i < fl.count; ++i) {
        PFiltration f = random_filtration(rng, opt);
        if (!fl.check) {
            if (i) std::cout << "\n";
            std::cout << "# seed " << fl.seed << " instance " << i << "\n" << write_text(f, field.characteristic());
            continue;
        }
        std::size_t g = generalized_rank(f, {field, std::nullopt, false}).rank;
        auto o = static_cast<std::size_t>(limit_to_colimit_rank(module_from_filtration(f, field), field));
        disagreements += g != o;
        std::cout << "instance " << i << ": genrank=" << g << " oracle=" << o << (g == o ? "" : " MISMATCH") << "\n";
    }
    if (fl.check) std::cout << "disagreements: " << disagreements << "\n";
    return disagreements == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized rank of poset-indexed persistence modules"};
    app.require_subcommand(1);
    Flags fl;

    auto input = [&](CLI::App* sub) {
        sub->add_option("path", fl.path, "Input document")->required();
        sub->add_option("--field", fl.field, "Prime characteristic");
        sub->add_option("--degree", fl.degree, "Homology degree");
        sub->add_flag("--json", fl.json, "Machine-readable report");
    };
    auto* gr = app.add_subcommand("genrank", "Generalized rank via unfolding");
    input(gr);
    gr->add_option("--tour", fl.tour_path, "File with an explicit tour");
    gr->add_flag("--audit", fl.audit, "Per-interval ledger");
    gr->add_flag("--sections", fl.sections, "Folded complete modules");

    auto* orc = app.add_subcommand("oracle", "Rank of the limit-to-colimit map");
    input(orc);

    auto* unf = app.add_subcommand("unfold", "Zigzag unfolding of the poset");
    input(unf);
    unf->add_option("--tour", fl.tour_path, "File with an explicit tour");

    auto* zz = app.add_subcommand("zigzag", "Barcode of the unfolded zigzag");
    input(zz);
    zz->add_option("--tour", fl.tour_path, "File with an explicit tour");
    zz->add_flag("--reps", fl.reps, "Print representative cycles");
    zz->add_flag("--types", fl.types, "Print endpoint types");

    auto* fp = app.add_subcommand("fastpath", "Rank via the graph or d-complex shortcut");
    input(fp);
    auto* mode = fp->add_option_group("mode");
    mode->add_flag("--graph", fl.graph, "Graph filtration in degree 1");
    mode->add_option("--dcomplex", fl.dcomplex, "Complexes of dimension at most d, degree d");
    mode->require_option(1);

    auto* rnd = app.add_subcommand("random", "Random filtrations for fuzzing");
    rnd->add_option("--seed", fl.seed, "Generator seed");
    rnd->add_option("--count", fl.count, "Number of instances");
    rnd->add_option("--field", fl.field, "Prime characteristic");
    rnd->add_option("--degree", fl.degree, "Fix the homology degree");
    rnd->add_flag("--check", fl.check, "Compare genrank with the oracle instead of printing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gr) return cmd_genrank(fl);
        if (*orc) return cmd_oracle(fl);
        if (*unf) return cmd_unfold(fl);
        if (*zz) return cmd_zigzag(fl);
        if (*fp) return cmd_fastpath(fl);
        if (*rnd) return cmd_random(fl);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
