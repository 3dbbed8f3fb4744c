#include "genrank/zigzag.hpp"

#include <algorithm>
#include <map>

namespace genrank {

namespace {

struct Bar {
    std::size_t birth;
    bool open_birth;
    std::size_t death = 0;
    bool alive = true;
    std::vector<Vector> coords;
};

class Sweep {
public:
    Sweep(const ZigzagModule& m, const PrimeField& field) : m_(m), f_(field) {}

    std::vector<CoordinateInterval> run() {
        for (Index r = 0; r < m_.dims[0]; ++r) open_bar(0, true, unit(m_.dims[0], r));
        for (std::size_t i = 0; i < m_.arrows.size(); ++i) {
            if (m_.arrows[i] == Arrow::forward)
                forward(i);
            else
                backward(i);
        }
        std::size_t last = m_.dims.size() - 1;
        std::vector<CoordinateInterval> out;
        for (auto& b : bars_) {
            if (b.alive) b.death = last;
            out.push_back({b.birth, b.death, std::move(b.coords)});
        }
        return out;
    }

private:
    static Vector unit(Index n, Index r) {
        Vector v = Vector::Zero(n);
        v(r) = 1;
        return v;
    }

    void open_bar(std::size_t at, bool open_birth, Vector v) {
        bars_.push_back({at, open_birth, 0, true, {std::move(v)}});
    }

    std::vector<std::size_t> alive() const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < bars_.size(); ++j)
            if (bars_[j].alive) out.push_back(j);
        return out;
    }

    Vector rep(std::size_t j, std::size_t t) const {
        const auto& b = bars_[j];
        if (t < b.birth) return Vector::Zero(m_.dims[t]);
        return b.coords[t - b.birth];
    }

    Matrix reps_at(const std::vector<std::size_t>& js, std::size_t t) const {
        Matrix x(m_.dims[t], static_cast<Index>(js.size()));
        for (std::size_t c = 0; c < js.size(); ++c) x.col(static_cast<Index>(c)) = rep(js[c], t);
        return x;
    }

    // Bar whose rep absorbs a relation: the latest closed birth if any, else the earliest birth.
    std::size_t choose(const std::vector<std::size_t>& support) const {
        std::optional<std::size_t> closed, open;
        for (std::size_t j : support) {
            if (!bars_[j].open_birth) {
                if (!closed || bars_[j].birth >= bars_[*closed].birth) closed = j;
            } else if (!open || bars_[j].birth < bars_[*open].birth) {
                open = j;
            }
        }
        return closed ? *closed : *open;
    }

    // Replace bar l by sum_j (c_j / c_l) bar_j over l's support up to point i.
    void absorb(std::size_t l, const std::map<std::size_t, Residue>& coef, std::size_t i) {
        Residue scale = f_.inv(coef.at(l));
        auto& target = bars_[l];
        for (std::size_t t = target.birth; t <= i; ++t) {
            Vector v = Vector::Zero(m_.dims[t]);
            for (auto [j, c] : coef) v += f_.mul(c, scale) * rep(j, t);
            target.coords[t - target.birth] = reduced_entries(v, f_);
        }
    }

    void forward(std::size_t i) {
        const Matrix& a = m_.maps[i];
        for (;;) {
            auto js = alive();
            Matrix ker = kernel(multiply(a, reps_at(js, i), f_), f_);
            if (ker.cols() == 0) break;
            std::map<std::size_t, Residue> coef;
            std::vector<std::size_t> support;
            for (std::size_t c = 0; c < js.size(); ++c)
                if (ker(static_cast<Index>(c), 0) != 0) {
                    coef[js[c]] = ker(static_cast<Index>(c), 0);
                    support.push_back(js[c]);
                }
            std::size_t l = choose(support);
            absorb(l, coef, i);
            bars_[l].alive = false;
            bars_[l].death = i;
        }
        auto js = alive();
        Matrix images(m_.dims[i + 1], 0);
        for (std::size_t j : js) {
            Vector y = reduced_entries(a * rep(j, i), f_);
            bars_[j].coords.push_back(y);
            images.conservativeResize(Eigen::NoChange, images.cols() + 1);
            images.col(images.cols() - 1) = y;
        }
        Index r = rank(images, f_);
        for (Index e = 0; e < m_.dims[i + 1] && r < m_.dims[i + 1]; ++e) {
            Matrix trial(images.rows(), images.cols() + 1);
            trial << images, unit(m_.dims[i + 1], e);
            if (rank(trial, f_) > r) {
                images = trial;
                ++r;
                open_bar(i + 1, false, unit(m_.dims[i + 1], e));
            }
        }
    }

    void backward(std::size_t i) {
        const Matrix& b = m_.maps[i];
        auto red = column_reduce(b, f_);
        std::vector<std::size_t> kept;
        for (Index c = 0; c < red.reduced.cols(); ++c) {
            if (red.pivots[static_cast<std::size_t>(c)] < 0) continue;
            auto js = alive();
            auto x = solve(reps_at(js, i), Vector(red.reduced.col(c)), f_);
            std::map<std::size_t, Residue> coef;
            std::vector<std::size_t> support;
            for (std::size_t k = 0; k < js.size(); ++k) {
                Residue v = (*x)(static_cast<Index>(k));
                if (v == 0 || std::find(kept.begin(), kept.end(), js[k]) != kept.end()) continue;
                coef[js[k]] = v;
                support.push_back(js[k]);
            }
            std::size_t l = choose(support);
            absorb(l, coef, i);
            kept.push_back(l);
        }
        for (std::size_t j : alive()) {
            if (std::find(kept.begin(), kept.end(), j) != kept.end()) continue;
            bars_[j].alive = false;
            bars_[j].death = i;
        }
        for (std::size_t j : alive()) bars_[j].coords.push_back(*solve(b, rep(j, i), f_));
        Matrix ker = kernel(b, f_);
        for (Index c = 0; c < ker.cols(); ++c) open_bar(i + 1, true, ker.col(c));
    }

    const ZigzagModule& m_;
    PrimeField f_;
    std::vector<Bar> bars_;
};

Chain chain_of(const AnnotationTable& t, const Vector& coords, const PrimeField& field) {
    Chain out;
    for (Index j = 0; j < coords.size(); ++j)
        if (coords(j) != 0) out = add_scaled(out, t.basis_cycles[static_cast<std::size_t>(j)], coords(j), field);
    return out;
}

}  // namespace

std::vector<CoordinateInterval> decompose_module(const ZigzagModule& m, const PrimeField& field) {
    if (m.dims.empty() || m.arrows.size() + 1 != m.dims.size() || m.maps.size() != m.arrows.size())
        throw InputError("zigzag module shape mismatch");
    return Sweep(m, field).run();
}

ZigzagModule induced_module(const std::vector<const AnnotationTable*>& tables, const std::vector<Arrow>& arrows,
                            const PrimeField& field) {
    ZigzagModule m;
    m.arrows = arrows;
    for (const auto* t : tables) m.dims.push_back(t->g);
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        const auto* from = arrows[i] == Arrow::forward ? tables[i] : tables[i + 1];
        const auto* to = arrows[i] == Arrow::forward ? tables[i + 1] : tables[i];
        m.maps.push_back(annotate_batch(*to, from->basis_cycles, field));
    }
    return m;
}

Endpoint birth_type(std::size_t b, const std::vector<Arrow>& arrows) {
    return b != 0 && arrows[b - 1] == Arrow::forward ? Endpoint::closed : Endpoint::open;
}

Endpoint death_type(std::size_t d, const std::vector<Arrow>& arrows) {
    return d != arrows.size() && arrows[d] == Arrow::backward ? Endpoint::closed : Endpoint::open;
}

Decomposition decompose_tables(const std::vector<const AnnotationTable*>& tables, const std::vector<Arrow>& arrows,
                               const PrimeField& field) {
    Decomposition d;
    d.degree = tables.front()->degree;
    d.index = tables.front()->index;
    for (auto& ci : decompose_module(induced_module(tables, arrows, field), field)) {
        IntervalModule iv;
        iv.birth = ci.birth;
        iv.death = ci.death;
        iv.birth_type = birth_type(ci.birth, arrows);
        iv.death_type = death_type(ci.death, arrows);
        for (std::size_t t = ci.birth; t <= ci.death; ++t)
            iv.reps.push_back(chain_of(*tables[t], ci.coords[t - ci.birth], field));
        Residue lead = field.inv(iv.reps.front().front().coeff);
        for (auto& r : iv.reps) r = scaled(r, lead, field);
        d.intervals.push_back(std::move(iv));
    }
    std::stable_sort(d.intervals.begin(), d.intervals.end(), [](const IntervalModule& a, const IntervalModule& b) {
        return std::tuple(a.birth, a.death, a.reps.front().front().cell) <
               std::tuple(b.birth, b.death, b.reps.front().front().cell);
    });
    return d;
}

Decomposition decompose(const ZigzagFiltration& zf, int k, const PrimeField& field) {
    std::vector<Simplex> all;
    for (const auto& c : zf.point_complexes) all.insert(all.end(), c.begin(), c.end());
    auto index = std::make_shared<const SimplexIndex>(std::move(all));
    std::vector<AnnotationTable> per_point;
    for (std::size_t p = 0; p < zf.point_complexes.size(); ++p) {
        per_point.push_back(annotate_complex(index, index->ids(zf.point_complexes[p]), k, field));
        per_point.back().point = p;
    }
    std::vector<const AnnotationTable*> tables;
    for (std::size_t q = 0; q < zf.size(); ++q) tables.push_back(&per_point[zf.zigzag.fold[q]]);
    auto d = decompose_tables(tables, zf.zigzag.arrows, field);
    d.degree = k;
    return d;
}

bool is_limit_module(const IntervalModule& i, const ZigzagFiltration& zf) {
    return birth_type(i.birth, zf.zigzag.arrows) == Endpoint::open &&
           death_type(i.death, zf.zigzag.arrows) == Endpoint::open;
}

std::vector<Chain> rep_sum(const std::vector<std::pair<Residue, const IntervalModule*>>& targets, std::size_t points,
                           const PrimeField& field) {
    std::vector<Chain> out(points);
    for (auto [c, iv] : targets)
        for (std::size_t q = iv->birth; q <= iv->death; ++q) out[q] = add_scaled(out[q], iv->rep(q), c, field);
    return out;
}

std::optional<Diagnostic> check_decomposition(const Decomposition& d,
                                              const std::vector<const AnnotationTable*>& tables,
                                              const std::vector<Arrow>& arrows, const PrimeField& field) {
    const std::size_t n = tables.size();
    for (std::size_t q = 0; q < n; ++q) {
        std::vector<Chain> here;
        for (const auto& iv : d.intervals)
            if (iv.contains(q)) here.push_back(iv.rep(q));
        auto count = static_cast<Index>(here.size());
        if (count != tables[q]->g)
            return Diagnostic{"point " + std::to_string(q) + ": " + std::to_string(count) + " intervals, dimension " +
                              std::to_string(tables[q]->g)};
        if (rank(annotate_batch(*tables[q], here, field), field) != count)
            return Diagnostic{"point " + std::to_string(q) + ": reps are dependent"};
    }
    for (std::size_t k = 0; k < d.intervals.size(); ++k) {
        const auto& iv = d.intervals[k];
        if (iv.death >= n || iv.birth > iv.death || iv.reps.size() != iv.death - iv.birth + 1)
            return Diagnostic{"interval " + std::to_string(k) + " malformed"};
        if (iv.birth_type != birth_type(iv.birth, arrows) || iv.death_type != death_type(iv.death, arrows))
            return Diagnostic{"interval " + std::to_string(k) + " endpoint types"};
        for (std::size_t q = iv.birth; q < iv.death; ++q) {
            const auto* big = arrows[q] == Arrow::forward ? tables[q + 1] : tables[q];
            if (annotate_cycle(*big, iv.rep(q), field) != annotate_cycle(*big, iv.rep(q + 1), field))
                return Diagnostic{"interval " + std::to_string(k) + " reps disagree across step " + std::to_string(q)};
        }
        // Arrows leaving the support must kill the rep.
        if (iv.birth > 0 && arrows[iv.birth - 1] == Arrow::backward &&
            !annotate_cycle(*tables[iv.birth - 1], iv.rep(iv.birth), field).isZero())
            return Diagnostic{"interval " + std::to_string(k) + " survives past its birth"};
        if (iv.death + 1 < n && arrows[iv.death] == Arrow::forward &&
            !annotate_cycle(*tables[iv.death + 1], iv.rep(iv.death), field).isZero())
            return Diagnostic{"interval " + std::to_string(k) + " survives past its death"};
    }
    return std::nullopt;
}

}  // namespace genrank
