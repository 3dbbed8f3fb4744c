#include "genrank/chain.hpp"

#include <algorithm>

namespace genrank {

Chain add_scaled(const Chain& a, const Chain& b, Residue c, const PrimeField& field) {
    c = field.reduce(c);
    if (c == 0) return a;
    Chain out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].cell < b[j].cell)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].cell < a[i].cell) {
            out.push_back({b[j].cell, field.mul(c, b[j].coeff)});
            ++j;
        } else {
            Residue v = field.add(a[i].coeff, field.mul(c, b[j].coeff));
            if (v != 0) out.push_back({a[i].cell, v});
            ++i;
            ++j;
        }
    }
    return out;
}

Chain scaled(const Chain& a, Residue c, const PrimeField& field) {
    return add_scaled({}, a, c, field);
}

Chain normalized(Chain a, const PrimeField& field) {
    std::sort(a.begin(), a.end(), [](const ChainTerm& x, const ChainTerm& y) { return x.cell < y.cell; });
    Chain out;
    for (const auto& t : a) {
        Residue v = field.reduce(t.coeff);
        if (!out.empty() && out.back().cell == t.cell) {
            out.back().coeff = field.add(out.back().coeff, v);
            if (out.back().coeff == 0) out.pop_back();
        } else if (v != 0) {
            out.push_back({t.cell, v});
        }
    }
    return out;
}

Chain PivotBasis::reduce(Chain c, std::vector<std::pair<std::size_t, Residue>>* used) const {
    while (!c.empty()) {
        auto it = owner_.find(c.front().cell);
        if (it == owner_.end()) break;
        const Chain& col = cols_[it->second];
        Residue coef = field_.div(c.front().coeff, col.front().coeff);
        c = add_scaled(c, col, field_.neg(coef), field_);
        if (used) used->push_back({it->second, coef});
    }
    return c;
}

long PivotBasis::add(const Chain& c) {
    Chain r = reduce(c);
    if (r.empty()) return -1;
    owner_.emplace(r.front().cell, cols_.size());
    cols_.push_back(std::move(r));
    return static_cast<long>(cols_.size() - 1);
}

}  // namespace genrank
