#include "genrank/linalg.hpp"

#include <unordered_map>

#include "genrank/error.hpp"

namespace genrank {

namespace {

Index leading_row(const Matrix& m, Index col) {
    for (Index r = 0; r < m.rows(); ++r)
        if (m(r, col) != 0) return r;
    return -1;
}

void axpy_column(Matrix& m, Index target, Index source, Residue c, const PrimeField& f) {
    for (Index r = 0; r < m.rows(); ++r)
        if (m(r, source) != 0) m(r, target) = f.add(m(r, target), f.mul(c, m(r, source)));
}

}  // namespace

Index first_nonzero(const Vector& v) {
    for (Index i = 0; i < v.size(); ++i)
        if (v(i) != 0) return i;
    return -1;
}

ColumnReduction column_reduce(const Matrix& m, const PrimeField& field) {
    ColumnReduction out;
    out.reduced = reduced_entries(m, field);
    out.transform = Matrix::Identity(m.cols(), m.cols());
    out.pivots.assign(static_cast<std::size_t>(m.cols()), -1);
    std::unordered_map<Index, Index> owner;
    for (Index j = 0; j < m.cols(); ++j) {
        Index piv = leading_row(out.reduced, j);
        while (piv >= 0) {
            auto it = owner.find(piv);
            if (it == owner.end()) break;
            Index i = it->second;
            Residue c = field.neg(field.div(out.reduced(piv, j), out.reduced(piv, i)));
            axpy_column(out.reduced, j, i, c, field);
            axpy_column(out.transform, j, i, c, field);
            out.ops.push_back({j, i, c});
            piv = leading_row(out.reduced, j);
        }
        if (piv >= 0) owner.emplace(piv, j);
        out.pivots[static_cast<std::size_t>(j)] = piv;
    }
    return out;
}

Index rank(const Matrix& m, const PrimeField& field) {
    auto red = column_reduce(m, field);
    Index r = 0;
    for (Index p : red.pivots) r += p >= 0;
    return r;
}

std::optional<Vector> solve(const Matrix& a, const Vector& v, const PrimeField& field) {
    if (v.size() != a.rows()) throw InputError("solve: vector length does not match matrix rows");
    auto red = column_reduce(a, field);
    std::unordered_map<Index, Index> owner;
    for (Index j = 0; j < a.cols(); ++j)
        if (red.pivots[static_cast<std::size_t>(j)] >= 0) owner.emplace(red.pivots[static_cast<std::size_t>(j)], j);

    Vector r = reduced_entries(v, field);
    Vector x = Vector::Zero(a.cols());
    for (Index piv = first_nonzero(r); piv >= 0; piv = first_nonzero(r)) {
        auto it = owner.find(piv);
        if (it == owner.end()) return std::nullopt;
        Index j = it->second;
        Residue c = field.div(r(piv), red.reduced(piv, j));
        r = reduced_entries(r - c * red.reduced.col(j), field);
        x = reduced_entries(x + c * red.transform.col(j), field);
    }
    return x;
}

Matrix kernel(const Matrix& m, const PrimeField& field) {
    auto red = column_reduce(m, field);
    std::vector<Index> zero_cols;
    for (Index j = 0; j < m.cols(); ++j)
        if (red.pivots[static_cast<std::size_t>(j)] < 0) zero_cols.push_back(j);
    Matrix out(m.cols(), static_cast<Index>(zero_cols.size()));
    for (std::size_t i = 0; i < zero_cols.size(); ++i) out.col(static_cast<Index>(i)) = red.transform.col(zero_cols[i]);
    return out;
}

Vector linearize(const Matrix& m) {
    Vector out(m.size());
    for (Index j = 0; j < m.cols(); ++j) out.segment(j * m.rows(), m.rows()) = m.col(j);
    return out;
}

Matrix multiply(const Matrix& a, const Matrix& b, const PrimeField& field) {
    if (a.cols() != b.rows()) throw InputError("multiply: inner dimensions differ");
    Matrix out = Matrix::Zero(a.rows(), b.cols());
    // Chunk the inner dimension so partial sums stay below 2^62.
    constexpr Index chunk = 1 << 20;
    for (Index k0 = 0; k0 < a.cols(); k0 += chunk) {
        Index len = std::min(chunk, a.cols() - k0);
        out += a.middleCols(k0, len) * b.middleRows(k0, len);
        out = reduced_entries(out, field);
    }
    return out;
}

Matrix replay(const Matrix& m, const std::vector<ColumnOp>& ops, const PrimeField& field) {
    Matrix out = reduced_entries(m, field);
    for (const auto& op : ops) axpy_column(out, op.target, op.source, op.coefficient, field);
    return out;
}

}  // namespace genrank
