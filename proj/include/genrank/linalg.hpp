#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "genrank/error.hpp"
#include "genrank/field.hpp"

namespace genrank {

using Index = Eigen::Index;
using Matrix = Eigen::Matrix<Residue, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Residue, Eigen::Dynamic, 1>;

// target column += coefficient * source column
struct ColumnOp {
    Index target;
    Index source;
    Residue coefficient;
    friend bool operator==(const ColumnOp&, const ColumnOp&) = default;
};

struct ColumnReduction {
    Matrix reduced;
    std::vector<ColumnOp> ops;
    Matrix transform;           // reduced = input * transform
    std::vector<Index> pivots;  // pivot row per column, -1 for zero columns
};

// Pivot of a column is its first nonzero row. Columns are processed left to right.
ColumnReduction column_reduce(const Matrix& m, const PrimeField& field);

Index rank(const Matrix& m, const PrimeField& field);

std::optional<Vector> solve(const Matrix& a, const Vector& v, const PrimeField& field);

// Columns span the null space of m.
Matrix kernel(const Matrix& m, const PrimeField& field);

Vector linearize(const Matrix& m);

Matrix multiply(const Matrix& a, const Matrix& b, const PrimeField& field);

template <typename Derived>
auto reduced_entries(const Eigen::MatrixBase<Derived>& m, const PrimeField& field) {
    return m.unaryExpr([field](Residue x) { return field.reduce(x); });
}

Matrix replay(const Matrix& m, const std::vector<ColumnOp>& ops, const PrimeField& field);

Index first_nonzero(const Vector& v);

}  // namespace genrank
