#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qmds/errors.hpp"
#include "qmds/field.hpp"

namespace qmds {

/// Dense row-major matrix over F_{q^2}.
class Matrix {
  public:
    Matrix(FieldPtr ctx, std::size_t rows, std::size_t cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols), entries_(rows * cols) {}

    static Matrix identity(FieldPtr ctx, std::size_t n) {
        Matrix m(std::move(ctx), n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = m.ctx_->one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldContext& field() const { return *ctx_; }
    FieldPtr field_ptr() const { return ctx_; }

    FieldElement& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const FieldElement& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    /// Matrix-vector product.
    std::vector<FieldElement> apply(const std::vector<FieldElement>& x) const {
        if (x.size() != cols_)
            throw ParamError("matrix-vector dimension mismatch");
        std::vector<FieldElement> y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            FieldElement acc;
            for (std::size_t c = 0; c < cols_; ++c)
                acc = ctx_->add(acc, ctx_->mul(at(r, c), x[c]));
            y[r] = acc;
        }
        return y;
    }

    Matrix without_column(std::size_t drop) const {
        Matrix m(ctx_, rows_, cols_ - 1);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0, w = 0; c < cols_; ++c)
                if (c != drop)
                    m.at(r, w++) = at(r, c);
        return m;
    }

  private:
    FieldPtr ctx_;
    std::size_t rows_, cols_;
    std::vector<FieldElement> entries_;
};

namespace detail {

// Row echelon form in place with "first nonzero" pivoting.
// Returns pivot columns and the row-swap parity.
struct EchelonInfo {
    std::vector<std::size_t> pivot_cols;
    bool odd_swaps = false;
};

inline EchelonInfo echelon(Matrix& m, std::vector<FieldElement>* rhs = nullptr) {
    const FieldContext& F = m.field();
    EchelonInfo info;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m.at(pivot, col).is_zero())
            ++pivot;
        if (pivot == m.rows())
            continue;
        if (pivot != row) {
            for (std::size_t c = col; c < m.cols(); ++c)
                std::swap(m.at(pivot, c), m.at(row, c));
            if (rhs)
                std::swap((*rhs)[pivot], (*rhs)[row]);
            info.odd_swaps = !info.odd_swaps;
        }
        FieldElement inv_p = F.inv(m.at(row, col));
        for (std::size_t r = row + 1; r < m.rows(); ++r) {
            if (m.at(r, col).is_zero())
                continue;
            FieldElement f = F.mul(m.at(r, col), inv_p);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) = F.sub(m.at(r, c), F.mul(f, m.at(row, c)));
            if (rhs)
                (*rhs)[r] = F.sub((*rhs)[r], F.mul(f, (*rhs)[row]));
        }
        info.pivot_cols.push_back(col);
        ++row;
    }
    return info;
}

} // namespace detail

/// Exact determinant via Gaussian elimination.
inline FieldElement determinant(Matrix m) {
    if (m.rows() != m.cols())
        throw ParamError("determinant requires a square matrix");
    const FieldContext& F = m.field();
    auto info = detail::echelon(m);
    if (info.pivot_cols.size() != m.rows())
        return FieldElement::zero();
    FieldElement det = F.one();
    for (std::size_t i = 0; i < m.rows(); ++i)
        det = F.mul(det, m.at(i, i));
    return info.odd_swaps ? F.neg(det) : det;
}

inline std::size_t rank(Matrix m) {
    return detail::echelon(m).pivot_cols.size();
}

enum class SolveStatus { unique, underdetermined, no_solution };

struct SolveResult {
    SolveStatus status = SolveStatus::no_solution;
    std::vector<FieldElement> solution; // empty iff no_solution
};

/// Solve M u = b exactly. A consistent system with free variables yields a
/// flagged witness with every free variable set to 1, in column order.
inline SolveResult solve(Matrix m, std::vector<FieldElement> b) {
    if (b.size() != m.rows())
        throw ParamError("solve dimension mismatch");
    const FieldContext& F = m.field();
    auto info = detail::echelon(m, &b);
    const std::size_t nr = info.pivot_cols.size();
    for (std::size_t r = nr; r < m.rows(); ++r)
        if (!b[r].is_zero())
            return {SolveStatus::no_solution, {}};

    std::vector<FieldElement> u(m.cols(), F.one()); // free variables = 1
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : info.pivot_cols)
        is_pivot[c] = true;
    for (std::size_t i = nr; i-- > 0;) {
        std::size_t col = info.pivot_cols[i];
        FieldElement acc = b[i];
        for (std::size_t c = col + 1; c < m.cols(); ++c)
            acc = F.sub(acc, F.mul(m.at(i, c), u[c]));
        u[col] = F.mul(acc, F.inv(m.at(i, col)));
    }
    bool full = nr == m.cols();
    return {full ? SolveStatus::unique : SolveStatus::underdetermined, std::move(u)};
}

/// Kernel vector with every coordinate nonzero, built by the two-subsystem
/// combination: drop the first (resp. last) column, solve each reduced
/// homogeneous system through an all-ones normalization row, and join the
/// solutions as (0, x) - lambda (y, 0) with the first lambda = g^{(q+1)i}
/// avoiding the forbidden ratios x_c / y_c.
///
/// Coordinates land in F_q whenever the matrix is row-equivalent to its
/// entrywise q-th power; callers verify that where they rely on it.
inline std::optional<std::vector<FieldElement>> kernel_vector_nonzero_coords(const Matrix& m) {
    const FieldContext& F = m.field();
    const std::size_t cols = m.cols();

    Matrix red = m;
    auto info = detail::echelon(red);
    const std::size_t r = info.pivot_cols.size();
    if (r >= cols)
        return std::nullopt; // trivial kernel
    if (cols == 1)
        return std::vector<FieldElement>{F.one()};
    if (r != cols - 2)
        return std::nullopt; // outside the two-subsystem shape

    // row basis of m
    Matrix basis(m.field_ptr(), r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < cols; ++c)
            basis.at(i, c) = red.at(i, c);

    auto solve_unit = [&](const Matrix& sub) -> std::optional<std::vector<FieldElement>> {
        Matrix aug(m.field_ptr(), sub.rows() + 1, sub.cols());
        for (std::size_t c = 0; c < sub.cols(); ++c)
            aug.at(0, c) = F.one();
        for (std::size_t i = 0; i < sub.rows(); ++i)
            for (std::size_t c = 0; c < sub.cols(); ++c)
                aug.at(i + 1, c) = sub.at(i, c);
        std::vector<FieldElement> rhs(aug.rows());
        rhs[0] = F.one();
        auto res = solve(std::move(aug), std::move(rhs));
        if (res.status != SolveStatus::unique)
            return std::nullopt;
        for (auto& c : res.solution)
            if (c.is_zero())
                return std::nullopt;
        return res.solution;
    };

    auto x = solve_unit(basis.without_column(0));        // lives on columns 1..cols-1
    auto y = solve_unit(basis.without_column(cols - 1)); // lives on columns 0..cols-2
    if (!x || !y)
        return std::nullopt;

    std::vector<FieldElement> forbidden;
    for (std::size_t c = 1; c + 1 < cols; ++c)
        forbidden.push_back(F.mul((*x)[c - 1], F.inv((*y)[c])));

    for (std::int64_t i = 0; i < F.q() - 1; ++i) {
        FieldElement lambda = F.g_power((F.q() + 1) * i);
        bool ok = true;
        for (auto f : forbidden)
            if (lambda == f) {
                ok = false;
                break;
            }
        if (!ok)
            continue;
        std::vector<FieldElement> u(cols);
        u[0] = F.neg(F.mul(lambda, (*y)[0]));
        for (std::size_t c = 1; c + 1 < cols; ++c)
            u[c] = F.sub((*x)[c - 1], F.mul(lambda, (*y)[c]));
        u[cols - 1] = (*x)[cols - 2];
        for (auto w : m.apply(u))
            if (!w.is_zero())
                throw InternalError("kernel combination does not annihilate the matrix");
        return u;
    }
    return std::nullopt; // no qualifying lambda (precondition h < q+1 violated)
}

} // namespace qmds
