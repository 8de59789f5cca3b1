#pragma once

#include <vector>

#include "plab/scalar.hpp"

namespace plab {

using Vec = std::vector<Scalar>;

/// Dense exact matrix. Rectangular internally (block and kernel work needs
/// it); every theorem-level operation checks squareness itself.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols);

    static Matrix identity(int n);
    static Matrix zero(int n) { return Matrix(n, n); }
    /// E_ij, single 1 at (i, j). Zero-based.
    static Matrix unit(int n, int i, int j);
    static Matrix diag(const Vec& d);
    static Matrix from_rows(const std::vector<Vec>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    /// Dimension of a square matrix; throws on rectangles.
    int dim() const;

    Scalar& at(int i, int j) { return e_[(size_t)i * cols_ + j]; }
    const Scalar& at(int i, int j) const { return e_[(size_t)i * cols_ + j]; }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(const Scalar& s) const;

    Matrix transpose() const;
    /// Entrywise complex conjugate.
    Matrix conj() const;

    Scalar trace() const;
    bool is_zero() const;

    Matrix block(int i0, int j0, int r, int c) const;
    void set_block(int i0, int j0, const Matrix& b);

    Vec col(int j) const;
    Vec row(int i) const;

private:
    int rows_, cols_;
    std::vector<Scalar> e_;
};

inline Matrix operator*(const Scalar& s, const Matrix& m) { return m * s; }

Vec operator*(const Matrix& m, const Vec& x);       // column action
Vec operator*(const Vec& f, const Matrix& m);       // row (functional) action
Scalar dot(const Vec& f, const Vec& x);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& s, const Vec& a);
bool vec_is_zero(const Vec& a);
Vec basis_vec(int n, int i);

/// x f^T as an n x n matrix.
Matrix outer(const Vec& x, const Vec& f);

Matrix jordan_block(int k, const Scalar& lambda);
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Reduced row echelon form. r is the transformed matrix, pivots the pivot
/// column of each nonzero row.
struct Rref {
    Matrix r;
    std::vector<int> pivots;
    int rank = 0;
};
Rref rref(const Matrix& m);

int rank(const Matrix& m);
Matrix inverse(const Matrix& m);                    // throws SingularError
Scalar det(const Matrix& m);

/// One solution of A x = b with all free coordinates set to zero, or nullopt
/// if inconsistent. The zero-fill makes every solve deterministic.
std::optional<Vec> solve(const Matrix& a, const Vec& b);

/// Basis of the right kernel, one vector per free column, in column order
/// (each has a 1 in its free coordinate). Deterministic.
std::vector<Vec> kernel_basis(const Matrix& a);

/// Functional f with f(v_i) = c_i for the given constraints; free
/// coordinates zero. nullopt if the constraints are inconsistent.
std::optional<Vec> solve_functional(const std::vector<std::pair<Vec, Scalar>>& constraints, int n);

Matrix kron(const Matrix& a, const Matrix& b);

} // namespace plab
