#include "plab/matrix.hpp"

#include "plab/errors.hpp"

namespace plab {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), e_((size_t)rows * cols) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::unit(int n, int i, int j) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw DimensionError("unit matrix index out of range");
    Matrix m(n, n);
    m.at(i, j) = Scalar(1);
    return m;
}

Matrix Matrix::diag(const Vec& d) {
    Matrix m((int)d.size(), (int)d.size());
    for (size_t i = 0; i < d.size(); ++i) m.at((int)i, (int)i) = d[i];
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Matrix(0, 0);
    Matrix m((int)rows.size(), (int)rows[0].size());
    for (int i = 0; i < m.rows(); ++i) {
        if ((int)rows[i].size() != m.cols()) throw DimensionError("ragged rows");
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

int Matrix::dim() const {
    if (!is_square()) throw DimensionError("square matrix required");
    return rows_;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("add: shape mismatch");
    Matrix m(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] + o.e_[k];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("sub: shape mismatch");
    Matrix m(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] - o.e_[k];
    return m;
}

Matrix Matrix::operator-() const {
    Matrix m(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = -e_[k];
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("mul: shape mismatch");
    Matrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) m.at(i, j) += a * o.at(k, j);
        }
    return m;
}

Matrix Matrix::operator*(const Scalar& s) const {
    Matrix m(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] * s;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Matrix Matrix::conj() const {
    Matrix m(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k].conj();
    return m;
}

Scalar Matrix::trace() const {
    Scalar t;
    for (int i = 0; i < dim(); ++i) t += at(i, i);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& s : e_)
        if (!s.is_zero()) return false;
    return true;
}

Matrix Matrix::block(int i0, int j0, int r, int c) const {
    if (i0 < 0 || j0 < 0 || i0 + r > rows_ || j0 + c > cols_) throw DimensionError("block out of range");
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
    return m;
}

void Matrix::set_block(int i0, int j0, const Matrix& b) {
    if (i0 + b.rows() > rows_ || j0 + b.cols() > cols_) throw DimensionError("set_block out of range");
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) at(i0 + i, j0 + j) = b.at(i, j);
}

Vec Matrix::col(int j) const {
    Vec v((size_t)rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

Vec Matrix::row(int i) const {
    Vec v((size_t)cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

Vec operator*(const Matrix& m, const Vec& x) {
    if (m.cols() != (int)x.size()) throw DimensionError("mat*vec: shape mismatch");
    Vec y((size_t)m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) y[i] += m.at(i, j) * x[j];
    return y;
}

Vec operator*(const Vec& f, const Matrix& m) {
    if (m.rows() != (int)f.size()) throw DimensionError("vec*mat: shape mismatch");
    Vec y((size_t)m.cols());
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) y[j] += f[i] * m.at(i, j);
    return y;
}

Scalar dot(const Vec& f, const Vec& x) {
    if (f.size() != x.size()) throw DimensionError("dot: size mismatch");
    Scalar s;
    for (size_t k = 0; k < f.size(); ++k) s += f[k] * x[k];
    return s;
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("vec_add: size mismatch");
    Vec c(a.size());
    for (size_t k = 0; k < a.size(); ++k) c[k] = a[k] + b[k];
    return c;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("vec_sub: size mismatch");
    Vec c(a.size());
    for (size_t k = 0; k < a.size(); ++k) c[k] = a[k] - b[k];
    return c;
}

Vec vec_scale(const Scalar& s, const Vec& a) {
    Vec c(a.size());
    for (size_t k = 0; k < a.size(); ++k) c[k] = s * a[k];
    return c;
}

bool vec_is_zero(const Vec& a) {
    for (const auto& s : a)
        if (!s.is_zero()) return false;
    return true;
}

Vec basis_vec(int n, int i) {
    Vec v((size_t)n);
    v[i] = Scalar(1);
    return v;
}

Matrix outer(const Vec& x, const Vec& f) {
    Matrix m((int)x.size(), (int)f.size());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = x[i] * f[j];
    return m;
}

Matrix jordan_block(int k, const Scalar& lambda) {
    if (k < 1) throw DimensionError("jordan_block: k >= 1 required");
    Matrix m(k, k);
    for (int i = 0; i < k; ++i) {
        m.at(i, i) = lambda;
        if (i + 1 < k) m.at(i, i + 1) = Scalar(1);
    }
    return m;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

Rref rref(const Matrix& m) {
    Rref out;
    out.r = m;
    Matrix& r = out.r;
    int lead = 0;
    for (int col = 0; col < r.cols() && lead < r.rows(); ++col) {
        int piv = -1;
        for (int i = lead; i < r.rows(); ++i)
            if (!r.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != lead)
            for (int j = 0; j < r.cols(); ++j) std::swap(r.at(piv, j), r.at(lead, j));
        Scalar inv = r.at(lead, col).inv();
        for (int j = 0; j < r.cols(); ++j) r.at(lead, j) = r.at(lead, j) * inv;
        for (int i = 0; i < r.rows(); ++i) {
            if (i == lead || r.at(i, col).is_zero()) continue;
            Scalar f = r.at(i, col);
            for (int j = 0; j < r.cols(); ++j) r.at(i, j) = r.at(i, j) - f * r.at(lead, j);
        }
        out.pivots.push_back(col);
        ++lead;
    }
    out.rank = (int)out.pivots.size();
    return out;
}

int rank(const Matrix& m) { return rref(m).rank; }

Matrix inverse(const Matrix& m) {
    int n = m.dim();
    Matrix aug(n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix::identity(n));
    Rref r = rref(aug);
    for (int i = 0; i < n; ++i)
        if (r.pivots.size() <= (size_t)i || r.pivots[i] != i) throw SingularError("inverse: singular matrix");
    return r.r.block(0, n, n, n);
}

Scalar det(const Matrix& m) {
    int n = m.dim();
    Matrix a = m;
    Scalar d(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!a.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) return Scalar(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
            d = -d;
        }
        d = d * a.at(col, col);
        Scalar inv = a.at(col, col).inv();
        for (int i = col + 1; i < n; ++i) {
            if (a.at(i, col).is_zero()) continue;
            Scalar f = a.at(i, col) * inv;
            for (int j = col; j < n; ++j) a.at(i, j) = a.at(i, j) - f * a.at(col, j);
        }
    }
    return d;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    if ((int)b.size() != a.rows()) throw DimensionError("solve: rhs size mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    aug.set_block(0, 0, a);
    for (int i = 0; i < a.rows(); ++i) aug.at(i, a.cols()) = b[i];
    Rref r = rref(aug);
    for (int i = 0; i < (int)r.pivots.size(); ++i)
        if (r.pivots[i] == a.cols()) return std::nullopt; // pivot in rhs column
    Vec x((size_t)a.cols());
    for (int i = 0; i < (int)r.pivots.size(); ++i) x[r.pivots[i]] = r.r.at(i, a.cols());
    return x;
}

std::vector<Vec> kernel_basis(const Matrix& a) {
    Rref r = rref(a);
    std::vector<bool> is_pivot((size_t)a.cols(), false);
    for (int p : r.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v((size_t)a.cols());
        v[free] = Scalar(1);
        for (int i = 0; i < (int)r.pivots.size(); ++i) v[r.pivots[i]] = -r.r.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve_functional(const std::vector<std::pair<Vec, Scalar>>& constraints, int n) {
    Matrix a((int)constraints.size(), n);
    Vec b(constraints.size());
    for (int i = 0; i < (int)constraints.size(); ++i) {
        if ((int)constraints[i].first.size() != n) throw DimensionError("solve_functional: size mismatch");
        for (int j = 0; j < n; ++j) a.at(i, j) = constraints[i].first[j];
        b[i] = constraints[i].second;
    }
    return solve(a, b);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q)
                    m.at(i * b.rows() + p, j * b.cols() + q) = a.at(i, j) * b.at(p, q);
        }
    return m;
}

} // namespace plab
