#include "diffalg/linalg.hpp"

#include <algorithm>

namespace diffalg {

Vec zero_vec(FieldSpec f, int n) { return Vec(static_cast<size_t>(n), Scalar::zero(f)); }

Vec unit_vec(FieldSpec f, int n, int i) {
    Vec v = zero_vec(f, n);
    v[static_cast<size_t>(i)] = Scalar::one(f);
    return v;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(const Scalar& c, const Vec& a) {
    Vec r = a;
    for (auto& x : r) x *= c;
    return r;
}

bool is_zero(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_zero(); });
}

Scalar dot(const Vec& a, const Vec& b) {
    if (a.empty()) throw input_error("dot of empty vectors");
    Scalar r = Scalar::zero(a[0].field());
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

Mat::Mat(FieldSpec f, int rows, int cols)
    : f_(f), rows_(rows), cols_(cols),
      d_(static_cast<size_t>(rows) * cols, Scalar::zero(f)) {}

Mat Mat::identity(FieldSpec f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Mat Mat::from_rows(FieldSpec f, const std::vector<Vec>& rows, int cols) {
    Mat m(f, static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols) throw input_error("row length mismatch");
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][static_cast<size_t>(j)];
    }
    return m;
}

Mat Mat::from_cols(FieldSpec f, const std::vector<Vec>& cols, int rows) {
    Mat m(f, rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        if (static_cast<int>(cols[j].size()) != rows) throw input_error("column length mismatch");
        for (int i = 0; i < rows; ++i) m.at(i, static_cast<int>(j)) = cols[j][static_cast<size_t>(i)];
    }
    return m;
}

Vec Mat::row(int i) const {
    Vec v;
    v.reserve(static_cast<size_t>(cols_));
    for (int j = 0; j < cols_; ++j) v.push_back(at(i, j));
    return v;
}

Vec Mat::col(int j) const {
    Vec v;
    v.reserve(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

Mat Mat::operator+(const Mat& o) const {
    Mat r = *this;
    for (size_t i = 0; i < d_.size(); ++i) r.d_[i] += o.d_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    Mat r = *this;
    for (size_t i = 0; i < d_.size(); ++i) r.d_[i] -= o.d_[i];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw input_error("matrix shape mismatch in product");
    Mat r(f_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

Mat Mat::operator*(const Scalar& c) const {
    Mat r = *this;
    for (auto& x : r.d_) x *= c;
    return r;
}

Vec Mat::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw input_error("matrix/vector shape mismatch");
    Vec r = zero_vec(f_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) r[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
    return r;
}

Mat Mat::transpose() const {
    Mat r(f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::pow(long e) const {
    if (rows_ != cols_) throw input_error("pow of non-square matrix");
    Mat r = identity(f_, rows_), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool Mat::is_zero() const {
    return std::all_of(d_.begin(), d_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
}

Vec Mat::flatten() const { return d_; }

Mat Mat::unflatten(FieldSpec f, const Vec& v, int rows, int cols) {
    if (static_cast<int>(v.size()) != rows * cols) throw input_error("unflatten size mismatch");
    Mat m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = v[static_cast<size_t>(i) * cols + j];
    return m;
}

std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int pivot = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m.at(i, c).is_zero()) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(r, j));
        Scalar inv = m.at(r, c).inverse();
        for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar factor = m.at(i, c);
            for (int j = c; j < m.cols(); ++j) m.at(i, j) -= factor * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(Mat m) { return static_cast<int>(rref(m).size()); }

std::vector<Vec> kernel_basis(const Mat& m) {
    Mat r = m;
    std::vector<int> pivots = rref(r);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;

    std::vector<Vec> basis;
    FieldSpec f = m.field();
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        Vec v = zero_vec(f, m.cols());
        v[static_cast<size_t>(c)] = Scalar::one(f);
        for (size_t pr = 0; pr < pivots.size(); ++pr)
            v[static_cast<size_t>(pivots[pr])] = -r.at(static_cast<int>(pr), c);
        // normalize: first nonzero entry = 1
        for (const Scalar& s : v) {
            if (!s.is_zero()) {
                v = scale(s.inverse(), v);
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw input_error("solve shape mismatch");
    FieldSpec f = m.field();
    Mat aug(f, m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[static_cast<size_t>(i)];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;  // inconsistent
    Vec x = zero_vec(f, m.cols());
    for (size_t pr = 0; pr < pivots.size(); ++pr)
        x[static_cast<size_t>(pivots[pr])] = aug.at(static_cast<int>(pr), m.cols());
    return x;
}

Subspace Subspace::span(FieldSpec f, int ambient, const std::vector<Vec>& gens) {
    Subspace s(f, ambient);
    if (gens.empty()) return s;
    Mat m = Mat::from_rows(f, gens, ambient);
    std::vector<int> pivots = rref(m);
    for (size_t i = 0; i < pivots.size(); ++i) s.basis_.push_back(m.row(static_cast<int>(i)));
    return s;
}

Subspace Subspace::full(FieldSpec f, int ambient) {
    std::vector<Vec> gens;
    for (int i = 0; i < ambient; ++i) gens.push_back(unit_vec(f, ambient, i));
    return span(f, ambient, gens);
}

bool Subspace::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& o) const {
    for (const Vec& v : o.basis_)
        if (!contains(v)) return false;
    return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
    if (static_cast<int>(v.size()) != ambient_) throw input_error("subspace ambient mismatch");
    // reduce v against RREF rows; pivot entries give the coordinates
    Vec w = v, coords = zero_vec(f_, dim());
    for (size_t r = 0; r < basis_.size(); ++r) {
        int pc = -1;
        for (int j = 0; j < ambient_; ++j)
            if (!basis_[r][static_cast<size_t>(j)].is_zero()) { pc = j; break; }
        Scalar c = w[static_cast<size_t>(pc)];
        if (!c.is_zero()) {
            coords[r] = c;
            w = sub(w, scale(c, basis_[r]));
        }
    }
    if (!diffalg::is_zero(w)) return std::nullopt;
    return coords;
}

Subspace Subspace::sum(const Subspace& o) const {
    std::vector<Vec> gens = basis_;
    gens.insert(gens.end(), o.basis_.begin(), o.basis_.end());
    return span(f_, ambient_, gens);
}

Subspace Subspace::intersect(const Subspace& o) const {
    // Zassenhaus-free approach: x in both <=> x = sum a_i u_i = sum b_j v_j.
    if (dim() == 0 || o.dim() == 0) return Subspace(f_, ambient_);
    Mat m(f_, ambient_, dim() + o.dim());
    for (int i = 0; i < ambient_; ++i) {
        for (int j = 0; j < dim(); ++j) m.at(i, j) = basis_[static_cast<size_t>(j)][static_cast<size_t>(i)];
        for (int j = 0; j < o.dim(); ++j)
            m.at(i, dim() + j) = -o.basis_[static_cast<size_t>(j)][static_cast<size_t>(i)];
    }
    std::vector<Vec> gens;
    for (const Vec& k : kernel_basis(m)) {
        Vec x = zero_vec(f_, ambient_);
        for (int j = 0; j < dim(); ++j) x = add(x, scale(k[static_cast<size_t>(j)], basis_[static_cast<size_t>(j)]));
        gens.push_back(x);
    }
    return span(f_, ambient_, gens);
}

bool Subspace::operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
}

Quotient::Quotient(const Subspace& sub) : sub_(sub) {
    pivot_of_col_.assign(static_cast<size_t>(sub.ambient()), -1);
    for (int r = 0; r < sub.dim(); ++r) {
        for (int j = 0; j < sub.ambient(); ++j) {
            if (!sub.basis()[static_cast<size_t>(r)][static_cast<size_t>(j)].is_zero()) {
                pivot_of_col_[static_cast<size_t>(j)] = r;
                break;
            }
        }
    }
    for (int j = 0; j < sub.ambient(); ++j)
        if (pivot_of_col_[static_cast<size_t>(j)] < 0) free_cols_.push_back(j);
}

Vec Quotient::project(const Vec& v) const {
    Vec w = v;
    for (int r = 0; r < sub_.dim(); ++r) {
        const Vec& b = sub_.basis()[static_cast<size_t>(r)];
        int pc = -1;
        for (int j = 0; j < sub_.ambient(); ++j)
            if (!b[static_cast<size_t>(j)].is_zero()) { pc = j; break; }
        Scalar c = w[static_cast<size_t>(pc)];
        if (!c.is_zero()) w = sub(w, scale(c, b));
    }
    Vec coords;
    coords.reserve(free_cols_.size());
    for (int j : free_cols_) coords.push_back(w[static_cast<size_t>(j)]);
    return coords;
}

Vec Quotient::lift(const Vec& coords) const {
    Vec v = zero_vec(sub_.field(), sub_.ambient());
    for (size_t i = 0; i < free_cols_.size(); ++i) v[static_cast<size_t>(free_cols_[i])] = coords[i];
    return v;
}

Mat map_from_images(FieldSpec f, const std::vector<Vec>& images, int target_dim) {
    return Mat::from_cols(f, images, target_dim);
}

}  // namespace diffalg
