#pragma once

#include <optional>
#include <vector>

#include "diffalg/field.hpp"

namespace diffalg {

using Vec = std::vector<Scalar>;

Vec zero_vec(FieldSpec f, int n);
Vec unit_vec(FieldSpec f, int n, int i);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& c, const Vec& a);
bool is_zero(const Vec& a);
Scalar dot(const Vec& a, const Vec& b);

/// Dense exact matrix, row major.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(FieldSpec f, int rows, int cols);
    static Mat identity(FieldSpec f, int n);
    static Mat from_rows(FieldSpec f, const std::vector<Vec>& rows, int cols);
    static Mat from_cols(FieldSpec f, const std::vector<Vec>& cols, int rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    FieldSpec field() const { return f_; }

    Scalar& at(int i, int j) { return d_[static_cast<size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return d_[static_cast<size_t>(i) * cols_ + j]; }

    Vec row(int i) const;
    Vec col(int j) const;

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator*(const Scalar& c) const;
    Vec apply(const Vec& v) const;  // matrix * column vector
    Mat transpose() const;
    Mat pow(long e) const;
    bool is_zero() const;
    bool operator==(const Mat& o) const;

    /// Flatten row-major into a vector of length rows*cols.
    Vec flatten() const;
    static Mat unflatten(FieldSpec f, const Vec& v, int rows, int cols);

private:
    FieldSpec f_;
    int rows_, cols_;
    std::vector<Scalar> d_;
};

/// In-place reduced row echelon form with deterministic pivoting
/// (leftmost nonzero column, first available row). Returns pivot columns.
std::vector<int> rref(Mat& m);

int rank(Mat m);

/// Basis of the null space {v : m v = 0} in reduced echelon normal form,
/// each vector scaled so its first nonzero entry is 1. Deterministic.
std::vector<Vec> kernel_basis(const Mat& m);

/// One solution of m x = b, or nullopt. Deterministic pivot choice.
std::optional<Vec> solve(const Mat& m, const Vec& b);

/// A subspace of k^n held as canonical RREF row basis.
class Subspace {
public:
    Subspace() : f_(FieldSpec::rationals()), ambient_(0) {}
    Subspace(FieldSpec f, int ambient) : f_(f), ambient_(ambient) {}
    static Subspace span(FieldSpec f, int ambient, const std::vector<Vec>& gens);
    static Subspace full(FieldSpec f, int ambient);

    int dim() const { return static_cast<int>(basis_.size()); }
    int ambient() const { return ambient_; }
    FieldSpec field() const { return f_; }
    const std::vector<Vec>& basis() const { return basis_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& o) const;
    /// Coordinates of v in the RREF basis; nullopt if v is outside.
    std::optional<Vec> coordinates(const Vec& v) const;

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    bool operator==(const Subspace& o) const;

private:
    FieldSpec f_;
    int ambient_;
    std::vector<Vec> basis_;  // RREF rows, canonical
};

/// Quotient k^n / U with the canonical free-column coordinate system:
/// coordinates of a class are the entries at non-pivot columns after
/// reduction by U's RREF basis.
class Quotient {
public:
    Quotient() = default;
    explicit Quotient(const Subspace& sub);

    int dim() const { return static_cast<int>(free_cols_.size()); }
    int ambient() const { return sub_.ambient(); }
    const Subspace& denominator() const { return sub_; }
    const std::vector<int>& free_cols() const { return free_cols_; }

    /// Class coordinates of an ambient vector.
    Vec project(const Vec& v) const;
    /// Canonical ambient representative of class coordinates.
    Vec lift(const Vec& coords) const;

private:
    Subspace sub_;
    std::vector<int> pivot_of_col_;  // index into basis rows, or -1
    std::vector<int> free_cols_;
};

/// Matrix of a linear map given by images of basis vectors (as columns).
Mat map_from_images(FieldSpec f, const std::vector<Vec>& images, int target_dim);

}  // namespace diffalg
