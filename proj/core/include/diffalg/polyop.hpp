#pragma once

#include "diffalg/algebra.hpp"
#include "diffalg/localize.hpp"
#include "diffalg/ratexpr.hpp"

namespace diffalg {

/// Differential operator on a free polynomial algebra in normal form
/// sum_alpha c_alpha(x) D^[alpha], where D^[alpha] is the divided-power
/// operator x^n -> C(n, alpha) x^{n-alpha} in each variable. Composition uses
/// D^[a] . D^[b] = C(a+b, a) D^[a+b] per variable and the divided Leibniz rule
/// D^[a](fg) = sum_{b<=a} D^[b](f) D^[a-b](g).
class PolyDiffOp {
public:
    explicit PolyDiffOp(PolyAlgebra A) : A_(std::move(A)) {}

    static PolyDiffOp zero(const PolyAlgebra& A) { return PolyDiffOp(A); }
    static PolyDiffOp mult(const PolyAlgebra& A, const MPoly& f);
    /// D^[alpha]
    static PolyDiffOp divided(const PolyAlgebra& A, const Exp& alpha);
    /// d/dx_i
    static PolyDiffOp derivative(const PolyAlgebra& A, int i);

    const PolyAlgebra& algebra() const { return A_; }
    const std::map<Exp, MPoly, GrlexLess>& terms() const { return t_; }
    bool truncated() const { return truncated_; }
    bool is_zero() const { return t_.empty(); }

    /// Same operator over a copy of the algebra with a different truncation
    /// bound (the flag is cleared; terms are carried verbatim).
    PolyDiffOp with_truncation(int D) const;

    /// Max |alpha| over nonzero terms; this equals the minimal delta
    /// certificate for normal-form operators. -1 for the zero operator.
    int order() const;

    void add_term(const Exp& alpha, const MPoly& c);

    PolyDiffOp operator+(const PolyDiffOp& o) const;
    PolyDiffOp operator-(const PolyDiffOp& o) const;
    PolyDiffOp operator*(const Scalar& c) const;
    /// Composition (this after o).
    PolyDiffOp compose(const PolyDiffOp& o) const;
    PolyDiffOp commutator(const PolyDiffOp& o) const;
    /// delta_f = [ ., f]: compose with multiplication both ways.
    PolyDiffOp delta(const MPoly& f) const;

    bool operator==(const PolyDiffOp& o) const { return t_ == o.t_; }

    TPoly apply(const TPoly& p) const;
    MPoly apply_exact(const MPoly& p) const;  // throws if truncation would lose terms

    /// Matrix on the monomial carrier of total degree <= degree_bound
    /// (graded-lex order); entries that escape the carrier are dropped, which
    /// matches the truncated-quotient backend it is compared against.
    Mat to_matrix(int degree_bound) const;

    std::string str() const;

private:
    PolyAlgebra A_;
    std::map<Exp, MPoly, GrlexLess> t_;
    bool truncated_ = false;
};

/// Divided-power derivative D^[alpha](f) of a plain polynomial.
MPoly divided_derivative(const MPoly& f, const Exp& alpha);

/// Localization of an operator through the binomial formula
///   D_S(p/s) = sum_{i=0..k} (-1)^i C(k+1, i+1) D(s^i p) / s^{i+1},
/// where k is the order certificate in force. Result is exact as a rational
/// expression; the polynomial algebra must be free.
RatExpr localize_op(const PolyDiffOp& op, int k, const MPoly& p, const MPoly& s);

/// The same formula on a localized finite module, with D given as a matrix on
/// the module and fractions compared through the localized equality.
LocElt localize_op(const LocalizedModule& loc, const Mat& op, int k, const LocElt& frac);

}  // namespace diffalg
