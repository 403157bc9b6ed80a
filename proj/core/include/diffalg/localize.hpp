#pragma once

#include "diffalg/algebra.hpp"

namespace diffalg {

/// Formal fraction num/den with the denominator kept as an explicit element
/// of the multiplicative set (a product of generators).
struct LocElt {
    Vec num;
    Vec den;
};

/// Localization S^{-1}A of a finite-dimensional algebra. Fraction equality
/// (a1,s1) ~ (a2,s2) iff some s in S kills a1 s2 - a2 s1 is decided exactly:
/// in a commutative Artinian algebra some product of generators kills x iff
/// sigma^dim(A) x = 0 for sigma the product of all generators.
class LocalizedAlgebra {
public:
    LocalizedAlgebra(AlgebraPtr A, FinMultSet S);

    const FinAlgebra& algebra() const { return *A_; }
    const FinMultSet& mult_set() const { return S_; }

    LocElt iota(const Vec& a) const { return {a, A_->unit()}; }
    LocElt one() const { return iota(A_->unit()); }
    LocElt mul(const LocElt& a, const LocElt& b) const;
    LocElt add(const LocElt& a, const LocElt& b) const;
    LocElt neg(const LocElt& a) const { return {scale(-Scalar::one(A_->field()), a.num), a.den}; }

    bool equal(const LocElt& a, const LocElt& b) const;
    bool killed_by_set(const Vec& x) const;

private:
    AlgebraPtr A_;
    FinMultSet S_;
    Mat sigma_pow_;  // (multiplication by prod of generators)^dim
};

/// Localization S^{-1}P of a finite module, an S^{-1}A module.
class LocalizedModule {
public:
    LocalizedModule(FinModule P, FinMultSet S);

    const FinModule& module() const { return P_; }
    const FinAlgebra& algebra() const { return *P_.algebra(); }

    LocElt iota(const Vec& p) const { return {p, algebra().unit()}; }
    /// (a/s)(p/s') = ap/ss'.
    LocElt act(const LocElt& a, const LocElt& p) const;
    LocElt add(const LocElt& a, const LocElt& b) const;

    bool equal(const LocElt& a, const LocElt& b) const;
    bool killed_by_set(const Vec& p) const;

private:
    FinModule P_;
    FinMultSet S_;
    Mat sigma_pow_;  // action of sigma^dim on P
};

/// Fractions over a polynomial algebra (an integral domain): equality is
/// plain cross-multiplication.
struct PolyLocElt {
    MPoly num;
    MPoly den;
};

class PolyLocalized {
public:
    PolyLocalized(PolyAlgebra A, PolyMultSet S);

    PolyLocElt iota(const MPoly& a) const { return {a, A_.one()}; }
    PolyLocElt mul(const PolyLocElt& a, const PolyLocElt& b) const { return {a.num * b.num, a.den * b.den}; }
    PolyLocElt add(const PolyLocElt& a, const PolyLocElt& b) const {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    bool equal(const PolyLocElt& a, const PolyLocElt& b) const {
        return (a.num * b.den - b.num * a.den).is_zero();
    }

private:
    PolyAlgebra A_;
    PolyMultSet S_;
};

}  // namespace diffalg
