#pragma once

#include <functional>

#include "diffalg/algebra.hpp"

namespace diffalg {

/// A point of Spec_k A: the values of a unital algebra homomorphism h: A -> k,
/// on the algebra basis (FinAlgebra) or on the polynomial generators.
using SpecPoint = Vec;

struct SpectrumBudget {
    long candidates = 1000000;
};

// ---- FinAlgebra backend ---------------------------------------------------

/// Complete point list over a prime field, in lexicographic candidate order.
std::vector<SpecPoint> enumerate_spectrum(const FinAlgebra& A,
                                          const SpectrumBudget& budget = {});

/// Membership test over any field: values on the basis must respect all
/// structure equations and send the unit to 1.
std::optional<SpecPoint> check_point(const FinAlgebra& A, const Vec& values);

/// Basis of the Leibniz-at-h solution space, values on the algebra basis.
std::vector<Vec> tangent_space(const FinAlgebra& A, const SpecPoint& h);

/// U_a = {h : h(a) != 0} restricted to an explicit point list.
std::vector<int> basic_open(const FinAlgebra& A, const Vec& a, const std::vector<SpecPoint>& pts);

/// |H|(h) = h . H for a validated homomorphism H: A1 -> A2 (matrix columns =
/// images of A1 basis).
struct AlgebraHom {
    AlgebraPtr source, target;
    Mat m;  // dim(A2) x dim(A1)
};
AlgebraHom make_algebra_hom(AlgebraPtr A1, AlgebraPtr A2, const Mat& images);
SpecPoint induced_point(const AlgebraHom& H, const SpecPoint& h2);

struct GhostReport {
    Subspace ghost;
    bool geometric = false;
    std::vector<int> support;  // indices of points with P_h != 0 (modules)
    std::string status;        // "ok" or "insufficient points"
};

GhostReport ghosts(const FinAlgebra& A, const std::vector<SpecPoint>& pts);
GhostReport ghosts(const FinModule& P, const std::vector<SpecPoint>& pts);

/// The H-induced A-module structure a*q = H(a)q on a module over the target.
FinModule induce_module(const AlgebraHom& H, const FinModule& Q);

// ---- polynomial backend ---------------------------------------------------

/// Points of a free or presented polynomial algebra over GF(p): one value per
/// variable; relations (if any) must vanish.
std::vector<SpecPoint> enumerate_spectrum(const QuotPres& A, const SpectrumBudget& budget = {});
std::vector<SpecPoint> enumerate_spectrum(const PolyAlgebra& A, const SpectrumBudget& budget = {});
std::optional<SpecPoint> check_point(const QuotPres& A, const Vec& values);

/// Tangent vectors at h: values on the variables constrained by the
/// Jacobian of the relations at h.
std::vector<Vec> tangent_space(const QuotPres& A, const SpecPoint& h);

/// Leibniz extension of a tangent vector to any polynomial:
/// xi(p) = sum_i (dp/dx_i)(h) xi_i.
Scalar tangent_eval(const MPoly& p, const SpecPoint& h, const Vec& xi);

/// Ghosts of the degree <= D slice of a polynomial algebra with respect to an
/// explicit (or enumerated) point list; basis vectors are polynomials.
struct PolyGhostReport {
    std::vector<MPoly> ghost_basis;
    bool geometric = false;
    std::string status;
};
PolyGhostReport ghosts(const PolyAlgebra& A, const std::vector<SpecPoint>& pts, int degree_bound);

// ---- flows ----------------------------------------------------------------

/// Algebra endomorphism of a polynomial algebra given by images of variables.
struct PolySubstitution {
    PolyAlgebra A;
    std::vector<MPoly> images;

    MPoly apply(const MPoly& p) const { return p.substitute(images); }
};

/// Exponential flow of the constant-coefficient derivation X = sum c_i d/dx_i:
/// the substitution x_i -> x_i + t c_i, realized by the divided-power series
/// sum_alpha t^|alpha| c^alpha D^[alpha]. Nilpotency of X on the truncated
/// carrier is certified by explicit power computation before returning.
PolySubstitution nilpotent_flow(const PolyAlgebra& A, const Vec& coeffs, const Scalar& t);

/// Matrix flow e^{tX} on a finite carrier; char 0 uses sum t^i X^i / i!, and a
/// prime field requires X^p = 0 so no division by p occurs. The result is
/// certified to be a unital algebra endomorphism on all basis pairs.
Mat nilpotent_flow(const FinAlgebra& A, const Mat& X, const Scalar& t);

}  // namespace diffalg
