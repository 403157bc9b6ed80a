#pragma once

#include "diffalg/complex.hpp"
#include "diffalg/jets.hpp"
#include "diffalg/spectrum.hpp"

namespace diffalg {

/// Kaehler-style differential forms of a finite algebra:
/// Lambda^1 = ker(pi_{1,0} : J^1(A) -> A), Lambda^k the alternating quotient
/// of the k-fold tensor power over A (the convention x tensor x -> 0, which
/// matters in characteristic 2). Elements are held in canonical quotient
/// coordinates with a tracked surjection from "exact monomials"
/// b tensor de_{t_1} ... de_{t_k}.
class FormAlgebra {
public:
    /// Compute Lambda^0..Lambda^top (stops early at the first vanishing
    /// degree; top() reports how far the tower goes).
    static FormAlgebra compute(AlgebraPtr A, int top_degree);

    const AlgebraPtr& algebra() const { return A_; }
    int top() const { return static_cast<int>(dims_.size()) - 1; }
    int dim(int k) const { return dims_[static_cast<size_t>(k)]; }
    const FinModule& module(int k) const { return mods_[static_cast<size_t>(k)]; }

    /// d_k : Lambda^k -> Lambda^{k+1} (zero map beyond the tower).
    Mat d(int k) const;

    /// Class of the exact monomial e_b de_{t_1} ^ ... ^ de_{t_k}.
    Vec exact_monomial(int b, const std::vector<int>& ts) const;

    /// Wedge of classes.
    Vec wedge(int k, const Vec& w, int l, const Vec& e) const;
    /// Insertion of a derivation X (as a matrix A -> A with X(1) = 0).
    Vec insertion(const Mat& X, int k, const Vec& w) const;
    /// Lie derivative along X, defined by its own Leibniz formula
    /// (independent of the Cartan identity, which is then a theorem to check).
    Vec lie_derivative(const Mat& X, int k, const Vec& w) const;

    /// 0 -> Lambda^0 -> Lambda^1 -> ... with d, verified exact (d.d = 0).
    ChainComplex de_rham() const;

    /// Expand a class into exact-monomial coordinates (one deterministic
    /// preimage of the surjection).
    Vec monomial_expansion(int k, const Vec& w) const;

private:
    AlgebraPtr A_;
    std::vector<int> dims_;
    std::vector<FinModule> mods_;
    std::vector<Mat> mono_maps_;      // exact monomials k^(n^{k+1}) -> Lambda^k coords
    std::vector<Mat> mono_sections_;  // deterministic preimage choice
    std::vector<Mat> d_;
};

struct RepresentingReport {
    int dim_dk = 0;    // dim D_k(P)
    int dim_hom = 0;   // dim Hom_A(Lambda^k, P)
    bool ok = false;
};

/// dim D_k(P) against Hom_A(Lambda^k(A), P); characteristic 0 only (the
/// alternating convention diverges from skew-symmetry in characteristic 2).
RepresentingReport representing_check(const FormAlgebra& forms, const FinModule& P, int k);

struct NaturalityReport {
    bool well_defined = false;
    bool square_ok = false;  // H_{Lambda^1} . d_1 = d_2 . H
};

/// For a homomorphism H : A1 -> A2, the induced H_{Lambda^1} with
/// H_{Lambda^1} . d_1 = d_2 . H on all basis elements.
NaturalityReport naturality_check(const FormAlgebra& F1, const FormAlgebra& F2,
                                  const AlgebraHom& H);

/// The jet-Spencer complex of total degree n (tensor model
/// C_k = Lambda^{n-k} tensor_A J^k(A), differential omega tensor j_k(a) ->
/// d omega tensor j_{k-1}(a)), assembled with exact well-definedness checks.
struct JetSpencerComplex {
    ChainComplex complex;             // spot 0 = J^n(A), last spot = Lambda^n
    std::vector<int> jet_tensor_dims; // dim J^k(Lambda^{n-k}) per spot, for the
                                      // Prop-jet dimension cross-check
};
JetSpencerComplex jet_spencer_complex(const FormAlgebra& forms, int n);

}  // namespace diffalg
