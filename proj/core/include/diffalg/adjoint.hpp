#pragma once

#include "diffalg/forms.hpp"

namespace diffalg {

/// The adjoint module P-hat = H(w_P) of the complex
///   Df^>(P, Lambda^0) -> Df^>(P, Lambda^1) -> ...,  w_P(D) = d . D,
/// where each Df is the stabilized full operator space (finite algebras only;
/// the form tower must terminate within the budget).
struct AdjointModule {
    ChainComplex complex;                  // w_P complex, spot i = Df(P, Lambda^i)
    std::vector<int> h_dims;               // cohomology dimensions per degree
    std::vector<std::vector<Vec>> h_bases; // canonical representatives
    std::vector<int> stabilization;        // Df stabilization order per target
    std::vector<DiffSpace> spaces;         // the operator spaces per spot
};

AdjointModule adjoint_module(const FinModule& P, const FormAlgebra& forms);

/// The Berezinian B(A) = Sigma^0(A) = adjoint of Lambda^0 = A.
AdjointModule berezinian(const FormAlgebra& forms);

/// Induced map Q-hat -> P-hat of a DO, by precomposition on cochains.
/// Returns one matrix per cohomology degree.
std::vector<Mat> adjoint_operator(const DiffOp& box, const AdjointModule& Qhat,
                                  const AdjointModule& Phat);

/// The integral-form complex 0 <- Sigma^0 <- Sigma^1 <- ... with
/// Sigma^i = adjoint of Lambda^i and the adjoints of the exterior
/// differentials; checks d-hat . d-hat = 0 degreewise and reports the
/// graded dimensions from both the w-cohomology and the assembled complex.
struct IntegralFormsReport {
    std::vector<AdjointModule> sigma;          // Sigma^i per i
    std::vector<std::vector<Mat>> dhat;        // dhat_i : Sigma^{i+1} -> Sigma^i per degree
    bool complex_ok = false;                   // dhat . dhat = 0 in every degree
    bool definitions_agree = false;            // both assemblies give the same dims
};

IntegralFormsReport integral_forms(const FormAlgebra& forms);

}  // namespace diffalg
