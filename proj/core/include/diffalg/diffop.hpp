#pragma once

#include "diffalg/algebra.hpp"

namespace diffalg {

enum class Side { left, right };

/// delta_a(op)(p) = op(a p) - a op(p) as a matrix on Hom_k(P, Q).
Mat delta(const FinModule& P, const FinModule& Q, const Vec& a, const Mat& op);

/// Minimal k <= max_order with all (k+1)-fold deltas vanishing, or -1.
int certified_order(const FinModule& P, const FinModule& Q, const Mat& op, int max_order);

/// A k-linear map with a delta-certified order bound.
struct DiffOp {
    FinModule P, Q;
    Mat m;
    int order = 0;  // certified bound; sharp() recomputes the minimal one
};

/// The space Df_k(P, Q) of operators of order <= k, with its left and right
/// A-module structures. The basis is the canonical RREF basis of the solution
/// space of the stacked delta system (symmetric tuples deduplicated).
class DiffSpace {
public:
    static DiffSpace compute(const FinModule& P, const FinModule& Q, int k);

    const FinModule& source() const { return P_; }
    const FinModule& target() const { return Q_; }
    int order() const { return k_; }
    int dim() const { return static_cast<int>(ops_.size()); }
    const std::vector<Mat>& basis() const { return ops_; }
    const Subspace& sub() const { return sub_; }

    /// Coordinates of an operator in the canonical basis; invariant_error if
    /// the operator is not in the space.
    Vec coords_of(const Mat& op) const;
    Mat op_of(const Vec& coords) const;

    /// The space as a module: left (a, D) -> a_Q . D, right (a, D) -> D . a_P.
    FinModule as_module(Side s) const;

private:
    FinModule P_, Q_;
    int k_ = 0;
    Subspace sub_;
    std::vector<Mat> ops_;
};

/// Composition with order bound add; the sharp certified order is recomputed
/// and reported in the result.
DiffOp compose(const DiffOp& outer, const DiffOp& inner);

/// First k with Df_k = Df_{k+1} (then all higher orders agree).
int stabilization_order(const FinModule& P, const FinModule& Q);

/// Hom_A(P, Q) as a subspace of Hom_k(P, Q).
std::vector<Mat> module_hom_basis(const FinModule& P, const FinModule& Q);

/// Evaluation-at-unit operator D_k^> : Df_k^>(A,Q) -> Q as a matrix in the
/// canonical basis of the given space.
Mat eval_at_unit(const DiffSpace& dfkQ);

/// The co-jet h^D : P -> Df_k^>(A,Q), p -> (a -> D(a p)); columns are
/// coordinates in the canonical basis of dfkQ.
Mat co_jet(const DiffOp& D, const DiffSpace& dfkQ);

struct ProlongationReport {
    bool triangle_ok = false;      // D_k^> . h^D = D
    bool iso_ok = false;           // dim Df_k(P,Q) = dim Hom_A(P, Df_k^> Q)
    bool h_pro_ok = false;         // diagram of the l-th prolongation
    bool d_l_ok = false;           // h^{D_(l)} against D_{k+l}^>
    bool comp_ok = false;          // c_{l,k} square
    bool h_ok = false;             // combined square
    int dim_diff = 0, dim_hom = 0;
};

ProlongationReport prolongation_check(const DiffOp& D, int l);

/// c_{l,k} : Df_l^>(Df_k^> Q) -> Df_{k+l}^> Q, the co-jet of
/// D_k^> . D_l^>; returned as a matrix between canonical bases.
Mat composition_map(const DiffSpace& dflOfDfk, const DiffSpace& dfkQ, const DiffSpace& dfklQ);

}  // namespace diffalg
