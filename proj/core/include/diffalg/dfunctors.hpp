#pragma once

#include "diffalg/complex.hpp"
#include "diffalg/diffop.hpp"

namespace diffalg {

/// A computation budget for the inductive functor towers.
struct DFunctorBudget {
    int max_depth = 3;
    int max_order = 3;
    int max_algebra_dim = 10;
};

/// One stage of the inductive tower over a base module Q:
///   big_i = Df_{k_i}( D_{i-1} c big_{i-1}^> ),  D_i = { X in big_i : X(1) = 0 }.
/// Elements are held both as maps into the previous stage's coordinates and
/// as fully flattened tensors A^i -> Q (row-major, Q index fastest).
struct TowerStage {
    std::vector<Mat> ops;      // basis: maps A -> coords of previous stage
    FinModule mod;             // the stage with its right action
    Subspace d_sub;            // D_i in the stage's own coordinates
    std::vector<Vec> flat;     // fully flattened basis tensors
    std::vector<Vec> d_flat;   // flattened basis of D_i
};

/// Build the tower over base Q with the given order signature (innermost
/// first). The plain multi-derivation functors use signature (1, ..., 1).
std::vector<TowerStage> dfunctor_tower(const FinModule& Q, const std::vector<int>& signature,
                                       const DFunctorBudget& budget = {});

/// Basis of D(P) = {X in Df_1^<(P) : X(1) = 0} as operator matrices A -> P.
std::vector<Mat> derivations(const FinModule& P);

struct MultiDerSpace {
    std::vector<int> signature;
    int dim = 0;
    std::vector<Vec> flat_basis;  // tensors A^m -> P
    int base_dim = 0;             // dim of P (the innermost target)
};

MultiDerSpace multi_derivations(const FinModule& P, const std::vector<int>& signature,
                                const DFunctorBudget& budget = {});

struct SplittingReport {
    int dim_frak = 0, dim_lower = 0, dim_top = 0;
    bool additive = false;      // dim_frak == dim_lower + dim_top
    bool projections_ok = false;
    Mat to_lower;               // ev at unit, in stage coordinates
    Mat to_top;                 // complement projection onto D_m
};

/// Verify the splitting of the m-th stage over P and exhibit the projections.
SplittingReport splitting_check(const FinModule& P, int m, const DFunctorBudget& budget = {});

/// The Diff-Spencer complex Sp_N(P):
///   0 -> D_N(P) -> D_{N-1}^<(Df_1^> P) -> ... -> Df_N P -> P -> 0.
/// Spots carry fully flattened tensor bases; differentials evaluate the
/// innermost operator argument at the unit.
struct SpencerComplex {
    ChainComplex complex;                  // orientation: spot 0 = D_N(P)
    std::vector<std::vector<Vec>> spots;   // flattened bases per spot
    std::vector<int> arity;                // tensor arity per spot
    int N = 0;
    int base_dim = 0;
};

SpencerComplex spencer_complex(const FinModule& P, int N, const DFunctorBudget& budget = {});

/// Homology with explicit bases (delegates to ChainComplex).
ChainComplex::Homology spencer_homology(const SpencerComplex& c);

}  // namespace diffalg
