#pragma once

#include "diffalg/diffop.hpp"

namespace diffalg {

/// J^k(P) = (A tensor_k P) / mu_{k+1}, where mu_{k+1} is spanned by the
/// iterated differences delta^{a_0} ... delta^{a_k} (a tensor p),
/// delta^a(a' tensor p) = a' tensor ap - aa' tensor p, over basis tuples.
class JetModule {
public:
    static JetModule compute(const FinModule& P, int k, long dim_budget = 4096);

    int order() const { return k_; }
    int dim() const { return quot_.dim(); }
    const FinModule& base() const { return P_; }
    const Quotient& quotient() const { return quot_; }
    const FinModule& as_module() const { return mod_; }

    /// j_k : P -> J^k(P), the universal order-k operator.
    const Mat& jet_operator() const { return jk_; }
    /// Class of e_i tensor p_s.
    Vec tensor_class(int i, int s) const;

    /// pi_{k,l} : J^k -> J^l for l <= k (requires same P).
    static Mat projection(const JetModule& from, const JetModule& to);

private:
    FinModule P_;
    int k_ = 0;
    Quotient quot_;
    FinModule mod_;
    Mat jk_;
};

struct JetDualityReport {
    int dim_diff = 0;        // dim Df_k(P, Q)
    int dim_hom = 0;         // dim Hom_A(J^k(P), Q)
    int dim_jet = 0;         // dim J^k(P)
    int dim_tensor = 0;      // dim J^k(A) tensor_A P
    bool well_defined = true;
    bool universal_ok = false;   // h_D . j_k = D for every basis D
    bool iso_ok = false;         // dimensions agree and the inverse reproduces D
    bool tensor_identity_ok = false;
};

/// Prop-jet style check: D -> h_D is an isomorphism Df_k^<(P,Q) ->
/// Hom_A(J^k(P), Q), both sides computed by independent pipelines, plus the
/// J^k(P) = J^k(A) tensor_A P dimension identity.
JetDualityReport jet_duality_check(const FinModule& P, const FinModule& Q, int k);

/// The A-homomorphism h_D : J^k(P) -> Q with h_D . j_k = D (requires D of
/// order <= k); throws invariant_error if mu_{k+1} is not annihilated.
Mat jet_representative(const JetModule& jet, const Mat& D, const FinModule& Q);

struct MultiplicativeReport {
    bool identity_ok = false;  // j_k(a) j_k(p) = j_k(ap) on all basis pairs
    bool assoc_ok = false;     // P = A only
    bool comm_ok = false;      // P = A only
};

/// The pairing J^k(A) x J^k(P) -> J^k(P) representing the diagonal
/// transformation m_k(D)(a) = D . a_P; returns the bilinear table
/// pair[i] = action of the i-th basis class of J^k(A) on J^k(P).
struct MultiplicativeStructure {
    std::vector<Mat> pair;
    MultiplicativeReport report;
};
MultiplicativeStructure multiplicative_structure(const FinModule& P, int k);

/// dim J^k(A) tensor_A P (for the Prop-jet "moreover" identity).
int jet_tensor_dim(const FinModule& P, int k);

}  // namespace diffalg
