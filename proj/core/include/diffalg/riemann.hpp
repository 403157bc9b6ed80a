#pragma once

#include "diffalg/linalg.hpp"
#include "diffalg/ratexpr.hpp"

namespace diffalg {

/// Covariant 2-tensor tau = g + omega with rational-expression components;
/// g and omega are the symmetric and skew parts.
class CovariantTensor2 {
public:
    CovariantTensor2(std::vector<std::string> coords, std::vector<RatExpr> entries);

    int n() const { return n_; }
    const std::vector<std::string>& coords() const { return coords_; }
    const RatExpr& at(int i, int j) const { return t_[static_cast<size_t>(i) * n_ + j]; }

    RatExpr sym(int i, int j) const;   // g_ij = (tau_ij + tau_ji)/2
    RatExpr skew(int i, int j) const;  // omega_ij = (tau_ij - tau_ji)/2

private:
    int n_;
    std::vector<std::string> coords_;
    std::vector<RatExpr> t_;
};

/// Gamma(tau) in coordinates: gamma_ijk = tau_{ik,j} + tau_{kj,i} - tau_{ij,k}
/// and Gamma^a_ij = 1/2 g^{ak} gamma_ijk, the index convention fixed so that a
/// symmetric tau reproduces the classical Levi-Civita symbols of g.
struct LeviCivitaForm {
    int n = 0;
    std::vector<std::string> coords;
    std::vector<RatExpr> gamma;   // gamma_ijk, flattened (i*n+j)*n+k
    std::vector<RatExpr> Gamma;   // Gamma^a_ij, flattened (a*n+i)*n+j
    std::vector<RatExpr> g;       // symmetric part
    std::vector<RatExpr> ginv;    // inverse metric

    const RatExpr& G(int a, int i, int j) const {
        return Gamma[static_cast<size_t>((a * n + i) * n + j)];
    }
};

/// Throws input_error naming the degenerate pivot when g is singular.
LeviCivitaForm christoffel_data(const CovariantTensor2& tau);

/// Independent classical oracle: Gamma^a_ij = 1/2 g^{ak}(g_{ki,j} + g_{kj,i}
/// - g_{ij,k}) with the inverse computed by the adjugate.
std::vector<RatExpr> classical_christoffel_oracle(const CovariantTensor2& g_only);

struct CurvatureData {
    int n = 0;
    std::vector<RatExpr> R;      // R^a_ijk, flattened ((a*n+i)*n+j)*n+k
    std::vector<RatExpr> ricci;  // R_ik = R^j_ijk

    const RatExpr& at(int a, int i, int j, int k) const {
        return R[static_cast<size_t>(((a * n + i) * n + j) * n + k)];
    }
};

/// R^a_ijk = d_i Gamma^a_jk - d_j Gamma^a_ik + Gamma^a_ib Gamma^b_jk
///         - Gamma^a_jb Gamma^b_ik and its trace R_ik = R^j_ijk.
CurvatureData curvature(const LeviCivitaForm& lc);

/// Metric compatibility residual g_{ij,k} - Gamma^a_{ki} g_{aj}
/// - Gamma^a_{kj} g_{ia}; identically zero for symmetric tau.
RatExpr nabla_g_residual(const LeviCivitaForm& lc, int i, int j, int k);

struct RicciTauReport {
    // calibrated constants of the reconstruction
    //   Ric(tau)_ik = Ric(g)_ik + c_quad * Q_ik + c_div * D_ik,
    // where c_ijk is the cyclic sum of omega derivatives,
    //   Q_ik = g^{ab} g^{cd} c_{icb} c_{akd},
    //   D_ik = g^{ab} nabla_a c_{ikb} (Levi-Civita of g).
    Scalar c_quad, c_div;
    bool decomposition_ok = false;  // identity holds for this input
    bool eq1_zero = false;          // symmetric (cosmo) equation residual vanishes
    bool eq2_zero = false;          // fluid equation residual vanishes
    std::vector<RatExpr> ric_tau;   // direct Ricci of tau
    std::vector<RatExpr> eq1;       // Ric(g) + c_quad Q
    std::vector<RatExpr> eq2;       // D term
    std::string normalization_note;
};

/// Direct Ric(tau) against the (cosmo)-style reconstruction. The calibration
/// constants are computed once from a fixed generic example and cached.
RicciTauReport ricci_tau_residual(const CovariantTensor2& tau);

/// The calibration itself; exposed for reporting.
std::pair<Scalar, Scalar> cosmo_calibration();

}  // namespace diffalg
