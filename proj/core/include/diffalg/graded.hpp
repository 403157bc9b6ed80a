#pragma once

#include "diffalg/diffop.hpp"

namespace diffalg {

/// Grading degree in Z x Z/2; pure Z gradings keep t = 0, pure Z/2 keep z = 0.
struct GDeg {
    int z = 0;
    int t = 0;  // 0 or 1

    GDeg operator+(const GDeg& o) const { return {z + o.z, (t + o.t) & 1}; }
    GDeg operator-(const GDeg& o) const { return {z - o.z, ((t - o.t) % 2 + 2) % 2}; }
    bool operator==(const GDeg& o) const { return z == o.z && t == o.t; }
    bool operator<(const GDeg& o) const { return z != o.z ? z < o.z : t < o.t; }
    int parity() const { return (((z + t) % 2) + 2) % 2; }
};

enum class SignForm { trivial, parity_product };

/// (-1)^{beta(g,h)} as a field scalar.
Scalar koszul_sign(FieldSpec f, SignForm beta, const GDeg& g, const GDeg& h);

/// Graded commutative unital algebra: homogeneous basis with degrees,
/// structure constants, and an F2-valued bi-additive sign form beta given as
/// the parity product (supermanifold convention) or trivially zero (dioles).
class GradedAlgebra {
public:
    static std::shared_ptr<const GradedAlgebra> make(FieldSpec f, SignForm beta,
                                                     std::vector<GDeg> degrees,
                                                     const std::vector<std::vector<Vec>>& table,
                                                     const Vec& unit,
                                                     std::vector<std::string> labels = {});

    /// The super line k[theta], theta odd with theta^2 = 0.
    static std::shared_ptr<const GradedAlgebra> super_line(FieldSpec f);
    /// A plain algebra in degree 0 (the trivial-grading regression carrier).
    static std::shared_ptr<const GradedAlgebra> trivially_graded(AlgebraPtr A);

    FieldSpec field() const { return f_; }
    SignForm sign_form() const { return beta_; }
    int dim() const { return n_; }
    const Vec& unit() const { return unit_; }
    const std::vector<GDeg>& degrees() const { return deg_; }
    const std::vector<std::string>& labels() const { return labels_; }

    Vec basis_product(int i, int j) const { return table_[static_cast<size_t>(i) * n_ + j]; }
    Vec mul(const Vec& a, const Vec& b) const;
    Mat mult_op_basis(int i) const;
    Scalar sign(const GDeg& g, const GDeg& h) const { return koszul_sign(f_, beta_, g, h); }

private:
    GradedAlgebra() = default;
    FieldSpec f_;
    SignForm beta_ = SignForm::parity_product;
    int n_ = 0;
    std::vector<GDeg> deg_;
    std::vector<std::string> labels_;
    std::vector<Vec> table_;
    Vec unit_;
};

using GradedAlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Graded module: homogeneous basis with degrees and grading-respecting action.
struct GradedModule {
    GradedAlgebraPtr A;
    std::vector<GDeg> degrees;
    std::vector<Mat> action;

    int dim() const { return static_cast<int>(degrees.size()); }
    Mat act(const Vec& a) const;
    static GradedModule regular(GradedAlgebraPtr A);
    void validate() const;
};

/// One homogeneous component of a graded operator space.
struct GradedOpComponent {
    GDeg degree;
    std::vector<Mat> basis;
};

/// Graded Df_k(P,Q): solved per operator degree with the graded delta
/// delta_a(D) = D . a_P - (-1)^{beta(deg a, deg D)} a_Q . D over all
/// homogeneous tuples. With the trivial grading this reduces bit-for-bit to
/// the plain diff_space.
std::vector<GradedOpComponent> graded_diff_space(const GradedModule& P, const GradedModule& Q,
                                                 int k);

/// Graded derivations D(A) = {X in graded Df_1(A,A) : X(1) = 0}.
std::vector<GradedOpComponent> graded_derivations(const GradedAlgebraPtr& A);

/// Total dimension helper.
int total_dim(const std::vector<GradedOpComponent>& comps);

// ---- dioles, algebroids, connections ---------------------------------------

/// The diole algebra of a module: A in degree 0, P in degree 1, zero above,
/// trivially signed graded commutative.
GradedAlgebraPtr make_diole(const FinModule& P);

struct AlgebroidData {
    FinModule P;
    std::vector<std::vector<Vec>> bracket;  // [p_i, p_j] coordinates in P
    std::vector<Mat> anchor;                // alpha(p_i) as a matrix A -> A
};

struct AlgebroidReport {
    bool lie_ok = false;         // bracket skew + Jacobi
    bool anchor_module_ok = false;   // alpha is A-linear
    bool anchor_derivation_ok = false;
    bool leibniz_ok = false;     // [p, a q] = a [p,q] + alpha(p)(a) q
    bool anchor_lie_ok = false;  // alpha([p,q]) = [alpha p, alpha q]
    std::string witness;         // lexicographically first violation
    bool ok() const { return lie_ok && anchor_module_ok && anchor_derivation_ok && leibniz_ok && anchor_lie_ok; }
};

AlgebroidReport algebroid_check(const AlgebroidData& data);

/// The tautological algebroid P = D(A), anchor = id, bracket = commutator.
AlgebroidData tautological_algebroid(AlgebraPtr A);

/// Degree-d Poisson structure on a diole, as a full bracket table on the
/// diole basis; entries outside the degree window must vanish.
struct DiolePoissonReport {
    bool degree_ok = false;
    bool skew_ok = false;
    bool jacobi_ok = false;
    bool biderivation_ok = false;
    std::string witness;
    bool ok() const { return degree_ok && skew_ok && jacobi_ok && biderivation_ok; }
    // present for degree -1 only:
    bool roundtrip_ok = false;
};

DiolePoissonReport diole_poisson_check(const FinModule& P, const std::vector<std::vector<Vec>>& table,
                                       int degree);

/// The degree-(-1) bracket table of an algebroid on the diole of its module.
std::vector<std::vector<Vec>> algebroid_to_diole_bracket(const AlgebroidData& data);

// ---- connections ------------------------------------------------------------

struct ConnectionReport {
    bool balanced = false;      // descends to the tensor product over A
    bool linear_ok = false;     // A-linear in the stated structure
    bool unit_ok = false;       // kappa(id tensor p) = p
    bool leibniz_ok = false;    // covariant derivative Leibniz rule
    bool flat = false;          // [nabla_X, nabla_Y] = nabla_[X,Y]
    std::string witness;
};

/// kappa_raw maps (basis of Df_1 A) x (basis of P) -> P. For the left version
/// the tensor is over the right structure of Df_1 A and kappa is left
/// A-linear; the right version uses the mirrored conventions and the
/// covariant derivative X nabla (p) = -kappa(X tensor p).
ConnectionReport connection_check(const FinModule& P, const DiffSpace& df1A,
                                  const std::vector<std::vector<Vec>>& kappa_raw, bool right);

/// The flat connection kappa(D tensor p) = D(p) on P = A.
std::vector<std::vector<Vec>> canonical_free_connection(const DiffSpace& df1A);

}  // namespace diffalg
