#pragma once

#include "diffalg/diffop.hpp"
#include "diffalg/polyop.hpp"

namespace diffalg {

// ---- polynomial backend -----------------------------------------------------

/// Homogeneous symbol of order k over a free polynomial algebra: a polynomial
/// in the base variables x_i and fiber variables xi_i, the xi part in divided
/// powers (xi^[alpha] is the class of D^[alpha]).
class PolySymbol {
public:
    PolySymbol(PolyAlgebra A, int order) : A_(std::move(A)), k_(order) {}

    /// smbl_k of an operator certified of order <= k: the |alpha| = k part.
    static PolySymbol of(const PolyDiffOp& op, int k);

    const PolyAlgebra& algebra() const { return A_; }
    int order() const { return k_; }
    const std::map<Exp, MPoly, GrlexLess>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const Exp& alpha, const MPoly& c);

    /// Canonical operator lift sum c_alpha D^[alpha].
    PolyDiffOp lift() const;

    PolySymbol operator+(const PolySymbol& o) const;
    PolySymbol operator-(const PolySymbol& o) const;
    /// Composition of symbols, an order k+l symbol (divided-power product).
    PolySymbol operator*(const PolySymbol& o) const;
    bool operator==(const PolySymbol& o) const { return k_ == o.k_ && t_ == o.t_; }

    /// Plain-power polynomial in (x..., xi...) over characteristic zero:
    /// xi^[alpha] -> xi^alpha / alpha!.
    MPoly plain_form(const std::vector<std::string>& xi_names) const;

    std::string str() const;

private:
    PolyAlgebra A_;
    int k_;
    std::map<Exp, MPoly, GrlexLess> t_;
};

/// {smbl_k D, smbl_l N} := smbl_{k+l-1} [D, N], computed from the canonical
/// lifts; representative independence is a tested property, and the order
/// drop is certified (invariant_error with a witness otherwise).
PolySymbol poisson(const PolySymbol& s, const PolySymbol& t);

/// Verify {s, t} equals the canonical cotangent bracket
///   sum_i (df/dxi_i dg/dx_i - df/dx_i dg/dxi_i)
/// for the plain-power forms f, g of the two symbols (characteristic 0).
/// Operator monomials x^a xi^b lift in normal order x^a D^b.
struct BracketCheck {
    bool ok = false;
    std::string lhs, rhs;
};
BracketCheck canonical_bracket_check(const PolySymbol& s, const PolySymbol& t,
                                     const std::vector<std::string>& xi_names);

/// Verify sigma*_{df}(smbl_k D) = (1/k!) delta_f^k(D) as algebra elements
/// (characteristic 0; the right side must come out of order 0).
struct PullbackCheck {
    bool ok = false;
    std::string lhs, rhs;
};
PullbackCheck cotangent_pullback_check(const PolyDiffOp& op, int k, const MPoly& f);

/// X_s = {s, .} on symbols; the report verifies the Leibniz rule on the
/// supplied basis pairs.
struct HamiltonianCheck {
    bool leibniz_ok = false;
    std::string witness;
};
HamiltonianCheck hamiltonian_field_check(const PolySymbol& s, const std::vector<PolySymbol>& basis);

// ---- matrix backend ---------------------------------------------------------

/// A coset in Smbl_k(P,Q) = Df_k/Df_{k-1}, held as the canonical reduced
/// representative with respect to the RREF basis of Df_{k-1}.
class MatSymbol {
public:
    MatSymbol(DiffSpace dfk, DiffSpace dfk_minus_1, const Mat& rep);

    int order() const { return dfk_.order(); }
    const Mat& representative() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }
    bool operator==(const MatSymbol& o) const { return rep_ == o.rep_; }

    const DiffSpace& space() const { return dfk_; }
    const DiffSpace& lower() const { return low_; }

private:
    DiffSpace dfk_, low_;
    Mat rep_;
};

MatSymbol mat_symbol(const FinModule& P, const FinModule& Q, const Mat& op, int k);
MatSymbol mat_symbol_product(const MatSymbol& s, const MatSymbol& t);
MatSymbol mat_poisson(const MatSymbol& s, const MatSymbol& t);

/// Graded view of Smbl(P,P) for a finite algebra: dimensions per order up to
/// the stabilization order (all higher quotients vanish).
struct SymbolAlgebraView {
    int stabilization = 0;
    std::vector<int> dims;  // dims[k] = dim Smbl_k
};
SymbolAlgebraView symbol_algebra_view(const FinModule& P);

// ---- the F_p[x] cotangent explorer ------------------------------------------

/// One candidate construction of Smbl F_p[x] and what it yields.
struct ExplorerCandidate {
    std::string name;             // "divided-powers", "plain-powers", "plain-geometrized"
    int spectrum_points = 0;
    int hamiltonian_dim = 0;
    bool bracket_table_matches = false;  // [e1,e2]=0, [e1,e3]=e1, [e2,e3]=e2
    std::string details;
};

struct ExplorerReport {
    long p = 2;
    int order_bound = 0, degree_bound = 0;
    std::vector<ExplorerCandidate> candidates;
    std::string passing;  // name of a construction reproducing the paper counts, or ""
};

/// Enumerate candidate readings of Smbl F_p[x], count F_p-points of each,
/// compute Hamiltonian vector fields as derivations, and extract the Lie
/// bracket table. order_bound caps the xi-degree, degree_bound the x-degree.
ExplorerReport symbol_spectrum_explorer(long p, int order_bound, int degree_bound);

}  // namespace diffalg
