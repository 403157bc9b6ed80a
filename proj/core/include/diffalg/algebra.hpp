#pragma once

#include <memory>
#include <optional>

#include "diffalg/linalg.hpp"
#include "diffalg/mpoly.hpp"

namespace diffalg {

class FinAlgebra;
using AlgebraPtr = std::shared_ptr<const FinAlgebra>;

/// Finite-dimensional commutative unital algebra presented by structure
/// constants on a chosen basis. Construction validates commutativity,
/// associativity and the unit law on all basis tuples and reports every
/// violated instance.
class FinAlgebra {
public:
    /// table[i][j] = coordinates of e_i * e_j.
    static AlgebraPtr make(FieldSpec f, const std::vector<std::vector<Vec>>& table, const Vec& unit,
                           std::vector<std::string> labels = {});

    /// k[e]/(e^2) on basis {1, e}.
    static AlgebraPtr dual_numbers(FieldSpec f);
    /// F_2 x ... x F_2 componentwise (a Boolean ring).
    static AlgebraPtr boolean_power(int n);
    /// The ground field as a 1-dimensional algebra.
    static AlgebraPtr ground_field(FieldSpec f);
    /// k[x_1..x_v] / m^{D+1}: monomial basis of total degree <= D, graded-lex order.
    static AlgebraPtr truncated_polynomial(FieldSpec f, const std::vector<std::string>& vars, int max_degree);
    /// k[x]/(p) for monic univariate p; basis {1, x, ..., x^{deg-1}}.
    static AlgebraPtr univariate_quotient(FieldSpec f, const std::string& var, const MPoly& relation);

    FieldSpec field() const { return f_; }
    int dim() const { return n_; }
    const Vec& unit() const { return unit_; }
    const std::vector<std::string>& labels() const { return labels_; }

    Vec basis_product(int i, int j) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec pow(const Vec& a, long e) const;
    /// Multiplication-by-a operator as a matrix.
    Mat mult_op(const Vec& a) const;
    Mat mult_op_basis(int i) const { return mult_op(unit_vec(f_, n_, i)); }

    bool is_unit_elt(const Vec& a) const { return a == unit_; }

    /// When the algebra is a monomial quotient of a polynomial ring, the
    /// monomial exponent of each basis element (used by jacobian-style
    /// oracles and printing); empty otherwise.
    const std::vector<Exp>& monomial_basis() const { return monos_; }
    const std::vector<std::string>& poly_vars() const { return poly_vars_; }

    std::string describe_basis(int i) const;

private:
    FinAlgebra() = default;

    FieldSpec f_;
    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<Vec> table_;  // n*n entries, each a Vec of length n
    Vec unit_;
    std::vector<Exp> monos_;
    std::vector<std::string> poly_vars_;
};

/// Finite-dimensional module over a FinAlgebra, presented by the action
/// matrices of the algebra basis elements.
class FinModule {
public:
    FinModule() = default;
    FinModule(AlgebraPtr A, std::vector<Mat> action, std::string name = "");

    static FinModule regular(AlgebraPtr A);
    static FinModule zero(AlgebraPtr A);
    /// The ground field k_h as a module through a spectrum point h.
    static FinModule point_module(AlgebraPtr A, const Vec& h);

    const AlgebraPtr& algebra() const { return A_; }
    int dim() const { return dim_; }
    const std::string& name() const { return name_; }

    const Mat& action_basis(int i) const { return action_[static_cast<size_t>(i)]; }
    Mat act(const Vec& a) const;

    /// Check the action is unital and respects structure constants on all
    /// basis pairs; returns a witness description on failure.
    std::optional<std::string> violation() const;
    void validate() const;

private:
    AlgebraPtr A_;
    int dim_ = 0;
    std::vector<Mat> action_;
    std::string name_;
};

/// Free polynomial algebra with a computation truncation degree. Truncation
/// is a resource bound, not a relation: results that lost terms to it carry
/// a flag.
struct PolyAlgebra {
    FieldSpec field;
    std::vector<std::string> vars;
    int trunc = 8;

    PolyAlgebra(FieldSpec f, std::vector<std::string> v, int D = 8);

    MPoly zero() const { return MPoly::zero(field, vars); }
    MPoly one() const { return MPoly::constant(field, vars, 1); }
    MPoly var(int i) const { return MPoly::variable(field, vars, i); }
};

/// Element of a truncated polynomial computation with loss flag.
struct TPoly {
    MPoly p;
    bool truncated = false;
};

TPoly tmul(const PolyAlgebra& A, const TPoly& a, const TPoly& b);

/// Quotient presentation of a polynomial algebra. Reduction is available for
/// a monic univariate principal ideal (polynomial division) or through a
/// user-supplied monomial basis with a reduction table.
class QuotPres {
public:
    QuotPres(PolyAlgebra base, std::vector<MPoly> relations);

    const PolyAlgebra& base() const { return base_; }
    const std::vector<MPoly>& relations() const { return relations_; }

    bool reducible() const { return univariate_; }
    MPoly reduce(const MPoly& p) const;

    /// Structure-constant form on the monomial basis (univariate case).
    AlgebraPtr to_fin_algebra() const;

private:
    PolyAlgebra base_;
    std::vector<MPoly> relations_;
    bool univariate_ = false;
    MPoly modulus_;  // monic univariate relation when reducible
};

/// Multiplicative set in a FinAlgebra given by generators. Validation checks
/// that no product of generators of length <= dim+1 vanishes (complete for
/// nilpotency in this Artinian setting).
struct FinMultSet {
    std::vector<Vec> gens;
};

void validate_mult_set(const FinAlgebra& A, const FinMultSet& S);

/// Multiplicative set in a polynomial algebra; generators must be nonzero.
struct PolyMultSet {
    std::vector<MPoly> gens;
};

void validate_mult_set(const PolyAlgebra& A, const PolyMultSet& S);

}  // namespace diffalg
