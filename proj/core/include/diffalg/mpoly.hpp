#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffalg/field.hpp"

namespace diffalg {

using Exp = std::vector<int>;  // exponent vector, one entry per variable

int total_degree(const Exp& e);

/// Graded lexicographic order on exponent vectors.
struct GrlexLess {
    bool operator()(const Exp& a, const Exp& b) const;
};

/// Multivariate polynomial over a fixed ordered variable list.
/// Terms are kept in graded-lex order; zero coefficients are never stored.
class MPoly {
public:
    MPoly() : f_(FieldSpec::rationals()) {}
    MPoly(FieldSpec f, std::vector<std::string> vars) : f_(f), vars_(std::move(vars)) {}

    static MPoly zero(FieldSpec f, const std::vector<std::string>& vars) { return MPoly(f, vars); }
    static MPoly constant(FieldSpec f, const std::vector<std::string>& vars, const Scalar& c);
    static MPoly constant(FieldSpec f, const std::vector<std::string>& vars, long c);
    static MPoly variable(FieldSpec f, const std::vector<std::string>& vars, int index);
    static MPoly monomial(FieldSpec f, const std::vector<std::string>& vars, const Exp& e,
                          const Scalar& c);

    FieldSpec field() const { return f_; }
    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    const std::map<Exp, Scalar, GrlexLess>& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Scalar constant_term() const;
    int degree() const;  // total degree, -1 for zero

    void add_term(const Exp& e, const Scalar& c);

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const Scalar& c) const;
    MPoly pow(long e) const;
    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    /// Formal partial derivative with respect to variable index i.
    MPoly partial(int i) const;
    /// Divided-power shift: coefficient of x_i^[m] basis moves down one step,
    /// i.e. x^e -> x^{e - e_i} with no combinatorial factor.
    MPoly shift_down(int i) const;

    /// Discard all terms of total degree > d; second result reports whether
    /// anything nonzero was discarded.
    std::pair<MPoly, bool> truncated(int d) const;

    Scalar eval(const std::vector<Scalar>& point) const;
    /// Substitute polynomials for the variables.
    MPoly substitute(const std::vector<MPoly>& images) const;

    /// Exact division: returns q with *this == q * d, or nullopt.
    std::optional<MPoly> divide_exact(const MPoly& d) const;

    std::string str() const;

private:
    void check_compatible(const MPoly& o) const;

    FieldSpec f_;
    std::vector<std::string> vars_;
    std::map<Exp, Scalar, GrlexLess> t_;
};

/// Parse the expression grammar used by input documents: integer literals,
/// declared variable names, + - * / ^ with integer exponents, parentheses.
/// Division must be exact or the result is carried as a rational expression
/// by the caller (see RatExpr::parse).
MPoly parse_mpoly(const std::string& text, FieldSpec f, const std::vector<std::string>& vars);

}  // namespace diffalg
