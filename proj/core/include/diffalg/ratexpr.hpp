#pragma once

#include "diffalg/mpoly.hpp"

namespace diffalg {

/// Rational expression num/den over a polynomial ring. Equality is decided by
/// cross-multiplication; gcd-style reduction is applied only opportunistically
/// (integer content, exact-division cancellation) to keep expressions small.
class RatExpr {
public:
    RatExpr() = default;
    explicit RatExpr(MPoly num);
    RatExpr(MPoly num, MPoly den);

    static RatExpr zero(FieldSpec f, const std::vector<std::string>& vars);
    static RatExpr constant(FieldSpec f, const std::vector<std::string>& vars, long c);
    static RatExpr variable(FieldSpec f, const std::vector<std::string>& vars, int i);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    FieldSpec field() const { return num_.field(); }
    const std::vector<std::string>& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }

    RatExpr operator-() const;
    RatExpr operator+(const RatExpr& o) const;
    RatExpr operator-(const RatExpr& o) const;
    RatExpr operator*(const RatExpr& o) const;
    RatExpr operator/(const RatExpr& o) const;

    /// Cross-multiplication equality: num*o.den == o.num*den.
    bool equals(const RatExpr& o) const;

    /// Quotient-rule partial derivative with respect to the named variable.
    RatExpr partial(const std::string& var) const;
    RatExpr partial(int i) const;

    std::string str() const;

private:
    void cancel();

    MPoly num_, den_;
};

/// Parse the document expression grammar (integers, variable names,
/// + - * / ^ int, parentheses) into a rational expression.
RatExpr parse_ratexpr(const std::string& text, FieldSpec f,
                      const std::vector<std::string>& vars);

}  // namespace diffalg
