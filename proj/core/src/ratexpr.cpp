#include "diffalg/ratexpr.hpp"

#include <cctype>

namespace diffalg {

RatExpr::RatExpr(MPoly num)
    : num_(std::move(num)), den_(MPoly::constant(num_.field(), num_.vars(), 1)) {}

RatExpr::RatExpr(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw input_error("rational expression with zero denominator");
    cancel();
}

RatExpr RatExpr::zero(FieldSpec f, const std::vector<std::string>& vars) {
    return RatExpr(MPoly::zero(f, vars));
}

RatExpr RatExpr::constant(FieldSpec f, const std::vector<std::string>& vars, long c) {
    return RatExpr(MPoly::constant(f, vars, c));
}

RatExpr RatExpr::variable(FieldSpec f, const std::vector<std::string>& vars, int i) {
    return RatExpr(MPoly::variable(f, vars, i));
}

void RatExpr::cancel() {
    if (num_.is_zero()) {
        den_ = MPoly::constant(den_.field(), den_.vars(), 1);
        return;
    }
    if (den_.is_constant()) {
        if (!den_.constant_term().is_one()) {
            num_ = num_ * den_.constant_term().inverse();
            den_ = MPoly::constant(den_.field(), den_.vars(), 1);
        }
        return;
    }
    if (auto q = num_.divide_exact(den_)) {
        num_ = *q;
        den_ = MPoly::constant(den_.field(), den_.vars(), 1);
    }
}

RatExpr RatExpr::operator-() const {
    RatExpr r = *this;
    r.num_ = -r.num_;
    return r;
}

RatExpr RatExpr::operator+(const RatExpr& o) const {
    if (den_ == o.den_) return RatExpr(num_ + o.num_, den_);
    // prefer the larger denominator when one divides the other
    if (auto q = o.den_.divide_exact(den_)) return RatExpr(num_ * *q + o.num_, o.den_);
    if (auto q = den_.divide_exact(o.den_)) return RatExpr(num_ + o.num_ * *q, den_);
    return RatExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatExpr RatExpr::operator-(const RatExpr& o) const { return *this + (-o); }

RatExpr RatExpr::operator*(const RatExpr& o) const {
    // cross-cancel before multiplying
    MPoly n1 = num_, d2 = o.den_, n2 = o.num_, d1 = den_;
    if (!d2.is_constant())
        if (auto q = n1.divide_exact(d2)) { n1 = *q; d2 = MPoly::constant(d2.field(), d2.vars(), 1); }
    if (!d1.is_constant())
        if (auto q = n2.divide_exact(d1)) { n2 = *q; d1 = MPoly::constant(d1.field(), d1.vars(), 1); }
    return RatExpr(n1 * n2, d1 * d2);
}

RatExpr RatExpr::operator/(const RatExpr& o) const {
    if (o.num_.is_zero()) throw input_error("division by zero rational expression");
    return *this * RatExpr(o.den_, o.num_);
}

bool RatExpr::equals(const RatExpr& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    if (auto q = o.den_.divide_exact(den_)) return num_ * *q == o.num_;
    if (auto q = den_.divide_exact(o.den_)) return num_ == o.num_ * *q;
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

RatExpr RatExpr::partial(int i) const {
    // (n/d)' = (n' d - n d') / d^2
    MPoly np = num_.partial(i), dp = den_.partial(i);
    if (dp.is_zero()) return RatExpr(np, den_);
    return RatExpr(np * den_ - num_ * dp, den_ * den_);
}

RatExpr RatExpr::partial(const std::string& var) const {
    for (size_t i = 0; i < vars().size(); ++i)
        if (vars()[i] == var) return partial(static_cast<int>(i));
    throw input_error("unknown variable name '" + var + "'");
}

std::string RatExpr::str() const {
    if (den_.is_constant() && den_.constant_term().is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

struct RParser {
    const std::string& s;
    size_t pos = 0;
    FieldSpec f;
    const std::vector<std::string>& vars;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    RatExpr expr() {
        RatExpr r = term();
        while (true) {
            if (accept('+')) r = r + term();
            else if (accept('-')) r = r - term();
            else return r;
        }
    }

    RatExpr term() {
        RatExpr r = factor();
        while (true) {
            if (accept('*')) r = r * factor();
            else if (accept('/')) r = r / factor();
            else return r;
        }
    }

    RatExpr factor() {
        RatExpr b = base();
        if (accept('^')) {
            long e = integer();
            RatExpr r = RatExpr::constant(f, vars, 1);
            long a = e < 0 ? -e : e;
            for (long i = 0; i < a; ++i) r = r * b;
            if (e < 0) r = RatExpr::constant(f, vars, 1) / r;
            return r;
        }
        return b;
    }

    long integer() {
        skip_ws();
        bool neg = accept('-');
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw input_error("expected integer in expression: " + s);
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            v = v * 10 + (s[pos++] - '0');
        return neg ? -v : v;
    }

    RatExpr base() {
        skip_ws();
        if (accept('(')) {
            RatExpr r = expr();
            if (!accept(')')) throw input_error("missing ')' in expression: " + s);
            return r;
        }
        if (accept('-')) return -factor();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            return RatExpr::constant(f, vars, integer());
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start)
            throw input_error("unexpected character at position " + std::to_string(pos) +
                              " in expression: " + s);
        std::string name = s.substr(start, pos - start);
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return RatExpr::variable(f, vars, static_cast<int>(i));
        throw input_error("unknown variable name '" + name + "' in expression: " + s);
    }
};

}  // namespace

RatExpr parse_ratexpr(const std::string& text, FieldSpec f,
                      const std::vector<std::string>& vars) {
    RParser p{text, 0, f, vars};
    RatExpr r = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) throw input_error("trailing characters in expression: " + text);
    return r;
}

}  // namespace diffalg
