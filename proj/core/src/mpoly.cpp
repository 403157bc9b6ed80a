#include "diffalg/mpoly.hpp"

#include <cctype>
#include <sstream>

namespace diffalg {

int total_degree(const Exp& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

bool GrlexLess::operator()(const Exp& a, const Exp& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;  // lexicographic tie-break
}

MPoly MPoly::constant(FieldSpec f, const std::vector<std::string>& vars, const Scalar& c) {
    MPoly p(f, vars);
    p.add_term(Exp(vars.size(), 0), c);
    return p;
}

MPoly MPoly::constant(FieldSpec f, const std::vector<std::string>& vars, long c) {
    return constant(f, vars, Scalar(f, c));
}

MPoly MPoly::variable(FieldSpec f, const std::vector<std::string>& vars, int index) {
    if (index < 0 || index >= static_cast<int>(vars.size()))
        throw input_error("variable index out of range");
    Exp e(vars.size(), 0);
    e[static_cast<size_t>(index)] = 1;
    return monomial(f, vars, e, Scalar::one(f));
}

MPoly MPoly::monomial(FieldSpec f, const std::vector<std::string>& vars, const Exp& e,
                      const Scalar& c) {
    MPoly p(f, vars);
    p.add_term(e, c);
    return p;
}

bool MPoly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && total_degree(t_.begin()->first) == 0);
}

Scalar MPoly::constant_term() const {
    Exp e(vars_.size(), 0);
    auto it = t_.find(e);
    return it == t_.end() ? Scalar::zero(f_) : it->second;
}

int MPoly::degree() const {
    if (t_.empty()) return -1;
    return total_degree(t_.rbegin()->first);
}

void MPoly::add_term(const Exp& e, const Scalar& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(e.size()) != nvars()) throw input_error("exponent arity mismatch");
    auto [it, inserted] = t_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

void MPoly::check_compatible(const MPoly& o) const {
    if (f_ != o.f_ || vars_ != o.vars_)
        throw input_error("polynomial ring mismatch");
}

MPoly MPoly::operator-() const {
    MPoly r(f_, vars_);
    for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    check_compatible(o);
    MPoly r = *this;
    for (const auto& [e, c] : o.t_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    check_compatible(o);
    MPoly r = *this;
    for (const auto& [e, c] : o.t_) r.add_term(e, -c);
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    check_compatible(o);
    MPoly r(f_, vars_);
    for (const auto& [ea, ca] : t_)
        for (const auto& [eb, cb] : o.t_) {
            Exp e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly MPoly::operator*(const Scalar& c) const {
    MPoly r(f_, vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, a] : t_) r.t_.emplace(e, a * c);
    return r;
}

MPoly MPoly::pow(long e) const {
    if (e < 0) throw input_error("negative power of a polynomial");
    MPoly r = constant(f_, vars_, 1), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool MPoly::operator==(const MPoly& o) const {
    return f_ == o.f_ && vars_ == o.vars_ && t_ == o.t_;
}

MPoly MPoly::partial(int i) const {
    MPoly r(f_, vars_);
    for (const auto& [e, c] : t_) {
        int k = e[static_cast<size_t>(i)];
        if (k == 0) continue;
        Exp e2 = e;
        e2[static_cast<size_t>(i)] -= 1;
        r.add_term(e2, c * Scalar(f_, k));
    }
    return r;
}

MPoly MPoly::shift_down(int i) const {
    MPoly r(f_, vars_);
    for (const auto& [e, c] : t_) {
        if (e[static_cast<size_t>(i)] == 0) continue;
        Exp e2 = e;
        e2[static_cast<size_t>(i)] -= 1;
        r.add_term(e2, c);
    }
    return r;
}

std::pair<MPoly, bool> MPoly::truncated(int d) const {
    MPoly r(f_, vars_);
    bool discarded = false;
    for (const auto& [e, c] : t_) {
        if (total_degree(e) > d)
            discarded = true;
        else
            r.t_.emplace(e, c);
    }
    return {r, discarded};
}

Scalar MPoly::eval(const std::vector<Scalar>& point) const {
    if (static_cast<int>(point.size()) != nvars()) throw input_error("evaluation arity mismatch");
    Scalar r = Scalar::zero(f_);
    for (const auto& [e, c] : t_) {
        Scalar term = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term *= point[i].pow(e[i]);
        r += term;
    }
    return r;
}

MPoly MPoly::substitute(const std::vector<MPoly>& images) const {
    if (static_cast<int>(images.size()) != nvars()) throw input_error("substitution arity mismatch");
    MPoly r = images.empty() ? MPoly(f_, vars_) : MPoly(f_, images[0].vars());
    if (images.empty()) return r;
    for (const auto& [e, c] : t_) {
        MPoly term = MPoly::constant(images[0].field(), images[0].vars(), c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term = term * images[i].pow(e[i]);
        r = r + term;
    }
    return r;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& d) const {
    check_compatible(d);
    if (d.is_zero()) return std::nullopt;
    MPoly rem = *this, q(f_, vars_);
    const Exp lde = d.t_.rbegin()->first;  // leading term in grlex
    const Scalar ldc = d.t_.rbegin()->second;
    while (!rem.is_zero()) {
        const Exp lre = rem.t_.rbegin()->first;
        const Scalar lrc = rem.t_.rbegin()->second;
        Exp e(vars_.size());
        for (size_t i = 0; i < e.size(); ++i) {
            e[i] = lre[i] - lde[i];
            if (e[i] < 0) return std::nullopt;
        }
        Scalar c = lrc / ldc;
        q.add_term(e, c);
        rem = rem - d * MPoly::monomial(f_, vars_, e, c);
        // exact quotients strictly decrease the leading term
        if (!rem.is_zero() && !GrlexLess()(rem.t_.rbegin()->first, lre)) return std::nullopt;
    }
    return q;
}

std::string MPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // print highest-degree terms first
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        if (neg) cs = cs.substr(1);
        first = false;
        bool has_var = total_degree(e) > 0;
        if (cs != "1" || !has_var) out << cs;
        bool started = cs != "1" || !has_var;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (started) out << "*";
            started = true;
            out << vars_[i];
            if (e[i] > 1) out << "^" << e[i];
        }
    }
    return out.str();
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    FieldSpec f;
    const std::vector<std::string>& vars;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool accept(char c) {
        if (peek(c)) { ++pos; return true; }
        return false;
    }

    // expr := term (('+'|'-') term)*
    // term := factor (('*'|'/') factor)*   with '/' requiring exact division here
    // factor := base ('^' int)?
    // base := int | name | '(' expr ')' | '-' factor
    MPoly expr() {
        MPoly r = term();
        while (true) {
            if (accept('+')) r = r + term();
            else if (accept('-')) r = r - term();
            else return r;
        }
    }

    MPoly term() {
        MPoly r = factor();
        while (true) {
            if (accept('*')) r = r * factor();
            else if (accept('/')) {
                MPoly d = factor();
                if (d.is_constant() && !d.constant_term().is_zero()) {
                    r = r * d.constant_term().inverse();
                } else {
                    auto q = r.divide_exact(d);
                    if (!q) throw input_error("non-exact polynomial division in expression: " + s);
                    r = *q;
                }
            } else
                return r;
        }
    }

    MPoly factor() {
        MPoly b = base();
        skip_ws();
        if (accept('^')) {
            long e = integer();
            if (e < 0) throw input_error("negative exponent in polynomial expression: " + s);
            return b.pow(e);
        }
        return b;
    }

    long integer() {
        skip_ws();
        bool neg = accept('-');
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw input_error("expected integer at position " + std::to_string(pos) + " in: " + s);
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            ++pos;
        }
        return neg ? -v : v;
    }

    MPoly base() {
        skip_ws();
        if (accept('(')) {
            MPoly r = expr();
            if (!accept(')')) throw input_error("missing ')' in: " + s);
            return r;
        }
        if (accept('-')) return -factor();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            return MPoly::constant(f, vars, integer());
        // name: letters, digits, underscores, starting with a letter or underscore
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start) throw input_error("unexpected character at position " +
                                            std::to_string(pos) + " in: " + s);
        std::string name = s.substr(start, pos - start);
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return MPoly::variable(f, vars, static_cast<int>(i));
        throw input_error("unknown variable name '" + name + "' in: " + s);
    }
};

}  // namespace

MPoly parse_mpoly(const std::string& text, FieldSpec f, const std::vector<std::string>& vars) {
    Parser p{text, 0, f, vars};
    MPoly r = p.expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw input_error("trailing characters in expression: " + text);
    return r;
}

}  // namespace diffalg
