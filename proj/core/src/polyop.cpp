#include "diffalg/polyop.hpp"

#include <algorithm>
#include <sstream>

namespace diffalg {

MPoly divided_derivative(const MPoly& f, const Exp& alpha) {
    MPoly r(f.field(), f.vars());
    for (const auto& [e, c] : f.terms()) {
        Scalar coef = c;
        Exp e2 = e;
        bool dead = false;
        for (size_t i = 0; i < alpha.size(); ++i) {
            if (e[i] < alpha[i]) { dead = true; break; }
            coef *= binomial_scalar(f.field(), e[i], alpha[i]);
            e2[i] -= alpha[i];
        }
        if (!dead && !coef.is_zero()) r.add_term(e2, coef);
    }
    return r;
}

PolyDiffOp PolyDiffOp::mult(const PolyAlgebra& A, const MPoly& f) {
    PolyDiffOp r(A);
    r.add_term(Exp(A.vars.size(), 0), f);
    return r;
}

PolyDiffOp PolyDiffOp::divided(const PolyAlgebra& A, const Exp& alpha) {
    PolyDiffOp r(A);
    r.add_term(alpha, A.one());
    return r;
}

PolyDiffOp PolyDiffOp::derivative(const PolyAlgebra& A, int i) {
    Exp e(A.vars.size(), 0);
    e[static_cast<size_t>(i)] = 1;
    return divided(A, e);
}

PolyDiffOp PolyDiffOp::with_truncation(int D) const {
    PolyAlgebra B(A_.field, A_.vars, D);
    PolyDiffOp r(B);
    for (const auto& [a, c] : t_) r.add_term(a, c);
    return r;
}

int PolyDiffOp::order() const {
    int k = -1;
    for (const auto& [a, c] : t_)
        if (!c.is_zero()) k = std::max(k, total_degree(a));
    return k;
}

void PolyDiffOp::add_term(const Exp& alpha, const MPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.emplace(alpha, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

PolyDiffOp PolyDiffOp::operator+(const PolyDiffOp& o) const {
    PolyDiffOp r = *this;
    r.truncated_ = truncated_ || o.truncated_;
    for (const auto& [a, c] : o.t_) r.add_term(a, c);
    return r;
}

PolyDiffOp PolyDiffOp::operator-(const PolyDiffOp& o) const {
    PolyDiffOp r = *this;
    r.truncated_ = truncated_ || o.truncated_;
    for (const auto& [a, c] : o.t_) r.add_term(a, -c);
    return r;
}

PolyDiffOp PolyDiffOp::operator*(const Scalar& c) const {
    PolyDiffOp r(A_);
    r.truncated_ = truncated_;
    if (c.is_zero()) return r;
    for (const auto& [a, f] : t_) r.add_term(a, f * c);
    return r;
}

PolyDiffOp PolyDiffOp::compose(const PolyDiffOp& o) const {
    // (c_a D^[a]) . (g D^[b]) = sum_{g' <= a} c_a D^[g'](g) C(a-g'+b, b) D^[a-g'+b]
    PolyDiffOp r(A_);
    r.truncated_ = truncated_ || o.truncated_;
    size_t nv = A_.vars.size();
    for (const auto& [a, ca] : t_) {
        // enumerate gamma <= a componentwise
        Exp gamma(nv, 0);
        while (true) {
            for (const auto& [b, g] : o.t_) {
                MPoly dg = divided_derivative(g, gamma);
                if (!dg.is_zero()) {
                    Exp rest = a;
                    Scalar binom = Scalar::one(A_.field);
                    Exp target = b;
                    bool ok = true;
                    for (size_t i = 0; i < nv; ++i) {
                        rest[i] -= gamma[i];
                        target[i] += rest[i];
                        binom *= binomial_scalar(A_.field, target[i], b[i]);
                    }
                    (void)ok;
                    if (!binom.is_zero()) {
                        auto [coef, lost] = (ca * dg).truncated(A_.trunc);
                        if (lost) r.truncated_ = true;
                        r.add_term(target, coef * binom);
                    }
                }
            }
            // next gamma <= a
            size_t i = 0;
            while (i < nv) {
                if (++gamma[i] <= a[i]) break;
                gamma[i] = 0;
                ++i;
            }
            if (i == nv) break;
        }
    }
    return r;
}

PolyDiffOp PolyDiffOp::commutator(const PolyDiffOp& o) const {
    return compose(o) - o.compose(*this);
}

PolyDiffOp PolyDiffOp::delta(const MPoly& f) const {
    return compose(mult(A_, f)) - mult(A_, f).compose(*this);
}

TPoly PolyDiffOp::apply(const TPoly& p) const {
    MPoly acc = A_.zero();
    bool lost = p.truncated || truncated_;
    for (const auto& [a, c] : t_) {
        MPoly d = divided_derivative(p.p, a);
        auto [term, l] = (c * d).truncated(A_.trunc);
        lost = lost || l;
        acc = acc + term;
    }
    return {acc, lost};
}

MPoly PolyDiffOp::apply_exact(const MPoly& p) const {
    TPoly r = apply({p, false});
    if (r.truncated)
        throw budget_error("operator application lost terms to the truncation degree " +
                           std::to_string(A_.trunc));
    return r.p;
}

Mat PolyDiffOp::to_matrix(int degree_bound) const {
    auto carrier = FinAlgebra::truncated_polynomial(A_.field, A_.vars, degree_bound);
    const std::vector<Exp>& monos = carrier->monomial_basis();
    int N = static_cast<int>(monos.size());
    Mat m(A_.field, N, N);
    for (int c = 0; c < N; ++c) {
        MPoly img(A_.field, A_.vars);
        for (const auto& [a, coef] : t_) {
            MPoly mono = MPoly::monomial(A_.field, A_.vars, monos[static_cast<size_t>(c)], Scalar::one(A_.field));
            img = img + coef * divided_derivative(mono, a);
        }
        auto [tr, lost] = img.truncated(degree_bound);
        (void)lost;
        for (const auto& [e, s] : tr.terms()) {
            for (int r = 0; r < N; ++r)
                if (monos[static_cast<size_t>(r)] == e) { m.at(r, c) = s; break; }
        }
    }
    return m;
}

std::string PolyDiffOp::str() const {
    if (t_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [a, c] : t_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.str() << ")";
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            out << "*D" << (a.size() > 1 ? "_" + A_.vars[i] : "");
            if (a[i] > 1) out << "^[" << a[i] << "]";
        }
    }
    return out.str();
}

RatExpr localize_op(const PolyDiffOp& op, int k, const MPoly& p, const MPoly& s) {
    FieldSpec f = op.algebra().field;
    const auto& vars = op.algebra().vars;
    // the summands involve s^i p with i <= k, plus coefficient degrees
    int coeff_deg = 0;
    for (const auto& [a, c] : op.terms()) coeff_deg = std::max(coeff_deg, c.degree());
    int need = std::max(p.degree(), 0) + (k + 1) * std::max(s.degree(), 0) + coeff_deg;
    PolyDiffOp wide = op.with_truncation(std::max(need, op.algebra().trunc));
    RatExpr acc = RatExpr::zero(f, vars);
    MPoly s_pow_i = MPoly::constant(f, vars, 1);
    for (int i = 0; i <= k; ++i) {
        Scalar c = binomial_scalar(f, k + 1, i + 1);
        if (i % 2 == 1) c = -c;
        MPoly num = wide.apply_exact(s_pow_i * p) * c;
        MPoly den = s.pow(i + 1);
        acc = acc + RatExpr(num, den);
        s_pow_i = s_pow_i * s;
    }
    return acc;
}

LocElt localize_op(const LocalizedModule& loc, const Mat& op, int k, const LocElt& frac) {
    const FinAlgebra& A = loc.algebra();
    FieldSpec f = A.field();
    LocElt acc{zero_vec(f, op.rows()), A.unit()};
    Vec s_pow_i = A.unit();
    for (int i = 0; i <= k; ++i) {
        Scalar c = binomial_scalar(f, k + 1, i + 1);
        if (i % 2 == 1) c = -c;
        Vec num = scale(c, op.apply(loc.module().act(s_pow_i).apply(frac.num)));
        Vec den = A.pow(frac.den, i + 1);
        acc = loc.add(acc, LocElt{num, den});
        s_pow_i = A.mul(s_pow_i, frac.den);
    }
    return acc;
}

}  // namespace diffalg
