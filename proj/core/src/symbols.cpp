#include "diffalg/symbols.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace diffalg {

namespace {

/// Canonical coset representative: reduce v by the RREF rows of U.
Vec reduce_mod(const Subspace& U, Vec v) {
    for (const Vec& b : U.basis()) {
        int pc = -1;
        for (size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) { pc = static_cast<int>(j); break; }
        Scalar c = v[static_cast<size_t>(pc)];
        if (!c.is_zero()) v = sub(v, scale(c, b));
    }
    return v;
}

}  // namespace

PolySymbol PolySymbol::of(const PolyDiffOp& op, int k) {
    if (op.order() > k)
        throw input_error("operator of order " + std::to_string(op.order()) +
                          " has no symbol at level " + std::to_string(k));
    PolySymbol s(op.algebra(), k);
    for (const auto& [a, c] : op.terms())
        if (total_degree(a) == k) s.add_term(a, c);
    return s;
}

void PolySymbol::add_term(const Exp& alpha, const MPoly& c) {
    if (c.is_zero()) return;
    if (total_degree(alpha) != k_) throw input_error("symbol term of wrong order");
    auto [it, inserted] = t_.emplace(alpha, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

PolyDiffOp PolySymbol::lift() const {
    PolyDiffOp op(A_);
    for (const auto& [a, c] : t_) op.add_term(a, c);
    return op;
}

PolySymbol PolySymbol::operator+(const PolySymbol& o) const {
    if (o.k_ != k_) throw input_error("symbol order mismatch in sum");
    PolySymbol r = *this;
    for (const auto& [a, c] : o.t_) r.add_term(a, c);
    return r;
}

PolySymbol PolySymbol::operator-(const PolySymbol& o) const {
    if (o.k_ != k_) throw input_error("symbol order mismatch in difference");
    PolySymbol r = *this;
    for (const auto& [a, c] : o.t_) r.add_term(a, -c);
    return r;
}

PolySymbol PolySymbol::operator*(const PolySymbol& o) const {
    PolySymbol r(A_, k_ + o.k_);
    for (const auto& [a, ca] : t_)
        for (const auto& [b, cb] : o.t_) {
            Exp e = a;
            Scalar binom = Scalar::one(A_.field);
            for (size_t i = 0; i < e.size(); ++i) {
                e[i] += b[i];
                binom *= binomial_scalar(A_.field, e[i], b[i]);
            }
            if (!binom.is_zero()) r.add_term(e, ca * cb * binom);
        }
    return r;
}

MPoly PolySymbol::plain_form(const std::vector<std::string>& xi_names) const {
    if (A_.field.is_prime_field())
        throw input_error("plain-power symbol form requires characteristic 0");
    std::vector<std::string> all = A_.vars;
    all.insert(all.end(), xi_names.begin(), xi_names.end());
    MPoly out(A_.field, all);
    size_t nv = A_.vars.size();
    for (const auto& [a, c] : t_) {
        Scalar inv_fact = Scalar::one(A_.field);
        for (size_t i = 0; i < a.size(); ++i)
            inv_fact = inv_fact / factorial_scalar(A_.field, a[i]);
        for (const auto& [e, s] : c.terms()) {
            Exp full(all.size(), 0);
            for (size_t i = 0; i < nv; ++i) full[i] = e[i];
            for (size_t i = 0; i < a.size(); ++i) full[nv + i] = a[i];
            out.add_term(full, s * inv_fact);
        }
    }
    return out;
}

std::string PolySymbol::str() const {
    if (t_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [a, c] : t_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.str() << ")";
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            out << "*xi" << (a.size() > 1 ? std::to_string(i + 1) : "");
            if (a[i] > 1) out << "^[" << a[i] << "]";
        }
    }
    return out.str();
}

PolySymbol poisson(const PolySymbol& s, const PolySymbol& t) {
    PolyDiffOp c = s.lift().commutator(t.lift());
    if (c.truncated())
        throw budget_error("symbol bracket lost terms to the truncation degree " +
                           std::to_string(s.algebra().trunc) + "; raise it");
    int target = s.order() + t.order() - 1;
    if (c.order() > target)
        throw invariant_error("commutator of symbols failed to drop order; witness: " + c.str());
    return PolySymbol::of(c, target);
}

BracketCheck canonical_bracket_check(const PolySymbol& s, const PolySymbol& t,
                                     const std::vector<std::string>& xi_names) {
    BracketCheck rep;
    MPoly f = s.plain_form(xi_names), g = t.plain_form(xi_names);
    size_t nv = s.algebra().vars.size();
    MPoly canonical(f.field(), f.vars());
    for (size_t i = 0; i < nv; ++i) {
        int xi_idx = static_cast<int>(nv + i);
        canonical = canonical + f.partial(xi_idx) * g.partial(static_cast<int>(i)) -
                    f.partial(static_cast<int>(i)) * g.partial(xi_idx);
    }
    MPoly lhs = poisson(s, t).plain_form(xi_names);
    rep.lhs = lhs.str();
    rep.rhs = canonical.str();
    rep.ok = lhs == canonical;
    return rep;
}

PullbackCheck cotangent_pullback_check(const PolyDiffOp& op, int k, const MPoly& f) {
    PullbackCheck rep;
    FieldSpec field = op.algebra().field;
    if (field.is_prime_field() && k >= field.p)
        throw input_error("pullback identity needs k! invertible in the field");
    // left side: symbol polynomial evaluated at xi_i = df/dx_i
    PolySymbol s = PolySymbol::of(op, k);
    MPoly lhs(field, op.algebra().vars);
    for (const auto& [a, c] : s.terms()) {
        MPoly term = c;
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            term = term * (Scalar::one(field) / factorial_scalar(field, a[i]));
            term = term * f.partial(static_cast<int>(i)).pow(a[i]);
        }
        lhs = lhs + term;
    }
    // right side: (1/k!) delta_f^k(op), an order-0 operator
    PolyDiffOp d = op;
    for (int i = 0; i < k; ++i) d = d.delta(f);
    if (d.order() > 0)
        throw invariant_error("delta_f^k did not collapse to a multiplication operator: " + d.str());
    MPoly rhs(field, op.algebra().vars);
    Exp zero_exp(op.algebra().vars.size(), 0);
    auto it = d.terms().find(zero_exp);
    if (it != d.terms().end()) rhs = it->second;
    rhs = rhs * (Scalar::one(field) / factorial_scalar(field, k));
    rep.lhs = lhs.str();
    rep.rhs = rhs.str();
    rep.ok = lhs == rhs;
    return rep;
}

HamiltonianCheck hamiltonian_field_check(const PolySymbol& s, const std::vector<PolySymbol>& basis) {
    HamiltonianCheck rep;
    rep.leibniz_ok = true;
    for (const auto& a : basis)
        for (const auto& b : basis) {
            PolySymbol lhs = poisson(s, a * b);
            PolySymbol rhs = poisson(s, a) * b + a * poisson(s, b);
            if (!(lhs == rhs)) {
                rep.leibniz_ok = false;
                rep.witness = "X_s(" + a.str() + " * " + b.str() + ") != Leibniz expansion";
                return rep;
            }
        }
    return rep;
}

MatSymbol::MatSymbol(DiffSpace dfk, DiffSpace dfk_minus_1, const Mat& rep)
    : dfk_(std::move(dfk)), low_(std::move(dfk_minus_1)) {
    Vec v = reduce_mod(low_.sub(), rep.flatten());
    rep_ = Mat::unflatten(rep.field(), v, rep.rows(), rep.cols());
}

MatSymbol mat_symbol(const FinModule& P, const FinModule& Q, const Mat& op, int k) {
    DiffSpace dfk = DiffSpace::compute(P, Q, k);
    dfk.coords_of(op);  // certifies membership of the representative
    DiffSpace low = k >= 1 ? DiffSpace::compute(P, Q, k - 1) : DiffSpace{};  // Df_{-1} = 0
    return MatSymbol(dfk, low, op);
}

MatSymbol mat_symbol_product(const MatSymbol& s, const MatSymbol& t) {
    const FinModule& P = t.space().source();
    const FinModule& Q = s.space().target();
    Mat prod = s.representative() * t.representative();
    return mat_symbol(P, Q, prod, s.order() + t.order());
}

MatSymbol mat_poisson(const MatSymbol& s, const MatSymbol& t) {
    const FinModule& P = t.space().source();
    Mat c = s.representative() * t.representative() - t.representative() * s.representative();
    int target = s.order() + t.order() - 1;
    int sharp = certified_order(P, P, c, target);
    if (sharp < 0)
        throw invariant_error("commutator of symbol representatives failed to drop order " +
                              std::to_string(target));
    return mat_symbol(P, P, c, target);
}

SymbolAlgebraView symbol_algebra_view(const FinModule& P) {
    SymbolAlgebraView view;
    view.stabilization = stabilization_order(P, P);
    int prev = 0;
    for (int k = 0; k <= view.stabilization; ++k) {
        int cur = DiffSpace::compute(P, P, k).dim();
        view.dims.push_back(cur - prev);
        prev = cur;
    }
    return view;
}

namespace {

struct PlaneDerivation {
    MPoly u, v;  // images of x and xi
};

MPoly derivation_apply(const PlaneDerivation& X, const MPoly& g) {
    return g.partial(0) * X.u + g.partial(1) * X.v;
}

PlaneDerivation derivation_bracket(const PlaneDerivation& X, const PlaneDerivation& Y) {
    return {derivation_apply(X, Y.u) - derivation_apply(Y, X.u),
            derivation_apply(X, Y.v) - derivation_apply(Y, X.v)};
}

/// Hamiltonian field of s: X_s = (ds/dxi) d/dx - (ds/dx) d/dxi.
PlaneDerivation hamiltonian_of(const MPoly& s) { return {s.partial(1), -s.partial(0)}; }

Vec derivation_coords(FieldSpec f, const PlaneDerivation& X, const std::vector<Exp>& monos) {
    Vec out = zero_vec(f, 2 * static_cast<int>(monos.size()));
    auto put = [&](const MPoly& p, size_t off) {
        for (const auto& [e, c] : p.terms())
            for (size_t i = 0; i < monos.size(); ++i)
                if (monos[i] == e) out[off + i] = c;
    };
    put(X.u, 0);
    put(X.v, monos.size());
    return out;
}

}  // namespace

ExplorerReport symbol_spectrum_explorer(long p, int order_bound, int degree_bound) {
    if (p > 3 || order_bound > 4 || degree_bound > 8)
        throw budget_error("explorer budget: p <= 3, order bound <= 4, degree bound <= 8");
    ExplorerReport rep;
    rep.p = p;
    rep.order_bound = order_bound;
    rep.degree_bound = degree_bound;
    FieldSpec f = FieldSpec::prime(p);

    if (order_bound == 0) {
        ExplorerCandidate c;
        c.name = "order-zero";
        c.spectrum_points = static_cast<int>(p);
        c.details = "Smbl truncated at order 0 is F_p[x] itself";
        rep.candidates.push_back(c);
        return rep;
    }

    // (1) divided powers: generators x and xi^[a], 1 <= a <= B, with
    // xi^[a] xi^[b] = C(a+b, a) xi^[a+b] (zero beyond the bound).
    {
        ExplorerCandidate c;
        c.name = "divided-powers";
        int B = order_bound;
        long count = 0;
        std::vector<long> vals(static_cast<size_t>(B + 1), 0);
        // vals[0] is h(x); vals[a] = h(xi^[a]) for a >= 1
        std::function<void(int)> rec = [&](int pos) {
            if (pos == B + 1) {
                for (int a = 1; a <= B; ++a)
                    for (int b = a; b <= B; ++b) {
                        Scalar lhs = Scalar(f, vals[static_cast<size_t>(a)]) *
                                     Scalar(f, vals[static_cast<size_t>(b)]);
                        Scalar rhs = a + b <= B
                                         ? binomial_scalar(f, a + b, a) * Scalar(f, vals[static_cast<size_t>(a + b)])
                                         : Scalar::zero(f);
                        if (!(lhs == rhs)) return;
                    }
                ++count;
                return;
            }
            for (long v = 0; v < p; ++v) {
                vals[static_cast<size_t>(pos)] = v;
                rec(pos + 1);
            }
        };
        rec(0);
        c.spectrum_points = static_cast<int>(count);
        c.details = "divided generators xi^[a] square to binomial multiples; nilpotents force h(xi^[a]) = 0";
        rep.candidates.push_back(c);
    }

    std::vector<std::string> xv = {"x", "xi"};
    std::vector<Exp> monos;
    for (int a = 0; a <= degree_bound + order_bound; ++a)
        for (int b = 0; b <= degree_bound + order_bound - a; ++b) monos.push_back(Exp{a, b});
    std::sort(monos.begin(), monos.end(), GrlexLess());

    auto analyze_fields = [&](const std::vector<MPoly>& hams, ExplorerCandidate& c) {
        std::vector<PlaneDerivation> fields;
        std::vector<Vec> coords;
        for (const MPoly& s : hams) {
            PlaneDerivation X = hamiltonian_of(s);
            fields.push_back(X);
            coords.push_back(derivation_coords(f, X, monos));
        }
        Subspace span = Subspace::span(f, 2 * static_cast<int>(monos.size()), coords);
        c.hamiltonian_dim = span.dim();
        if (span.dim() != 3) return;
        // basis e1 = X_xi, e2 = X_x, e3 = X_{x xi}
        MPoly x = MPoly::variable(f, xv, 0), xi = MPoly::variable(f, xv, 1);
        PlaneDerivation e1 = hamiltonian_of(xi), e2 = hamiltonian_of(x), e3 = hamiltonian_of(x * xi);
        std::vector<Vec> basis_coords = {derivation_coords(f, e1, monos),
                                         derivation_coords(f, e2, monos),
                                         derivation_coords(f, e3, monos)};
        Subspace basis_span = Subspace::span(f, 2 * static_cast<int>(monos.size()), basis_coords);
        if (!(basis_span == span)) return;
        auto in_basis = [&](const PlaneDerivation& X) -> std::optional<Vec> {
            Mat m = Mat::from_cols(f, basis_coords, 2 * static_cast<int>(monos.size()));
            return solve(m, derivation_coords(f, X, monos));
        };
        auto is_combo = [&](const PlaneDerivation& X, long a, long b, long cc) {
            auto sol = in_basis(X);
            return sol && (*sol)[0] == Scalar(f, a) && (*sol)[1] == Scalar(f, b) &&
                   (*sol)[2] == Scalar(f, cc);
        };
        bool ok = is_combo(derivation_bracket(e1, e2), 0, 0, 0) &&
                  is_combo(derivation_bracket(e1, e3), 1, 0, 0) &&
                  is_combo(derivation_bracket(e2, e3), 0, 1, 0);
        c.bracket_table_matches = ok;
    };

    // (2) plain powers: Smbl = F_p[x, xi], Hamiltonian fields of all bounded monomials
    {
        ExplorerCandidate c;
        c.name = "plain-powers";
        c.spectrum_points = static_cast<int>(p * p);
        std::vector<MPoly> hams;
        for (int a = 0; a <= degree_bound; ++a)
            for (int b = 0; b <= order_bound; ++b)
                hams.push_back(MPoly::monomial(f, xv, Exp{a, b}, Scalar::one(f)));
        analyze_fields(hams, c);
        c.details = "free F_p[x,xi]; Hamiltonian fields of all monomials up to the bounds";
        rep.candidates.push_back(c);
    }

    // (3) plain powers, geometrized observables: Hamiltonian fields of the
    // reduced point-function representatives x^a xi^b with a, b < p.
    {
        ExplorerCandidate c;
        c.name = "plain-geometrized";
        c.spectrum_points = static_cast<int>(p * p);
        std::vector<MPoly> hams;
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b)
                hams.push_back(MPoly::monomial(f, xv, Exp{a, b}, Scalar::one(f)));
        analyze_fields(hams, c);
        c.details = "free F_p[x,xi]; Hamiltonian fields of the reduced representatives of point functions";
        rep.candidates.push_back(c);
    }

    for (const auto& c : rep.candidates)
        if (c.spectrum_points == 4 && c.hamiltonian_dim == 3 && c.bracket_table_matches)
            rep.passing = c.name;
    return rep;
}

}  // namespace diffalg
