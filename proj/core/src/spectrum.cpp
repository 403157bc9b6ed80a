#include "diffalg/spectrum.hpp"

namespace diffalg {

namespace {

/// Iterate all vectors in GF(p)^n in lexicographic order (first coordinate
/// slowest), calling fn on each; count limited by budget.
void for_each_candidate(FieldSpec f, int n, long budget, const std::function<void(const Vec&)>& fn) {
    long p = f.p;
    double total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<double>(p);
    if (total > static_cast<double>(budget))
        throw budget_error("spectrum enumeration needs " + std::to_string(total) +
                           " candidates, budget is " + std::to_string(budget));
    std::vector<long> idx(static_cast<size_t>(n), 0);
    while (true) {
        Vec v;
        v.reserve(static_cast<size_t>(n));
        for (long x : idx) v.push_back(Scalar(f, x));
        fn(v);
        int i = n - 1;
        while (i >= 0) {
            if (++idx[static_cast<size_t>(i)] < p) break;
            idx[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
}

Scalar point_eval(const Vec& h, const Vec& a) {
    Scalar r = Scalar::zero(h[0].field());
    for (size_t i = 0; i < h.size(); ++i) r += h[i] * a[i];
    return r;
}

}  // namespace

std::vector<SpecPoint> enumerate_spectrum(const FinAlgebra& A, const SpectrumBudget& budget) {
    if (!A.field().is_prime_field())
        throw input_error("spectrum enumeration is defined over prime fields; use check_point over Q");
    std::vector<SpecPoint> pts;
    for_each_candidate(A.field(), A.dim(), budget.candidates, [&](const Vec& cand) {
        if (check_point(A, cand)) pts.push_back(cand);
    });
    return pts;
}

std::optional<SpecPoint> check_point(const FinAlgebra& A, const Vec& values) {
    if (static_cast<int>(values.size()) != A.dim())
        throw input_error("check_point arity mismatch: expected one value per basis element");
    if (!(point_eval(values, A.unit()) == Scalar::one(A.field()))) return std::nullopt;
    for (int i = 0; i < A.dim(); ++i)
        for (int j = i; j < A.dim(); ++j) {
            Scalar lhs = point_eval(values, A.basis_product(i, j));
            if (!(lhs == values[static_cast<size_t>(i)] * values[static_cast<size_t>(j)]))
                return std::nullopt;
        }
    return values;
}

std::vector<Vec> tangent_space(const FinAlgebra& A, const SpecPoint& h) {
    // xi(e_i e_j) = xi(e_i) h(e_j) + h(e_i) xi(e_j), unknowns xi(e_k);
    // plus xi(1) = 0.
    FieldSpec f = A.field();
    int n = A.dim();
    std::vector<Vec> rows;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Vec row = A.basis_product(i, j);  // xi applied linearly to the product
            row[static_cast<size_t>(i)] -= h[static_cast<size_t>(j)];
            row[static_cast<size_t>(j)] -= h[static_cast<size_t>(i)];
            rows.push_back(row);
        }
    rows.push_back(A.unit());
    return kernel_basis(Mat::from_rows(f, rows, n));
}

std::vector<int> basic_open(const FinAlgebra&, const Vec& a, const std::vector<SpecPoint>& pts) {
    std::vector<int> out;
    for (size_t i = 0; i < pts.size(); ++i)
        if (!point_eval(pts[i], a).is_zero()) out.push_back(static_cast<int>(i));
    return out;
}

AlgebraHom make_algebra_hom(AlgebraPtr A1, AlgebraPtr A2, const Mat& images) {
    if (images.rows() != A2->dim() || images.cols() != A1->dim())
        throw input_error("homomorphism matrix must be dim(A2) x dim(A1)");
    if (!(images.apply(A1->unit()) == A2->unit()))
        throw input_error("homomorphism does not preserve the unit");
    for (int i = 0; i < A1->dim(); ++i)
        for (int j = i; j < A1->dim(); ++j) {
            Vec lhs = images.apply(A1->basis_product(i, j));
            Vec rhs = A2->mul(images.col(i), images.col(j));
            if (lhs != rhs)
                throw input_error("homomorphism violates multiplicativity at basis pair (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return AlgebraHom{std::move(A1), std::move(A2), images};
}

SpecPoint induced_point(const AlgebraHom& H, const SpecPoint& h2) {
    // (h2 . H)(e_i) = h2(H e_i)
    Vec out;
    for (int i = 0; i < H.source->dim(); ++i) out.push_back(point_eval(h2, H.m.col(i)));
    return out;
}

GhostReport ghosts(const FinAlgebra& A, const std::vector<SpecPoint>& pts) {
    GhostReport rep;
    if (pts.empty() && !A.field().is_prime_field()) {
        rep.status = "insufficient points";
        rep.ghost = Subspace(A.field(), A.dim());
        return rep;
    }
    Mat eval = Mat::from_rows(A.field(), pts, A.dim());
    std::vector<Vec> ker = kernel_basis(eval);
    rep.ghost = Subspace::span(A.field(), A.dim(), ker);
    rep.geometric = rep.ghost.dim() == 0;
    rep.status = "ok";
    return rep;
}

GhostReport ghosts(const FinModule& P, const std::vector<SpecPoint>& pts) {
    GhostReport rep;
    const FinAlgebra& A = *P.algebra();
    if (pts.empty() && !A.field().is_prime_field()) {
        rep.status = "insufficient points";
        rep.ghost = Subspace(A.field(), P.dim());
        return rep;
    }
    Subspace ghost = Subspace::full(A.field(), P.dim());
    for (size_t t = 0; t < pts.size(); ++t) {
        // ker h * P = span{ a p : h(a) = 0 }
        std::vector<Vec> ker_rows = {pts[t]};
        std::vector<Vec> ka = kernel_basis(Mat::from_rows(A.field(), ker_rows, A.dim()));
        std::vector<Vec> gens;
        for (const Vec& a : ka) {
            Mat act = P.act(a);
            for (int j = 0; j < P.dim(); ++j) gens.push_back(act.col(j));
        }
        Subspace khP = Subspace::span(A.field(), P.dim(), gens);
        if (khP.dim() < P.dim()) rep.support.push_back(static_cast<int>(t));
        ghost = ghost.intersect(khP);
    }
    rep.ghost = ghost;
    rep.geometric = ghost.dim() == 0;
    rep.status = "ok";
    return rep;
}

FinModule induce_module(const AlgebraHom& H, const FinModule& Q) {
    std::vector<Mat> action;
    for (int i = 0; i < H.source->dim(); ++i) action.push_back(Q.act(H.m.col(i)));
    FinModule out(H.source, std::move(action), Q.name() + "*");
    out.validate();
    return out;
}

std::vector<SpecPoint> enumerate_spectrum(const QuotPres& A, const SpectrumBudget& budget) {
    const PolyAlgebra& B = A.base();
    if (!B.field.is_prime_field())
        throw input_error("spectrum enumeration is defined over prime fields; use check_point over Q");
    std::vector<SpecPoint> pts;
    for_each_candidate(B.field, static_cast<int>(B.vars.size()), budget.candidates, [&](const Vec& cand) {
        bool ok = true;
        for (const MPoly& r : A.relations())
            if (!r.eval(cand).is_zero()) { ok = false; break; }
        if (ok) pts.push_back(cand);
    });
    return pts;
}

std::vector<SpecPoint> enumerate_spectrum(const PolyAlgebra& A, const SpectrumBudget& budget) {
    return enumerate_spectrum(QuotPres(A, {}), budget);
}

std::optional<SpecPoint> check_point(const QuotPres& A, const Vec& values) {
    if (values.size() != A.base().vars.size())
        throw input_error("check_point arity mismatch: expected one value per variable");
    for (const MPoly& r : A.relations())
        if (!r.eval(values).is_zero()) return std::nullopt;
    return values;
}

std::vector<Vec> tangent_space(const QuotPres& A, const SpecPoint& h) {
    const PolyAlgebra& B = A.base();
    int v = static_cast<int>(B.vars.size());
    std::vector<Vec> rows;
    for (const MPoly& r : A.relations()) {
        Vec row;
        for (int i = 0; i < v; ++i) row.push_back(r.partial(i).eval(h));
        rows.push_back(row);
    }
    if (rows.empty()) {
        std::vector<Vec> basis;
        for (int i = 0; i < v; ++i) basis.push_back(unit_vec(B.field, v, i));
        return basis;
    }
    return kernel_basis(Mat::from_rows(B.field, rows, v));
}

Scalar tangent_eval(const MPoly& p, const SpecPoint& h, const Vec& xi) {
    Scalar r = Scalar::zero(p.field());
    for (int i = 0; i < p.nvars(); ++i) r += p.partial(i).eval(h) * xi[static_cast<size_t>(i)];
    return r;
}

PolyGhostReport ghosts(const PolyAlgebra& A, const std::vector<SpecPoint>& pts, int degree_bound) {
    PolyGhostReport rep;
    if (pts.empty()) {
        rep.status = "insufficient points";
        return rep;
    }
    // carrier: monomials of total degree <= degree_bound in graded-lex order
    std::vector<Exp> monos;
    {
        auto carrier = FinAlgebra::truncated_polynomial(A.field, A.vars, degree_bound);
        monos = carrier->monomial_basis();
    }
    Mat eval(A.field, static_cast<int>(pts.size()), static_cast<int>(monos.size()));
    for (size_t r = 0; r < pts.size(); ++r)
        for (size_t c = 0; c < monos.size(); ++c) {
            Scalar v = Scalar::one(A.field);
            for (size_t i = 0; i < monos[c].size(); ++i) v *= pts[r][i].pow(monos[c][i]);
            eval.at(static_cast<int>(r), static_cast<int>(c)) = v;
        }
    for (const Vec& k : kernel_basis(eval)) {
        MPoly g(A.field, A.vars);
        for (size_t c = 0; c < monos.size(); ++c) g.add_term(monos[c], k[c]);
        rep.ghost_basis.push_back(g);
    }
    rep.geometric = rep.ghost_basis.empty();
    rep.status = "ok";
    return rep;
}

PolySubstitution nilpotent_flow(const PolyAlgebra& A, const Vec& coeffs, const Scalar& t) {
    int v = static_cast<int>(A.vars.size());
    if (static_cast<int>(coeffs.size()) != v) throw input_error("one coefficient per variable required");
    // certify nilpotency of X = sum c_i d/dx_i on the truncated carrier
    auto carrier = FinAlgebra::truncated_polynomial(A.field, A.vars, A.trunc);
    const std::vector<Exp>& monos = carrier->monomial_basis();
    int N = static_cast<int>(monos.size());
    Mat X(A.field, N, N);
    auto index_of = [&](const Exp& e) {
        for (size_t i = 0; i < monos.size(); ++i)
            if (monos[i] == e) return static_cast<int>(i);
        return -1;
    };
    for (int c = 0; c < N; ++c) {
        for (int i = 0; i < v; ++i) {
            Exp e = monos[static_cast<size_t>(c)];
            if (e[static_cast<size_t>(i)] == 0) continue;
            Scalar coef = coeffs[static_cast<size_t>(i)] * Scalar(A.field, e[static_cast<size_t>(i)]);
            Exp e2 = e;
            e2[static_cast<size_t>(i)] -= 1;
            X.at(index_of(e2), c) += coef;
        }
    }
    Mat P = X;
    int m = 1;
    while (!P.is_zero() && m <= N + 1) {
        P = P * X;
        ++m;
    }
    if (!P.is_zero())
        throw input_error("derivation is not nilpotent on the truncated carrier within the bound");
    if (A.field.is_prime_field()) {
        Mat Pp = X.pow(A.field.p);
        if (!Pp.is_zero())
            throw input_error("prime-field flow requires X^p = 0; X^" + std::to_string(A.field.p) +
                              " does not vanish");
    }
    // substitution x_i -> x_i + t c_i, the divided-power exponential of X
    std::vector<MPoly> images;
    for (int i = 0; i < v; ++i)
        images.push_back(A.var(i) +
                         MPoly::constant(A.field, A.vars, 1) * (t * coeffs[static_cast<size_t>(i)]));
    return PolySubstitution{A, std::move(images)};
}

Mat nilpotent_flow(const FinAlgebra& A, const Mat& X, const Scalar& t) {
    int n = A.dim();
    // nilpotency by explicit powers
    Mat P = X;
    int m = 1;
    while (!P.is_zero() && m <= n + 1) {
        P = P * X;
        ++m;
    }
    if (!P.is_zero()) throw input_error("operator is not nilpotent within the dimension bound");
    long limit;
    if (A.field().is_prime_field()) {
        if (!X.pow(A.field().p).is_zero())
            throw input_error("prime-field flow requires X^p = 0 to avoid dividing by the characteristic");
        limit = A.field().p - 1;
    } else {
        limit = m;
    }
    Mat E = Mat::identity(A.field(), n);
    Mat Xi = Mat::identity(A.field(), n);
    Scalar ti = Scalar::one(A.field());
    for (long i = 1; i <= limit; ++i) {
        Xi = Xi * X;
        ti = ti * t;
        E = E + Xi * (ti / factorial_scalar(A.field(), i));
    }
    // certify multiplicativity
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Vec lhs = E.apply(A.basis_product(i, j));
            Vec rhs = A.mul(E.col(i), E.col(j));
            if (lhs != rhs)
                throw input_error("truncated exponential is not an algebra endomorphism (basis pair " +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
        }
    if (!(E.apply(A.unit()) == A.unit()))
        throw input_error("truncated exponential does not preserve the unit");
    return E;
}

}  // namespace diffalg
