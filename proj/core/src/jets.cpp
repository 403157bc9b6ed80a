#include "diffalg/jets.hpp"

namespace diffalg {

namespace {

/// delta^{e_i} on the flattened A tensor P space: a' tensor p -> a' tensor
/// e_i p - e_i a' tensor p.
Mat tensor_delta(const FinAlgebra& A, const FinModule& P, int i) {
    FieldSpec f = A.field();
    int n = A.dim(), m = P.dim();
    Mat D(f, n * m, n * m);
    for (int a = 0; a < n; ++a)
        for (int s = 0; s < m; ++s) {
            int col = a * m + s;
            // a tensor e_i p_s
            Vec ip = P.action_basis(i).col(s);
            for (int t = 0; t < m; ++t)
                if (!ip[static_cast<size_t>(t)].is_zero()) D.at(a * m + t, col) += ip[static_cast<size_t>(t)];
            // - (e_i e_a) tensor p_s
            Vec ia = A.basis_product(i, a);
            for (int b = 0; b < n; ++b)
                if (!ia[static_cast<size_t>(b)].is_zero()) D.at(b * m + s, col) -= ia[static_cast<size_t>(b)];
        }
    return D;
}

void mu_products(const std::vector<Mat>& deltas, int len, size_t start, const Mat& acc,
                 std::vector<Mat>& out) {
    if (len == 0) {
        out.push_back(acc);
        return;
    }
    for (size_t i = start; i < deltas.size(); ++i)
        mu_products(deltas, len - 1, i, acc * deltas[i], out);
}

}  // namespace

JetModule JetModule::compute(const FinModule& P, int k, long dim_budget) {
    const FinAlgebra& A = *P.algebra();
    FieldSpec f = A.field();
    int n = A.dim(), m = P.dim();
    if (static_cast<long>(n) * m > dim_budget)
        throw budget_error("jet carrier dimension " + std::to_string(n * m) + " exceeds the budget");

    std::vector<Mat> deltas;
    for (int i = 0; i < n; ++i) deltas.push_back(tensor_delta(A, P, i));
    std::vector<Mat> prods;
    mu_products(deltas, k + 1, 0, Mat::identity(f, n * m), prods);

    std::vector<Vec> gens;
    for (const Mat& pr : prods)
        for (int c = 0; c < n * m; ++c) gens.push_back(pr.col(c));
    Subspace mu = Subspace::span(f, n * m, gens);

    JetModule out;
    out.P_ = P;
    out.k_ = k;
    out.quot_ = Quotient(mu);

    // A-action on the quotient: a (a' tensor p) = (a a') tensor p
    std::vector<Mat> action;
    for (int i = 0; i < n; ++i) {
        Mat big(f, n * m, n * m);
        for (int a = 0; a < n; ++a) {
            Vec ia = A.basis_product(i, a);
            for (int s = 0; s < m; ++s)
                for (int b = 0; b < n; ++b)
                    if (!ia[static_cast<size_t>(b)].is_zero()) big.at(b * m + s, a * m + s) += ia[static_cast<size_t>(b)];
        }
        // descend to quotient coordinates
        std::vector<Vec> cols;
        for (int c = 0; c < out.quot_.dim(); ++c) {
            Vec amb = out.quot_.lift(unit_vec(f, out.quot_.dim(), c));
            cols.push_back(out.quot_.project(big.apply(amb)));
        }
        action.push_back(Mat::from_cols(f, cols, out.quot_.dim()));
    }
    out.mod_ = FinModule(P.algebra(), std::move(action), "J^" + std::to_string(k) + "(" + P.name() + ")");
    out.mod_.validate();

    // j_k(p) = class of 1 tensor p
    std::vector<Vec> jk_cols;
    for (int s = 0; s < m; ++s) {
        Vec amb = zero_vec(f, n * m);
        for (int i = 0; i < n; ++i) amb[static_cast<size_t>(i * m + s)] = A.unit()[static_cast<size_t>(i)];
        jk_cols.push_back(out.quot_.project(amb));
    }
    out.jk_ = Mat::from_cols(f, jk_cols, out.quot_.dim());
    return out;
}

Vec JetModule::tensor_class(int i, int s) const {
    FieldSpec f = P_.algebra()->field();
    Vec amb = zero_vec(f, P_.algebra()->dim() * P_.dim());
    amb[static_cast<size_t>(i * P_.dim() + s)] = Scalar::one(f);
    return quot_.project(amb);
}

Mat JetModule::projection(const JetModule& from, const JetModule& to) {
    if (from.k_ < to.k_) throw input_error("jet projection goes to lower order");
    FieldSpec f = from.P_.algebra()->field();
    std::vector<Vec> cols;
    for (int c = 0; c < from.dim(); ++c)
        cols.push_back(to.quot_.project(from.quot_.lift(unit_vec(f, from.dim(), c))));
    return Mat::from_cols(f, cols, to.dim());
}

Mat jet_representative(const JetModule& jet, const Mat& D, const FinModule& Q) {
    const FinModule& P = jet.base();
    const FinAlgebra& A = *P.algebra();
    FieldSpec f = A.field();
    int n = A.dim(), m = P.dim();
    // raw map A tensor P -> Q: a tensor p -> a D(p)
    Mat raw(f, Q.dim(), n * m);
    for (int a = 0; a < n; ++a)
        for (int s = 0; s < m; ++s) {
            Vec v = Q.act(unit_vec(f, n, a)).apply(D.apply(unit_vec(f, m, s)));
            for (int r = 0; r < Q.dim(); ++r) raw.at(r, a * m + s) = v[static_cast<size_t>(r)];
        }
    // must kill mu_{k+1}
    for (const Vec& g : jet.quotient().denominator().basis())
        if (!is_zero(raw.apply(g)))
            throw invariant_error("operator image does not kill mu_{k+1}: not order <= " +
                                  std::to_string(jet.order()));
    // descend through canonical lifts
    std::vector<Vec> cols;
    for (int c = 0; c < jet.dim(); ++c)
        cols.push_back(raw.apply(jet.quotient().lift(unit_vec(f, jet.dim(), c))));
    return Mat::from_cols(f, cols, Q.dim());
}

int jet_tensor_dim(const FinModule& P, int k) {
    const FinAlgebra& A = *P.algebra();
    FieldSpec f = A.field();
    JetModule jetA = JetModule::compute(FinModule::regular(P.algebra()), k);
    // (J^k(A) tensor_k P) / span{ a u tensor p - u tensor a p } with the
    // >-structure of J^k(A) carrying the tensor side
    int J = jetA.dim(), m = P.dim();
    std::vector<Vec> rels;
    for (int i = 0; i < A.dim(); ++i) {
        const Mat& actJ = jetA.as_module().action_basis(i);
        const Mat& actP = P.action_basis(i);
        for (int u = 0; u < J; ++u)
            for (int s = 0; s < m; ++s) {
                Vec rel = zero_vec(f, J * m);
                Vec au = actJ.col(u);
                for (int v = 0; v < J; ++v)
                    if (!au[static_cast<size_t>(v)].is_zero()) rel[static_cast<size_t>(v * m + s)] += au[static_cast<size_t>(v)];
                Vec ap = actP.col(s);
                for (int t = 0; t < m; ++t)
                    if (!ap[static_cast<size_t>(t)].is_zero()) rel[static_cast<size_t>(u * m + t)] -= ap[static_cast<size_t>(t)];
                rels.push_back(rel);
            }
    }
    Subspace R = Subspace::span(f, J * m, rels);
    return J * m - R.dim();
}

JetDualityReport jet_duality_check(const FinModule& P, const FinModule& Q, int k) {
    JetDualityReport rep;
    JetModule jet = JetModule::compute(P, k);
    rep.dim_jet = jet.dim();
    DiffSpace dfk = DiffSpace::compute(P, Q, k);
    rep.dim_diff = dfk.dim();
    rep.dim_hom = static_cast<int>(module_hom_basis(jet.as_module(), Q).size());
    rep.dim_tensor = jet_tensor_dim(P, k);
    rep.tensor_identity_ok = rep.dim_tensor == rep.dim_jet;

    rep.universal_ok = true;
    rep.iso_ok = rep.dim_diff == rep.dim_hom;
    for (const Mat& D : dfk.basis()) {
        Mat h = jet_representative(jet, D, Q);
        if (!((h * jet.jet_operator()) == D)) rep.universal_ok = false;
        // inverse route: phi -> phi . j_k reproduces D
        Mat back = h * jet.jet_operator();
        if (!(back == D)) rep.iso_ok = false;
    }
    return rep;
}

MultiplicativeStructure multiplicative_structure(const FinModule& P, int k) {
    MultiplicativeStructure out;
    const FinAlgebra& A = *P.algebra();
    FieldSpec f = A.field();
    int n = A.dim(), m = P.dim();
    FinModule regA = FinModule::regular(P.algebra());
    JetModule jetA = JetModule::compute(regA, k);
    JetModule jetP = JetModule::compute(P, k);

    // pairing on classes: [a' tensor a] . [b' tensor p] := [a'b' tensor ap],
    // well-definedness certified against both mu subspaces
    FieldSpec field = f;
    auto pair_ambient = [&](int a1, int a2, int b1, int s) {
        // (e_{a1} tensor e_{a2}) . (e_{b1} tensor p_s)
        Vec prod = A.basis_product(a1, b1);
        Vec ap = P.action_basis(a2).col(s);
        Vec amb = zero_vec(field, n * m);
        for (int b = 0; b < n; ++b)
            for (int t = 0; t < m; ++t) {
                Scalar c = prod[static_cast<size_t>(b)] * ap[static_cast<size_t>(t)];
                if (!c.is_zero()) amb[static_cast<size_t>(b * m + t)] += c;
            }
        return amb;  // element of A tensor P, to be classed into J^k(P)
    };

    // well-definedness: mu_{k+1}(A tensor A) generators paired with any
    // generator of A tensor P land in mu_{k+1}(A tensor P), and vice versa
    auto pair_raw = [&](const Vec& uamb, const Vec& vamb) {
        Vec result = zero_vec(f, n * m);
        for (int a1 = 0; a1 < n; ++a1)
            for (int a2 = 0; a2 < n; ++a2) {
                Scalar cu = uamb[static_cast<size_t>(a1 * n + a2)];
                if (cu.is_zero()) continue;
                for (int b1 = 0; b1 < n; ++b1)
                    for (int s = 0; s < m; ++s) {
                        Scalar cv = vamb[static_cast<size_t>(b1 * m + s)];
                        if (cv.is_zero()) continue;
                        result = add(result, scale(cu * cv, pair_ambient(a1, a2, b1, s)));
                    }
            }
        return result;
    };
    for (const Vec& g : jetA.quotient().denominator().basis())
        for (int b1 = 0; b1 < n; ++b1)
            for (int s = 0; s < m; ++s) {
                Vec e = zero_vec(f, n * m);
                e[static_cast<size_t>(b1 * m + s)] = Scalar::one(f);
                if (!is_zero(jetP.quotient().project(pair_raw(g, e))))
                    throw invariant_error("jet pairing does not kill mu_{k+1} on the left");
            }
    for (const Vec& h : jetP.quotient().denominator().basis())
        for (int a1 = 0; a1 < n; ++a1)
            for (int a2 = 0; a2 < n; ++a2) {
                Vec e = zero_vec(f, n * n);
                e[static_cast<size_t>(a1 * n + a2)] = Scalar::one(f);
                if (!is_zero(jetP.quotient().project(pair_raw(e, h))))
                    throw invariant_error("jet pairing does not kill mu_{k+1} on the right");
            }

    out.report.identity_ok = true;
    std::vector<Mat> pair_mats;
    for (int c = 0; c < jetA.dim(); ++c) {
        Vec uamb = jetA.quotient().lift(unit_vec(f, jetA.dim(), c));
        Mat action(f, jetP.dim(), jetP.dim());
        for (int d = 0; d < jetP.dim(); ++d) {
            Vec vamb = jetP.quotient().lift(unit_vec(f, jetP.dim(), d));
            Vec result = zero_vec(f, n * m);
            for (int a1 = 0; a1 < n; ++a1)
                for (int a2 = 0; a2 < n; ++a2) {
                    Scalar cu = uamb[static_cast<size_t>(a1 * n + a2)];
                    if (cu.is_zero()) continue;
                    for (int b1 = 0; b1 < n; ++b1)
                        for (int s = 0; s < m; ++s) {
                            Scalar cv = vamb[static_cast<size_t>(b1 * m + s)];
                            if (cv.is_zero()) continue;
                            result = add(result, scale(cu * cv, pair_ambient(a1, a2, b1, s)));
                        }
                }
            Vec cls = jetP.quotient().project(result);
            for (int r = 0; r < jetP.dim(); ++r) action.at(r, d) = cls[static_cast<size_t>(r)];
        }
        pair_mats.push_back(action);
    }
    out.pair = pair_mats;

    // j_k(a) j_k(p) = j_k(ap) on all basis pairs
    for (int i = 0; i < n && out.report.identity_ok; ++i)
        for (int s = 0; s < m; ++s) {
            Vec ja = jetA.jet_operator().apply(unit_vec(f, n, i));
            Vec jp = jetP.jet_operator().apply(unit_vec(f, m, s));
            Vec lhs = zero_vec(f, jetP.dim());
            for (int c = 0; c < jetA.dim(); ++c)
                if (!ja[static_cast<size_t>(c)].is_zero())
                    lhs = add(lhs, scale(ja[static_cast<size_t>(c)], pair_mats[static_cast<size_t>(c)].apply(jp)));
            Vec rhs = jetP.jet_operator().apply(P.action_basis(i).col(s));
            if (!(lhs == rhs)) out.report.identity_ok = false;
        }

    // for P = A: associativity and commutativity of the induced product
    if (m == n) {
        out.report.assoc_ok = true;
        out.report.comm_ok = true;
        auto mulJ = [&](const Vec& u, const Vec& v) {
            Vec r = zero_vec(f, jetP.dim());
            for (int c = 0; c < jetA.dim(); ++c)
                if (!u[static_cast<size_t>(c)].is_zero())
                    r = add(r, scale(u[static_cast<size_t>(c)], pair_mats[static_cast<size_t>(c)].apply(v)));
            return r;
        };
        for (int a = 0; a < jetA.dim(); ++a)
            for (int b = 0; b < jetA.dim(); ++b) {
                Vec ua = unit_vec(f, jetA.dim(), a), ub = unit_vec(f, jetA.dim(), b);
                if (!(mulJ(ua, ub) == mulJ(ub, ua))) out.report.comm_ok = false;
                for (int c = 0; c < jetA.dim(); ++c) {
                    Vec uc = unit_vec(f, jetA.dim(), c);
                    if (!(mulJ(mulJ(ua, ub), uc) == mulJ(ua, mulJ(ub, uc)))) out.report.assoc_ok = false;
                }
            }
    }
    return out;
}

}  // namespace diffalg
