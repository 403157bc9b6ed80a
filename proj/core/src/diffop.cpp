#include "diffalg/diffop.hpp"

namespace diffalg {

namespace {

/// delta_{e_i} as an operator on the flattened Hom_k(P,Q) space.
std::vector<Mat> big_deltas(const FinModule& P, const FinModule& Q) {
    FieldSpec f = P.algebra()->field();
    int n = P.algebra()->dim(), hd = P.dim() * Q.dim();
    std::vector<Mat> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Mat L(f, hd, hd);
        // column (r,s): vec of delta_{e_i}(E_rs) = E_rs actP(i) - actQ(i) E_rs
        for (int r = 0; r < Q.dim(); ++r)
            for (int s = 0; s < P.dim(); ++s) {
                int col = r * P.dim() + s;
                // E_rs actP(i): row r = row s of actP(i)
                for (int j = 0; j < P.dim(); ++j) {
                    Scalar v = P.action_basis(i).at(s, j);
                    if (!v.is_zero()) L.at(r * P.dim() + j, col) += v;
                }
                // actQ(i) E_rs: column s = column r of actQ(i)
                for (int q = 0; q < Q.dim(); ++q) {
                    Scalar v = Q.action_basis(i).at(q, r);
                    if (!v.is_zero()) L.at(q * P.dim() + s, col) -= v;
                }
            }
        out.push_back(std::move(L));
    }
    return out;
}

void multiset_products(const std::vector<Mat>& gens, int len, size_t start, const Mat& acc,
                       std::vector<Mat>& out) {
    if (len == 0) {
        out.push_back(acc);
        return;
    }
    for (size_t i = start; i < gens.size(); ++i)
        multiset_products(gens, len - 1, i, acc * gens[i], out);
}

}  // namespace

Mat delta(const FinModule& P, const FinModule& Q, const Vec& a, const Mat& op) {
    return op * P.act(a) - Q.act(a) * op;
}

int certified_order(const FinModule& P, const FinModule& Q, const Mat& op, int max_order) {
    const FinAlgebra& A = *P.algebra();
    for (int k = 0; k <= max_order; ++k) {
        // check all (k+1)-multisets of basis deltas annihilate op
        bool ok = true;
        std::vector<int> idx(static_cast<size_t>(k + 1), 0);
        int n = A.dim();
        while (ok) {
            Mat cur = op;
            for (int t = k; t >= 0; --t)
                cur = delta(P, Q, unit_vec(A.field(), n, idx[static_cast<size_t>(t)]), cur);
            if (!cur.is_zero()) ok = false;
            // next non-decreasing tuple
            int i = k;
            while (i >= 0 && idx[static_cast<size_t>(i)] == n - 1) --i;
            if (i < 0) break;
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j <= k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(i)];
        }
        if (ok) return k;
    }
    return -1;
}

DiffSpace DiffSpace::compute(const FinModule& P, const FinModule& Q, int k) {
    if (P.algebra() != Q.algebra())
        throw input_error("Df_k(P,Q) requires modules over one algebra instance");
    DiffSpace out;
    out.P_ = P;
    out.Q_ = Q;
    out.k_ = k;
    FieldSpec f = P.algebra()->field();
    int hd = P.dim() * Q.dim();
    if (hd == 0) {
        out.sub_ = Subspace(f, 0);
        return out;
    }
    std::vector<Mat> L = big_deltas(P, Q);
    std::vector<Mat> conds;
    multiset_products(L, k + 1, 0, Mat::identity(f, hd), conds);
    std::vector<Vec> rows;
    for (const Mat& c : conds)
        for (int r = 0; r < hd; ++r) rows.push_back(c.row(r));
    std::vector<Vec> ker = kernel_basis(Mat::from_rows(f, rows, hd));
    out.sub_ = Subspace::span(f, hd, ker);
    for (const Vec& v : out.sub_.basis()) out.ops_.push_back(Mat::unflatten(f, v, Q.dim(), P.dim()));
    return out;
}

Vec DiffSpace::coords_of(const Mat& op) const {
    auto c = sub_.coordinates(op.flatten());
    if (!c) throw invariant_error("operator lies outside the computed Df_" + std::to_string(k_) + " space");
    return *c;
}

Mat DiffSpace::op_of(const Vec& coords) const {
    FieldSpec f = P_.algebra()->field();
    Mat m(f, Q_.dim(), P_.dim());
    for (size_t i = 0; i < ops_.size(); ++i)
        if (!coords[i].is_zero()) m = m + ops_[i] * coords[i];
    return m;
}

FinModule DiffSpace::as_module(Side s) const {
    const FinAlgebra& A = *P_.algebra();
    std::vector<Mat> action;
    for (int i = 0; i < A.dim(); ++i) {
        std::vector<Vec> cols;
        for (const Mat& b : ops_) {
            Mat moved = (s == Side::left) ? Q_.action_basis(i) * b : b * P_.action_basis(i);
            cols.push_back(coords_of(moved));
        }
        action.push_back(Mat::from_cols(A.field(), cols, dim()));
    }
    std::string tag = s == Side::left ? "<" : ">";
    return FinModule(P_.algebra(), std::move(action),
                     "Df_" + std::to_string(k_) + tag + "(" + P_.name() + "," + Q_.name() + ")");
}

DiffOp compose(const DiffOp& outer, const DiffOp& inner) {
    if (outer.m.cols() != inner.m.rows()) throw input_error("composition shape mismatch");
    DiffOp r{inner.P, outer.Q, outer.m * inner.m, outer.order + inner.order};
    int sharp = certified_order(r.P, r.Q, r.m, r.order);
    if (sharp < 0) throw invariant_error("composition failed its order certificate");
    r.order = sharp;
    return r;
}

int stabilization_order(const FinModule& P, const FinModule& Q) {
    int bound = P.dim() * Q.dim() + 1;
    int prev = DiffSpace::compute(P, Q, 0).dim();
    for (int k = 1; k <= bound; ++k) {
        int cur = DiffSpace::compute(P, Q, k).dim();
        if (cur == prev) return k - 1;
        prev = cur;
    }
    throw invariant_error("Df filtration failed to stabilize within the dimension bound");
}

std::vector<Mat> module_hom_basis(const FinModule& P, const FinModule& Q) {
    FieldSpec f = P.algebra()->field();
    int hd = P.dim() * Q.dim();
    if (hd == 0) return {};
    const FinAlgebra& A = *P.algebra();
    std::vector<Vec> rows;
    for (int i = 0; i < A.dim(); ++i) {
        // M actP(i) - actQ(i) M = 0
        for (int r = 0; r < Q.dim(); ++r)
            for (int s = 0; s < P.dim(); ++s) {
                Vec row = zero_vec(f, hd);
                for (int j = 0; j < P.dim(); ++j) row[static_cast<size_t>(r * P.dim() + j)] += P.action_basis(i).at(j, s);
                for (int q = 0; q < Q.dim(); ++q) row[static_cast<size_t>(q * P.dim() + s)] -= Q.action_basis(i).at(r, q);
                rows.push_back(row);
            }
    }
    std::vector<Mat> out;
    Subspace sp = Subspace::span(f, hd, kernel_basis(Mat::from_rows(f, rows, hd)));
    for (const Vec& v : sp.basis()) out.push_back(Mat::unflatten(f, v, Q.dim(), P.dim()));
    return out;
}

Mat eval_at_unit(const DiffSpace& dfkQ) {
    FieldSpec f = dfkQ.source().algebra()->field();
    std::vector<Vec> cols;
    for (const Mat& b : dfkQ.basis()) cols.push_back(b.apply(dfkQ.source().algebra()->unit()));
    return Mat::from_cols(f, cols, dfkQ.target().dim());
}

Mat co_jet(const DiffOp& D, const DiffSpace& dfkQ) {
    const FinAlgebra& A = *D.P.algebra();
    FieldSpec f = A.field();
    std::vector<Vec> cols;
    for (int s = 0; s < D.P.dim(); ++s) {
        // the operator a -> D(a p_s) : A -> Q
        std::vector<Vec> op_cols;
        for (int i = 0; i < A.dim(); ++i)
            op_cols.push_back(D.m.apply(D.P.action_basis(i).col(s)));
        Mat op = Mat::from_cols(f, op_cols, D.Q.dim());
        cols.push_back(dfkQ.coords_of(op));
    }
    return Mat::from_cols(f, cols, dfkQ.dim());
}

Mat composition_map(const DiffSpace& dflOfDfk, const DiffSpace& dfkQ, const DiffSpace& dfklQ) {
    // c(N)(a) = (N(a))(1): N in Df_l(A, M) with M the module of dfkQ coords
    const FinAlgebra& A = *dfkQ.source().algebra();
    FieldSpec f = A.field();
    std::vector<Vec> cols;
    for (const Mat& n : dflOfDfk.basis()) {
        // n: A -> coords(Df_k Q); build the operator a -> (op at n(a))(1)
        std::vector<Vec> op_cols;
        for (int i = 0; i < A.dim(); ++i) {
            Vec coords = n.col(i);
            Mat inner = dfkQ.op_of(coords);
            op_cols.push_back(inner.apply(A.unit()));
        }
        Mat op = Mat::from_cols(f, op_cols, dfkQ.target().dim());
        cols.push_back(dfklQ.coords_of(op));
    }
    return Mat::from_cols(f, cols, dfklQ.dim());
}

ProlongationReport prolongation_check(const DiffOp& D, int l) {
    ProlongationReport rep;
    const FinAlgebra& A = *D.P.algebra();
    AlgebraPtr Aptr = D.P.algebra();
    FieldSpec f = A.field();
    FinModule regA = FinModule::regular(Aptr);
    int k = D.order;

    DiffSpace dfkQ = DiffSpace::compute(regA, D.Q, k);
    Mat h = co_jet(D, dfkQ);

    // triangle RusD: D_k^> . h^D = D
    rep.triangle_ok = (eval_at_unit(dfkQ) * h) == D.m;

    // co-representation: dim Df_k(P,Q) = dim Hom_A(P, Df_k^> Q)
    DiffSpace dfkPQ = DiffSpace::compute(D.P, D.Q, k);
    FinModule dfkQ_right = dfkQ.as_module(Side::right);
    rep.dim_diff = dfkPQ.dim();
    rep.dim_hom = static_cast<int>(module_hom_basis(D.P, dfkQ_right).size());
    rep.iso_ok = rep.dim_diff == rep.dim_hom;

    // spaces for the prolongation diagrams
    DiffSpace dflP = DiffSpace::compute(regA, D.P, l);
    FinModule dflP_right = dflP.as_module(Side::right);
    DiffSpace dfklQ = DiffSpace::compute(regA, D.Q, k + l);
    DiffSpace dflOfDfk = DiffSpace::compute(regA, dfkQ_right, l);

    // h^{D_(l)} : Df_l^> P -> Df_{k+l}^> Q, p' -> D . p'
    std::vector<Vec> cols;
    for (const Mat& p : dflP.basis()) cols.push_back(dfklQ.coords_of(D.m * p));
    Mat h_Dl = Mat::from_cols(f, cols, dfklQ.dim());

    // h^D_l : Df_l^> P -> Df_l^>(Df_k^> Q), p' -> h^D . p'
    cols.clear();
    for (const Mat& p : dflP.basis()) cols.push_back(dflOfDfk.coords_of(h * p));
    Mat h_D_l = Mat::from_cols(f, cols, dflOfDfk.dim());

    Mat evl_P = eval_at_unit(dflP);                    // Df_l^> P -> P
    Mat evl_inner = eval_at_unit(dflOfDfk);            // Df_l^>(Df_k^>Q) -> coords(Df_k Q)
    Mat evk = eval_at_unit(dfkQ);                      // Df_k^> Q -> Q
    Mat evkl = eval_at_unit(dfklQ);                    // Df_{k+l}^> Q -> Q
    Mat c_lk = composition_map(dflOfDfk, dfkQ, dfklQ); // Df_l^>(Df_k^>Q) -> Df_{k+l}^>Q

    // (h-pro): D_l^> . h^D_l = h^D . D_l^>, and D_k^> . (that) = D
    rep.h_pro_ok = (evl_inner * h_D_l) == (h * evl_P);

    // (d-l): D_{k+l}^> . h^{D_(l)} = D . D_l^>
    rep.d_l_ok = (evkl * h_Dl) == (D.m * evl_P);

    // (comp): D_{k+l}^> . c_{l,k} = D_k^> . D_l^> (evaluation through coords)
    {
        std::vector<Vec> lhs_cols, rhs_cols;
        for (int j = 0; j < dflOfDfk.dim(); ++j) {
            Vec coords = unit_vec(f, dflOfDfk.dim(), j);
            lhs_cols.push_back(evkl.apply(c_lk.col(j)));
            Vec inner_coords = evl_inner.apply(coords);
            rhs_cols.push_back(evk.apply(inner_coords));
        }
        rep.comp_ok = Mat::from_cols(f, lhs_cols, D.Q.dim()) == Mat::from_cols(f, rhs_cols, D.Q.dim());
    }

    // (h): c_{l,k} . h^D_l = h^{D_(l)}
    rep.h_ok = (c_lk * h_D_l) == h_Dl;
    return rep;
}

}  // namespace diffalg
