#include "diffalg/forms.hpp"

#include "diffalg/dfunctors.hpp"

namespace diffalg {

namespace {

size_t ipow(size_t b, int e) {
    size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/// Columns of the map from free monomial coordinates (b, t_1..t_k) to
/// Lambda^k classes, built from the previous degree's columns.
struct DegreeData {
    Quotient quot;            // of the balanced-and-alternating relations
    std::vector<Vec> mono;    // class of each exact monomial, indexed row-major
    FinModule mod;
};

}  // namespace

FormAlgebra FormAlgebra::compute(AlgebraPtr Aptr, int top_degree) {
    const FinAlgebra& A = *Aptr;
    FieldSpec f = A.field();
    int n = A.dim();

    FormAlgebra out;
    out.A_ = Aptr;

    // degree 0: Lambda^0 = A
    out.dims_.push_back(n);
    out.mods_.push_back(FinModule::regular(Aptr));
    out.mono_maps_.push_back(Mat::identity(f, n));

    // J^1(A) and Lambda^1 = ker pi_{1,0}
    FinModule regA = FinModule::regular(Aptr);
    JetModule j1 = JetModule::compute(regA, 1);
    JetModule j0 = JetModule::compute(regA, 0);
    Mat pi10 = JetModule::projection(j1, j0);
    std::vector<Vec> lam1_basis = kernel_basis(pi10);
    Subspace lam1 = Subspace::span(f, j1.dim(), lam1_basis);

    // d e_t = j_1(e_t) - e_t j_1(1), in Lambda^1 (as J^1 coordinates)
    std::vector<Vec> de(static_cast<size_t>(n));
    {
        Vec j1_unit = j1.jet_operator().apply(A.unit());
        for (int t = 0; t < n; ++t) {
            Vec v = j1.jet_operator().apply(unit_vec(f, n, t));
            Vec et_j1 = j1.as_module().act(unit_vec(f, n, t)).apply(j1_unit);
            de[static_cast<size_t>(t)] = sub(v, et_j1);
        }
    }
    // Lambda^1 in its own coordinates: the subspace basis of lam1
    int l1 = lam1.dim();
    auto lam1_coords = [&](const Vec& j1vec) {
        auto c = lam1.coordinates(j1vec);
        if (!c) throw invariant_error("vector expected in Lambda^1 is outside");
        return *c;
    };
    // monomials of degree 1: e_b . de_t
    std::vector<Vec> mono1(static_cast<size_t>(n) * n);
    for (int b = 0; b < n; ++b)
        for (int t = 0; t < n; ++t) {
            Vec v = j1.as_module().act(unit_vec(f, n, b)).apply(de[static_cast<size_t>(t)]);
            mono1[static_cast<size_t>(b * n + t)] = lam1_coords(v);
        }
    {
        // surjectivity of the exact monomials onto Lambda^1
        Subspace span1 = Subspace::span(f, l1, mono1);
        if (span1.dim() != l1)
            throw invariant_error("exact monomials fail to span Lambda^1");
        out.dims_.push_back(l1);
        std::vector<Mat> act;
        for (int i = 0; i < n; ++i) {
            std::vector<Vec> cols;
            for (const Vec& bb : lam1.basis())
                cols.push_back(lam1_coords(j1.as_module().act(unit_vec(f, n, i)).apply(bb)));
            act.push_back(Mat::from_cols(f, cols, l1));
        }
        out.mods_.push_back(FinModule(Aptr, std::move(act), "Lambda^1"));
        out.mono_maps_.push_back(Mat::from_cols(f, mono1, l1));
    }

    // higher degrees: W_k = A tensor V^k (V = Lambda^1 coordinates) modulo
    // balancing (move algebra coefficients between adjacent slots) and
    // alternating relations (x tensor x and x tensor y + y tensor x adjacent)
    std::vector<std::vector<Vec>> slot_action;  // action of e_i on Lambda^1 basis
    for (int k = 2; out.dims_.back() > 0 && k <= top_degree; ++k) {
        size_t W = static_cast<size_t>(n) * ipow(static_cast<size_t>(l1), k);
        auto idx = [&](int b, const std::vector<int>& ts) {
            size_t r = static_cast<size_t>(b);
            for (int t : ts) r = r * static_cast<size_t>(l1) + static_cast<size_t>(t);
            return r;
        };
        std::vector<Vec> rels;
        const FinModule& L1 = out.mods_[1];
        // enumerate tuples
        std::vector<int> ts(static_cast<size_t>(k), 0);
        auto next_tuple = [&](std::vector<int>& v, int bound) {
            int i = static_cast<int>(v.size()) - 1;
            while (i >= 0) {
                if (++v[static_cast<size_t>(i)] < bound) return true;
                v[static_cast<size_t>(i)] = 0;
                --i;
            }
            return false;
        };
        // balancing: (e_i e_b) tensor v... == e_b tensor (e_i v_1)...,
        // and within adjacent V-slots: (e_i v_s) vs (e_i v_{s+1})
        do {
            for (int b = 0; b < n; ++b)
                for (int i = 0; i < n; ++i) {
                    // slot 0: A against first V factor
                    Vec rel = zero_vec(f, static_cast<int>(W));
                    Vec ib = A.basis_product(i, b);
                    for (int c = 0; c < n; ++c)
                        if (!ib[static_cast<size_t>(c)].is_zero())
                            rel[idx(c, ts)] += ib[static_cast<size_t>(c)];
                    Vec iv = L1.action_basis(i).col(ts[0]);
                    for (int w = 0; w < l1; ++w)
                        if (!iv[static_cast<size_t>(w)].is_zero()) {
                            std::vector<int> ts2 = ts;
                            ts2[0] = w;
                            rel[idx(b, ts2)] -= iv[static_cast<size_t>(w)];
                        }
                    rels.push_back(rel);
                    // adjacent V slots
                    for (int s = 0; s + 1 < k; ++s) {
                        Vec rel2 = zero_vec(f, static_cast<int>(W));
                        Vec ivs = L1.action_basis(i).col(ts[static_cast<size_t>(s)]);
                        for (int w = 0; w < l1; ++w)
                            if (!ivs[static_cast<size_t>(w)].is_zero()) {
                                std::vector<int> ts2 = ts;
                                ts2[static_cast<size_t>(s)] = w;
                                rel2[idx(b, ts2)] += ivs[static_cast<size_t>(w)];
                            }
                        Vec ivs1 = L1.action_basis(i).col(ts[static_cast<size_t>(s + 1)]);
                        for (int w = 0; w < l1; ++w)
                            if (!ivs1[static_cast<size_t>(w)].is_zero()) {
                                std::vector<int> ts2 = ts;
                                ts2[static_cast<size_t>(s + 1)] = w;
                                rel2[idx(b, ts2)] -= ivs1[static_cast<size_t>(w)];
                            }
                        rels.push_back(rel2);
                    }
                    // alternating relations at each adjacent position
                    for (int s = 0; s + 1 < k; ++s) {
                        if (ts[static_cast<size_t>(s)] == ts[static_cast<size_t>(s + 1)]) {
                            Vec rel3 = zero_vec(f, static_cast<int>(W));
                            rel3[idx(b, ts)] = Scalar::one(f);
                            rels.push_back(rel3);
                        } else {
                            Vec rel3 = zero_vec(f, static_cast<int>(W));
                            rel3[idx(b, ts)] += Scalar::one(f);
                            std::vector<int> ts2 = ts;
                            std::swap(ts2[static_cast<size_t>(s)], ts2[static_cast<size_t>(s + 1)]);
                            rel3[idx(b, ts2)] += Scalar::one(f);
                            rels.push_back(rel3);
                        }
                    }
                }
        } while (next_tuple(ts, l1));

        Quotient q(Subspace::span(f, static_cast<int>(W), rels));
        int dk = q.dim();
        out.dims_.push_back(dk);
        if (dk == 0) {
            out.mods_.push_back(FinModule::zero(Aptr));
            out.mono_maps_.push_back(Mat(f, 0, static_cast<int>(ipow(static_cast<size_t>(n), k + 1))));
            break;
        }
        // module action: a (b tensor v...) = (ab) tensor v...
        std::vector<Mat> act;
        for (int i = 0; i < n; ++i) {
            std::vector<Vec> cols;
            for (int c = 0; c < dk; ++c) {
                Vec amb = q.lift(unit_vec(f, dk, c));
                Vec moved = zero_vec(f, static_cast<int>(W));
                // apply multiplication on the A slot
                std::vector<int> tup(static_cast<size_t>(k), 0);
                do {
                    for (int b = 0; b < n; ++b) {
                        Scalar cv = amb[idx(b, tup)];
                        if (cv.is_zero()) continue;
                        Vec ib = A.basis_product(i, b);
                        for (int c2 = 0; c2 < n; ++c2)
                            if (!ib[static_cast<size_t>(c2)].is_zero())
                                moved[idx(c2, tup)] += cv * ib[static_cast<size_t>(c2)];
                    }
                } while (next_tuple(tup, l1));
                cols.push_back(q.project(moved));
            }
            act.push_back(Mat::from_cols(f, cols, dk));
        }
        out.mods_.push_back(FinModule(Aptr, std::move(act), "Lambda^" + std::to_string(k)));

        // exact monomial classes: e_b de_{t_1} ... de_{t_k}: expand each de_t
        // through Lambda^1 coordinates into the W space
        size_t M = ipow(static_cast<size_t>(n), k + 1);
        std::vector<Vec> mono_cols(M);
        std::vector<int> sel(static_cast<size_t>(k), 0);
        std::vector<Vec> de1(static_cast<size_t>(n));
        for (int t = 0; t < n; ++t) de1[static_cast<size_t>(t)] = lam1_coords(de[static_cast<size_t>(t)]);
        size_t mi = 0;
        for (int b = 0; b < n; ++b) {
            std::fill(sel.begin(), sel.end(), 0);
            bool more = true;
            while (more) {
                Vec amb = zero_vec(f, static_cast<int>(W));
                // product over slots of de1[sel[s]] coordinates
                std::vector<int> tup(static_cast<size_t>(k), 0);
                do {
                    Scalar c = Scalar::one(f);
                    for (int s = 0; s < k; ++s) {
                        c *= de1[static_cast<size_t>(sel[static_cast<size_t>(s)])]
                                [static_cast<size_t>(tup[static_cast<size_t>(s)])];
                        if (c.is_zero()) break;
                    }
                    if (!c.is_zero()) amb[idx(b, tup)] += c;
                } while (next_tuple(tup, l1));
                mono_cols[mi++] = q.project(amb);
                more = next_tuple(sel, n);
            }
        }
        out.mono_maps_.push_back(Mat::from_cols(f, mono_cols, dk));
        // surjectivity of exact monomials
        Subspace span_k = Subspace::span(f, dk, mono_cols);
        if (span_k.dim() != dk)
            throw invariant_error("exact monomials fail to span Lambda^" + std::to_string(k));
    }
    if (static_cast<int>(out.dims_.size()) - 1 < top_degree && out.dims_.back() != 0) {
        // loop ended because k exceeded top_degree; nothing to do
    }

    // sections: deterministic preimages of each Lambda^k basis vector in
    // monomial coordinates
    for (size_t k = 0; k < out.mono_maps_.size(); ++k) {
        const Mat& mm = out.mono_maps_[k];
        std::vector<Vec> cols;
        for (int c = 0; c < out.dims_[k]; ++c) {
            auto s = solve(mm, unit_vec(f, out.dims_[k], c));
            if (!s) throw invariant_error("no monomial preimage for a Lambda basis vector");
            cols.push_back(*s);
        }
        out.mono_sections_.push_back(Mat::from_cols(f, cols, mm.cols()));
    }

    // exterior differential via monomial coordinates:
    // d(e_b de_{t...}) = class(unit expansion tensor de_b de_{t...});
    // well-definedness: the free-space map must kill the kernel of the
    // monomial surjection
    for (int k = 0; k + 1 <= out.top(); ++k) {
        size_t Msrc = ipow(static_cast<size_t>(n), k + 1);
        const Mat& mm = out.mono_maps_[static_cast<size_t>(k)];
        const Mat& mt = out.mono_maps_[static_cast<size_t>(k + 1)];
        // free-space differential: monomial (b, ts) -> sum_u unit_u (u, b, ts)
        Mat dfree(f, out.dims_[static_cast<size_t>(k + 1)], static_cast<int>(Msrc));
        for (size_t col = 0; col < Msrc; ++col) {
            // decode (b, ts)
            size_t rest = col;
            std::vector<int> digits(static_cast<size_t>(k + 1), 0);
            for (int s = k; s >= 0; --s) {
                digits[static_cast<size_t>(s)] = static_cast<int>(rest % static_cast<size_t>(n));
                rest /= static_cast<size_t>(n);
            }
            int b = digits[0];
            Vec img = zero_vec(f, out.dims_[static_cast<size_t>(k + 1)]);
            for (int u = 0; u < n; ++u) {
                const Scalar& cu = A.unit()[static_cast<size_t>(u)];
                if (cu.is_zero()) continue;
                // monomial (u, b, ts) in degree k+1
                size_t tcol = static_cast<size_t>(u);
                tcol = tcol * static_cast<size_t>(n) + static_cast<size_t>(b);
                for (int s = 1; s <= k; ++s)
                    tcol = tcol * static_cast<size_t>(n) + static_cast<size_t>(digits[static_cast<size_t>(s)]);
                img = add(img, scale(cu, mt.col(static_cast<int>(tcol))));
            }
            for (int r = 0; r < out.dims_[static_cast<size_t>(k + 1)]; ++r)
                dfree.at(r, static_cast<int>(col)) = img[static_cast<size_t>(r)];
        }
        // check: dfree kills ker(mm)
        for (const Vec& kv : kernel_basis(mm))
            if (!is_zero(dfree.apply(kv)))
                throw invariant_error("exterior differential is not well-defined at degree " +
                                      std::to_string(k));
        // descend through the section
        out.d_.push_back(dfree * out.mono_sections_[static_cast<size_t>(k)]);
    }
    return out;
}

Mat FormAlgebra::d(int k) const {
    if (k < static_cast<int>(d_.size())) return d_[static_cast<size_t>(k)];
    FieldSpec f = A_->field();
    int tgt = k + 1 <= top() ? dims_[static_cast<size_t>(k + 1)] : 0;
    return Mat(f, tgt, k <= top() ? dims_[static_cast<size_t>(k)] : 0);
}

Vec FormAlgebra::exact_monomial(int b, const std::vector<int>& ts) const {
    int k = static_cast<int>(ts.size());
    size_t col = static_cast<size_t>(b);
    for (int t : ts) col = col * static_cast<size_t>(A_->dim()) + static_cast<size_t>(t);
    return mono_maps_[static_cast<size_t>(k)].col(static_cast<int>(col));
}

Vec FormAlgebra::monomial_expansion(int k, const Vec& w) const {
    return mono_sections_[static_cast<size_t>(k)].apply(w);
}

Vec FormAlgebra::wedge(int k, const Vec& w, int l, const Vec& e) const {
    FieldSpec f = A_->field();
    int n = A_->dim();
    if (k + l > top()) return Vec{};
    Vec wm = monomial_expansion(k, w), em = monomial_expansion(l, e);
    Vec out = zero_vec(f, dims_[static_cast<size_t>(k + l)]);
    size_t Mw = wm.size(), Me = em.size();
    for (size_t cw = 0; cw < Mw; ++cw) {
        if (wm[cw].is_zero()) continue;
        // decode (b, ts) of the left monomial
        size_t rest = cw;
        std::vector<int> dw(static_cast<size_t>(k + 1), 0);
        for (int s = k; s >= 0; --s) {
            dw[static_cast<size_t>(s)] = static_cast<int>(rest % static_cast<size_t>(n));
            rest /= static_cast<size_t>(n);
        }
        for (size_t ce = 0; ce < Me; ++ce) {
            if (em[ce].is_zero()) continue;
            size_t rest2 = ce;
            std::vector<int> dwe(static_cast<size_t>(l + 1), 0);
            for (int s = l; s >= 0; --s) {
                dwe[static_cast<size_t>(s)] = static_cast<int>(rest2 % static_cast<size_t>(n));
                rest2 /= static_cast<size_t>(n);
            }
            // (b1 de...)(b2 de...) = (b1 b2) de... de...
            Vec prod = A_->basis_product(dw[0], dwe[0]);
            for (int b = 0; b < n; ++b) {
                if (prod[static_cast<size_t>(b)].is_zero()) continue;
                size_t col = static_cast<size_t>(b);
                for (int s = 1; s <= k; ++s) col = col * static_cast<size_t>(n) + static_cast<size_t>(dw[static_cast<size_t>(s)]);
                for (int s = 1; s <= l; ++s) col = col * static_cast<size_t>(n) + static_cast<size_t>(dwe[static_cast<size_t>(s)]);
                out = add(out, scale(wm[cw] * em[ce] * prod[static_cast<size_t>(b)],
                                     mono_maps_[static_cast<size_t>(k + l)].col(static_cast<int>(col))));
            }
        }
    }
    return out;
}

Vec FormAlgebra::insertion(const Mat& X, int k, const Vec& w) const {
    FieldSpec f = A_->field();
    int n = A_->dim();
    if (k == 0) return zero_vec(f, 0);
    Vec wm = monomial_expansion(k, w);
    Vec out = zero_vec(f, dims_[static_cast<size_t>(k - 1)]);
    for (size_t c = 0; c < wm.size(); ++c) {
        if (wm[c].is_zero()) continue;
        size_t rest = c;
        std::vector<int> dg(static_cast<size_t>(k + 1), 0);
        for (int s = k; s >= 0; --s) {
            dg[static_cast<size_t>(s)] = static_cast<int>(rest % static_cast<size_t>(n));
            rest /= static_cast<size_t>(n);
        }
        Scalar sign = Scalar::one(f);
        for (int s = 1; s <= k; ++s) {
            // remove slot s, multiply X(e_{t_s}) into the algebra slot
            Vec xa = X.col(dg[static_cast<size_t>(s)]);
            Vec ba = zero_vec(f, n);
            for (int b = 0; b < n; ++b)
                if (!xa[static_cast<size_t>(b)].is_zero())
                    ba = add(ba, scale(xa[static_cast<size_t>(b)], A_->basis_product(dg[0], b)));
            for (int b = 0; b < n; ++b) {
                if (ba[static_cast<size_t>(b)].is_zero()) continue;
                size_t col = static_cast<size_t>(b);
                for (int s2 = 1; s2 <= k; ++s2) {
                    if (s2 == s) continue;
                    col = col * static_cast<size_t>(n) + static_cast<size_t>(dg[static_cast<size_t>(s2)]);
                }
                out = add(out, scale(wm[c] * sign * ba[static_cast<size_t>(b)],
                                     mono_maps_[static_cast<size_t>(k - 1)].col(static_cast<int>(col))));
            }
            sign = -sign;
        }
    }
    return out;
}

Vec FormAlgebra::lie_derivative(const Mat& X, int k, const Vec& w) const {
    FieldSpec f = A_->field();
    int n = A_->dim();
    Vec wm = monomial_expansion(k, w);
    Vec out = zero_vec(f, dims_[static_cast<size_t>(k)]);
    for (size_t c = 0; c < wm.size(); ++c) {
        if (wm[c].is_zero()) continue;
        size_t rest = c;
        std::vector<int> dg(static_cast<size_t>(k + 1), 0);
        for (int s = k; s >= 0; --s) {
            dg[static_cast<size_t>(s)] = static_cast<int>(rest % static_cast<size_t>(n));
            rest /= static_cast<size_t>(n);
        }
        // L_X(b) term: X(b) in the algebra slot
        Vec xb = X.col(dg[0]);
        for (int b = 0; b < n; ++b) {
            if (xb[static_cast<size_t>(b)].is_zero()) continue;
            size_t col = static_cast<size_t>(b);
            for (int s = 1; s <= k; ++s) col = col * static_cast<size_t>(n) + static_cast<size_t>(dg[static_cast<size_t>(s)]);
            out = add(out, scale(wm[c] * xb[static_cast<size_t>(b)],
                                 mono_maps_[static_cast<size_t>(k)].col(static_cast<int>(col))));
        }
        // slot terms: de_t -> d(X e_t), i.e. replace slot s by the expansion
        // of d(X(e_{t_s})) = sum_u X(e_t)_u de_u
        for (int s = 1; s <= k; ++s) {
            Vec xt = X.col(dg[static_cast<size_t>(s)]);
            for (int u = 0; u < n; ++u) {
                if (xt[static_cast<size_t>(u)].is_zero()) continue;
                size_t col = static_cast<size_t>(dg[0]);
                for (int s2 = 1; s2 <= k; ++s2)
                    col = col * static_cast<size_t>(n) +
                          static_cast<size_t>(s2 == s ? u : dg[static_cast<size_t>(s2)]);
                out = add(out, scale(wm[c] * xt[static_cast<size_t>(u)],
                                     mono_maps_[static_cast<size_t>(k)].col(static_cast<int>(col))));
            }
        }
    }
    return out;
}

ChainComplex FormAlgebra::de_rham() const {
    ChainComplex c;
    c.field = A_->field();
    c.dims = dims_;
    for (int k = 0; k < top(); ++k) c.d.push_back(d(k));
    for (int k = 0; k <= top(); ++k) c.labels.push_back("Lambda^" + std::to_string(k));
    c.verify();
    return c;
}

RepresentingReport representing_check(const FormAlgebra& forms, const FinModule& P, int k) {
    if (forms.algebra()->field().is_prime_field())
        throw input_error("representing check is restricted to characteristic 0 "
                          "(alternating convention)");
    RepresentingReport rep;
    if (k == 0) {
        rep.dim_dk = P.dim();
        rep.dim_hom = static_cast<int>(module_hom_basis(FinModule::regular(P.algebra()), P).size());
        rep.ok = rep.dim_dk == rep.dim_hom;
        return rep;
    }
    rep.dim_dk = multi_derivations(P, std::vector<int>(static_cast<size_t>(k), 1)).dim;
    rep.dim_hom = k <= forms.top()
                      ? static_cast<int>(module_hom_basis(forms.module(k), P).size())
                      : 0;
    rep.ok = rep.dim_dk == rep.dim_hom;
    return rep;
}

NaturalityReport naturality_check(const FormAlgebra& F1, const FormAlgebra& F2,
                                  const AlgebraHom& H) {
    NaturalityReport rep;
    FieldSpec f = F1.algebra()->field();
    int n1 = F1.algebra()->dim();
    // H_{Lambda^1} on monomials: b de_t -> H(b) d(H e_t)
    size_t M1 = static_cast<size_t>(n1) * n1;
    Mat free_map(f, F2.dim(1), static_cast<int>(M1));
    for (int b = 0; b < n1; ++b)
        for (int t = 0; t < n1; ++t) {
            Vec Hb = H.m.col(b), Ht = H.m.col(t);
            Vec img = zero_vec(f, F2.dim(1));
            int n2 = F2.algebra()->dim();
            for (int u = 0; u < n2; ++u) {
                if (Ht[static_cast<size_t>(u)].is_zero()) continue;
                // H(b) de_u in Lambda^1(A2)
                for (int b2 = 0; b2 < n2; ++b2) {
                    if (Hb[static_cast<size_t>(b2)].is_zero()) continue;
                    img = add(img, scale(Hb[static_cast<size_t>(b2)] * Ht[static_cast<size_t>(u)],
                                         F2.exact_monomial(b2, {u})));
                }
            }
            for (int r = 0; r < F2.dim(1); ++r) free_map.at(r, b * n1 + t) = img[static_cast<size_t>(r)];
        }
    // well-defined: kills the kernel of F1's monomial surjection
    rep.well_defined = true;
    Mat mm(f, F1.dim(1), static_cast<int>(M1));
    for (int b = 0; b < n1; ++b)
        for (int t = 0; t < n1; ++t) {
            Vec cls = F1.exact_monomial(b, {t});
            for (int r = 0; r < F1.dim(1); ++r) mm.at(r, b * n1 + t) = cls[static_cast<size_t>(r)];
        }
    for (const Vec& kv : kernel_basis(mm))
        if (!is_zero(free_map.apply(kv))) rep.well_defined = false;
    if (!rep.well_defined) return rep;
    // section of mm
    std::vector<Vec> cols;
    for (int c = 0; c < F1.dim(1); ++c) {
        auto s = solve(mm, unit_vec(f, F1.dim(1), c));
        if (!s) throw invariant_error("no monomial preimage in Lambda^1(A1)");
        cols.push_back(*s);
    }
    Mat H_lambda = free_map * Mat::from_cols(f, cols, static_cast<int>(M1));
    // square: H_{Lambda^1} . d_1 = d_2 . H on algebra elements
    rep.square_ok = (H_lambda * F1.d(0)) == (F2.d(0) * H.m);
    return rep;
}

JetSpencerComplex jet_spencer_complex(const FormAlgebra& forms, int n) {
    JetSpencerComplex out;
    AlgebraPtr Aptr = forms.algebra();
    const FinAlgebra& A = *Aptr;
    FieldSpec f = A.field();
    if (n > forms.top() && forms.dim(forms.top()) != 0)
        throw budget_error("jet-Spencer degree exceeds the computed form tower");

    // spots C_k = Lambda^{n-k} tensor_A J^k(A), k = n..0; the free pair space
    // (omega basis, algebra basis) surjects via (w, a) -> w tensor j_k(a)
    struct Spot {
        Quotient quot;      // of balancing relations inside Lambda tensor J
        Mat pair_map;       // free pairs -> spot coordinates
        int dim = 0;
        JetModule jet;
        int lam_deg = 0;
    };
    FinModule regA = FinModule::regular(Aptr);
    std::vector<Spot> spots;
    for (int k = n; k >= 0; --k) {
        int s = n - k;
        int ld = s <= forms.top() ? forms.dim(s) : 0;
        Spot spot{Quotient(), Mat(), 0, JetModule::compute(regA, k), s};
        int J = spot.jet.dim();
        if (ld == 0 || J == 0) {
            spot.dim = 0;
            spots.push_back(std::move(spot));
            continue;
        }
        const FinModule& L = forms.module(s);
        const FinModule& JM = spot.jet.as_module();
        // balancing: (a w) tensor u - w tensor (a u)
        std::vector<Vec> rels;
        FieldSpec field = f;
        for (int i = 0; i < A.dim(); ++i)
            for (int w = 0; w < ld; ++w)
                for (int u = 0; u < J; ++u) {
                    Vec rel = zero_vec(field, ld * J);
                    Vec aw = L.action_basis(i).col(w);
                    for (int w2 = 0; w2 < ld; ++w2)
                        if (!aw[static_cast<size_t>(w2)].is_zero())
                            rel[static_cast<size_t>(w2 * J + u)] += aw[static_cast<size_t>(w2)];
                    Vec au = JM.action_basis(i).col(u);
                    for (int u2 = 0; u2 < J; ++u2)
                        if (!au[static_cast<size_t>(u2)].is_zero())
                            rel[static_cast<size_t>(w * J + u2)] -= au[static_cast<size_t>(u2)];
                    rels.push_back(rel);
                }
        spot.quot = Quotient(Subspace::span(f, ld * J, rels));
        spot.dim = spot.quot.dim();
        // pair map: (w, a) -> class(w tensor j_k(e_a))
        Mat pm(f, spot.dim, ld * A.dim());
        for (int w = 0; w < ld; ++w)
            for (int a = 0; a < A.dim(); ++a) {
                Vec ja = spot.jet.jet_operator().apply(unit_vec(f, A.dim(), a));
                Vec amb = zero_vec(f, ld * J);
                for (int u = 0; u < J; ++u)
                    if (!ja[static_cast<size_t>(u)].is_zero()) amb[static_cast<size_t>(w * J + u)] = ja[static_cast<size_t>(u)];
                Vec cls = spot.quot.project(amb);
                for (int r = 0; r < spot.dim; ++r) pm.at(r, w * A.dim() + a) = cls[static_cast<size_t>(r)];
            }
        spot.pair_map = pm;
        // the pairs must span
        {
            std::vector<Vec> cols;
            for (int c = 0; c < pm.cols(); ++c) cols.push_back(pm.col(c));
            if (Subspace::span(f, spot.dim, cols).dim() != spot.dim)
                throw invariant_error("jet classes fail to span the jet-Spencer spot");
        }
        spots.push_back(std::move(spot));
    }

    // differentials S: C_{k} (spot for jet order k) -> C_{k-1}:
    // on free pairs (w, a) -> (d w, a)
    ChainComplex cplx;
    cplx.field = f;
    for (auto& s : spots) cplx.dims.push_back(s.dim);
    for (size_t i = 0; i + 1 < spots.size(); ++i) {
        const Spot& src = spots[i];
        const Spot& dst = spots[i + 1];
        Mat dmat(f, dst.dim, src.dim);
        if (src.dim > 0 && dst.dim > 0) {
            int ld = forms.dim(src.lam_deg);
            // free map: (w, a) -> (dw, a) in destination pair coordinates
            Mat dform = forms.d(src.lam_deg);
            Mat free_map(f, dst.dim, ld * A.dim());
            for (int w = 0; w < ld; ++w)
                for (int a = 0; a < A.dim(); ++a) {
                    Vec dw = dform.col(w);
                    Vec img = zero_vec(f, dst.dim);
                    int ld2 = forms.dim(dst.lam_deg);
                    for (int w2 = 0; w2 < ld2; ++w2)
                        if (!dw[static_cast<size_t>(w2)].is_zero())
                            img = add(img, scale(dw[static_cast<size_t>(w2)],
                                                 dst.pair_map.col(w2 * A.dim() + a)));
                    for (int r = 0; r < dst.dim; ++r) free_map.at(r, w * A.dim() + a) = img[static_cast<size_t>(r)];
                }
            // well-definedness and descent through a section of src.pair_map
            for (const Vec& kv : kernel_basis(src.pair_map))
                if (!is_zero(free_map.apply(kv)))
                    throw invariant_error("jet-Spencer differential is not well-defined");
            std::vector<Vec> cols;
            for (int c = 0; c < src.dim; ++c) {
                auto sfn = solve(src.pair_map, unit_vec(f, src.dim, c));
                if (!sfn) throw invariant_error("no pair preimage in the jet-Spencer spot");
                cols.push_back(free_map.apply(*sfn));
            }
            dmat = Mat::from_cols(f, cols, dst.dim);
        }
        cplx.d.push_back(dmat);
    }
    for (int k = n; k >= 0; --k)
        cplx.labels.push_back("J^" + std::to_string(k) + "(Lambda^" + std::to_string(n - k) + ")");
    cplx.verify();
    out.complex = std::move(cplx);
    for (int k = n; k >= 0; --k) {
        // Prop-jet cross-check data: dim J^k(Lambda^{n-k}) directly
        int s = n - k;
        if (s <= forms.top() && forms.dim(s) > 0) {
            JetModule jk = JetModule::compute(forms.module(s), k);
            out.jet_tensor_dims.push_back(jk.dim());
        } else {
            out.jet_tensor_dims.push_back(0);
        }
    }
    return out;
}

}  // namespace diffalg
