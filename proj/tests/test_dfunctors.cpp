#include <doctest.h>

#include "diffalg/dfunctors.hpp"

using namespace diffalg;

namespace {

FieldSpec Q = FieldSpec::rationals();

}  // namespace

TEST_CASE("derivation spaces") {
    SUBCASE("D(k[e]) over Q is 1-dimensional: 1 -> 0, e -> c e") {
        auto A = FinAlgebra::dual_numbers(Q);
        auto ders = derivations(FinModule::regular(A));
        REQUIRE(ders.size() == 1);
        const Mat& X = ders[0];
        CHECK(is_zero(X.col(0)));            // X(1) = 0
        CHECK(X.at(0, 1).is_zero());         // X(e) has no 1-component
        CHECK(!X.at(1, 1).is_zero());        // X(e) = c e
        // Leibniz on all basis pairs
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Vec lhs = X.apply(A->basis_product(i, j));
                Vec rhs = add(A->mul(unit_vec(Q, 2, i), X.apply(unit_vec(Q, 2, j))),
                              A->mul(unit_vec(Q, 2, j), X.apply(unit_vec(Q, 2, i))));
                CHECK(lhs == rhs);
            }
    }
    SUBCASE("D(Boolean) = 0") {
        auto A = FinAlgebra::boolean_power(2);
        CHECK(derivations(FinModule::regular(A)).empty());
    }
}

TEST_CASE("multi-derivations") {
    SUBCASE("D_2 over the ground field is 0") {
        auto A = FinAlgebra::ground_field(Q);
        auto d2 = multi_derivations(FinModule::regular(A), {1, 1});
        CHECK(d2.dim == 0);
    }
    SUBCASE("D_2(k[e]) = 0") {
        auto A = FinAlgebra::dual_numbers(Q);
        auto d2 = multi_derivations(FinModule::regular(A), {1, 1});
        CHECK(d2.dim == 0);
    }
    SUBCASE("D_2 of truncated Q[x,y] is the dx^dy pattern with ideal coefficients") {
        auto A = FinAlgebra::truncated_polynomial(Q, {"x", "y"}, 1);
        auto d2 = multi_derivations(FinModule::regular(A), {1, 1});
        // every element is f dx^dy with f in the maximal ideal {x, y}
        CHECK(d2.dim == 2);
        int n = A->dim(), p = d2.base_dim;
        for (const Vec& T : d2.flat_basis) {
            // alternating as a bi-map A x A -> P
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int r = 0; r < p; ++r) {
                        Scalar tab = T[static_cast<size_t>((a * n + b) * p + r)];
                        Scalar tba = T[static_cast<size_t>((b * n + a) * p + r)];
                        CHECK(tab == -tba);
                    }
            // supported on the (x, y) argument slot only, with no constant part
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    bool xy_slot =
                        (A->describe_basis(a) == "x" && A->describe_basis(b) == "y") ||
                        (A->describe_basis(a) == "y" && A->describe_basis(b) == "x");
                    for (int r = 0; r < p; ++r) {
                        Scalar v = T[static_cast<size_t>((a * n + b) * p + r)];
                        if (!xy_slot || A->describe_basis(r) == "1") CHECK(v.is_zero());
                    }
                }
        }
    }
    SUBCASE("signature (1,1) coincides with depth-2 plain tower") {
        auto A = FinAlgebra::dual_numbers(Q);
        FinModule reg = FinModule::regular(A);
        auto via_sig = multi_derivations(reg, {1, 1});
        auto stages = dfunctor_tower(reg, {1, 1});
        CHECK(via_sig.dim == static_cast<int>(stages.back().d_flat.size()));
    }
}

TEST_CASE("splitting of the multi-derivation stages") {
    SUBCASE("m = 1 on k[e]: Diff_1 = A + D") {
        auto A = FinAlgebra::dual_numbers(Q);
        auto rep = splitting_check(FinModule::regular(A), 1);
        CHECK(rep.dim_frak == 3);
        CHECK(rep.dim_lower == 2);
        CHECK(rep.dim_top == 1);
        CHECK(rep.additive);
        CHECK(rep.projections_ok);
    }
    SUBCASE("Boolean: higher pieces vanish") {
        auto A = FinAlgebra::boolean_power(2);
        auto rep = splitting_check(FinModule::regular(A), 2);
        CHECK(rep.dim_top == 0);
        CHECK(rep.additive);
    }
    SUBCASE("m = 2 and 3 on k[e] and k[x]/(x^3): both sides computed independently") {
        for (const char* which : {"dual", "x3"}) {
            AlgebraPtr A = std::string(which) == "dual"
                               ? FinAlgebra::dual_numbers(Q)
                               : FinAlgebra::univariate_quotient(Q, "x", parse_mpoly("x^3", Q, {"x"}));
            for (int m = 1; m <= 3; ++m) {
                auto rep = splitting_check(FinModule::regular(A), m);
                CHECK(rep.additive);
                CHECK(rep.projections_ok);
            }
        }
    }
}

TEST_CASE("Diff-Spencer complexes") {
    SUBCASE("n = 1 on k[e]: 0 -> D_1 -> Diff_1 -> P -> 0 with d.d = 0") {
        auto A = FinAlgebra::dual_numbers(Q);
        auto sp = spencer_complex(FinModule::regular(A), 1);
        REQUIRE(sp.complex.dims.size() == 3);
        CHECK(sp.complex.dims[0] == 1);  // D(k[e])
        CHECK(sp.complex.dims[1] == 3);  // Df_1
        CHECK(sp.complex.dims[2] == 2);  // P
        sp.complex.verify();
        auto h = spencer_homology(sp);
        REQUIRE(h.dims.size() == 3);
    }
    SUBCASE("Boolean: degenerates to 0 -> Df_0 -> P -> 0") {
        auto A = FinAlgebra::boolean_power(2);
        auto sp = spencer_complex(FinModule::regular(A), 1);
        CHECK(sp.complex.dims[0] == 0);  // D = 0
        CHECK(sp.complex.dims[1] == 2);  // Df_1 = Df_0
        sp.complex.verify();
    }
    SUBCASE("Sp_2(k[e]): assembled exactly, homology reported") {
        auto A = FinAlgebra::dual_numbers(Q);
        auto sp = spencer_complex(FinModule::regular(A), 2);
        sp.complex.verify();
        auto h = spencer_homology(sp);
        CHECK(h.dims.size() == sp.complex.dims.size());
        // kernel claim: D_2(P) = ker(D_1(Df_1 P) -> D_0(Df_2 P)) under the
        // leading embedding
        REQUIRE(sp.complex.d.size() >= 2);
        int dimD2 = sp.complex.dims[0];
        auto ker = kernel_basis(sp.complex.d[1]);
        CHECK(static_cast<int>(ker.size()) == dimD2);
    }
    SUBCASE("inclusion of complexes Sp_1 c Sp_2 on k[e] commutes with d") {
        auto A = FinAlgebra::dual_numbers(Q);
        FinModule reg = FinModule::regular(A);
        auto sp1 = spencer_complex(reg, 1);
        auto sp2 = spencer_complex(reg, 2);
        // spot with the same D-index j: Sp_1 spot j=1 (arity 1+0?):
        // compare D_1(P) c D_1(Df_1 P) as flat tensors: Sp_1 spot 0 has arity 1,
        // Sp_2 spot 1 has arity 2; the inclusion is through the inner operator
        // inclusion P c Df_1 P... verified here at the level of Df spots:
        // Df_1(P) (Sp_1 spot 1) sits inside Df_2(P) (Sp_2 spot 2).
        const auto& small = sp1.spots[1];
        const auto& large = sp2.spots[2];
        REQUIRE(!large.empty());
        Mat basis_mat = Mat::from_cols(Q, large, static_cast<int>(large[0].size()));
        for (const Vec& v : small) CHECK(solve(basis_mat, v).has_value());
    }
}

TEST_CASE("spencer homology guards") {
    SUBCASE("exact two-term identity complex has zero homology") {
        ChainComplex c;
        c.field = Q;
        c.dims = {2, 2};
        c.d = {Mat::identity(Q, 2)};
        auto h = c.homology();
        CHECK(h.dims == std::vector<int>{0, 0});
    }
    SUBCASE("zero differentials give the modules themselves") {
        ChainComplex c;
        c.field = Q;
        c.dims = {2, 3};
        c.d = {Mat(Q, 3, 2)};
        auto h = c.homology();
        CHECK(h.dims == std::vector<int>{2, 3});
    }
    SUBCASE("d.d != 0 is rejected with a witness") {
        ChainComplex c;
        c.field = Q;
        c.dims = {1, 1, 1};
        c.d = {Mat::identity(Q, 1), Mat::identity(Q, 1)};
        CHECK_THROWS_AS(c.homology(), invariant_error);
    }
}

TEST_CASE("D_{m+n} c D_m(D_n) on computed bases (k[e], m = n = 1)") {
    auto A = FinAlgebra::dual_numbers(Q);
    FinModule reg = FinModule::regular(A);
    auto d2 = multi_derivations(reg, {1, 1});
    auto d1 = multi_derivations(reg, {1});
    // slices T(e_i, .) of any D_2 element must lie in span(D_1 flat basis)
    int n = A->dim(), p = reg.dim();
    std::vector<Vec> d1flat = d1.flat_basis;
    for (const Vec& T : d2.flat_basis)
        for (int a = 0; a < n; ++a) {
            Vec slice = zero_vec(Q, n * p);
            for (int b = 0; b < n; ++b)
                for (int r = 0; r < p; ++r)
                    slice[static_cast<size_t>(b * p + r)] = T[static_cast<size_t>((a * n + b) * p + r)];
            if (is_zero(slice)) continue;
            REQUIRE(!d1flat.empty());
            Mat m = Mat::from_cols(Q, d1flat, n * p);
            CHECK(solve(m, slice).has_value());
        }
}

TEST_CASE("higher-order signatures") {
    auto A = FinAlgebra::univariate_quotient(Q, "x", parse_mpoly("x^3", Q, {"x"}));
    FinModule reg = FinModule::regular(A);
    // D_{(2)}: order-2 operators killing 1
    auto d2sig = multi_derivations(reg, {2});
    DiffSpace df2 = DiffSpace::compute(FinModule::regular(A), reg, 2);
    CHECK(d2sig.dim == df2.dim() - reg.dim());  // ev at unit is onto P here
    // mixed signature stays within budget and computes
    auto mixed = multi_derivations(reg, {1, 2});
    CHECK(mixed.dim >= 0);
}

TEST_CASE("a DO induces a chain map of Spencer complexes (k[e], e-derivation)") {
    auto A = FinAlgebra::dual_numbers(Q);
    FinModule reg = FinModule::regular(A);
    Mat X(Q, 2, 2);
    X.at(1, 1) = Scalar::one(Q);  // the e-derivation, order 1

    auto sp1 = spencer_complex(reg, 1);
    auto sp2 = spencer_complex(reg, 2);
    // induced map on spot values: post-compose the P-part with X; spot j of
    // Sp_1 (tensors of arity j+1 ending in P) lands in spot j of Sp_2
    // (same arity, operator order raised by 1)
    int n = A->dim(), p = reg.dim();
    std::vector<Mat> chain_maps;
    for (size_t spot = 0; spot < sp1.spots.size(); ++spot) {
        const auto& src = sp1.spots[spot];
        const auto& dst = sp2.spots[spot + 1];  // align from the right (both end at P)
        std::vector<Vec> cols;
        for (const Vec& T : src) {
            Vec img = zero_vec(Q, static_cast<int>(T.size()));
            size_t blocks = T.size() / static_cast<size_t>(p);
            for (size_t bl = 0; bl < blocks; ++bl)
                for (int r = 0; r < p; ++r) {
                    Scalar acc = Scalar::zero(Q);
                    for (int s = 0; s < p; ++s) acc += X.at(r, s) * T[bl * p + static_cast<size_t>(s)];
                    img[bl * p + static_cast<size_t>(r)] = acc;
                }
            REQUIRE(!dst.empty());
            Mat basis = Mat::from_cols(Q, dst, static_cast<int>(dst[0].size()));
            // sizes can differ by arity; embed lower-arity tensors by padding
            // with the unit contraction only when shapes match
            if (dst[0].size() == img.size()) {
                auto c = solve(basis, img);
                REQUIRE(c.has_value());
                cols.push_back(*c);
            } else {
                // leading spot: arity grows by one; view T (A^j -> P) inside
                // A^{j+1} -> P via the order-0 operator a -> a T(...)
                size_t inner = img.size();
                Vec big = zero_vec(Q, static_cast<int>(inner * static_cast<size_t>(n)));
                for (size_t o = 0; o < inner / static_cast<size_t>(p); ++o)
                    for (int b = 0; b < n; ++b)
                        for (int r = 0; r < p; ++r) {
                            Scalar acc = Scalar::zero(Q);
                            for (int s = 0; s < p; ++s)
                                acc += reg.action_basis(b).at(r, s) * img[o * static_cast<size_t>(p) + static_cast<size_t>(s)];
                            big[(o * static_cast<size_t>(n) + static_cast<size_t>(b)) * static_cast<size_t>(p) + static_cast<size_t>(r)] = acc;
                        }
                auto c = solve(basis, big);
                REQUIRE(c.has_value());
                cols.push_back(*c);
            }
        }
        chain_maps.push_back(Mat::from_cols(Q, cols, static_cast<int>(dst.size())));
    }
    // commuting squares: h . d1 = d2 . h entrywise
    for (size_t i = 0; i + 1 < sp1.spots.size(); ++i) {
        Mat lhs = chain_maps[i + 1] * sp1.complex.d[i];
        Mat rhs = sp2.complex.d[i + 1] * chain_maps[i];
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Sp_1 includes into Sp_2 as complexes on k[e]") {
    auto A = FinAlgebra::dual_numbers(Q);
    FinModule reg = FinModule::regular(A);
    auto sp1 = spencer_complex(reg, 1);
    auto sp2 = spencer_complex(reg, 2);
    int n = A->dim(), p = reg.dim();
    // right-aligned spots; values include through Df_k c Df_{k+1} (same flat
    // data) except the leading spot, which includes through P c Df_1(A,P)
    std::vector<Mat> incl;
    for (size_t spot = 0; spot < sp1.spots.size(); ++spot) {
        const auto& src = sp1.spots[spot];
        const auto& dst = sp2.spots[spot + 1];
        std::vector<Vec> cols;
        for (const Vec& T : src) {
            REQUIRE(!dst.empty());
            Vec img = T;
            if (dst[0].size() != T.size()) {
                size_t inner = T.size();
                Vec big = zero_vec(Q, static_cast<int>(inner * static_cast<size_t>(n)));
                for (size_t o = 0; o < inner / static_cast<size_t>(p); ++o)
                    for (int b = 0; b < n; ++b)
                        for (int r = 0; r < p; ++r) {
                            Scalar acc = Scalar::zero(Q);
                            for (int s = 0; s < p; ++s)
                                acc += reg.action_basis(b).at(r, s) * T[o * static_cast<size_t>(p) + static_cast<size_t>(s)];
                            big[(o * static_cast<size_t>(n) + static_cast<size_t>(b)) * static_cast<size_t>(p) + static_cast<size_t>(r)] = acc;
                        }
                img = big;
            }
            Mat basis = Mat::from_cols(Q, dst, static_cast<int>(dst[0].size()));
            auto c = solve(basis, img);
            REQUIRE(c.has_value());  // injective inclusion spot by spot
            cols.push_back(*c);
        }
        incl.push_back(Mat::from_cols(Q, cols, static_cast<int>(dst.size())));
        // injectivity
        CHECK(kernel_basis(incl.back()).empty());
    }
    for (size_t i = 0; i + 1 < sp1.spots.size(); ++i) {
        Mat lhs = incl[i + 1] * sp1.complex.d[i];
        Mat rhs = sp2.complex.d[i + 1] * incl[i];
        CHECK(lhs == rhs);
    }
}
