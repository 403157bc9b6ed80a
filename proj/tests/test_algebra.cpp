#include <doctest.h>

#include <random>

#include "diffalg/localize.hpp"

using namespace diffalg;

namespace {

FieldSpec Q = FieldSpec::rationals();

}  // namespace

TEST_CASE("dual numbers validate as an algebra of dimension 2") {
    auto A = FinAlgebra::dual_numbers(Q);
    CHECK(A->dim() == 2);
    Vec e = unit_vec(Q, 2, 1);
    CHECK(is_zero(A->mul(e, e)));
}

TEST_CASE("Boolean ring F2 x F2 validates; a*a = a on all elements") {
    auto A = FinAlgebra::boolean_power(2);
    FieldSpec f = A->field();
    for (long a0 = 0; a0 < 2; ++a0)
        for (long a1 = 0; a1 < 2; ++a1) {
            Vec a{Scalar(f, a0), Scalar(f, a1)};
            CHECK(A->mul(a, a) == a);
        }
}

TEST_CASE("non-associative table is rejected with the offending triple") {
    // e*e = f, f*e = 0 on basis {e, f} (no unit even): violates several axioms
    FieldSpec f = Q;
    Vec ze = zero_vec(f, 2);
    std::vector<std::vector<Vec>> table = {
        {unit_vec(f, 2, 1), ze},
        {ze, ze},
    };
    CHECK_THROWS_WITH_AS(FinAlgebra::make(f, table, unit_vec(f, 2, 0), {"e", "f"}),
                         doctest::Contains("invalid algebra table"), input_error);
}

TEST_CASE("module action validation catches structure violations") {
    auto A = FinAlgebra::dual_numbers(Q);
    FinModule reg = FinModule::regular(A);
    CHECK(!reg.violation());

    // corrupt the action of e so that act(e)^2 != act(e^2) = 0
    std::vector<Mat> action = {Mat::identity(Q, 2), Mat::identity(Q, 2)};
    FinModule bad(A, action);
    CHECK(bad.violation());
}

TEST_CASE("univariate quotient k[x]/(x^3)") {
    std::vector<std::string> vars{"x"};
    MPoly rel = parse_mpoly("x^3", Q, vars);
    auto A = FinAlgebra::univariate_quotient(Q, "x", rel);
    CHECK(A->dim() == 3);
    Vec x = unit_vec(Q, 3, 1);
    CHECK(A->mul(x, A->mul(x, x)) == zero_vec(Q, 3));

    QuotPres pres(PolyAlgebra(Q, vars), {rel});
    MPoly p = parse_mpoly("x^4 + x^2 + 1", Q, vars);
    CHECK(pres.reduce(p) == parse_mpoly("x^2 + 1", Q, vars));
}

TEST_CASE("multiplicative set validation") {
    auto A = FinAlgebra::dual_numbers(Q);
    SUBCASE("S = {1} is fine") {
        validate_mult_set(*A, FinMultSet{});
    }
    SUBCASE("S generated by the nilpotent e is rejected") {
        FinMultSet S{{unit_vec(Q, 2, 1)}};
        CHECK_THROWS_AS(validate_mult_set(*A, S), input_error);
    }
}

TEST_CASE("localization of Q[x] at powers of x inverts x") {
    PolyAlgebra A(Q, {"x"});
    PolyMultSet S{{A.var(0)}};
    PolyLocalized loc(A, S);
    PolyLocElt x_over_1 = loc.iota(A.var(0));
    PolyLocElt one_over_x{A.one(), A.var(0)};
    CHECK(loc.equal(loc.mul(x_over_1, one_over_x), loc.iota(A.one())));
}

TEST_CASE("localization of k[e] at S = {1} is an isomorphism") {
    auto A = FinAlgebra::dual_numbers(Q);
    LocalizedAlgebra loc(A, FinMultSet{});
    // iota is injective: a/1 = b/1 iff a = b, and multiplicative on all basis pairs
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Vec ei = unit_vec(Q, 2, i), ej = unit_vec(Q, 2, j);
            CHECK(loc.equal(loc.mul(loc.iota(ei), loc.iota(ej)), loc.iota(A->mul(ei, ej))));
        }
    CHECK(!loc.equal(loc.iota(unit_vec(Q, 2, 0)), loc.iota(unit_vec(Q, 2, 1))));
}

TEST_CASE("module localization collapses torsion killed by the set") {
    // A = k[e] x k (so that t = (0,1) is a non-nilpotent generator), P = A,
    // p = (e, 0) satisfies t p = 0, hence p/1 ~ 0 in S^{-1}P for S = <t>.
    // Build A with basis {1=(1,1)... } explicitly: basis u=(1,0,0) picks k[e] part.
    // Simpler concrete model: A = k[e] + k f with e f = 0, f^2 = f, e^2 = 0,
    // unit = 1 (split algebra k[e] x k with f the idempotent of the second factor).
    FieldSpec f = Q;
    // basis: a0 = 1, a1 = e, a2 = f with relations e^2 = 0, f^2 = f, e f = 0
    Vec ze = zero_vec(f, 3);
    std::vector<std::vector<Vec>> table = {
        {unit_vec(f, 3, 0), unit_vec(f, 3, 1), unit_vec(f, 3, 2)},
        {unit_vec(f, 3, 1), ze, ze},
        {unit_vec(f, 3, 2), ze, unit_vec(f, 3, 2)},
    };
    auto A = FinAlgebra::make(f, table, unit_vec(f, 3, 0), {"1", "e", "f"});
    FinMultSet S{{unit_vec(f, 3, 2)}};  // S = powers of f
    LocalizedModule locP(FinModule::regular(A), S);
    Vec p = unit_vec(f, 3, 1);  // e, killed by f
    CHECK(locP.equal(locP.iota(p), locP.iota(zero_vec(f, 3))));
    // brute-force oracle: some power of the single generator kills p
    bool killed = false;
    Vec pow = unit_vec(f, 3, 2);
    for (int i = 0; i < 4; ++i) {
        if (is_zero(FinModule::regular(A).act(pow).apply(p))) killed = true;
        pow = A->mul(pow, unit_vec(f, 3, 2));
    }
    CHECK(killed);
    // but the unit is not collapsed
    CHECK(!locP.equal(locP.iota(A->unit()), locP.iota(zero_vec(f, 3))));
}

TEST_CASE("fraction equivalence is an equivalence relation on random data") {
    auto A = FinAlgebra::boolean_power(2);
    FieldSpec f = A->field();
    FinMultSet S{{unit_vec(f, 2, 0)}};  // idempotent p0: products never 0? p0*p0=p0 ok
    LocalizedAlgebra loc(A, S);
    std::mt19937_64 rng(99);
    auto rand_elt = [&]() {
        return Vec{Scalar(f, static_cast<long>(rng() % 2)), Scalar(f, static_cast<long>(rng() % 2))};
    };
    auto rand_den = [&]() { return unit_vec(f, 2, 0); };
    for (int t = 0; t < 30; ++t) {
        LocElt a{rand_elt(), rand_den()}, b{rand_elt(), rand_den()}, c{rand_elt(), rand_den()};
        CHECK(loc.equal(a, a));
        if (loc.equal(a, b)) CHECK(loc.equal(b, a));
        if (loc.equal(a, b) && loc.equal(b, c)) CHECK(loc.equal(a, c));
    }
}
