#include <doctest.h>

#include <random>

#include "diffalg/linalg.hpp"
#include "diffalg/ratexpr.hpp"

using namespace diffalg;

namespace {

Scalar q(long a, long b = 1) { return Scalar::fraction(FieldSpec::rationals(), a, b); }

}  // namespace

TEST_CASE("field axioms hold exhaustively for GF(p), p <= 7") {
    for (long p : {2L, 3L, 5L, 7L}) {
        FieldSpec f = FieldSpec::prime(p);
        for (long a = 0; a < p; ++a)
            for (long b = 0; b < p; ++b) {
                Scalar sa(f, a), sb(f, b);
                CHECK(sa + sb == sb + sa);
                CHECK(sa * sb == sb * sa);
                if (b != 0) CHECK((sa / sb) * sb == sa);
                for (long c = 0; c < p; ++c) {
                    Scalar sc(f, c);
                    CHECK((sa + sb) + sc == sa + (sb + sc));
                    CHECK((sa * sb) * sc == sa * (sb * sc));
                    CHECK(sa * (sb + sc) == sa * sb + sa * sc);
                }
            }
        for (long a = 1; a < p; ++a) CHECK(Scalar(f, a) * Scalar(f, a).inverse() == Scalar::one(f));
    }
}

TEST_CASE("FieldSpec rejects composite moduli") {
    CHECK_THROWS_AS(FieldSpec::prime(4), input_error);
    CHECK_THROWS_AS(FieldSpec::prime(1), input_error);
}

TEST_CASE("kernel_basis on the spec examples") {
    FieldSpec f = FieldSpec::rationals();

    SUBCASE("identity 2x2 has trivial kernel") {
        CHECK(kernel_basis(Mat::identity(f, 2)).empty());
    }
    SUBCASE("zero 2x2 has the standard basis") {
        Mat z(f, 2, 2);
        auto k = kernel_basis(z);
        REQUIRE(k.size() == 2);
        CHECK(k[0] == unit_vec(f, 2, 0));
        CHECK(k[1] == unit_vec(f, 2, 1));
    }
    SUBCASE("[[1,1],[2,2]] over Q has kernel {(1,-1)}") {
        Mat m(f, 2, 2);
        m.at(0, 0) = q(1); m.at(0, 1) = q(1);
        m.at(1, 0) = q(2); m.at(1, 1) = q(2);
        auto k = kernel_basis(m);
        REQUIRE(k.size() == 1);
        CHECK(k[0] == Vec{q(1), q(-1)});
    }
}

TEST_CASE("solve on the spec examples") {
    FieldSpec f = FieldSpec::rationals();
    SUBCASE("identity returns b") {
        Vec b{q(3), q(-5)};
        auto x = solve(Mat::identity(f, 2), b);
        REQUIRE(x);
        CHECK(*x == b);
    }
    SUBCASE("zero matrix with nonzero b has no solution") {
        Mat z(f, 2, 2);
        CHECK(!solve(z, Vec{q(1), q(0)}));
    }
    SUBCASE("[[2]] x = [1] over GF(2) has no solution") {
        FieldSpec f2 = FieldSpec::prime(2);
        Mat m(f2, 1, 1);
        m.at(0, 0) = Scalar(f2, 2);  // = 0 in GF(2)
        CHECK(!solve(m, Vec{Scalar::one(f2)}));
    }
}

TEST_CASE("rank(kernel) + rank(image) = column count on random small matrices") {
    std::mt19937_64 rng(12345);
    FieldSpec fq = FieldSpec::rationals();
    FieldSpec f3 = FieldSpec::prime(3);
    for (int trial = 0; trial < 40; ++trial) {
        FieldSpec f = (trial % 2 == 0) ? fq : f3;
        int rows = 1 + static_cast<int>(rng() % 4), cols = 1 + static_cast<int>(rng() % 4);
        Mat m(f, rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                m.at(i, j) = Scalar(f, static_cast<long>(rng() % 5) - 2);
        auto ker = kernel_basis(m);
        for (const Vec& v : ker) CHECK(is_zero(m.apply(v)));
        CHECK(static_cast<int>(ker.size()) + rank(m) == cols);
    }
}

TEST_CASE("partial derivatives of rational expressions") {
    FieldSpec f = FieldSpec::rationals();
    std::vector<std::string> vars{"x", "y"};

    SUBCASE("d/dx x^2 y = 2xy") {
        RatExpr e = parse_ratexpr("x^2*y", f, vars);
        CHECK(e.partial("x").equals(parse_ratexpr("2*x*y", f, vars)));
    }
    SUBCASE("d/dx 1/x = -1/x^2, against the quotient-rule oracle") {
        RatExpr e = parse_ratexpr("1/x", f, vars);
        CHECK(e.partial("x").equals(parse_ratexpr("-1/(x^2)", f, vars)));
    }
    SUBCASE("d/dy x^2 = 0") {
        CHECK(parse_ratexpr("x^2", f, vars).partial("y").is_zero());
    }
    SUBCASE("unknown variable is rejected") {
        CHECK_THROWS_AS(parse_ratexpr("x", f, vars).partial("z"), input_error);
    }
}

TEST_CASE("partial obeys the Leibniz product rule on random rational expressions") {
    FieldSpec f = FieldSpec::rationals();
    std::vector<std::string> vars{"x", "y"};
    std::mt19937_64 rng(777);
    auto random_poly = [&]() {
        MPoly p(f, vars);
        for (int t = 0; t < 3; ++t) {
            Exp e{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
            p.add_term(e, Scalar(f, static_cast<long>(rng() % 7) - 3));
        }
        return p;
    };
    int done = 0;
    while (done < 25) {
        MPoly d1 = random_poly(), d2 = random_poly();
        if (d1.is_zero() || d2.is_zero()) continue;
        RatExpr a(random_poly(), d1), b(random_poly(), d2);
        RatExpr lhs = (a * b).partial("x");
        RatExpr rhs = a.partial("x") * b + a * b.partial("x");
        CHECK(lhs.equals(rhs));
        ++done;
    }
}

TEST_CASE("exact polynomial division") {
    FieldSpec f = FieldSpec::rationals();
    std::vector<std::string> vars{"x", "y"};
    MPoly a = parse_mpoly("x^2 - y^2", f, vars);
    MPoly b = parse_mpoly("x - y", f, vars);
    auto qd = a.divide_exact(b);
    REQUIRE(qd);
    CHECK(*qd == parse_mpoly("x + y", f, vars));
    CHECK(!parse_mpoly("x^2 + y", f, vars).divide_exact(b).has_value());
}
