#include <doctest.h>

#include "core/error.hpp"
#include "core/twist_parse.hpp"

using namespace twistdeform;

TEST_CASE("lambda clauses store half the written coefficient") {
    auto g = LieAlgebra::su(2);

    auto t = parse_twist(g, "l12=0.9");
    CHECK(t.term_count() == 1);
    CHECK(t.coefficient({1, 2}) == Rational(9, 20));

    t = parse_twist(g, "l23=1, l13=-0.5");
    CHECK(t.coefficient({2, 3}) == Rational(1, 2));
    CHECK(t.coefficient({1, 3}) == Rational(-1, 4));

    /* reversed index order flips the sign */
    t = parse_twist(g, "l21=1");
    CHECK(t.coefficient({1, 2}) == Rational(-1, 2));

    /* clauses accumulate */
    t = parse_twist(g, "l12=1 l12=1");
    CHECK(t.coefficient({1, 2}) == Rational(1));

    t = parse_twist(g, "0");
    CHECK(t.is_zero());
}

TEST_CASE("dot form reaches multi-digit indices") {
    auto g = LieAlgebra::abelian(12);
    auto t = parse_twist(g, "l1.12=3");
    CHECK(t.coefficient({1, 12}) == Rational(3, 2));
    CHECK_THROWS_AS(parse_twist(g, "l112=3"), Error);
}

TEST_CASE("wedge clauses add the literal decomposable") {
    auto su2 = LieAlgebra::su(2);
    auto t = parse_twist(su2, "X12^Y12:1/4");
    CHECK(t.coefficient({1, 2}) == Rational(1, 4));

    auto su3 = LieAlgebra::su(3);
    /* Y23 = e6, Z1 = e7, Z2 = e8 */
    t = parse_twist(su3, "Y23^(2Z1-Z2):0.5");
    CHECK(t.term_count() == 2);
    CHECK(t.coefficient({6, 7}) == Rational(1));
    CHECK(t.coefficient({6, 8}) == Rational(-1, 2));

    t = parse_twist(su2, "(X12+Y12)^(X12-Y12):1");
    CHECK(t.coefficient({1, 2}) == Rational(-2));

    t = parse_twist(su2, "X12^Y12:0");
    CHECK(t.is_zero());
}

TEST_CASE("malformed twist specs are parse errors") {
    auto g = LieAlgebra::su(2);
    auto code = [&](const std::string& spec) {
        try {
            parse_twist(g, spec);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Numeric;
    };
    CHECK(code("") == ErrorCode::Parse);
    CHECK(code("l12") == ErrorCode::Parse);
    CHECK(code("l1=3") == ErrorCode::Parse);
    CHECK(code("l11=1") == ErrorCode::Parse);
    CHECK(code("l14=1") == ErrorCode::Parse);
    CHECK(code("l12=x") == ErrorCode::Parse);
    CHECK(code("foo") == ErrorCode::Parse);
    CHECK(code("X12^Y12") == ErrorCode::Parse);
    CHECK(code("X12^:1") == ErrorCode::Parse);
    CHECK(code("Q1^X12:1") == ErrorCode::Parse);
    CHECK(code("(2Q1)^X12:1") == ErrorCode::Parse);
    CHECK(code("(X12^Y12:1") == ErrorCode::Parse);
    CHECK(code("X12^Y12:1/0") == ErrorCode::Parse);
}
