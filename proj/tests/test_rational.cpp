#include "zxopt/rational.hpp"

#include "doctest.h"

using zxopt::Phase;

TEST_SUITE_BEGIN("rational");

TEST_CASE("reduction mod 2pi and lowest terms") {
    CHECK(Phase::of(1, 4) + Phase::of(1, 4) == Phase::of(1, 2));
    CHECK(Phase::of(7, 4) + Phase::of(1, 4) == Phase::zero());
    CHECK(Phase::of(9, 4) == Phase::of(1, 4));
    CHECK(Phase::of(-1, 4) == Phase::of(7, 4));
    CHECK(Phase::of(2, 8) == Phase::of(1, 4));
    CHECK(Phase::of(1, -2) == Phase::of(3, 2));
}

TEST_CASE("classification") {
    CHECK(Phase::zero().is_pauli());
    CHECK(Phase::pi().is_pauli());
    CHECK(!Phase::half_pi().is_pauli());
    CHECK(Phase::half_pi().is_proper_clifford());
    CHECK(Phase::of(-1, 2).is_proper_clifford());
    CHECK(!Phase::pi().is_proper_clifford());
    CHECK(Phase::pi().is_clifford());
    CHECK(!Phase::quarter_pi().is_clifford());
}

TEST_CASE("negation and subtraction") {
    CHECK(-Phase::quarter_pi() == Phase::of(7, 4));
    CHECK(Phase::quarter_pi() - Phase::quarter_pi() == Phase::zero());
    CHECK(Phase::zero() - Phase::half_pi() == Phase::of(3, 2));
}

TEST_CASE("formatting") {
    CHECK(Phase::zero().str() == "0");
    CHECK(Phase::quarter_pi().str() == "pi/4");
    CHECK(Phase::of(3, 2).str() == "3pi/2");
    CHECK(Phase::pi().qasm_str() == "pi");
    CHECK(Phase::of(3, 4).qasm_str() == "3*pi/4");
}

TEST_CASE("zero denominator rejected") {
    CHECK_THROWS_AS(Phase::of(1, 0), zxopt::ZxError);
}

TEST_SUITE_END();
