#include "doctest.h"

#include "arp/numeric.hpp"

using namespace arp;

TEST_CASE("A1 rows match the partition definition") {
    Mat3i a1 = named_matrix("A1");
    CHECK(a1(0, 0) == 1);
    CHECK(a1(0, 1) == 1);
    CHECK(a1(0, 2) == 1);
    CHECK(a1(1, 0) == 0);
    CHECK(a1(1, 1) == 1);
    CHECK(a1(1, 2) == 0);
    CHECK(a1(2, 0) == 0);
    CHECK(a1(2, 1) == 0);
    CHECK(a1(2, 2) == 1);
}

TEST_CASE("Id label returns the identity") {
    CHECK(named_matrix("Id") == Mat3i::identity());
    CHECK(named_matrix("id") == Mat3i::identity());
}

TEST_CASE("det(P21*H21) is 1") {
    Mat3i q = named_matrix("P21") * named_matrix("H21");
    CHECK(q.det() == 1);
}

TEST_CASE("all fifteen named matrices are unimodular with nonnegative entries") {
    for (auto name : {MatName::A1, MatName::A2, MatName::A3, MatName::P12, MatName::P13,
                      MatName::P21, MatName::P23, MatName::P31, MatName::P32, MatName::H12,
                      MatName::H13, MatName::H21, MatName::H23, MatName::H31, MatName::H32}) {
        Mat3i m = named_matrix(name);
        CHECK(m.det() == 1);
        CHECK(m.all_nonnegative());
    }
}

TEST_CASE("unimodular inverse round-trips") {
    for (auto name : {MatName::A2, MatName::P13, MatName::H32}) {
        Mat3i m = named_matrix(name);
        CHECK(m * m.unimodular_inverse() == Mat3i::identity());
        CHECK(m.unimodular_inverse() * m == Mat3i::identity());
    }
}

TEST_CASE("unknown label is rejected") {
    CHECK_THROWS_AS(named_matrix("A4"), UnknownLabel);
    CHECK_THROWS_AS(named_matrix(""), UnknownLabel);
    CHECK_THROWS_AS(named_matrix("Q12"), UnknownLabel);
}

TEST_CASE("label round trip") {
    for (int i = 0; i < 16; ++i) {
        auto n = static_cast<MatName>(i);
        CHECK(parse_matrix_label(matrix_label(n)) == n);
    }
}
