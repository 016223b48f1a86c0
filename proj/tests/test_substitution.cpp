#include "doctest.h"

#include <random>

#include "arp/substitution.hpp"

using namespace arp;

TEST_CASE("printed images of the nine substitutions") {
    auto expect = [](std::string_view label, const char* i1, const char* i2, const char* i3) {
        Substitution s = named_substitution(label);
        CHECK(s.images[0] == i1);
        CHECK(s.images[1] == i2);
        CHECK(s.images[2] == i3);
    };
    expect("p23", "123", "23", "3");
    expect("p13", "13", "213", "3");
    expect("a3", "13", "23", "3");
    expect("p12", "12", "2", "312");
    expect("p32", "132", "2", "32");
    expect("a2", "12", "2", "32");
    expect("p31", "1", "231", "31");
    expect("p21", "1", "21", "321");
    expect("a1", "1", "21", "31");
}

TEST_CASE("unknown substitution label") {
    CHECK_THROWS_AS(named_substitution("a4"), UnknownLabel);
    CHECK_THROWS_AS(named_substitution("p11"), UnknownLabel);
}

TEST_CASE("application") {
    CHECK(named_substitution("a2")(Word("1")) == "12");
    CHECK(named_substitution("p23")(Word("11")) == "123123");
    CHECK(named_substitution("a3")(Word("3")) == "3");
    CHECK(named_substitution("p13")(Word("")) == "");
}

TEST_CASE("incidence matrices match the named partition matrices") {
    for (Sub s : kAllSubs)
        CHECK(incidence(named_substitution(s)) == named_matrix(sub_matrix_name(s)));
}

TEST_CASE("incidence is multiplicative over composition on all 81 pairs") {
    for (Sub a : kAllSubs)
        for (Sub b : kAllSubs) {
            Substitution c = compose(named_substitution(a), named_substitution(b));
            CHECK(incidence(c) == incidence(a) * incidence(b));
        }
}

TEST_CASE("compositions from the running example") {
    Substitution a2 = named_substitution("a2");
    Substitution p13 = named_substitution("p13");
    CHECK(compose(a2, p13)(Word("1")) == "1232");
    CHECK(compose(a2, compose(p13, a2))(Word("1")) == "123221232");
    CHECK(compose(a2, identity_substitution()) == a2);
    std::vector<Sub> seq = {Sub::a2, Sub::p13, Sub::a2, Sub::a3};
    CHECK(compose(seq)(Word("1")) == "1232212323221232");
}

TEST_CASE("abelianization") {
    CHECK(abelianize("123221232") == Abelian{2, 5, 2});
    CHECK(abelianize("") == Abelian{0, 0, 0});
}

TEST_CASE("abelianization is compatible with incidence") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> len(0, 40), letter(0, 2), pick(0, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        Word w;
        int n = len(rng);
        for (int i = 0; i < n; ++i) w += index_letter(letter(rng));
        Sub s = kAllSubs[static_cast<std::size_t>(pick(rng))];
        Abelian lhs = abelianize(named_substitution(s)(w));
        Abelian in = abelianize(w);
        Mat3i m = incidence(s);
        for (int r = 0; r < 3; ++r) {
            long long acc = 0;
            for (int c = 0; c < 3; ++c) acc += m(r, c) * in[static_cast<std::size_t>(c)];
            CHECK(acc == lhs[static_cast<std::size_t>(r)]);
        }
    }
}

TEST_CASE("every image starts with its letter and images form a prefix code") {
    for (Sub s : kAllSubs) {
        Substitution sub = named_substitution(s);
        for (int c = 0; c < 3; ++c) {
            CHECK(sub.images[static_cast<std::size_t>(c)].front() == index_letter(c));
            CHECK(!sub.images[static_cast<std::size_t>(c)].empty());
        }
        // prefix code: no image is a prefix of another
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a == b) continue;
                const Word& wa = sub.images[static_cast<std::size_t>(a)];
                const Word& wb = sub.images[static_cast<std::size_t>(b)];
                CHECK(wb.substr(0, wa.size()) != wa);
            }
    }
}

TEST_CASE("homomorphism over concatenation") {
    Substitution s = named_substitution("p31");
    Word u = "1231", v = "332";
    CHECK(s(u + v) == s(u) + s(v));
}

TEST_CASE("serialization round trips") {
    CHECK(serialize(named_substitution("p23")) == "p23");
    Substitution custom = parse_substitution("1>12;2>2;3>31");
    CHECK(custom.images[0] == "12");
    CHECK(serialize(custom) == "1>12;2>2;3>31");
    CHECK(parse_substitution("a1") == named_substitution("a1"));
    CHECK_THROWS_AS(parse_substitution("1>12;2>2"), ParseError);
    CHECK_THROWS_AS(parse_substitution("1>12;2>2;3>"), ParseError);
    CHECK_THROWS_AS(parse_substitution("1>12;2>2;3>34"), ParseError);
}

TEST_CASE("directive label parsing") {
    auto seq = parse_directive_labels("a2 p13  A2\na3");
    REQUIRE(seq.size() == 4);
    CHECK(seq[0] == Sub::a2);
    CHECK(seq[1] == Sub::p13);
    CHECK(seq[2] == Sub::a2);
    CHECK(seq[3] == Sub::a3);
    CHECK(format_directive_labels(seq) == "a2 p13 a2 a3");
}
