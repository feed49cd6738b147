#include "finadd/errors.hpp"
#include "finadd/event.hpp"

#include <doctest.h>

#include <random>

using namespace finadd;

TEST_CASE("make_event builds masks") {
    AtomSpace s(3);
    CHECK(make_event(s, {0, 2}).to_bitstring() == "101");
    CHECK(make_event(s, {}).is_empty());
    CHECK(make_event(s, {0, 1, 2}).is_sure());
    CHECK_THROWS_AS(make_event(s, {3}), DomainError);
}

TEST_CASE("indicator") {
    AtomSpace s(3);
    for (std::size_t a = 0; a < 3; ++a) {
        CHECK(indicator(Event::sure(s), a) == 1);
        CHECK(indicator(Event::empty(s), a) == 0);
    }
    CHECK(indicator(make_event(s, {0, 2}), 1) == 0);
    CHECK_THROWS_AS(indicator(Event::sure(s), 3), DomainError);
}

TEST_CASE("set operations") {
    AtomSpace s(3);
    CHECK(unite(make_event(s, {0, 2}), make_event(s, {1})).to_bitstring() == "111");
    CHECK(complement(Event::sure(s)).to_bitstring() == "000");
    CHECK(intersect(make_event(s, {0, 1}), make_event(s, {1, 2})).to_bitstring() == "010");
    CHECK(difference(make_event(s, {0, 1}), make_event(s, {1, 2})).to_bitstring() == "100");
    AtomSpace other(3, {"a", "b", "c"});
    CHECK_THROWS_AS(unite(Event::sure(s), Event::sure(other)), DomainError);
}

TEST_CASE("complement laws and indicator additivity on random events") {
    std::mt19937_64 rng(11);
    for (std::size_t m : {1u, 5u, 63u, 64u, 65u, 130u}) {
        AtomSpace s(m);
        std::bernoulli_distribution coin(0.5);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::size_t> a_atoms, b_atoms;
            for (std::size_t i = 0; i < m; ++i) {
                if (coin(rng)) a_atoms.push_back(i);
                if (coin(rng)) b_atoms.push_back(i);
            }
            Event a = make_event(s, a_atoms), b = make_event(s, b_atoms);
            REQUIRE((a | ~a).is_sure());
            REQUIRE((a & ~a).is_empty());
            REQUIRE((~a).count() == m - a.count());
            Event bd = b - a;
            for (std::size_t w = 0; w < m; ++w)
                REQUIRE(indicator(a | bd, w) == indicator(a, w) + indicator(bd, w));
        }
    }
}

TEST_CASE("atom space validation") {
    CHECK_THROWS_AS(AtomSpace(0), DomainError);
    CHECK_THROWS_AS(AtomSpace(8, {}, 4), DomainError);
    CHECK_THROWS_AS(AtomSpace(2, {"x", "x"}), DomainError);
    CHECK_THROWS_AS(AtomSpace(2, {"x"}), DomainError);
    AtomSpace s(2, {"E", "F"});
    CHECK(s.find_label("F") == 1u);
    CHECK_FALSE(s.find_label("G"));
}

TEST_CASE("assessment rejects conflicting repeats") {
    AtomSpace s(2);
    Assessment a(s);
    a.add(make_event(s, {0}), Rat(1, 2));
    a.add(make_event(s, {0}), Rat(1, 2));
    CHECK(a.size() == 1);
    CHECK_THROWS_AS(a.add(make_event(s, {0}), Rat(1, 3)), DomainError);
    CHECK(a.price_of(make_event(s, {0})) == Rat(1, 2));
    CHECK_FALSE(a.price_of(make_event(s, {1})));
}
