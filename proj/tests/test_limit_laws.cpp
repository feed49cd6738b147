#include "finadd/coherence.hpp"
#include "finadd/counting_set.hpp"
#include "finadd/limit_laws.hpp"

#include <doctest.h>

#include <random>

using namespace finadd;

namespace {

// #(A ∩ {1..n}) by membership tests only
std::uint64_t brute_count(const CountingSet& a, std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= n; ++k) c += a.contains(k);
    return c;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

TEST_CASE("natural density of the basic descriptors") {
    CHECK(natural_density(CountingSet::finite({1, 5, 9})).value == 0);
    CHECK(natural_density(CountingSet::finite({1, 5, 9})).determined());
    auto even = natural_density(CountingSet::progression(2, 2));
    CHECK(even.determined());
    CHECK(even.value == Rat(1, 2));
    CHECK(natural_density(CountingSet::cofinite({2, 3, 7})).value == 1);

    auto geo = natural_density(CountingSet::geometric_blocks(2, 2, 0));
    CHECK_FALSE(geo.determined());
    CHECK_FALSE(geo.estimated);
    CHECK(geo.liminf == Rat(1, 3));
    CHECK(geo.limsup == Rat(2, 3));
}

TEST_CASE("geometric block bounds match counting ratios along the extremal subsequences") {
    for (std::uint64_t base : {2u, 3u})
        for (std::uint64_t period : {2u, 3u})
            for (std::uint64_t phase = 0; phase < period; ++phase) {
                CountingSet g = CountingSet::geometric_blocks(base, period, phase);
                auto d = natural_density(g);
                const Rat lo(base - 1, ipow(base, period) - 1);
                const Rat hi = lo * ipow(base, period - 1);
                CHECK(d.liminf == lo);
                CHECK(d.limsup == hi);
                // ratios at the block ends approach the bounds
                std::uint64_t k = 1;
                while (ipow(base, period * (k + 1) + phase + 1) < 400'000) ++k;
                const std::uint64_t top = ipow(base, period * k + phase + 1) - 1;   // end of a member block
                const std::uint64_t bottom = ipow(base, period * k + phase) - 1;    // end of a gap
                CHECK(g.count_up_to(top) == brute_count(g, top));
                CHECK(g.count_up_to(bottom) == brute_count(g, bottom));
                CHECK(to_double(abs(Rat(g.count_up_to(top), top) - hi)) < 0.01);
                CHECK(to_double(abs(Rat(g.count_up_to(bottom), bottom) - lo)) < 0.01);
            }
}

TEST_CASE("counting functions agree with membership scans") {
    std::vector<CountingSet> sets{
        CountingSet::finite({3, 4, 100}),
        CountingSet::cofinite({1, 2, 50}),
        CountingSet::progression(3, 7),
        CountingSet::blocks({{5, 9}, {20, 20}, {30, 45}}),
        CountingSet::geometric_blocks(2, 2, 1),
        CountingSet::unite(CountingSet::progression(1, 3), CountingSet::progression(2, 5)),
        CountingSet::intersect(CountingSet::progression(1, 2), CountingSet::cofinite({1, 3})),
        CountingSet::complement(CountingSet::progression(4, 4)),
    };
    for (const auto& s : sets)
        for (std::uint64_t n : {1u, 2u, 17u, 99u, 1000u}) REQUIRE(s.count_up_to(n) == brute_count(s, n));
}

TEST_CASE("densities are exact on periodic combinations") {
    auto u = CountingSet::unite(CountingSet::progression(1, 3), CountingSet::progression(2, 5));
    CHECK(natural_density(u).value == Rat(1, 3) + Rat(1, 5) - Rat(1, 15));
    CHECK(natural_density(CountingSet::complement(u)).value == 1 - (Rat(1, 3) + Rat(1, 5) - Rat(1, 15)));
    auto shifted = CountingSet::unite(CountingSet::geometric_blocks(2, 2, 0), CountingSet::finite({3}));
    CHECK(natural_density(shifted).liminf == Rat(1, 3));
}

TEST_CASE("finite additivity and monotonicity on the determinable class") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> step(1, 12);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t d = step(rng);
        std::uniform_int_distribution<std::uint64_t> res(1, d);
        const std::uint64_t r1 = res(rng), r2 = res(rng);
        if (r1 == r2) continue;
        CountingSet a = CountingSet::progression(r1, d), b = CountingSet::progression(r2, d);
        auto da = natural_density(a), db = natural_density(b), du = natural_density(CountingSet::unite(a, b));
        REQUIRE(du.determined());
        REQUIRE(du.value == da.value + db.value);
        REQUIRE(da.value <= du.value);
        auto with_finite = natural_density(CountingSet::unite(a, CountingSet::finite({r2})));
        REQUIRE(with_finite.value == da.value);
    }
}

TEST_CASE("sequences without a closed form are flagged as estimates") {
    // two interleaved geometric families have no modelled bounds
    auto odd = CountingSet::unite(CountingSet::geometric_blocks(2, 2, 0), CountingSet::geometric_blocks(3, 2, 0));
    auto d = natural_density(odd, DensityOptions{1u << 16});
    CHECK_FALSE(d.determined());
    CHECK(d.estimated);
    CHECK(d.liminf <= d.limsup);
}

TEST_CASE("limit_of_probabilities") {
    LimitPolicy with_witness;
    with_witness.witness = ConvergenceWitness{Rat(1), [](std::uint64_t n) { return Rat(1, n); }};
    auto up = limit_of_probabilities([](std::uint64_t n) { return 1 - Rat(1, n); }, with_witness);
    CHECK(up.determined());
    CHECK(up.value == 1);

    LimitPolicy blind;
    blind.horizon = 1000;
    auto alt = limit_of_probabilities([](std::uint64_t n) { return Rat(n % 2); }, blind);
    CHECK_FALSE(alt.determined());
    CHECK(alt.liminf == 0);
    CHECK(alt.limsup == 1);

    auto [seq, policy] = density_sequence(CountingSet::progression(2, 2));
    auto even = limit_of_probabilities(seq, policy);
    CHECK(even.determined());
    CHECK(even.value == Rat(1, 2));

    LimitPolicy wrong;
    wrong.witness = ConvergenceWitness{Rat(0), [](std::uint64_t n) { return Rat(1, n); }};
    CHECK_THROWS_AS(limit_of_probabilities([](std::uint64_t) { return Rat(1, 2); }, wrong), DomainError);
}

TEST_CASE("gamma mixtures") {
    ComponentSequence eventually_constant{[](std::uint64_t n) { return n >= 6 ? Rat(2, 9) : Rat(n, 7); }, 6, {}};
    CHECK(gamma_limit(eventually_constant) == Rat(2, 9));

    ComponentSequence vanishing{[](std::uint64_t n) { return Rat(1, n); }, {},
                                ConvergenceWitness{Rat(0), [](std::uint64_t n) { return Rat(1, n); }}};
    CHECK(gamma_limit(vanishing) == 0);

    ComponentSequence one{[](std::uint64_t) { return Rat(1); }, 1, {}};
    CHECK(gamma_limit(one) == 1);

    ComponentSequence blind{[](std::uint64_t n) { return Rat(n % 2); }, {}, {}};
    CHECK_THROWS_AS(gamma_limit(blind), UndeterminedError);

    auto point = point_mass_mixture();
    for (std::uint64_t first : {1u, 2u, 10u, 1000u}) CHECK(gamma_mixture_eval(point, tail_set(first)) == 1);
    CHECK(gamma_mixture_eval(point, CountingSet::finite({1, 2, 3})) == 0);
}

TEST_CASE("gamma law on singletons, the ground set and the interval partition") {
    GammaLaw gamma;
    CHECK(gamma.singleton(1) == 0);
    CHECK(gamma.singleton(12345) == 0);
    CHECK(gamma.ground() == 1);
    CHECK_THROWS_AS(gamma.measure(CountingSet::geometric_blocks(2, 2, 0)), UndeterminedError);

    auto report = interval_partition_check(6);
    REQUIRE(report.cells.size() == 6);
    CHECK(report.cells[0].lower == Rat(1, 2));
    CHECK(report.cells[0].upper == 1);
    CHECK(report.cells[0].enumeration_points == std::vector<std::uint64_t>{1});
    for (const auto& c : report.cells) CHECK(c.gamma_value == 0);
    CHECK(report.finite_union_value == 0);
    CHECK(report.total_value == 1);
    CHECK(report.drawback_realized);
}

TEST_CASE("determinable families induce coherent assessments") {
    std::vector<CountingSet> family{CountingSet::progression(1, 2), CountingSet::progression(1, 3),
                                    CountingSet::finite({2, 4}), CountingSet::cofinite({5})};
    const std::size_t k = family.size();
    AtomSpace cells(std::size_t{1} << k);
    Assessment a(cells);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> members;
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (c >> i & 1) members.push_back(c);
        a.add(make_event(cells, members), natural_density(family[i]).value);
    }
    // every cell of the generated partition has a density too
    for (std::size_t c = 0; c < cells.size(); ++c) {
        CountingSet cell = CountingSet::cofinite({});
        for (std::size_t i = 0; i < k; ++i)
            cell = CountingSet::intersect(cell, c >> i & 1 ? family[i] : CountingSet::complement(family[i]));
        CHECK(natural_density(cell).determined());
    }
    CHECK(check_coherence(a).coherent());
}
