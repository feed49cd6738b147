#include "finadd/errors.hpp"
#include "finadd/symbols.hpp"
#include "oracles/gmp_rat.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

using namespace finadd;

namespace {

// Exhaustive count over all N^n words: (#distinct words, #words with symbol
// k at most r times).
std::pair<mpq_class, mpq_class> enumerate_words(unsigned big_n, unsigned n, unsigned k, unsigned r) {
    std::vector<unsigned> word(n, 0);
    mpz_class distinct = 0, rare = 0, total = 0;
    while (true) {
        std::set<unsigned> seen(word.begin(), word.end());
        if (seen.size() == n) ++distinct;
        unsigned hits = 0;
        for (unsigned s : word) hits += s + 1 == k;
        if (hits <= r) ++rare;
        ++total;
        unsigned i = 0;
        while (i < n && ++word[i] == big_n) word[i++] = 0;
        if (i == n) break;
    }
    return {mpq_class(distinct, total), mpq_class(rare, total)};
}

} // namespace

TEST_CASE("distinctness probabilities") {
    CHECK(distinctness_prob(4, 2) == Rat(3, 4));
    CHECK(distinctness_prob(7, 1) == 1);
    CHECK(distinctness_prob(3, 4) == 0);
    for (std::uint64_t big_n = 1; big_n <= 100; big_n += 3)
        for (std::uint64_t n = 1; n <= 20; ++n)
            REQUIRE(oracle::same(distinctness_prob(big_n, n), oracle::falling_factorial_ratio(big_n, n)));
    CHECK_THROWS_AS(distinctness_prob(0, 1), DomainError);
}

TEST_CASE("symbol process against word enumeration") {
    for (unsigned big_n = 1; big_n <= 4; ++big_n)
        for (unsigned n = 1; n <= 5; ++n) {
            SymbolProcess proc(big_n, n);
            for (unsigned k = 1; k <= big_n + 1; ++k)
                for (unsigned r = 0; r <= 2; ++r) {
                    auto [distinct, rare] = enumerate_words(big_n, n, k, r);
                    REQUIRE(oracle::same(proc.distinct(), distinct));
                    REQUIRE(oracle::same(proc.count_at_most(k, r), rare));
                }
            CHECK(proc.coordinate(1) == Rat(1, big_n));
            CHECK(proc.coordinate(big_n + 1) == 0);
        }
}

TEST_CASE("distinctness limit") {
    for (std::uint64_t n : {1u, 2u, 5u, 20u}) CHECK(distinctness_limit(n) == 1);
}

TEST_CASE("frequency dilution") {
    std::vector<Rat> p{Rat(1, 2), Rat(1, 4), Rat(1, 4)};
    auto r = frequency_dilution_check(p, 2, 5);
    CHECK(r.k_bar == 1);
    CHECK(r.p_bar == Rat(1, 2));
    CHECK(r.threshold == Rat(1, 4));
    CHECK(r.frequency_bound == Rat(1, 5));
    CHECK(r.required_n == 5);
    CHECK(r.mixture_probability == 1);
    REQUIRE(r.grid.size() >= 2);
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        CHECK(r.grid[i].inner >= r.grid[i].distinct);
        if (i > 0) {
            CHECK(r.grid[i].alphabet > r.grid[i - 1].alphabet);
            CHECK(r.grid[i].inner >= r.grid[i - 1].inner);
        }
    }

    try {
        frequency_dilution_check(p, 2, 4);
        FAIL("expected a precondition error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("n >= 5") != std::string::npos);
    }
    CHECK_THROWS_AS(frequency_dilution_check({Rat(1, 2), Rat(1, 3)}, 2, 9), DomainError);
}

TEST_CASE("SLLN simulation") {
    auto one = slln_simulation(1, 1000, 0);
    REQUIRE(one.frequencies.size() == 1);
    CHECK(one.frequencies[0] == 1);
    CHECK(one.max_frequency_beyond == 0);

    for (std::uint64_t big_n : {2u, 10u, 50u}) {
        auto r = slln_simulation(big_n, 100'000, 11);
        CHECK(r.within_band);
        CHECK(r.band == doctest::Approx(5 * std::sqrt((1.0 / big_n) * (1 - 1.0 / big_n) / 100'000)));
        CHECK(r.max_frequency_beyond == 0);
        CHECK(r.frequency_sum == 1);
    }
    auto a = slln_simulation(10, 5000, 4), b = slln_simulation(10, 5000, 4);
    CHECK(a.frequencies == b.frequencies);
}
