#include "finadd/bernoulli.hpp"
#include "finadd/errors.hpp"
#include "oracles/gmp_rat.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace finadd;

namespace {

std::vector<bool> bits_of(std::uint64_t mask, std::size_t len) {
    std::vector<bool> b(len);
    for (std::size_t i = 0; i < len; ++i) b[i] = mask >> i & 1;
    return b;
}

// Path positions 1..n-1 from the prefix, a 1 at n, then the factorial
// blocks laid out explicitly: zeros on [(2k-1)!, (2k)!-1], ones on
// [(2k)!, (2k+1)!-1] of the tail index j = position - n.
std::vector<int> materialized_factorial_path(const std::vector<bool>& prefix, std::uint64_t length) {
    std::vector<int> path(prefix.begin(), prefix.end());
    path.push_back(1);
    std::uint64_t fact = 1, k = 1;   // fact = k!
    bool value = false;
    while (path.size() < length) {
        const std::uint64_t next = fact * (k + 1);
        for (std::uint64_t j = fact; j < next && path.size() < length; ++j) path.push_back(value);
        fact = next;
        ++k;
        value = !value;
    }
    return path;
}

// P(|f_k - p| <= eps for n <= k <= n+m) by summing over all 2^(n+m) paths.
mpq_class cantelli_brute(const mpq_class& p, const mpq_class& eps, unsigned n, unsigned m) {
    const unsigned len = n + m;
    mpq_class total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
        unsigned ones = 0;
        bool inside = true;
        for (unsigned k = 1; k <= len; ++k) {
            ones += mask >> (k - 1) & 1;
            if (k >= n) {
                mpq_class f(ones, k);
                f.canonicalize();
                if (abs(f - p) > eps) {
                    inside = false;
                    break;
                }
            }
        }
        if (inside) {
            const unsigned c = static_cast<unsigned>(__builtin_popcountll(mask));
            total += oracle::power(p, c) * oracle::power(1 - p, len - c);
        }
    }
    return total;
}

} // namespace

TEST_CASE("cylinders") {
    Cylinder c({{3, true}, {1, false}});
    CHECK(c.max_index() == 3);
    CHECK(c.ones() == 1);
    CHECK(c.constraints().front().index == 1);
    CHECK_THROWS_AS(Cylinder({{0, true}}), DomainError);
    CHECK_THROWS_AS(Cylinder({{2, true}, {2, false}}), DomainError);
    CHECK(Cylinder::prefix({true, false, true}).size() == 3);
}

TEST_CASE("component probabilities") {
    const Rat p(1, 3);
    TailLaw q = TailLaw::zeros(p);
    CHECK(component_prob(q, 1, Cylinder({{1, true}})) == 1);
    CHECK(component_prob(q, 1, Cylinder({{1, false}})) == 0);
    CHECK(component_prob(q, 1, Cylinder({{2, true}})) == 0);
    CHECK(component_prob(q, 2, Cylinder({{1, false}, {2, true}, {3, false}})) == Rat(2, 3));

    Cylinder cyl = Cylinder::prefix({true, false, true, true});
    for (std::uint64_t n = 5; n < 12; ++n) CHECK(component_prob(q, n, cyl) == pow(p, 3) * (1 - p));

    // exchangeable tail: coordinates past the jump carry theta, those before it carry p
    const Rat theta(3, 4);
    TailLaw qss = TailLaw::exchangeable(p, PointMass{theta});
    Cylinder tail({{4, true}, {5, false}, {6, true}});
    CHECK(component_prob(qss, 3, tail) == theta * theta * (1 - theta));
    CHECK(component_prob(qss, 7, tail) == p * p * (1 - p));

    TailLaw qs = TailLaw::factorial_blocks(p);
    CHECK(component_prob(qs, 1, Cylinder({{2, false}, {3, true}})) == 1);
    CHECK(component_prob(qs, 1, Cylinder({{2, true}})) == 0);
}

TEST_CASE("mixture probabilities equal the Bernoulli product for every tail") {
    CHECK(mixture_prob(TailLaw::zeros(Rat(1, 3)), Cylinder({{1, true}, {2, false}})) == Rat(2, 9));
    CHECK(mixture_prob(TailLaw::zeros(Rat(1, 3)), Cylinder()) == 1);

    std::vector<TailLaw> laws{TailLaw::zeros(Rat(2, 7)), TailLaw::factorial_blocks(Rat(2, 7)),
                              TailLaw::exchangeable(Rat(2, 7), BetaMixing{Rat(2), Rat(5)}),
                              TailLaw::exchangeable(Rat(2, 7), PointMass{Rat(9, 10)})};
    for (const auto& law : laws)
        for (std::size_t len = 0; len <= 6; ++len)
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
                Cylinder cyl = Cylinder::prefix(bits_of(mask, len));
                REQUIRE(oracle::same(mixture_prob(law, cyl),
                                     oracle::bernoulli_product(mpq_class(2, 7), __builtin_popcountll(mask), len)));
            }
}

TEST_CASE("components are finitely additive on refinements") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::uint64_t> idx(1, 14), comp(1, 10);
    std::bernoulli_distribution coin(0.5);
    std::vector<TailLaw> laws{TailLaw::zeros(Rat(1, 4)), TailLaw::factorial_blocks(Rat(1, 4)),
                              TailLaw::exchangeable(Rat(1, 4), BetaMixing{Rat(1), Rat(1)})};
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<CylinderConstraint> cons;
        for (int i = 0; i < 3; ++i) {
            std::uint64_t k = idx(rng);
            if (std::none_of(cons.begin(), cons.end(), [&](auto& c) { return c.index == k; }))
                cons.push_back({k, coin(rng)});
        }
        std::uint64_t extra = idx(rng);
        if (std::any_of(cons.begin(), cons.end(), [&](auto& c) { return c.index == extra; })) continue;
        auto with0 = cons, with1 = cons;
        with0.push_back({extra, false});
        with1.push_back({extra, true});
        const std::uint64_t n = comp(rng);
        for (const auto& law : laws)
            REQUIRE(component_prob(law, n, Cylinder(cons)) ==
                    component_prob(law, n, Cylinder(with0)) + component_prob(law, n, Cylinder(with1)));
    }
}

TEST_CASE("mixing laws") {
    CHECK(mixing_moment(BetaMixing{Rat(1), Rat(1)}, 1, 1) == Rat(1, 6));
    CHECK(mixing_moment(BetaMixing{Rat(2), Rat(3)}, 2, 0) == Rat(2 * 3, 5 * 6));
    CHECK(mixing_moment(DiscreteMixing{{{Rat(0), Rat(1, 2)}, {Rat(1), Rat(1, 2)}}}, 3, 0) == Rat(1, 2));
    CHECK(mixing_moment(PointMass{Rat(1, 2)}, 2, 1) == Rat(1, 8));
    CHECK(mixing_cdf(BetaMixing{Rat(1), Rat(1)}, 0.3) == doctest::Approx(0.3));
    CHECK(mixing_cdf(PointMass{Rat(1, 2)}, 0.4) == 0.0);
    CHECK(mixing_cdf(PointMass{Rat(1, 2)}, 0.5) == 1.0);
    CHECK_THROWS_AS(validate(PointMass{Rat(3, 2)}), DomainError);
    CHECK_THROWS_AS(validate(BetaMixing{Rat(0), Rat(1)}), DomainError);
    CHECK_THROWS_AS(validate(DiscreteMixing{{{Rat(1, 2), Rat(1, 3)}}}), DomainError);
    auto q = mixing_from_quantiles({Rat(1, 4), Rat(3, 4)});
    CHECK(mixing_moment(q, 1, 0) == Rat(1, 2));
}

TEST_CASE("frequency paths") {
    auto q = tail_frequency_path(TailLaw::zeros(Rat(1, 2)), {true, false, true}, 4, 1000);
    CHECK(q.at(4) == Rat(3, 4));
    CHECK(q.at(1000) == Rat(3, 1000));
    CHECK_THROWS_AS(q.at(1001), DomainError);

    auto point = tail_frequency_path(TailLaw::exchangeable(Rat(1, 2), PointMass{Rat(1, 5)}), {}, 1, 100'000, 3);
    const double band = 5 * std::sqrt(0.2 * 0.8 / 100'000);
    CHECK(std::abs(point.approx(100'000) - 0.2) < band);

    auto a = tail_frequency_path(TailLaw::exchangeable(Rat(1, 2), BetaMixing{Rat(1), Rat(1)}), {}, 1, 5000, 42);
    auto b = tail_frequency_path(TailLaw::exchangeable(Rat(1, 2), BetaMixing{Rat(1), Rat(1)}), {}, 1, 5000, 42);
    CHECK(a.at(5000) == b.at(5000));
}

TEST_CASE("factorial tail bits") {
    auto path = materialized_factorial_path({}, 800);
    for (std::uint64_t j = 1; j < 800; ++j) REQUIRE(factorial_tail_bit(j) == static_cast<bool>(path[j]));
}

TEST_CASE("oscillation checkpoints match materialized paths") {
    for (std::uint64_t n : {1u, 2u, 3u, 5u}) {
        std::vector<bool> prefix(n - 1);
        for (std::size_t i = 0; i < prefix.size(); i += 2) prefix[i] = true;
        const std::uint64_t prefix_ones = std::count(prefix.begin(), prefix.end(), true);
        auto cps = oscillation_checkpoints(n, 3, prefix_ones);
        REQUIRE(cps.size() == 3);
        auto path = materialized_factorial_path(prefix, n + 5040);
        auto freq = tail_frequency_path(TailLaw::factorial_blocks(Rat(1, 2)), prefix, n, n + 5040);
        auto ones_to = [&](std::uint64_t k) {
            std::uint64_t c = 0;
            for (std::uint64_t i = 0; i < k; ++i) c += path[i];
            return c;
        };
        for (const auto& cp : cps) {
            const auto lo = cp.low_index.convert_to<std::uint64_t>(), hi = cp.high_index.convert_to<std::uint64_t>();
            CHECK(cp.low_frequency == Rat(ones_to(lo), lo));
            CHECK(cp.high_frequency == Rat(ones_to(hi), hi));
            CHECK(freq.at(lo) == cp.low_frequency);
            CHECK(freq.at(hi) == cp.high_frequency);
        }
    }
    auto first = oscillation_checkpoints(1, 3);
    CHECK(first[0].low_index == 2);
    CHECK(first[0].high_index == 6);
    CHECK(first[2].low_frequency == Rat(101, 720));
    CHECK(first[2].high_frequency == Rat(4421, 5040));
}

TEST_CASE("oscillation checkpoints drift toward 0 and 1") {
    for (std::uint64_t n : {1u, 2u, 10u}) {
        auto cps = oscillation_checkpoints(n, 12);
        for (std::size_t i = 1; i < cps.size(); ++i) {
            if (cps[i - 1].nu >= 2) CHECK(cps[i].low_frequency < cps[i - 1].low_frequency);
            CHECK(cps[i].high_frequency > cps[i - 1].high_frequency);
        }
        CHECK(to_double(cps[7].low_frequency) < 0.06);
        CHECK(to_double(cps[7].high_frequency) > 0.94);
        if (n <= 2)
            for (const auto& cp : cps) CHECK(cp.high_frequency >= 1 - Rat(2, 2 * cp.nu + 1));
    }
    CHECK_THROWS_AS(oscillation_checkpoints(1, 13), CapExceededError);
}

TEST_CASE("Cantelli probabilities against path enumeration") {
    CHECK(cantelli_probability(Rat(1, 2), Rat(3, 10), 4, 2) == Rat(3, 4));
    CHECK(cantelli_probability(Rat(1, 2), Rat(1, 4), 8, 6) == Rat(819, 1024));
    for (Rat p : {Rat(1, 2), Rat(1, 3), Rat(3, 5)})
        for (Rat eps : {Rat(1, 10), Rat(1, 4), Rat(1, 3)})
            for (unsigned n = 1; n <= 8; ++n)
                for (unsigned m = 0; n + m <= 12; m += 3) {
                    auto fast = cantelli_probability(p, eps, n, m);
                    REQUIRE(oracle::same(fast, cantelli_brute(oracle::to_mpq(p), oracle::to_mpq(eps), n, m)));
                }
}

TEST_CASE("Cantelli profile is nonincreasing in m") {
    for (Rat p : {Rat(1, 2), Rat(1, 5)}) {
        auto prof = cantelli_profile(p, Rat(1, 5), 6, 40);
        REQUIRE(prof.size() == 41);
        for (std::size_t m = 1; m < prof.size(); ++m) REQUIRE(prof[m] <= prof[m - 1]);
        CHECK(prof[7] == cantelli_probability(p, Rat(1, 5), 6, 7));
    }
    CHECK_THROWS_AS(cantelli_probability(Rat(1, 2), Rat(1, 4), 60, 10), CapExceededError);
    CHECK_NOTHROW(cantelli_probability(Rat(1, 2), Rat(1, 4), 60, 10, CantelliOptions{128}));
}

TEST_CASE("Monte Carlo Cantelli estimate brackets the exact value") {
    auto mc = cantelli_monte_carlo(Rat(1, 2), Rat(1, 4), 8, 6, 40'000, 9);
    CHECK(std::abs(mc.value - 819.0 / 1024) < 5 * mc.standard_error);
}

TEST_CASE("n0 search") {
    CHECK(find_n0(Rat(1, 2), Rat(1, 4), Rat(1), 16) == 1u);
    CHECK(find_n0(Rat(1, 3), Rat(1, 10), Rat(1), 4) == 1u);
    CHECK(find_n0(Rat(1, 2), Rat(1, 2), Rat(1, 100), 16) == 1u);
    CHECK(find_n0(Rat(1, 2), Rat(1, 4), Rat(1, 4), 16) == 7u);
    CHECK_FALSE(find_n0(Rat(1, 2), Rat(1, 100), Rat(1, 100), 4, CantelliOptions{16}).has_value());
}

TEST_CASE("exchangeable tails reproduce the mixing law in the limit") {
    const MixingLaw h = BetaMixing{Rat(1), Rat(1)};
    const TailLaw law = TailLaw::exchangeable(Rat(1, 2), h);
    std::vector<double> finals;
    for (std::uint64_t seed = 0; seed < 400; ++seed)
        finals.push_back(tail_frequency_path(law, {}, 1, 4000, seed).approx(4000));
    std::sort(finals.begin(), finals.end());
    double ks = 0;
    for (std::size_t i = 0; i < finals.size(); ++i) {
        const double f = mixing_cdf(h, finals[i]);
        ks = std::max({ks, std::abs(double(i + 1) / finals.size() - f), std::abs(double(i) / finals.size() - f)});
    }
    CHECK(ks < 0.1);
}
