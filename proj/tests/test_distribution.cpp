#include "finadd/distribution.hpp"
#include "finadd/errors.hpp"

#include <doctest.h>

#include <random>

using namespace finadd;

namespace {

StepDF unit_step_at_zero() { return StepDF::from_increments(0, {{Rat(0), Rat(1)}}); }

StepDF random_df(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(0, 4), loc(-6, 6), w(0, 5);
    std::vector<std::pair<Rat, Rat>> inc;
    std::vector<int> weights{w(rng), w(rng)};
    const int jumps = count(rng);
    for (int i = 0; i < jumps; ++i) weights.push_back(w(rng));
    int total = 0;
    for (int x : weights) total += x;
    if (total == 0) return StepDF::constant(Rat(1, 2));
    for (int i = 0; i < jumps; ++i) inc.emplace_back(Rat(loc(rng)), Rat(weights[2 + i], total));
    // weights[0] sits at -inf, weights[1] at +inf
    return StepDF::from_increments(Rat(weights[0], total), inc);
}

} // namespace

TEST_CASE("adherence interval at a unit jump") {
    auto a = adherence_interval(unit_step_at_zero(), Rat(0));
    CHECK(a.lower == 0);
    CHECK(a.upper == 1);
    auto flat = adherence_interval(unit_step_at_zero(), Rat(3));
    CHECK(flat.lower == 1);
    CHECK(flat.upper == 1);
}

TEST_CASE("mass consistency at a unit jump") {
    StepDF f = unit_step_at_zero();
    MassAssignment ok;
    ok.at_point[Rat(0)] = 0;
    ok.strict_below[Rat(0)] = 0;
    CHECK(check_mass_consistency(f, ok).empty());

    MassAssignment half;
    half.at_point[Rat(0)] = Rat(1, 2);
    half.strict_below[Rat(0)] = Rat(1, 4);
    CHECK(check_mass_consistency(f, half).empty());

    MassAssignment over;
    over.at_point[Rat(0)] = Rat(3, 4);
    over.strict_below[Rat(0)] = Rat(1, 2);
    auto v = check_mass_consistency(f, over);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "P{X<=d} above F(d+0)");

    MassAssignment negative;
    negative.at_point[Rat(0)] = Rat(-1, 4);
    CHECK_FALSE(check_mass_consistency(f, negative).empty());

    MassAssignment off_jump;
    off_jump.at_point[Rat(2)] = Rat(1, 10);
    CHECK_FALSE(check_mass_consistency(f, off_jump).empty());
}

TEST_CASE("StepDF rejects malformed levels") {
    CHECK_THROWS_AS(StepDF(PiecewiseLevels{Rat(1, 2), {{Rat(0), Rat(1, 2), Rat(1, 4)}}, Rat(1, 4)}), DomainError);
    CHECK_THROWS_AS(StepDF(PiecewiseLevels{Rat(0), {{Rat(0), Rat(1, 3), Rat(1)}}, Rat(1)}), DomainError);
    CHECK_THROWS_AS(StepDF(PiecewiseLevels{Rat(0), {}, Rat(1)}), DomainError);
    CHECK_THROWS_AS(StepDF::constant(Rat(3, 2)), DomainError);
}

TEST_CASE("mixtures of the two atomless-at-zero laws") {
    FaLaw above = jump_from_above_law(), below = jump_from_below_law();
    auto ca = above.chain_at(Rat(0));
    CHECK(ca.strictly_below == 0);
    CHECK(ca.at_or_below == 0);
    CHECK(ca.right_strict());
    CHECK_FALSE(ca.left_strict());
    auto cb = below.chain_at(Rat(0));
    CHECK(cb.strictly_below == 1);
    CHECK(cb.left_strict());
    CHECK_FALSE(cb.right_strict());

    CHECK(mixture(above, below, Rat(1)).masses.strict_below.at(Rat(0)) == 0);
    CHECK(mixture(above, below, Rat(0)).masses.strict_below.at(Rat(0)) == 1);

    FaLaw half = mixture(above, below, Rat(1, 2));
    CHECK(half.df == unit_step_at_zero());
    auto c = half.chain_at(Rat(0));
    CHECK(c.left_limit == 0);
    CHECK(c.strictly_below == Rat(1, 2));
    CHECK(c.at_or_below == Rat(1, 2));
    CHECK(c.right_limit == 1);
    CHECK(c.left_strict());
    CHECK(c.right_strict());
    CHECK(check_mass_consistency(half.df, half.masses).empty());

    CHECK_THROWS_AS(mixture(above, below, Rat(3, 2)), DomainError);
}

TEST_CASE("mixture levels are the weighted levels") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(0, 7);
    for (int trial = 0; trial < 300; ++trial) {
        StepDF f = random_df(rng), g = random_df(rng);
        Rat p(num(rng), 7);
        StepDF h = mixture(f, g, p);
        CHECK(h.limit_at_minus_inf() == p * f.limit_at_minus_inf() + (1 - p) * g.limit_at_minus_inf());
        CHECK(h.adherent_mass_plus_inf() == p * f.adherent_mass_plus_inf() + (1 - p) * g.adherent_mass_plus_inf());
        for (int k = -14; k <= 14; ++k) {
            Rat x(k, 2);
            REQUIRE(h.left_limit(x) == p * f.left_limit(x) + (1 - p) * g.left_limit(x));
            REQUIRE(h.right_limit(x) == p * f.right_limit(x) + (1 - p) * g.right_limit(x));
        }
        // total mass splits into adherent parts and interior variation
        REQUIRE(h.adherent_mass_minus_inf() + h.interior_variation() + h.adherent_mass_plus_inf() == 1);
    }
}

TEST_CASE("weak limits of the reference families") {
    auto fre = weak_limit_classify(frechet_member, PiecewiseLevels{Rat(1, 2), {}, Rat(1, 2)});
    CHECK(fre.classification == DfClass::FinitelyAdditiveProper);
    CHECK(fre.mass_minus_inf == Rat(1, 2));
    CHECK(fre.mass_plus_inf == Rat(1, 2));

    auto esc = weak_limit_classify(escaping_step_member, PiecewiseLevels{0, {}, 0});
    CHECK(esc.classification == DfClass::FinitelyAdditiveProper);
    CHECK(esc.mass_minus_inf == 0);
    CHECK(esc.mass_plus_inf == 1);

    auto fixed = weak_limit_classify([](std::uint64_t) { return unit_step_at_zero(); },
                                     PiecewiseLevels{0, {{Rat(0), 0, 1}}, 1});
    CHECK(fixed.classification == DfClass::CountablyAdditiveProper);
    CHECK(fixed.mass_minus_inf == 0);
    CHECK(fixed.mass_plus_inf == 0);

    CHECK_THROWS_AS(weak_limit_classify(frechet_member, PiecewiseLevels{0, {}, 1}), DomainError);
    CHECK(classify(PiecewiseLevels{Rat(1), {}, Rat(0)}) == DfClass::NotADistribution);
    CHECK(to_string(DfClass::FinitelyAdditiveProper) == "proper-finitely-additive");
}

TEST_CASE("Frechet members carry their two half masses at -n and n") {
    for (std::uint64_t n : {1u, 5u, 100u}) {
        StepDF f = frechet_member(n);
        CHECK(f.jump_at(Rat(-static_cast<long>(n))) == Rat(1, 2));
        CHECK(f.jump_at(Rat(n)) == Rat(1, 2));
        CHECK(f.left_limit(Rat(0)) == Rat(1, 2));
    }
}
