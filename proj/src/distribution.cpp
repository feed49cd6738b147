#include "finadd/distribution.hpp"

#include "finadd/errors.hpp"

#include <algorithm>
#include <set>

namespace finadd {

namespace {

PiecewiseLevels drop_flat_jumps(PiecewiseLevels levels) {
    std::erase_if(levels.jumps, [](const JumpPoint& j) { return j.left == j.right; });
    return levels;
}

Rat clamp_unit_check(const Rat& p) {
    if (p < 0 || p > 1) throw DomainError("mixing weight " + to_string(p) + " outside [0,1]");
    return p;
}

} // namespace

std::optional<std::string> StepDF::defect(const PiecewiseLevels& levels) {
    auto in_unit = [](const Rat& v) { return v >= 0 && v <= 1; };
    if (!in_unit(levels.minus_inf)) return "level at -inf outside [0,1]";
    if (!in_unit(levels.plus_inf)) return "level at +inf outside [0,1]";
    Rat level = levels.minus_inf;
    for (std::size_t i = 0; i < levels.jumps.size(); ++i) {
        const auto& j = levels.jumps[i];
        if (i > 0 && !(levels.jumps[i - 1].location < j.location)) return "jump locations not strictly increasing";
        if (j.left != level) return "level before jump at " + to_string(j.location) + " does not match";
        if (j.right < j.left) return "decreasing at " + to_string(j.location);
        if (!in_unit(j.right)) return "level outside [0,1] after " + to_string(j.location);
        level = j.right;
    }
    if (level != levels.plus_inf) return "level after last jump does not match level at +inf";
    return std::nullopt;
}

StepDF::StepDF(PiecewiseLevels levels) : levels_(drop_flat_jumps(std::move(levels))) {
    if (auto why = defect(levels_)) throw DomainError("not a distribution function: " + *why);
}

StepDF StepDF::constant(const Rat& level) { return StepDF(PiecewiseLevels{level, {}, level}); }

StepDF StepDF::from_increments(const Rat& minus_inf, std::vector<std::pair<Rat, Rat>> increments) {
    std::sort(increments.begin(), increments.end(), [](auto& a, auto& b) { return a.first < b.first; });
    PiecewiseLevels lv{minus_inf, {}, minus_inf};
    for (auto& [loc, size] : increments) {
        if (!lv.jumps.empty() && lv.jumps.back().location == loc) {
            lv.jumps.back().right += size;
        } else {
            lv.jumps.push_back({loc, lv.plus_inf, lv.plus_inf + size});
        }
        lv.plus_inf += size;
    }
    return StepDF(std::move(lv));
}

Rat StepDF::left_limit(const Rat& x) const {
    const auto& js = levels_.jumps;
    auto it = std::lower_bound(js.begin(), js.end(), x, [](const JumpPoint& j, const Rat& v) { return j.location < v; });
    if (it == js.end()) return levels_.plus_inf;
    return it->left;
}

Rat StepDF::right_limit(const Rat& x) const {
    const auto& js = levels_.jumps;
    auto it = std::upper_bound(js.begin(), js.end(), x, [](const Rat& v, const JumpPoint& j) { return v < j.location; });
    if (it == js.begin()) return levels_.minus_inf;
    return std::prev(it)->right;
}

AdherenceInterval adherence_interval(const StepDF& f, const Rat& d) { return {f.left_limit(d), f.right_limit(d)}; }

std::vector<MassViolation> check_mass_consistency(const StepDF& f, const MassAssignment& masses) {
    std::vector<MassViolation> out;
    std::set<Rat> locations;
    for (const auto& [d, _] : masses.at_point) locations.insert(d);
    for (const auto& [d, _] : masses.strict_below) locations.insert(d);
    for (const Rat& d : locations) {
        Rat lo = f.left_limit(d), hi = f.right_limit(d);
        auto point = masses.at_point.find(d);
        auto below = masses.strict_below.find(d);
        if (point != masses.at_point.end()) {
            if (point->second < 0) out.push_back({d, "P{X=d} is negative"});
            if (point->second > hi - lo) out.push_back({d, "P{X=d} exceeds the jump F(d+0)-F(d-0)"});
        }
        if (below != masses.strict_below.end()) {
            if (below->second < lo) out.push_back({d, "P{X<d} below F(d-0)"});
            if (below->second > hi) out.push_back({d, "P{X<d} above F(d+0)"});
            if (point != masses.at_point.end() && below->second + point->second > hi)
                out.push_back({d, "P{X<=d} above F(d+0)"});
        }
    }
    return out;
}

AdherenceChain FaLaw::chain_at(const Rat& d) const {
    AdherenceChain c;
    c.left_limit = df.left_limit(d);
    c.right_limit = df.right_limit(d);
    auto point = masses.at_point.find(d);
    auto below = masses.strict_below.find(d);
    bool is_jump = c.left_limit != c.right_limit;
    if (below == masses.strict_below.end() || point == masses.at_point.end()) {
        if (is_jump) throw DomainError("no masses assigned at jump " + to_string(d));
        c.strictly_below = c.left_limit;
        c.at_or_below = c.left_limit;
        return c;
    }
    c.strictly_below = below->second;
    c.at_or_below = below->second + point->second;
    return c;
}

StepDF mixture(const StepDF& f, const StepDF& g, const Rat& p) {
    clamp_unit_check(p);
    const Rat q = 1 - p;
    std::set<Rat> locs;
    for (const auto& j : f.jumps()) locs.insert(j.location);
    for (const auto& j : g.jumps()) locs.insert(j.location);
    PiecewiseLevels lv;
    lv.minus_inf = p * f.limit_at_minus_inf() + q * g.limit_at_minus_inf();
    lv.plus_inf = p * f.limit_at_plus_inf() + q * g.limit_at_plus_inf();
    for (const Rat& d : locs)
        lv.jumps.push_back({d, p * f.left_limit(d) + q * g.left_limit(d), p * f.right_limit(d) + q * g.right_limit(d)});
    return StepDF(std::move(lv));
}

FaLaw mixture(const FaLaw& f, const FaLaw& g, const Rat& p) {
    clamp_unit_check(p);
    const Rat q = 1 - p;
    FaLaw h{mixture(f.df, g.df, p), {}};
    std::set<Rat> locs;
    for (const auto& [d, _] : f.masses.at_point) locs.insert(d);
    for (const auto& [d, _] : g.masses.at_point) locs.insert(d);
    for (const auto& [d, _] : f.masses.strict_below) locs.insert(d);
    for (const auto& [d, _] : g.masses.strict_below) locs.insert(d);
    for (const Rat& d : locs) {
        AdherenceChain a = f.chain_at(d), b = g.chain_at(d);
        h.masses.strict_below[d] = p * a.strictly_below + q * b.strictly_below;
        h.masses.at_point[d] = p * (a.at_or_below - a.strictly_below) + q * (b.at_or_below - b.strictly_below);
    }
    return h;
}

FaLaw jump_from_above_law() {
    FaLaw law{StepDF::from_increments(0, {{Rat(0), Rat(1)}}), {}};
    law.masses.at_point[Rat(0)] = 0;
    law.masses.strict_below[Rat(0)] = 0;
    return law;
}

FaLaw jump_from_below_law() {
    FaLaw law{StepDF::from_increments(0, {{Rat(0), Rat(1)}}), {}};
    law.masses.at_point[Rat(0)] = 0;
    law.masses.strict_below[Rat(0)] = 1;
    return law;
}

std::string to_string(DfClass c) {
    switch (c) {
    case DfClass::CountablyAdditiveProper: return "proper-countably-additive";
    case DfClass::FinitelyAdditiveProper: return "proper-finitely-additive";
    case DfClass::NotADistribution: return "not-a-df";
    }
    return "?";
}

DfClass classify(const PiecewiseLevels& levels) {
    if (StepDF::defect(levels)) return DfClass::NotADistribution;
    if (levels.minus_inf == 0 && levels.plus_inf == 1) return DfClass::CountablyAdditiveProper;
    return DfClass::FinitelyAdditiveProper;
}

namespace {

// Largest deviation of F_n from the witness over the probes, counting both
// one-sided values of F_n.
Rat witness_error(const StepDF& fn, const PiecewiseLevels& w, const std::vector<Rat>& probes) {
    auto witness_at = [&](const Rat& x) {
        Rat level = w.minus_inf;
        for (const auto& j : w.jumps) {
            if (j.location < x) level = j.right;
        }
        return level;
    };
    Rat worst = 0;
    for (const Rat& x : probes) {
        Rat target = witness_at(x);
        worst = std::max({worst, abs(fn.left_limit(x) - target), abs(fn.right_limit(x) - target)});
    }
    return worst;
}

std::vector<Rat> default_probes(const PiecewiseLevels& w) {
    std::set<Rat> jumps;
    for (const auto& j : w.jumps) jumps.insert(j.location);
    std::vector<Rat> probes;
    for (int k = -128; k <= 128; ++k) {
        Rat x(k, 2);
        if (!jumps.count(x)) probes.push_back(x);
    }
    for (const auto& j : w.jumps) {
        probes.push_back(j.location - Rat(1, 1000));
        probes.push_back(j.location + Rat(1, 1000));
    }
    return probes;
}

} // namespace

WeakLimitReport weak_limit_classify(const DfFamily& family, const PiecewiseLevels& witness,
                                    const WeakLimitOptions& options) {
    if (options.n_max < 2) throw DomainError("weak limit check needs n_max >= 2");
    std::vector<Rat> probes = options.probes.empty() ? default_probes(witness) : options.probes;
    for (const auto& j : witness.jumps)
        if (std::find(probes.begin(), probes.end(), j.location) != probes.end())
            throw DomainError("probe " + to_string(j.location) + " is a discontinuity of the witness");

    Rat err_half = witness_error(family(options.n_max / 2), witness, probes);
    Rat err_full = witness_error(family(options.n_max), witness, probes);
    if (err_full > options.tolerance || err_full > err_half)
        throw DomainError("witness inconsistent with sampled family: deviation " + to_string(err_full) +
                          " at n = " + std::to_string(options.n_max));

    WeakLimitReport r;
    r.limit = witness;
    r.classification = classify(witness);
    if (r.classification == DfClass::NotADistribution) {
        r.reason = *StepDF::defect(witness);
        return r;
    }
    r.mass_minus_inf = witness.minus_inf;
    r.mass_plus_inf = 1 - witness.plus_inf;
    r.reason = r.classification == DfClass::CountablyAdditiveProper ? "no mass adherent at infinity"
                                                                     : "mass adherent at infinity";
    return r;
}

StepDF frechet_member(std::uint64_t n) {
    Rat x(n);
    return StepDF(PiecewiseLevels{0, {{Rat(-x), 0, Rat(1, 2)}, {x, Rat(1, 2), 1}}, 1});
}

StepDF escaping_step_member(std::uint64_t n) { return StepDF(PiecewiseLevels{0, {{Rat(n), 0, 1}}, 1}); }

} // namespace finadd
