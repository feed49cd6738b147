#include "finadd/limit_laws.hpp"

#include <algorithm>
#include <string>

namespace finadd {

namespace {

std::vector<std::uint64_t> sample_points(std::uint64_t from, std::uint64_t horizon) {
    std::vector<std::uint64_t> pts;
    for (std::uint64_t n = std::max<std::uint64_t>(from, 1); n <= horizon; n *= 2) {
        pts.push_back(n);
        if (n > horizon / 2) break;
    }
    pts.push_back(std::max(from, horizon));
    return pts;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

} // namespace

DensityValue natural_density(const CountingSet& set, const DensityOptions& options) {
    if (auto bounds = set.asymptotic_bounds()) {
        if (bounds->first == bounds->second) return DensityValue::exists(bounds->first);
        return DensityValue::divergent(bounds->first, bounds->second, false);
    }
    // No closed form: scan the counting ratio over [horizon/16, horizon].
    const std::uint64_t horizon = std::max<std::uint64_t>(options.horizon, 16);
    const std::uint64_t from = horizon / 16;
    std::uint64_t count = 0;
    // extremes kept as (count, n) pairs, compared by cross-multiplication
    std::uint64_t lo_c = 1, lo_n = 1, hi_c = 0, hi_n = 1;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        count += set.contains(n);
        if (n < from) continue;
        using Wide = unsigned __int128;
        if (Wide(count) * lo_n < Wide(lo_c) * n) lo_c = count, lo_n = n;
        if (Wide(count) * hi_n > Wide(hi_c) * n) hi_c = count, hi_n = n;
    }
    Rat lo(lo_c, lo_n), hi(hi_c, hi_n);
    return DensityValue::divergent(lo, hi, true);
}

DensityValue limit_of_probabilities(const RatSequence& sequence, const LimitPolicy& policy) {
    if (policy.constant_from) {
        const std::uint64_t start = *policy.constant_from;
        Rat v = sequence(start);
        std::vector<std::uint64_t> checks;
        for (std::uint64_t k = 1; k <= policy.probe; ++k) checks.push_back(start + k);
        for (std::uint64_t n : sample_points(start, std::max(start, policy.horizon))) checks.push_back(n);
        for (std::uint64_t n : checks)
            if (sequence(n) != v)
                throw DomainError("eventual-constancy witness contradicted at n = " + std::to_string(n));
        return DensityValue::exists(v);
    }
    if (policy.witness) {
        const auto& w = *policy.witness;
        for (std::uint64_t n : sample_points(1, policy.horizon)) {
            Rat bound = w.error_bound(n);
            if (bound < 0 || abs(sequence(n) - w.limit) > bound)
                throw DomainError("convergence witness contradicted at n = " + std::to_string(n));
        }
        return DensityValue::exists(w.limit);
    }
    const std::uint64_t horizon = std::max<std::uint64_t>(policy.horizon, 2);
    Rat lo, hi;
    bool first = true;
    for (std::uint64_t n = horizon / 2 + 1; n <= horizon; ++n) {
        Rat v = sequence(n);
        if (first || v < lo) lo = v;
        if (first || v > hi) hi = v;
        first = false;
    }
    return DensityValue::divergent(lo, hi, true);
}

std::pair<RatSequence, LimitPolicy> density_sequence(const CountingSet& set) {
    RatSequence seq = [set](std::uint64_t n) { return Rat(set.count_up_to(n), n); };
    LimitPolicy policy;
    if (auto per = set.eventual_period()) {
        // |#(A∩[1,n]) - d n| <= threshold + period
        const Rat slack = Rat(per->threshold + per->period);
        policy.witness = ConvergenceWitness{per->density(), [slack](std::uint64_t n) { return slack / n; }};
    }
    return {std::move(seq), std::move(policy)};
}

Rat GammaLaw::measure(const CountingSet& indices) const {
    DensityValue d = density(indices);
    if (!d.determined()) throw UndeterminedError("set lies outside the determinable class of the density law");
    return d.value;
}

Rat gamma_limit(const ComponentSequence& sequence, std::uint64_t horizon) {
    if (!sequence.constant_from && !sequence.witness)
        throw UndeterminedError("component sequence has no convergence witness; query is outside the determinable class");
    LimitPolicy policy;
    policy.horizon = horizon;
    policy.constant_from = sequence.constant_from;
    policy.witness = sequence.witness;
    return limit_of_probabilities(sequence.values, policy).value;
}

MixtureByGamma<CountingSet> point_mass_mixture() {
    return MixtureByGamma<CountingSet>([](const CountingSet& a) {
        ComponentSequence seq;
        seq.values = [a](std::uint64_t n) { return a.contains(n) ? Rat(1) : Rat(0); };
        if (auto per = a.eventual_period(); per && per->period == 1) seq.constant_from = per->threshold;
        return seq;
    });
}

CountingSet enumeration_indices_in(const Rat& lower, const Rat& upper) {
    if (lower < 0 || upper > 1 || lower >= upper) throw DomainError("need 0 <= lower < upper <= 1");
    // 1/k <= upper  <=>  k >= 1/upper;  1/k > lower  <=>  k < 1/lower
    BigInt first = ceil_div(denominator(upper), numerator(upper));
    if (lower == 0) {
        std::vector<std::uint64_t> head;
        for (std::uint64_t k = 1; k < first; ++k) head.push_back(k);
        return CountingSet::cofinite(std::move(head));
    }
    BigInt last = ceil_div(denominator(lower), numerator(lower)) - 1;
    if (last < first) return CountingSet::finite({});
    return CountingSet::blocks({{first.convert_to<std::uint64_t>(), last.convert_to<std::uint64_t>()}});
}

IntervalPartitionReport interval_partition_check(std::uint64_t cells) {
    if (cells == 0) throw DomainError("need at least one partition cell");
    GammaLaw gamma;
    IntervalPartitionReport report;
    bool all_zero = true;
    for (std::uint64_t n = 1; n <= cells; ++n) {
        PartitionCell cell;
        cell.index = n;
        cell.lower = Rat(1, n + 1);
        cell.upper = Rat(1, n);
        CountingSet inside = enumeration_indices_in(cell.lower, cell.upper);
        for (const auto& r : inside.node().ranges)
            for (std::uint64_t k = r.first; k <= r.last; ++k) cell.enumeration_points.push_back(k);
        cell.gamma_value = gamma.measure(inside);
        all_zero = all_zero && cell.gamma_value == 0;
        report.cells.push_back(std::move(cell));
    }
    report.finite_union_value = gamma.measure(enumeration_indices_in(Rat(1, cells + 1), Rat(1)));
    report.total_value = gamma.measure(enumeration_indices_in(Rat(0), Rat(1)));
    report.drawback_realized = all_zero && report.finite_union_value == 0 && report.total_value == 1;
    return report;
}

} // namespace finadd
