#pragma once

#include "finadd/counting_set.hpp"
#include "finadd/errors.hpp"
#include "finadd/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace finadd {

/// Outcome of a limit computation. `Exists` carries the exact limit;
/// `Divergent` carries liminf/limsup, exact when they come from a closed
/// form and empirical (estimated == true) otherwise. An estimated result
/// means the limit is undetermined, not that it is known not to exist.
struct DensityValue {
    enum class Kind { Exists, Divergent };

    Kind kind = Kind::Exists;
    Rat value;
    Rat liminf;
    Rat limsup;
    bool estimated = false;

    static DensityValue exists(Rat v) { return {Kind::Exists, v, v, v, false}; }
    static DensityValue divergent(Rat lo, Rat hi, bool estimated) {
        return {Kind::Divergent, Rat(0), std::move(lo), std::move(hi), estimated};
    }
    bool determined() const noexcept { return kind == Kind::Exists; }
};

struct DensityOptions {
    std::uint64_t horizon = 1'000'000;
};

DensityValue natural_density(const CountingSet& set, const DensityOptions& options = {});

using RatSequence = std::function<Rat(std::uint64_t)>;

/// Closed-form convergence certificate: |a_n - limit| <= error_bound(n) for
/// every n, with error_bound(n) -> 0.
struct ConvergenceWitness {
    Rat limit;
    std::function<Rat(std::uint64_t)> error_bound;
};

struct LimitPolicy {
    std::uint64_t horizon = 100'000;
    // The sequence is constant for every n >= *constant_from.
    std::optional<std::uint64_t> constant_from;
    std::optional<ConvergenceWitness> witness;
    // Consecutive terms checked past constant_from.
    std::uint64_t probe = 8;
};

// Exists only when a witness applies (and survives sampling); otherwise the
// tail window [horizon/2, horizon] is scanned and reported as an estimate.
// A witness contradicted by sampled terms raises DomainError.
DensityValue limit_of_probabilities(const RatSequence& sequence, const LimitPolicy& policy = {});

// n -> #(A ∩ {1..n})/n together with a witness when the density is known in
// closed form.
std::pair<RatSequence, LimitPolicy> density_sequence(const CountingSet& set);

/// Finitely additive "natural density" law on an enumerated countable set,
/// defined on the sets whose density exists.
class GammaLaw {
public:
    explicit GammaLaw(DensityOptions options = {}) : options_(options) {}

    DensityValue density(const CountingSet& indices) const { return natural_density(indices, options_); }
    // Throws UndeterminedError outside the determinable class.
    Rat measure(const CountingSet& indices) const;
    Rat singleton(std::uint64_t k) const { return measure(CountingSet::finite({k})); }
    Rat ground() const { return measure(CountingSet::cofinite({})); }

private:
    DensityOptions options_;
};

/// One component sequence n -> Q_n(A) as served for a single query, plus
/// what is known about its convergence.
struct ComponentSequence {
    RatSequence values;
    std::optional<std::uint64_t> constant_from;
    std::optional<ConvergenceWitness> witness;
};

// Value of the gamma-mixture on one query: the limit of the component
// sequence, which the mixture realizes because gamma gives every tail
// {n >= N} mass one. Throws UndeterminedError without a witness.
Rat gamma_limit(const ComponentSequence& sequence, std::uint64_t horizon = 100'000);

/// Q(A) = ∫ Q_n(A) gamma(dn), served by a query protocol returning the
/// component sequence for each query.
template <class Query>
class MixtureByGamma {
public:
    using Protocol = std::function<ComponentSequence(const Query&)>;

    explicit MixtureByGamma(Protocol protocol) : protocol_(std::move(protocol)) {}

    ComponentSequence sequence(const Query& query) const { return protocol_(query); }

private:
    Protocol protocol_;
};

template <class Query>
Rat gamma_mixture_eval(const MixtureByGamma<Query>& mix, const Query& query) {
    return gamma_limit(mix.sequence(query));
}

// Q_n = point mass at n, so that Q(A) is gamma(A) on sets that are
// eventually constant in membership (finite, cofinite, tails).
MixtureByGamma<CountingSet> point_mass_mixture();

// {n, n+1, ...}
inline CountingSet tail_set(std::uint64_t first) {
    std::vector<std::uint64_t> head;
    for (std::uint64_t k = 1; k < first; ++k) head.push_back(k);
    return CountingSet::cofinite(std::move(head));
}

// Indices k with lower < 1/k <= upper, for the enumeration x_k = 1/k of (0,1].
CountingSet enumeration_indices_in(const Rat& lower, const Rat& upper);

struct PartitionCell {
    std::uint64_t index;                       // cell (1/(index+1), 1/index]
    Rat lower;
    Rat upper;
    std::vector<std::uint64_t> enumeration_points;   // k with x_k in the cell
    Rat gamma_value;
};

struct IntervalPartitionReport {
    std::vector<PartitionCell> cells;
    Rat finite_union_value;   // gamma of the union of the listed cells
    Rat total_value;          // gamma((0,1])
    bool drawback_realized = false;
};

// (0,1] cut into (1/(n+1), 1/n], n = 1..cells, under the density law of
// the enumeration x_k = 1/k.
IntervalPartitionReport interval_partition_check(std::uint64_t cells);

} // namespace finadd
