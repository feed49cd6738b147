#pragma once

#include "finadd/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace finadd {

/// Eventually periodic membership: for k >= threshold, k is a member iff
/// residues[k % period].
struct EventualPeriod {
    std::uint64_t threshold = 1;
    std::uint64_t period = 1;
    std::vector<bool> residues{false};

    Rat density() const;
};

struct IndexBlock {
    std::uint64_t first;
    std::uint64_t last;   // inclusive
};

/// Subset of N = {1, 2, ...} given by a descriptor whose counting function
/// n -> #(A ∩ {1..n}) can be evaluated without enumerating A.
class CountingSet {
public:
    enum class Kind { Finite, Cofinite, Progression, Blocks, GeometricBlocks, Union, Intersection, Complement };

    static CountingSet finite(std::vector<std::uint64_t> members);
    static CountingSet cofinite(std::vector<std::uint64_t> excluded);
    // {first, first + step, first + 2 step, ...}
    static CountingSet progression(std::uint64_t first, std::uint64_t step);
    // Finite union of inclusive index ranges.
    static CountingSet blocks(std::vector<IndexBlock> ranges);
    // Union over k >= 0 of [base^(period k + phase), base^(period k + phase + 1)).
    static CountingSet geometric_blocks(std::uint64_t base, std::uint64_t period, std::uint64_t phase);
    static CountingSet unite(CountingSet a, CountingSet b);
    static CountingSet intersect(CountingSet a, CountingSet b);
    static CountingSet complement(CountingSet a);

    Kind kind() const;
    bool contains(std::uint64_t k) const;
    std::uint64_t count_up_to(std::uint64_t n) const;
    std::optional<EventualPeriod> eventual_period() const;

    // Exact (liminf, limsup) of count_up_to(n)/n when the descriptor admits a
    // closed form.
    std::optional<std::pair<Rat, Rat>> asymptotic_bounds() const;

    struct Node;
    const Node& node() const { return *node_; }

private:
    explicit CountingSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct CountingSet::Node {
    Kind kind;
    std::vector<std::uint64_t> values;   // Finite members / Cofinite exclusions (sorted, distinct)
    std::vector<IndexBlock> ranges;      // Blocks (sorted, merged)
    std::uint64_t a = 0, b = 0, c = 0;   // Progression(first, step); Geometric(base, period, phase)
    std::vector<CountingSet> children;
};

} // namespace finadd
