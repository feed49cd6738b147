#include "finadd/counting_set.hpp"

#include "finadd/errors.hpp"

#include <algorithm>
#include <numeric>

namespace finadd {

namespace {

constexpr std::uint64_t kPeriodCap = std::uint64_t{1} << 20;
constexpr std::uint64_t kIndexCeiling = std::uint64_t{1} << 62;

std::vector<std::uint64_t> normalized(std::vector<std::uint64_t> v) {
    for (auto x : v)
        if (x == 0) throw DomainError("counting sets live on {1, 2, ...}; index 0 given");
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::uint64_t count_sorted_up_to(const std::vector<std::uint64_t>& v, std::uint64_t n) {
    return static_cast<std::uint64_t>(std::upper_bound(v.begin(), v.end(), n) - v.begin());
}

// Returns base^e, or nullopt past kIndexCeiling.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (r > kIndexCeiling / base) return std::nullopt;
        r *= base;
    }
    return r;
}

EventualPeriod constant_after(std::uint64_t threshold, bool member) {
    return EventualPeriod{threshold, 1, {member}};
}

std::optional<EventualPeriod> combine(const EventualPeriod& x, const EventualPeriod& y, bool is_union) {
    std::uint64_t period = std::lcm(x.period, y.period);
    if (period > kPeriodCap) return std::nullopt;
    EventualPeriod out;
    out.threshold = std::max(x.threshold, y.threshold);
    out.period = period;
    out.residues.assign(period, false);
    for (std::uint64_t r = 0; r < period; ++r) {
        bool a = x.residues[r % x.period];
        bool b = y.residues[r % y.period];
        out.residues[r] = is_union ? (a || b) : (a && b);
    }
    return out;
}

} // namespace

Rat EventualPeriod::density() const {
    auto hits = static_cast<std::uint64_t>(std::count(residues.begin(), residues.end(), true));
    return Rat(hits, period);
}

CountingSet CountingSet::finite(std::vector<std::uint64_t> members) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Finite;
    n->values = normalized(std::move(members));
    return CountingSet(n);
}

CountingSet CountingSet::cofinite(std::vector<std::uint64_t> excluded) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Cofinite;
    n->values = normalized(std::move(excluded));
    return CountingSet(n);
}

CountingSet CountingSet::progression(std::uint64_t first, std::uint64_t step) {
    if (first == 0) throw DomainError("progression must start at an index >= 1");
    if (step == 0) throw DomainError("progression step must be positive");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Progression;
    n->a = first;
    n->b = step;
    return CountingSet(n);
}

CountingSet CountingSet::blocks(std::vector<IndexBlock> ranges) {
    for (const auto& r : ranges)
        if (r.first == 0 || r.first > r.last) throw DomainError("block ranges need 1 <= first <= last");
    std::sort(ranges.begin(), ranges.end(), [](auto& x, auto& y) { return x.first < y.first; });
    std::vector<IndexBlock> merged;
    for (const auto& r : ranges) {
        if (!merged.empty() && r.first <= merged.back().last + 1)
            merged.back().last = std::max(merged.back().last, r.last);
        else
            merged.push_back(r);
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Blocks;
    n->ranges = std::move(merged);
    return CountingSet(n);
}

CountingSet CountingSet::geometric_blocks(std::uint64_t base, std::uint64_t period, std::uint64_t phase) {
    if (base < 2) throw DomainError("geometric blocks need base >= 2");
    if (period == 0) throw DomainError("geometric blocks need period >= 1");
    auto n = std::make_shared<Node>();
    n->kind = Kind::GeometricBlocks;
    n->a = base;
    n->b = period;
    n->c = phase;
    return CountingSet(n);
}

CountingSet CountingSet::unite(CountingSet a, CountingSet b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Union;
    n->children = {std::move(a), std::move(b)};
    return CountingSet(n);
}

CountingSet CountingSet::intersect(CountingSet a, CountingSet b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Intersection;
    n->children = {std::move(a), std::move(b)};
    return CountingSet(n);
}

CountingSet CountingSet::complement(CountingSet a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Complement;
    n->children = {std::move(a)};
    return CountingSet(n);
}

CountingSet::Kind CountingSet::kind() const { return node_->kind; }

bool CountingSet::contains(std::uint64_t k) const {
    const Node& n = *node_;
    if (k == 0) return false;
    switch (n.kind) {
    case Kind::Finite: return std::binary_search(n.values.begin(), n.values.end(), k);
    case Kind::Cofinite: return !std::binary_search(n.values.begin(), n.values.end(), k);
    case Kind::Progression: return k >= n.a && (k - n.a) % n.b == 0;
    case Kind::Blocks:
        return std::any_of(n.ranges.begin(), n.ranges.end(), [k](auto& r) { return r.first <= k && k <= r.last; });
    case Kind::GeometricBlocks: {
        // exponent e with base^e <= k < base^(e+1)
        std::uint64_t e = 0, p = 1;
        while (p <= k / n.a) {
            p *= n.a;
            ++e;
        }
        return e >= n.c && (e - n.c) % n.b == 0;
    }
    case Kind::Union: return n.children[0].contains(k) || n.children[1].contains(k);
    case Kind::Intersection: return n.children[0].contains(k) && n.children[1].contains(k);
    case Kind::Complement: return !n.children[0].contains(k);
    }
    return false;
}

std::uint64_t CountingSet::count_up_to(std::uint64_t n) const {
    const Node& d = *node_;
    switch (d.kind) {
    case Kind::Finite: return count_sorted_up_to(d.values, n);
    case Kind::Cofinite: return n - count_sorted_up_to(d.values, n);
    case Kind::Progression: return n < d.a ? 0 : (n - d.a) / d.b + 1;
    case Kind::Blocks: {
        std::uint64_t c = 0;
        for (const auto& r : d.ranges) {
            if (r.first > n) break;
            c += std::min(r.last, n) - r.first + 1;
        }
        return c;
    }
    case Kind::GeometricBlocks: {
        std::uint64_t c = 0;
        for (std::uint64_t e = d.c;; e += d.b) {
            auto lo = checked_pow(d.a, e);
            if (!lo || *lo > n) break;
            auto hi = checked_pow(d.a, e + 1);
            std::uint64_t last = hi ? *hi - 1 : kIndexCeiling;
            c += std::min(last, n) - *lo + 1;
        }
        return c;
    }
    case Kind::Union:
    case Kind::Intersection:
    case Kind::Complement: {
        if (auto per = eventual_period()) {
            std::uint64_t c = 0;
            std::uint64_t head = std::min(n, per->threshold - 1);
            for (std::uint64_t k = 1; k <= head; ++k) c += contains(k);
            if (n >= per->threshold) {
                std::uint64_t span = n - per->threshold + 1;
                std::uint64_t hits = static_cast<std::uint64_t>(
                    std::count(per->residues.begin(), per->residues.end(), true));
                c += (span / per->period) * hits;
                std::uint64_t start = per->threshold + (span / per->period) * per->period;
                for (std::uint64_t k = start; k <= n; ++k) c += per->residues[k % per->period];
            }
            return c;
        }
        if (d.kind == Kind::Complement) return n - d.children[0].count_up_to(n);
        std::uint64_t c = 0;
        for (std::uint64_t k = 1; k <= n; ++k) c += contains(k);
        return c;
    }
    }
    return 0;
}

std::optional<EventualPeriod> CountingSet::eventual_period() const {
    const Node& n = *node_;
    switch (n.kind) {
    case Kind::Finite: return constant_after(n.values.empty() ? 1 : n.values.back() + 1, false);
    case Kind::Cofinite: return constant_after(n.values.empty() ? 1 : n.values.back() + 1, true);
    case Kind::Progression: {
        if (n.b > kPeriodCap) return std::nullopt;
        EventualPeriod p;
        p.threshold = n.a;
        p.period = n.b;
        p.residues.assign(n.b, false);
        p.residues[n.a % n.b] = true;
        return p;
    }
    case Kind::Blocks: return constant_after(n.ranges.empty() ? 1 : n.ranges.back().last + 1, false);
    case Kind::GeometricBlocks: return std::nullopt;
    case Kind::Union:
    case Kind::Intersection: {
        auto x = n.children[0].eventual_period();
        if (!x) return std::nullopt;
        auto y = n.children[1].eventual_period();
        if (!y) return std::nullopt;
        return combine(*x, *y, n.kind == Kind::Union);
    }
    case Kind::Complement: {
        auto x = n.children[0].eventual_period();
        if (!x) return std::nullopt;
        for (auto&& r : x->residues) r = !r;
        return x;
    }
    }
    return std::nullopt;
}

std::optional<std::pair<Rat, Rat>> CountingSet::asymptotic_bounds() const {
    if (auto p = eventual_period()) {
        Rat d = p->density();
        return std::pair{d, d};
    }
    const Node& n = *node_;
    switch (n.kind) {
    case Kind::GeometricBlocks: {
        // Ratios peak at block ends and bottom out just before block starts.
        BigInt base = n.a;
        BigInt bp = 1;
        for (std::uint64_t i = 0; i < n.b; ++i) bp *= base;
        Rat low = Rat(base - 1, bp - 1);
        Rat high = Rat((base - 1) * bp / base, bp - 1);
        return std::pair{low, high};
    }
    case Kind::Complement: {
        auto inner = n.children[0].asymptotic_bounds();
        if (!inner) return std::nullopt;
        return std::pair{Rat(1 - inner->second), Rat(1 - inner->first)};
    }
    case Kind::Union:
    case Kind::Intersection: {
        // A density-0 (resp. density-1) periodic side is asymptotically
        // negligible (resp. absorbing) for unions, and the dual for
        // intersections.
        bool is_union = n.kind == Kind::Union;
        for (int side = 0; side < 2; ++side) {
            auto per = n.children[side].eventual_period();
            if (!per) continue;
            Rat d = per->density();
            const auto& other = n.children[1 - side];
            if ((is_union && d == 0) || (!is_union && d == 1)) return other.asymptotic_bounds();
            if (is_union && d == 1) return std::pair{Rat(1), Rat(1)};
            if (!is_union && d == 0) return std::pair{Rat(0), Rat(0)};
        }
        return std::nullopt;
    }
    default: return std::nullopt;
    }
}

} // namespace finadd
