#pragma once

#include "finadd/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace finadd {

// A discontinuity of F(x) = P{X < x}: F(d-0) = left, F(d+0) = right.
struct JumpPoint {
    Rat location;
    Rat left;
    Rat right;
    friend bool operator==(const JumpPoint&, const JumpPoint&) = default;
};

/// Raw piecewise-constant description, not yet checked to be a
/// distribution function. Levels between jumps are implied by the jumps.
struct PiecewiseLevels {
    Rat minus_inf;
    std::vector<JumpPoint> jumps;
    Rat plus_inf;
};

/// Nondecreasing piecewise-constant distribution function with finitely many
/// jumps. F(-inf) may exceed 0 and F(+inf) may fall short of 1; the gaps
/// are mass adherent at -inf and +inf.
class StepDF {
public:
    explicit StepDF(PiecewiseLevels levels);

    static StepDF constant(const Rat& level);
    // Jumps given as (location, size) on top of the level at -inf.
    static StepDF from_increments(const Rat& minus_inf, std::vector<std::pair<Rat, Rat>> increments);

    // Why `levels` is not a distribution function, if it is not.
    static std::optional<std::string> defect(const PiecewiseLevels& levels);

    Rat left_limit(const Rat& x) const;    // F(x-0)
    Rat right_limit(const Rat& x) const;   // F(x+0)
    Rat jump_at(const Rat& x) const { return right_limit(x) - left_limit(x); }

    const std::vector<JumpPoint>& jumps() const noexcept { return levels_.jumps; }
    const Rat& limit_at_minus_inf() const noexcept { return levels_.minus_inf; }
    const Rat& limit_at_plus_inf() const noexcept { return levels_.plus_inf; }
    Rat adherent_mass_minus_inf() const { return levels_.minus_inf; }
    Rat adherent_mass_plus_inf() const { return 1 - levels_.plus_inf; }
    Rat interior_variation() const { return levels_.plus_inf - levels_.minus_inf; }
    const PiecewiseLevels& levels() const noexcept { return levels_; }

    friend bool operator==(const StepDF& a, const StepDF& b) {
        return a.levels_.minus_inf == b.levels_.minus_inf && a.levels_.plus_inf == b.levels_.plus_inf &&
               a.levels_.jumps == b.levels_.jumps;
    }

private:
    PiecewiseLevels levels_;
};

/// Probabilities P{X = d} and P{X < d} at selected locations. They are not
/// determined by F at a jump; the one-sided limits of F only bound them.
struct MassAssignment {
    std::map<Rat, Rat> at_point;
    std::map<Rat, Rat> strict_below;
};

struct AdherenceInterval {
    Rat lower;   // F(d-0)
    Rat upper;   // F(d+0)
};

AdherenceInterval adherence_interval(const StepDF& f, const Rat& d);

struct MassViolation {
    Rat location;
    std::string rule;
};

// Empty iff every assigned value satisfies
// F(d-0) <= P{X<d} <= P{X<=d} <= F(d+0), P{X=d} >= 0 and P{X=d} <= jump.
std::vector<MassViolation> check_mass_consistency(const StepDF& f, const MassAssignment& masses);

/// The four members of the chain F(d-0) <= P{X<d} <= P{X<=d} <= F(d+0).
struct AdherenceChain {
    Rat left_limit;
    Rat strictly_below;
    Rat at_or_below;
    Rat right_limit;
    bool left_strict() const { return left_limit < strictly_below; }
    bool right_strict() const { return at_or_below < right_limit; }
};

/// A distribution function together with the point masses it is paired with.
struct FaLaw {
    StepDF df;
    MassAssignment masses;

    // Fills in unassigned continuity points (P{X=d}=0, P{X<d}=F(d)); throws
    // when d is a jump with nothing assigned.
    AdherenceChain chain_at(const Rat& d) const;
};

StepDF mixture(const StepDF& f, const StepDF& g, const Rat& p);
FaLaw mixture(const FaLaw& f, const FaLaw& g, const Rat& p);

// X(w) = w under a density law on points x_n decreasing to 0: F jumps 0 -> 1
// at 0 yet P{X = 0} = 0 and P{X < 0} = 0.
FaLaw jump_from_above_law();
// Mirror image with points increasing to 0: P{X < 0} = 1, P{X = 0} = 0.
FaLaw jump_from_below_law();

enum class DfClass { CountablyAdditiveProper, FinitelyAdditiveProper, NotADistribution };

std::string to_string(DfClass c);

using DfFamily = std::function<StepDF(std::uint64_t)>;

struct WeakLimitOptions {
    std::uint64_t n_max = 1u << 12;
    // Continuity points of the witness to compare at; defaults to a grid.
    std::vector<Rat> probes;
    Rat tolerance = 0;
};

struct WeakLimitReport {
    PiecewiseLevels limit;
    DfClass classification = DfClass::NotADistribution;
    Rat mass_minus_inf;
    Rat mass_plus_inf;
    std::string reason;
};

// Checks the witness against the family at n_max (and n_max/2), then
// classifies the witnessed limit. Throws DomainError on disagreement.
WeakLimitReport weak_limit_classify(const DfFamily& family, const PiecewiseLevels& witness,
                                    const WeakLimitOptions& options = {});

DfClass classify(const PiecewiseLevels& levels);

// F_n = 1_{(-n,n]}/2 + 1_{(n,inf)}
StepDF frechet_member(std::uint64_t n);
// F_n = 1_{[n,inf)}
StepDF escaping_step_member(std::uint64_t n);

} // namespace finadd
