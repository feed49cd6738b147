#pragma once

#include "finadd/limit_laws.hpp"
#include "finadd/rational.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace finadd {

struct CylinderConstraint {
    std::uint64_t index;   // coordinate, 1-based
    bool value;
};

/// {d : d_i = e_i for each constrained coordinate i} in {0,1}^N.
class Cylinder {
public:
    Cylinder() = default;
    explicit Cylinder(std::vector<CylinderConstraint> constraints);
    // Constraints on coordinates 1..bits.size().
    static Cylinder prefix(const std::vector<bool>& bits);

    const std::vector<CylinderConstraint>& constraints() const noexcept { return constraints_; }
    std::size_t size() const noexcept { return constraints_.size(); }
    std::uint64_t max_index() const noexcept { return constraints_.empty() ? 0 : constraints_.back().index; }
    std::uint64_t ones() const;

private:
    std::vector<CylinderConstraint> constraints_;   // sorted by index
};

// Mixing distribution H of an exchangeable tail, supported by [0,1].
struct PointMass {
    Rat theta;
};
struct BetaMixing {
    Rat a;
    Rat b;
};
struct DiscreteMixing {
    std::vector<std::pair<Rat, Rat>> atoms;   // (theta, weight)
};
using MixingLaw = std::variant<PointMass, BetaMixing, DiscreteMixing>;

void validate(const MixingLaw& h);
// ∫ theta^ones (1-theta)^zeros dH(theta), exactly.
Rat mixing_moment(const MixingLaw& h, std::uint64_t ones, std::uint64_t zeros);
double mixing_cdf(const MixingLaw& h, double x);
// Equal weights at the given quantiles (taken at levels (i+1/2)/K).
MixingLaw mixing_from_quantiles(std::vector<Rat> quantiles);

/// What follows the forced 1 at the jump position n in the component laws:
/// all zeros, the factorial block sequence y, or an exchangeable sequence
/// driven by H.
enum class TailVariant { Zeros, FactorialBlocks, Exchangeable };

struct TailLaw {
    TailVariant variant = TailVariant::Zeros;
    Rat p;
    std::optional<MixingLaw> mixing;

    static TailLaw zeros(Rat p) { return {TailVariant::Zeros, std::move(p), std::nullopt}; }
    static TailLaw factorial_blocks(Rat p) { return {TailVariant::FactorialBlocks, std::move(p), std::nullopt}; }
    static TailLaw exchangeable(Rat p, MixingLaw h) { return {TailVariant::Exchangeable, std::move(p), std::move(h)}; }
};

// y_j = 0 on blocks [(2k-1)!, (2k)!-1], 1 on [(2k)!, (2k+1)!-1], k >= 1.
bool factorial_tail_bit(std::uint64_t j);

// p^(#ones) (1-p)^(#zeros)
Rat bernoulli_product(const Rat& p, const Cylinder& cyl);

// Probability of the cylinder under the n-th component law: i.i.d.(p) on
// coordinates < n, a 1 at coordinate n, then the tail.
Rat component_prob(const TailLaw& law, std::uint64_t n, const Cylinder& cyl);

MixtureByGamma<Cylinder> tail_mixture(const TailLaw& law);

// ∫ Q_n(cyl) gamma(dn), evaluated as the eventual value of the components.
Rat mixture_prob(const TailLaw& law, const Cylinder& cyl);

/// Exact running frequencies f_k = (d_1 + ... + d_k)/k for k <= horizon.
class FrequencyPath {
public:
    explicit FrequencyPath(std::vector<std::uint64_t> cumulative_ones);

    std::uint64_t horizon() const noexcept { return cumulative_.size() - 1; }
    std::uint64_t ones(std::uint64_t k) const;
    Rat at(std::uint64_t k) const { return Rat(ones(k), k); }
    double approx(std::uint64_t k) const { return static_cast<double>(ones(k)) / static_cast<double>(k); }

private:
    std::vector<std::uint64_t> cumulative_;   // cumulative_[k] = d_1 + ... + d_k
};

// Path of the element of the n-th support set with the given prefix
// (length jump_position - 1), a 1 at jump_position, then the law's tail.
// Exchangeable tails are simulated from `seed`.
FrequencyPath tail_frequency_path(const TailLaw& law, const std::vector<bool>& prefix, std::uint64_t jump_position,
                                  std::uint64_t horizon, std::uint64_t seed = 0);

struct OscillationCheckpoint {
    std::uint64_t nu;
    BigInt low_index;    // n + (2 nu)! - 1
    BigInt high_index;   // n + (2 nu + 1)! - 1
    Rat low_frequency;
    Rat high_frequency;
};

// Frequencies at the ends of the zero and one blocks of the factorial tail,
// by the closed two-step recursion; nothing is materialized. prefix_ones is
// the number of ones among the n-1 free coordinates.
std::vector<OscillationCheckpoint> oscillation_checkpoints(std::uint64_t n, std::uint64_t nu_max,
                                                           std::uint64_t prefix_ones = 0);

struct CantelliOptions {
    std::uint64_t cap = 64;   // largest n + m handled exactly
};

// P(max_{n<=k<=n+m} |f_k - p| <= eps) under i.i.d. Bernoulli(p), exactly.
Rat cantelli_probability(const Rat& p, const Rat& eps, std::uint64_t n, std::uint64_t m,
                         const CantelliOptions& options = {});

// The same probability for every m in 0..m_max, from one pass.
std::vector<Rat> cantelli_profile(const Rat& p, const Rat& eps, std::uint64_t n, std::uint64_t m_max,
                                  const CantelliOptions& options = {});

struct MonteCarloEstimate {
    double value;
    double standard_error;
    std::uint64_t samples;
};

MonteCarloEstimate cantelli_monte_carlo(const Rat& p, const Rat& eps, std::uint64_t n, std::uint64_t m,
                                        std::uint64_t samples, std::uint64_t seed = 0);

// Smallest n with min over m in 0..m_probe of the Cantelli probability
// >= 1 - delta, searching n + m_probe <= cap. nullopt when none qualifies.
std::optional<std::uint64_t> find_n0(const Rat& p, const Rat& eps, const Rat& delta, std::uint64_t m_probe,
                                     const CantelliOptions& options = {});

} // namespace finadd
