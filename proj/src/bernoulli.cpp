#include "finadd/bernoulli.hpp"

#include "finadd/errors.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace finadd {

namespace {

void check_probability(const Rat& p, const char* what) {
    if (p < 0 || p > 1) throw DomainError(std::string(what) + " " + to_string(p) + " outside [0,1]");
}

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};

} // namespace

Cylinder::Cylinder(std::vector<CylinderConstraint> constraints) : constraints_(std::move(constraints)) {
    std::sort(constraints_.begin(), constraints_.end(), [](auto& a, auto& b) { return a.index < b.index; });
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        if (constraints_[i].index == 0) throw DomainError("cylinder coordinates are 1-based");
        if (i > 0 && constraints_[i - 1].index == constraints_[i].index)
            throw DomainError("coordinate " + std::to_string(constraints_[i].index) + " constrained twice");
    }
}

Cylinder Cylinder::prefix(const std::vector<bool>& bits) {
    std::vector<CylinderConstraint> cs;
    for (std::size_t i = 0; i < bits.size(); ++i) cs.push_back({i + 1, bits[i]});
    return Cylinder(std::move(cs));
}

std::uint64_t Cylinder::ones() const {
    return std::count_if(constraints_.begin(), constraints_.end(), [](auto& c) { return c.value; });
}

void validate(const MixingLaw& h) {
    std::visit(Overloaded{
                   [](const PointMass& m) { check_probability(m.theta, "point mass"); },
                   [](const BetaMixing& m) {
                       if (m.a <= 0 || m.b <= 0) throw DomainError("Beta parameters must be positive");
                   },
                   [](const DiscreteMixing& m) {
                       if (m.atoms.empty()) throw DomainError("discrete mixing law has no atoms");
                       Rat total = 0;
                       for (const auto& [theta, w] : m.atoms) {
                           check_probability(theta, "mixing atom");
                           if (w < 0) throw DomainError("negative mixing weight");
                           total += w;
                       }
                       if (total != 1) throw DomainError("mixing weights sum to " + to_string(total));
                   },
               },
               h);
}

Rat mixing_moment(const MixingLaw& h, std::uint64_t ones, std::uint64_t zeros) {
    return std::visit(Overloaded{
                          [&](const PointMass& m) { return Rat(pow(m.theta, ones) * pow(1 - m.theta, zeros)); },
                          [&](const BetaMixing& m) {
                              // B(a+s, b+z)/B(a, b) as a ratio of rising factorials
                              Rat r = 1;
                              for (std::uint64_t i = 0; i < ones; ++i) r *= m.a + i;
                              for (std::uint64_t i = 0; i < zeros; ++i) r *= m.b + i;
                              for (std::uint64_t i = 0; i < ones + zeros; ++i) r /= m.a + m.b + i;
                              return r;
                          },
                          [&](const DiscreteMixing& m) {
                              Rat r = 0;
                              for (const auto& [theta, w] : m.atoms) r += w * pow(theta, ones) * pow(1 - theta, zeros);
                              return r;
                          },
                      },
                      h);
}

double mixing_cdf(const MixingLaw& h, double x) {
    return std::visit(Overloaded{
                          [&](const PointMass& m) { return x >= to_double(m.theta) ? 1.0 : 0.0; },
                          [&](const BetaMixing& m) {
                              if (x <= 0) return 0.0;
                              if (x >= 1) return 1.0;
                              return boost::math::ibeta(to_double(m.a), to_double(m.b), x);
                          },
                          [&](const DiscreteMixing& m) {
                              double f = 0;
                              for (const auto& [theta, w] : m.atoms)
                                  if (to_double(theta) <= x) f += to_double(w);
                              return f;
                          },
                      },
                      h);
}

MixingLaw mixing_from_quantiles(std::vector<Rat> quantiles) {
    if (quantiles.empty()) throw DomainError("empty quantile table");
    if (!std::is_sorted(quantiles.begin(), quantiles.end())) throw DomainError("quantile table not nondecreasing");
    DiscreteMixing d;
    const Rat w(1, quantiles.size());
    for (auto& q : quantiles) {
        check_probability(q, "quantile");
        if (!d.atoms.empty() && d.atoms.back().first == q)
            d.atoms.back().second += w;
        else
            d.atoms.push_back({std::move(q), w});
    }
    return d;
}

bool factorial_tail_bit(std::uint64_t j) {
    if (j == 0) throw DomainError("tail positions are 1-based");
    // block k covers [k!, (k+1)! - 1]; even k carries ones
    std::uint64_t k = 1, next = 2;   // next = (k+1)!
    while (j >= next) {
        ++k;
        if (next > UINT64_MAX / (k + 1)) break;
        next *= k + 1;
    }
    return k % 2 == 0;
}

Rat bernoulli_product(const Rat& p, const Cylinder& cyl) {
    const std::uint64_t s = cyl.ones();
    return pow(p, s) * pow(1 - p, cyl.size() - s);
}

Rat component_prob(const TailLaw& law, std::uint64_t n, const Cylinder& cyl) {
    if (n == 0) throw DomainError("component index starts at 1");
    check_probability(law.p, "success probability");
    if (law.variant == TailVariant::Exchangeable) {
        if (!law.mixing) throw DomainError("exchangeable tail needs a mixing law");
        validate(*law.mixing);
    }
    std::uint64_t head_ones = 0, head_zeros = 0, tail_ones = 0, tail_zeros = 0;
    for (const auto& c : cyl.constraints()) {
        if (c.index < n) {
            (c.value ? head_ones : head_zeros) += 1;
        } else if (c.index == n) {
            if (!c.value) return 0;
        } else {
            const std::uint64_t j = c.index - n;
            switch (law.variant) {
            case TailVariant::Zeros:
                if (c.value) return 0;
                break;
            case TailVariant::FactorialBlocks:
                if (c.value != factorial_tail_bit(j)) return 0;
                break;
            case TailVariant::Exchangeable:
                (c.value ? tail_ones : tail_zeros) += 1;
                break;
            }
        }
    }
    Rat prob = pow(law.p, head_ones) * pow(1 - law.p, head_zeros);
    if (law.variant == TailVariant::Exchangeable) prob *= mixing_moment(*law.mixing, tail_ones, tail_zeros);
    return prob;
}

MixtureByGamma<Cylinder> tail_mixture(const TailLaw& law) {
    return MixtureByGamma<Cylinder>([law](const Cylinder& cyl) {
        ComponentSequence seq;
        seq.values = [law, cyl](std::uint64_t n) { return component_prob(law, n, cyl); };
        // every constrained coordinate precedes the jump once n > max index
        seq.constant_from = cyl.max_index() + 1;
        return seq;
    });
}

Rat mixture_prob(const TailLaw& law, const Cylinder& cyl) { return gamma_mixture_eval(tail_mixture(law), cyl); }

FrequencyPath::FrequencyPath(std::vector<std::uint64_t> cumulative_ones) : cumulative_(std::move(cumulative_ones)) {
    if (cumulative_.empty() || cumulative_[0] != 0) throw DomainError("cumulative counts must start at 0");
    for (std::size_t k = 1; k < cumulative_.size(); ++k)
        if (cumulative_[k] < cumulative_[k - 1] || cumulative_[k] > cumulative_[k - 1] + 1)
            throw DomainError("cumulative counts must grow by 0 or 1");
}

std::uint64_t FrequencyPath::ones(std::uint64_t k) const {
    if (k == 0 || k > horizon()) throw DomainError("frequency index " + std::to_string(k) + " outside [1, horizon]");
    return cumulative_[k];
}

namespace {

// Draws the exchangeable tail bit by bit.
class ExchangeableTail {
public:
    ExchangeableTail(const MixingLaw& h, std::uint64_t seed) : rng_(seed) {
        std::visit(Overloaded{
                       [&](const PointMass& m) { theta_ = to_double(m.theta); },
                       [&](const BetaMixing& m) {
                           polya_ = true;
                           a_ = to_double(m.a);
                           b_ = to_double(m.b);
                       },
                       [&](const DiscreteMixing& m) {
                           std::vector<double> w;
                           for (const auto& atom : m.atoms) w.push_back(to_double(atom.second));
                           std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
                           theta_ = to_double(m.atoms[pick(rng_)].first);
                       },
                   },
                   h);
    }

    bool next() {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double prob = theta_;
        if (polya_) prob = (a_ + ones_) / (a_ + b_ + drawn_);
        bool bit = u(rng_) < prob;
        ones_ += bit;
        ++drawn_;
        return bit;
    }

private:
    std::mt19937_64 rng_;
    double theta_ = 0;
    bool polya_ = false;
    double a_ = 0, b_ = 0;
    double ones_ = 0, drawn_ = 0;
};

} // namespace

FrequencyPath tail_frequency_path(const TailLaw& law, const std::vector<bool>& prefix, std::uint64_t jump_position,
                                  std::uint64_t horizon, std::uint64_t seed) {
    if (jump_position == 0) throw DomainError("jump position starts at 1");
    if (prefix.size() != jump_position - 1) throw DomainError("prefix must cover the coordinates before the jump");
    if (horizon < jump_position) throw DomainError("horizon must reach the jump position");
    std::optional<ExchangeableTail> tail;
    if (law.variant == TailVariant::Exchangeable) {
        if (!law.mixing) throw DomainError("exchangeable tail needs a mixing law");
        validate(*law.mixing);
        tail.emplace(*law.mixing, seed);
    }
    std::vector<std::uint64_t> cum(horizon + 1, 0);
    for (std::uint64_t k = 1; k <= horizon; ++k) {
        bool bit;
        if (k < jump_position)
            bit = prefix[k - 1];
        else if (k == jump_position)
            bit = true;
        else if (law.variant == TailVariant::Zeros)
            bit = false;
        else if (law.variant == TailVariant::FactorialBlocks)
            bit = factorial_tail_bit(k - jump_position);
        else
            bit = tail->next();
        cum[k] = cum[k - 1] + bit;
    }
    return FrequencyPath(std::move(cum));
}

std::vector<OscillationCheckpoint> oscillation_checkpoints(std::uint64_t n, std::uint64_t nu_max,
                                                           std::uint64_t prefix_ones) {
    if (n == 0) throw DomainError("jump position starts at 1");
    if (prefix_ones > n - 1) throw DomainError("more prefix ones than prefix coordinates");
    if (nu_max > 12) throw CapExceededError("checkpoints limited to nu <= 12");
    // Frequencies after position n + j - 1 with j the end of a tail block:
    // zeros end at j = (2nu)! - 1, ones at j = (2nu+1)! - 1.
    std::vector<OscillationCheckpoint> out;
    Rat f = Rat(prefix_ones + 1, n);   // f at position n
    BigInt pos = n;
    BigInt fact = 1;                    // running k!
    std::uint64_t k = 1;
    auto advance_to = [&](std::uint64_t upto_k) {
        while (k < upto_k) {
            ++k;
            fact *= k;
        }
    };
    for (std::uint64_t nu = 1; nu <= nu_max; ++nu) {
        OscillationCheckpoint cp;
        cp.nu = nu;
        advance_to(2 * nu);
        const BigInt ones_from = fact;    // (2nu)!
        advance_to(2 * nu + 1);
        const BigInt ones_to = fact - 1;  // (2nu+1)! - 1

        // zero block appends (2nu)! - (2nu-1)! zeros: f scales by pos/new_pos
        BigInt low = n + ones_from - 1;
        f = f * Rat(pos) / Rat(low);
        pos = low;
        cp.low_index = low;
        cp.low_frequency = f;

        // one block appends (2nu+1)! - (2nu)! ones
        BigInt high = n + ones_to;
        f = (f * Rat(pos) + Rat(high - pos)) / Rat(high);
        pos = high;
        cp.high_index = high;
        cp.high_frequency = f;
        out.push_back(std::move(cp));
    }
    return out;
}

namespace {

// Integer form of the band |s/k - p| <= eps: with p = a/b, eps = c/d,
// |s b - k a| d <= k c b.
struct Band {
    BigInt a, b, c, d;

    Band(const Rat& p, const Rat& eps)
        : a(numerator(p)), b(denominator(p)), c(numerator(eps)), d(denominator(eps)) {}

    bool admits(std::uint64_t s, std::uint64_t k) const {
        BigInt diff = BigInt(s) * b - BigInt(k) * a;
        if (diff < 0) diff = -diff;
        return diff * d <= BigInt(k) * c * b;
    }
};

void check_cantelli_args(const Rat& p, const Rat& eps, std::uint64_t n) {
    check_probability(p, "success probability");
    if (eps <= 0) throw DomainError("band half-width must be positive");
    if (n == 0) throw DomainError("n starts at 1");
}

} // namespace

std::vector<Rat> cantelli_profile(const Rat& p, const Rat& eps, std::uint64_t n, std::uint64_t m_max,
                                  const CantelliOptions& options) {
    check_cantelli_args(p, eps, n);
    const std::uint64_t total = n + m_max;
    if (total > options.cap)
        throw CapExceededError("n + m = " + std::to_string(total) + " exceeds the exact cap " +
                               std::to_string(options.cap) + "; use the Monte Carlo estimate instead");
    const Band band(p, eps);
    // count[s] = number of admissible paths of the current length with s ones
    std::vector<BigInt> count{1};
    std::vector<Rat> out;
    for (std::uint64_t k = 1; k <= total; ++k) {
        std::vector<BigInt> next(k + 1);
        for (std::uint64_t s = 0; s < count.size(); ++s) {
            if (count[s] == 0) continue;
            next[s] += count[s];
            next[s + 1] += count[s];
        }
        if (k >= n)
            for (std::uint64_t s = 0; s <= k; ++s)
                if (!band.admits(s, k)) next[s] = 0;
        count = std::move(next);
        if (k >= n) {
            Rat prob = 0;
            for (std::uint64_t s = 0; s <= k; ++s)
                if (count[s] != 0) prob += Rat(count[s]) * pow(p, s) * pow(1 - p, k - s);
            out.push_back(std::move(prob));
        }
    }
    return out;
}

Rat cantelli_probability(const Rat& p, const Rat& eps, std::uint64_t n, std::uint64_t m,
                         const CantelliOptions& options) {
    return cantelli_profile(p, eps, n, m, options).back();
}

MonteCarloEstimate cantelli_monte_carlo(const Rat& p, const Rat& eps, std::uint64_t n, std::uint64_t m,
                                        std::uint64_t samples, std::uint64_t seed) {
    check_cantelli_args(p, eps, n);
    if (samples == 0) throw DomainError("need at least one sample");
    const Band band(p, eps);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution draw(to_double(p));
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        std::uint64_t s = 0;
        bool inside = true;
        for (std::uint64_t k = 1; k <= n + m && inside; ++k) {
            s += draw(rng);
            if (k >= n) inside = band.admits(s, k);
        }
        hits += inside;
    }
    const double v = static_cast<double>(hits) / static_cast<double>(samples);
    return {v, std::sqrt(v * (1 - v) / static_cast<double>(samples)), samples};
}

std::optional<std::uint64_t> find_n0(const Rat& p, const Rat& eps, const Rat& delta, std::uint64_t m_probe,
                                     const CantelliOptions& options) {
    if (delta <= 0) throw DomainError("delta must be positive");
    for (std::uint64_t n = 1; n + m_probe <= options.cap; ++n) {
        std::vector<Rat> profile = cantelli_profile(p, eps, n, m_probe, options);
        if (*std::min_element(profile.begin(), profile.end()) >= 1 - delta) return n;
    }
    return std::nullopt;
}

} // namespace finadd
