#include "finadd/symbols.hpp"

#include "finadd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace finadd {

SymbolProcess::SymbolProcess(std::uint64_t alphabet, std::uint64_t horizon) : alphabet_(alphabet), horizon_(horizon) {
    if (alphabet == 0) throw DomainError("alphabet size starts at 1");
    if (horizon == 0) throw DomainError("horizon starts at 1");
}

Rat SymbolProcess::distinct() const {
    if (horizon_ > alphabet_) return 0;
    Rat r = 1;
    for (std::uint64_t i = 0; i < horizon_; ++i) r *= Rat(alphabet_ - i, alphabet_);
    return r;
}

Rat SymbolProcess::coordinate(std::uint64_t k) const {
    if (k == 0) throw DomainError("symbols are 1-based");
    return k <= alphabet_ ? Rat(1, alphabet_) : Rat(0);
}

Rat SymbolProcess::count_at_most(std::uint64_t k, std::uint64_t r) const {
    const Rat q = coordinate(k);
    if (r >= horizon_ || q == 0) return 1;
    if (q == 1) return 0;
    // binomial(n, q) lower tail, term by term
    const Rat ratio = q / (1 - q);
    Rat term = pow(1 - q, horizon_);
    Rat sum = term;
    for (std::uint64_t j = 1; j <= r; ++j) {
        term *= Rat(horizon_ - j + 1, j) * ratio;
        sum += term;
    }
    return sum;
}

Rat distinctness_prob(std::uint64_t alphabet, std::uint64_t n) { return SymbolProcess(alphabet, n).distinct(); }

namespace {

// 0 <= 1 - P_N{distinct} <= n(n-1)/(2N) for every N
ConvergenceWitness distinctness_witness(std::uint64_t n) {
    const Rat pairs(n * (n - 1), 2);
    return {Rat(1), [pairs](std::uint64_t big_n) { return pairs / big_n; }};
}

} // namespace

Rat distinctness_limit(std::uint64_t n) {
    if (n == 0) throw DomainError("n starts at 1");
    MixtureByGamma<std::uint64_t> mix([](const std::uint64_t& len) {
        ComponentSequence seq;
        seq.values = [len](std::uint64_t big_n) { return distinctness_prob(big_n, len); };
        seq.witness = distinctness_witness(len);
        return seq;
    });
    return gamma_mixture_eval(mix, n);
}

DilutionReport frequency_dilution_check(const std::vector<Rat>& p_seq, std::uint64_t m, std::uint64_t n,
                                        std::vector<std::uint64_t> grid) {
    if (p_seq.empty()) throw DomainError("empty probability sequence");
    if (m == 0) throw DomainError("M starts at 1");
    Rat total = 0;
    for (const Rat& p : p_seq) {
        if (p < 0) throw DomainError("negative probability in sequence");
        total += p;
    }
    if (total != 1) throw DomainError("probability sequence sums to " + to_string(total));

    DilutionReport r;
    auto best = std::max_element(p_seq.begin(), p_seq.end());
    r.k_bar = static_cast<std::uint64_t>(best - p_seq.begin()) + 1;
    r.p_bar = *best;
    r.threshold = r.p_bar / m;
    BigInt floor_ratio = numerator(Rat(m / r.p_bar)) / denominator(Rat(m / r.p_bar));
    r.required_n = floor_ratio.convert_to<std::uint64_t>() + 1;
    if (n < r.required_n)
        throw DomainError("need n > M / max p_k, i.e. n >= " + std::to_string(r.required_n) + "; got n = " +
                          std::to_string(n));
    r.frequency_bound = Rat(1, n);

    // largest count of a_kbar compatible with f <= threshold
    const Rat cap_ratio = r.threshold * n;
    const std::uint64_t count_cap = (numerator(cap_ratio) / denominator(cap_ratio)).convert_to<std::uint64_t>();
    auto inner = [k = r.k_bar, n, count_cap](std::uint64_t big_n) {
        return SymbolProcess(big_n, n).count_at_most(k, count_cap);
    };

    if (grid.empty())
        for (std::uint64_t big_n = std::max<std::uint64_t>(r.k_bar, 1), i = 0; i < 8; ++i, big_n *= 4)
            grid.push_back(big_n);
    for (std::uint64_t big_n : grid) r.grid.push_back({big_n, inner(big_n), distinctness_prob(big_n, n)});

    // On the distinctness event every f_k <= 1/n <= threshold, so the inner
    // probability dominates P_N{distinct}.
    MixtureByGamma<std::uint64_t> mix([&inner, n](const std::uint64_t&) {
        ComponentSequence seq;
        seq.values = inner;
        seq.witness = distinctness_witness(n);
        return seq;
    });
    r.mixture_probability = gamma_mixture_eval(mix, r.k_bar);
    return r;
}

SllnReport slln_simulation(std::uint64_t alphabet, std::uint64_t horizon, std::uint64_t seed) {
    if (alphabet == 0) throw DomainError("alphabet size starts at 1");
    if (horizon == 0) throw DomainError("horizon starts at 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> draw(0, alphabet - 1);
    std::vector<std::uint64_t> counts(alphabet, 0);
    for (std::uint64_t i = 0; i < horizon; ++i) ++counts[draw(rng)];

    SllnReport r;
    r.alphabet = alphabet;
    r.horizon = horizon;
    r.max_frequency_beyond = 0;   // symbols past a_N have probability zero
    r.frequency_sum = 0;
    r.max_deviation = 0;
    const double centre = 1.0 / static_cast<double>(alphabet);
    for (std::uint64_t c : counts) {
        Rat f(c, horizon);
        r.frequency_sum += f;
        r.max_deviation = std::max(r.max_deviation, std::abs(to_double(f) - centre));
        r.frequencies.push_back(std::move(f));
    }
    r.band = 5 * std::sqrt(centre * (1 - centre) / static_cast<double>(horizon));
    r.within_band = r.max_deviation <= r.band;
    return r;
}

} // namespace finadd
