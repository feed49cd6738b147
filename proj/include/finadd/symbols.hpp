#pragma once

#include "finadd/limit_laws.hpp"
#include "finadd/rational.hpp"

#include <cstdint>
#include <vector>

namespace finadd {

/// Component N of the symbol process: xi_1, ..., xi_n i.i.d. uniform on the
/// first N symbols a_1, ..., a_N.
class SymbolProcess {
public:
    SymbolProcess(std::uint64_t alphabet, std::uint64_t horizon);

    std::uint64_t alphabet() const noexcept { return alphabet_; }
    std::uint64_t horizon() const noexcept { return horizon_; }

    // P{xi_1, ..., xi_n pairwise distinct} = N(N-1)...(N-n+1)/N^n
    Rat distinct() const;
    // P{xi_i = a_k} for any single coordinate i
    Rat coordinate(std::uint64_t k) const;
    // P{symbol a_k occurs at most r times among the n draws}
    Rat count_at_most(std::uint64_t k, std::uint64_t r) const;

private:
    std::uint64_t alphabet_;
    std::uint64_t horizon_;
};

Rat distinctness_prob(std::uint64_t alphabet, std::uint64_t n);

// The gamma-mixture over N of distinctness_prob(N, n).
Rat distinctness_limit(std::uint64_t n);

struct DilutionRow {
    std::uint64_t alphabet;
    Rat inner;      // P_N{f_kbar <= p_kbar / M}
    Rat distinct;   // P_N{all n draws distinct}
};

struct DilutionReport {
    std::uint64_t k_bar;       // 1-based index of the largest p_k
    Rat p_bar;
    Rat threshold;             // p_kbar / M
    Rat frequency_bound;       // 1/n, the largest frequency on the distinctness event
    std::uint64_t required_n;  // smallest admissible n
    std::vector<DilutionRow> grid;
    Rat mixture_probability;
};

// Throws DomainError (naming the required n) unless n > M / max p_k.
DilutionReport frequency_dilution_check(const std::vector<Rat>& p_seq, std::uint64_t m, std::uint64_t n,
                                        std::vector<std::uint64_t> grid = {});

struct SllnReport {
    std::uint64_t alphabet;
    std::uint64_t horizon;
    std::vector<Rat> frequencies;   // f_k for k = 1..N
    Rat max_frequency_beyond;       // max f_k over k > N
    Rat frequency_sum;
    double max_deviation;           // max |f_k - 1/N|
    double band;                    // 5 sigma of a single frequency
    bool within_band;
};

SllnReport slln_simulation(std::uint64_t alphabet, std::uint64_t horizon, std::uint64_t seed = 0);

} // namespace finadd
