#pragma once

#include "finadd/errors.hpp"
#include "finadd/event.hpp"
#include "finadd/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace finadd {

/// Stakes on every assessed event together with the loss they guarantee:
/// the gain at every atom is at most -guaranteed_loss < 0.
struct DutchBook {
    std::vector<Rat> stakes;
    Rat guaranteed_loss;
};

enum class CoherenceStatus { Coherent, Incoherent };

struct CoherenceVerdict {
    CoherenceStatus status = CoherenceStatus::Coherent;
    // Coherent: one nonnegative weight per atom, summing to 1, reproducing every price.
    std::vector<Rat> witness;
    // Incoherent: stakes normalized so that max |c_i| = 1.
    std::optional<DutchBook> dutch_book;

    bool coherent() const noexcept { return status == CoherenceStatus::Coherent; }
};

struct ExtensionInterval {
    Rat lower;
    Rat upper;
    bool contains(const Rat& p) const { return lower <= p && p <= upper; }
};

class IncoherentAssessmentError : public DomainError {
public:
    explicit IncoherentAssessmentError(DutchBook book)
        : DomainError("base assessment is incoherent"), book_(std::move(book)) {}
    const DutchBook& dutch_book() const noexcept { return book_; }

private:
    DutchBook book_;
};

// Gain sum_i c_i (p_i - 1_{E_i}(atom)) of the bettor at one atom.
Rat gain_at(const Assessment& assessment, std::span<const Rat> stakes, std::size_t atom);

// Largest gain over all atoms.
Rat sup_gain(const Assessment& assessment, std::span<const Rat> stakes);

CoherenceVerdict check_coherence(const Assessment& assessment);

// Replays a verdict's certificate by direct evaluation.
bool certificate_holds(const Assessment& assessment, const CoherenceVerdict& verdict);

enum class PiLaw { SureEvent, NonNegativity, Additivity };

std::string to_string(PiLaw law);

struct PiViolation {
    PiLaw law;
    std::vector<std::size_t> entries;   // indices into assessment.entries()
    std::string detail;
};

// Checks P(sure)=1, P>=0 and additivity over assessed disjoint pairs whose
// union is also assessed.
std::vector<PiViolation> verify_pi_laws(const Assessment& assessment);

// Range of prices for new_event that keep the enlarged assessment coherent.
// Throws IncoherentAssessmentError when the base itself is incoherent.
ExtensionInterval extension_bounds(const Assessment& assessment, const Event& new_event);

} // namespace finadd
