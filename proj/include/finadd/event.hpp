#pragma once

#include "finadd/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace finadd {

/// Finite partition of the sure event into elementary events (atoms).
///
/// Cheap to copy; copies share the same immutable data. Two spaces compare
/// equal when they have the same atom count and labels.
class AtomSpace {
public:
    static constexpr std::size_t kDefaultAtomCap = std::size_t{1} << 20;

    explicit AtomSpace(std::size_t atoms, std::vector<std::string> labels = {},
                       std::size_t cap = kDefaultAtomCap);

    std::size_t size() const noexcept { return data_->atoms; }
    const std::vector<std::string>& labels() const noexcept { return data_->labels; }
    std::optional<std::size_t> find_label(const std::string& label) const;

    friend bool operator==(const AtomSpace& a, const AtomSpace& b);

private:
    struct Data {
        std::size_t atoms;
        std::vector<std::string> labels;
    };
    std::shared_ptr<const Data> data_;
};

/// Subset of the atoms of one AtomSpace, one bit per atom.
class Event {
public:
    Event(AtomSpace space, std::span<const std::size_t> atoms);

    static Event empty(const AtomSpace& space);
    static Event sure(const AtomSpace& space);

    const AtomSpace& space() const noexcept { return space_; }
    bool contains(std::size_t atom) const;
    std::size_t count() const;
    bool is_empty() const;
    bool is_sure() const;
    std::vector<std::size_t> atoms() const;
    bool subset_of(const Event& other) const;
    bool disjoint_with(const Event& other) const;

    // Mask rendered with atom 0 leftmost, e.g. "101".
    std::string to_bitstring() const;

    Event operator|(const Event& other) const;
    Event operator&(const Event& other) const;
    Event operator-(const Event& other) const;
    Event operator~() const;

    friend bool operator==(const Event& a, const Event& b);
    friend bool operator<(const Event& a, const Event& b);

private:
    explicit Event(AtomSpace space);
    void require_same_space(const Event& other) const;
    void clear_padding();

    AtomSpace space_;
    std::vector<std::uint64_t> words_;
};

Event make_event(const AtomSpace& space, std::span<const std::size_t> atom_indices);
Event make_event(const AtomSpace& space, std::initializer_list<std::size_t> atom_indices);

// 1 if the atom lies in the event, else 0.
Rat indicator(const Event& event, std::size_t atom);

inline Event unite(const Event& a, const Event& b) { return a | b; }
inline Event intersect(const Event& a, const Event& b) { return a & b; }
inline Event complement(const Event& a) { return ~a; }
inline Event difference(const Event& a, const Event& b) { return a - b; }

struct AssessmentEntry {
    Event event;
    Rat p;
};

/// A finite list of (event, price) pairs over a shared atom space.
///
/// Repeating an event with the same price collapses the repeat; repeating
/// it with a different price is rejected.
class Assessment {
public:
    explicit Assessment(AtomSpace space) : space_(std::move(space)) {}
    Assessment(AtomSpace space, std::vector<AssessmentEntry> entries);

    void add(Event event, Rat p);
    Assessment with(Event event, Rat p) const;

    const AtomSpace& space() const noexcept { return space_; }
    const std::vector<AssessmentEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::optional<Rat> price_of(const Event& event) const;

private:
    AtomSpace space_;
    std::vector<AssessmentEntry> entries_;
};

} // namespace finadd
