#include "finadd/event.hpp"

#include "finadd/errors.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace finadd {

AtomSpace::AtomSpace(std::size_t atoms, std::vector<std::string> labels, std::size_t cap) {
    if (atoms == 0) throw DomainError("atom space needs at least one atom");
    if (atoms > cap)
        throw DomainError("atom count " + std::to_string(atoms) + " exceeds cap " + std::to_string(cap));
    if (!labels.empty()) {
        if (labels.size() != atoms) throw DomainError("label count does not match atom count");
        std::set<std::string> seen(labels.begin(), labels.end());
        if (seen.size() != labels.size()) throw DomainError("atom labels must be distinct");
    }
    data_ = std::make_shared<const Data>(Data{atoms, std::move(labels)});
}

std::optional<std::size_t> AtomSpace::find_label(const std::string& label) const {
    const auto& l = data_->labels;
    auto it = std::find(l.begin(), l.end(), label);
    if (it == l.end()) return std::nullopt;
    return static_cast<std::size_t>(it - l.begin());
}

bool operator==(const AtomSpace& a, const AtomSpace& b) {
    return a.data_ == b.data_ || (a.data_->atoms == b.data_->atoms && a.data_->labels == b.data_->labels);
}

Event::Event(AtomSpace space) : space_(std::move(space)), words_((space_.size() + 63) / 64, 0) {}

Event::Event(AtomSpace space, std::span<const std::size_t> atoms) : Event(std::move(space)) {
    for (std::size_t a : atoms) {
        if (a >= space_.size())
            throw DomainError("atom index " + std::to_string(a) + " out of range [0, " +
                              std::to_string(space_.size()) + ")");
        words_[a / 64] |= std::uint64_t{1} << (a % 64);
    }
}

Event Event::empty(const AtomSpace& space) { return Event(space); }

Event Event::sure(const AtomSpace& space) { return ~Event(space); }

void Event::clear_padding() {
    std::size_t tail = space_.size() % 64;
    if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

void Event::require_same_space(const Event& other) const {
    if (!(space_ == other.space_)) throw DomainError("events belong to different atom spaces");
}

bool Event::contains(std::size_t atom) const {
    if (atom >= space_.size()) throw DomainError("atom index " + std::to_string(atom) + " out of range");
    return (words_[atom / 64] >> (atom % 64)) & 1u;
}

std::size_t Event::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool Event::is_empty() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool Event::is_sure() const { return count() == space_.size(); }

std::vector<std::size_t> Event::atoms() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < space_.size(); ++i)
        if ((words_[i / 64] >> (i % 64)) & 1u) out.push_back(i);
    return out;
}

bool Event::subset_of(const Event& other) const {
    require_same_space(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

bool Event::disjoint_with(const Event& other) const { return (*this & other).is_empty(); }

std::string Event::to_bitstring() const {
    std::string s(space_.size(), '0');
    for (std::size_t i = 0; i < space_.size(); ++i)
        if ((words_[i / 64] >> (i % 64)) & 1u) s[i] = '1';
    return s;
}

Event Event::operator|(const Event& other) const {
    require_same_space(other);
    Event r(space_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | other.words_[i];
    return r;
}

Event Event::operator&(const Event& other) const {
    require_same_space(other);
    Event r(space_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & other.words_[i];
    return r;
}

Event Event::operator-(const Event& other) const {
    require_same_space(other);
    Event r(space_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~other.words_[i];
    return r;
}

Event Event::operator~() const {
    Event r(space_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.clear_padding();
    return r;
}

bool operator==(const Event& a, const Event& b) { return a.space_ == b.space_ && a.words_ == b.words_; }

bool operator<(const Event& a, const Event& b) {
    return std::lexicographical_compare(a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end());
}

Event make_event(const AtomSpace& space, std::span<const std::size_t> atom_indices) {
    return Event(space, atom_indices);
}

Event make_event(const AtomSpace& space, std::initializer_list<std::size_t> atom_indices) {
    return Event(space, std::span<const std::size_t>(atom_indices.begin(), atom_indices.size()));
}

Rat indicator(const Event& event, std::size_t atom) { return event.contains(atom) ? Rat(1) : Rat(0); }

Assessment::Assessment(AtomSpace space, std::vector<AssessmentEntry> entries) : space_(std::move(space)) {
    for (auto& e : entries) add(std::move(e.event), std::move(e.p));
}

void Assessment::add(Event event, Rat p) {
    if (!(event.space() == space_)) throw DomainError("assessed event belongs to a different atom space");
    for (const auto& e : entries_) {
        if (e.event == event) {
            if (e.p == p) return;
            throw DomainError("event " + event.to_bitstring() + " assessed twice with different prices " +
                              to_string(e.p) + " and " + to_string(p));
        }
    }
    entries_.push_back({std::move(event), std::move(p)});
}

Assessment Assessment::with(Event event, Rat p) const {
    Assessment copy = *this;
    copy.add(std::move(event), std::move(p));
    return copy;
}

std::optional<Rat> Assessment::price_of(const Event& event) const {
    for (const auto& e : entries_)
        if (e.event == event) return e.p;
    return std::nullopt;
}

} // namespace finadd
