#include "finadd/coherence.hpp"

#include "finadd/simplex.hpp"

#include <algorithm>
#include <map>

namespace finadd {

namespace {

// Atoms that no assessed event separates behave identically in every bet,
// so the LPs run over the distinct indicator columns (the generated
// partition) and map back to one representative atom each.
struct Partition {
    std::vector<std::vector<bool>> columns;   // columns[k][i] = 1_{E_i} on cell k
    std::vector<std::size_t> representative;  // first atom of each cell
};

Partition generated_partition(const std::vector<const Event*>& events, std::size_t atoms) {
    Partition part;
    std::map<std::vector<bool>, std::size_t> seen;
    for (std::size_t a = 0; a < atoms; ++a) {
        std::vector<bool> col(events.size());
        for (std::size_t i = 0; i < events.size(); ++i) col[i] = events[i]->contains(a);
        if (seen.emplace(col, part.columns.size()).second) {
            part.columns.push_back(std::move(col));
            part.representative.push_back(a);
        }
    }
    return part;
}

std::vector<const Event*> events_of(const Assessment& assessment) {
    std::vector<const Event*> out;
    for (const auto& e : assessment.entries()) out.push_back(&e.event);
    return out;
}

// Rows: one per assessed event plus normalization; columns: partition cells.
LinearProgram witness_program(const Assessment& assessment, const Partition& part) {
    const std::size_t n = assessment.size();
    const std::size_t k = part.columns.size();
    LinearProgram lp;
    lp.rows.assign(n + 1, std::vector<Rat>(k));
    lp.rhs.resize(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < k; ++c) lp.rows[i][c] = part.columns[c][i] ? 1 : 0;
        lp.rhs[i] = assessment.entries()[i].p;
    }
    for (std::size_t c = 0; c < k; ++c) lp.rows[n][c] = 1;
    lp.rhs[n] = 1;
    lp.cost.assign(k, Rat(0));
    return lp;
}

std::vector<Rat> spread_witness(const std::vector<Rat>& cell_weights, const Partition& part, std::size_t atoms) {
    std::vector<Rat> w(atoms);
    for (std::size_t c = 0; c < cell_weights.size(); ++c) w[part.representative[c]] = cell_weights[c];
    return w;
}

// maximize t  s.t.  sum_i c_i (1_{E_i}(cell) - p_i) >= t on every cell,
// -1 <= c_i <= 1, t >= 0.  Variable layout: c+ | c- | t | s (per cell) | r+ | r-.
DutchBook max_loss_book(const Assessment& assessment, const Partition& part) {
    const std::size_t n = assessment.size();
    const std::size_t k = part.columns.size();
    const std::size_t cplus = 0, cminus = n, tcol = 2 * n, slack = 2 * n + 1;
    const std::size_t rplus = slack + k, rminus = rplus + n, vars = rminus + n;

    LinearProgram lp;
    lp.cost.assign(vars, Rat(0));
    lp.cost[tcol] = -1;
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<Rat> row(vars);
        for (std::size_t i = 0; i < n; ++i) {
            Rat coef = (part.columns[c][i] ? Rat(1) : Rat(0)) - assessment.entries()[i].p;
            row[cplus + i] = coef;
            row[cminus + i] = -coef;
        }
        row[tcol] = -1;
        row[slack + c] = -1;
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> up(vars), down(vars);
        up[cplus + i] = 1;
        up[rplus + i] = 1;
        down[cminus + i] = 1;
        down[rminus + i] = 1;
        lp.rows.push_back(std::move(up));
        lp.rhs.push_back(1);
        lp.rows.push_back(std::move(down));
        lp.rhs.push_back(1);
    }

    LpResult res = solve_lp(lp);
    DutchBook book;
    book.stakes.resize(n);
    Rat largest = 0;
    for (std::size_t i = 0; i < n; ++i) {
        book.stakes[i] = res.x[cplus + i] - res.x[cminus + i];
        largest = std::max(largest, abs(book.stakes[i]));
    }
    if (largest > 0)
        for (auto& c : book.stakes) c /= largest;
    book.guaranteed_loss = -sup_gain(assessment, book.stakes);
    return book;
}

} // namespace

Rat gain_at(const Assessment& assessment, std::span<const Rat> stakes, std::size_t atom) {
    if (stakes.size() != assessment.size())
        throw DomainError("stake vector has " + std::to_string(stakes.size()) + " entries, assessment has " +
                          std::to_string(assessment.size()));
    Rat g = 0;
    for (std::size_t i = 0; i < stakes.size(); ++i) {
        const auto& e = assessment.entries()[i];
        g += stakes[i] * (e.p - indicator(e.event, atom));
    }
    return g;
}

Rat sup_gain(const Assessment& assessment, std::span<const Rat> stakes) {
    if (stakes.size() != assessment.size())
        throw DomainError("stake vector has " + std::to_string(stakes.size()) + " entries, assessment has " +
                          std::to_string(assessment.size()));
    auto part = generated_partition(events_of(assessment), assessment.space().size());
    std::optional<Rat> best;
    for (std::size_t atom : part.representative) {
        Rat g = gain_at(assessment, stakes, atom);
        if (!best || g > *best) best = g;
    }
    return *best;
}

CoherenceVerdict check_coherence(const Assessment& assessment) {
    const std::size_t atoms = assessment.space().size();
    auto part = generated_partition(events_of(assessment), atoms);

    LpResult res = solve_lp(witness_program(assessment, part));
    CoherenceVerdict v;
    if (res.status == LpStatus::Optimal) {
        v.status = CoherenceStatus::Coherent;
        v.witness = spread_witness(res.x, part, atoms);
        return v;
    }
    v.status = CoherenceStatus::Incoherent;
    v.dutch_book = max_loss_book(assessment, part);
    return v;
}

bool certificate_holds(const Assessment& assessment, const CoherenceVerdict& verdict) {
    if (verdict.coherent()) {
        if (verdict.dutch_book || verdict.witness.size() != assessment.space().size()) return false;
        Rat total = 0;
        for (const auto& w : verdict.witness) {
            if (w < 0) return false;
            total += w;
        }
        if (total != 1) return false;
        for (const auto& e : assessment.entries()) {
            Rat mass = 0;
            for (std::size_t a = 0; a < verdict.witness.size(); ++a)
                if (e.event.contains(a)) mass += verdict.witness[a];
            if (mass != e.p) return false;
        }
        return true;
    }
    if (!verdict.dutch_book || !verdict.witness.empty()) return false;
    const auto& book = *verdict.dutch_book;
    if (book.guaranteed_loss <= 0) return false;
    for (std::size_t a = 0; a < assessment.space().size(); ++a)
        if (gain_at(assessment, book.stakes, a) > -book.guaranteed_loss) return false;
    return true;
}

std::string to_string(PiLaw law) {
    switch (law) {
    case PiLaw::SureEvent: return "pi1";
    case PiLaw::NonNegativity: return "pi2";
    case PiLaw::Additivity: return "pi3";
    }
    return "?";
}

std::vector<PiViolation> verify_pi_laws(const Assessment& assessment) {
    std::vector<PiViolation> out;
    const auto& es = assessment.entries();
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (es[i].event.is_sure() && es[i].p != 1)
            out.push_back({PiLaw::SureEvent, {i}, "P(sure event) = " + to_string(es[i].p) + ", expected 1/1"});
        if (es[i].p < 0)
            out.push_back({PiLaw::NonNegativity, {i}, "negative price " + to_string(es[i].p)});
    }
    for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t j = i; j < es.size(); ++j) {
            if (!es[i].event.disjoint_with(es[j].event)) continue;
            Event u = es[i].event | es[j].event;
            for (std::size_t k = 0; k < es.size(); ++k) {
                if (!(es[k].event == u)) continue;
                if (es[k].p != es[i].p + es[j].p)
                    out.push_back({PiLaw::Additivity,
                                   {i, j, k},
                                   "P(union) = " + to_string(es[k].p) + " but the disjoint parts sum to " +
                                       to_string(es[i].p + es[j].p)});
            }
        }
    }
    return out;
}

ExtensionInterval extension_bounds(const Assessment& assessment, const Event& new_event) {
    if (!(new_event.space() == assessment.space())) throw DomainError("new event belongs to a different atom space");
    auto events = events_of(assessment);
    events.push_back(&new_event);
    auto part = generated_partition(events, assessment.space().size());

    LinearProgram lp = witness_program(assessment, part);
    const std::size_t n = assessment.size();
    std::vector<Rat> objective(part.columns.size());
    for (std::size_t c = 0; c < part.columns.size(); ++c) objective[c] = part.columns[c][n] ? 1 : 0;

    lp.cost = objective;
    LpResult low = solve_lp(lp);
    if (low.status != LpStatus::Optimal) {
        auto base = generated_partition(events_of(assessment), assessment.space().size());
        throw IncoherentAssessmentError(max_loss_book(assessment, base));
    }
    for (auto& c : lp.cost) c = -c;
    LpResult high = solve_lp(lp);
    return {low.objective, -high.objective};
}

} // namespace finadd
