#include "finadd/json_io.hpp"

#include "finadd/errors.hpp"

#include <fstream>
#include <sstream>

namespace finadd {

namespace {

std::uint64_t index_from_json(const Json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw DomainError(std::string(what) + " must be a nonnegative integer");
    return j.get<std::uint64_t>();
}

const Json& field(const Json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::vector<std::uint64_t> index_list(const Json& arr, const char* what) {
    if (!arr.is_array()) throw DomainError(std::string(what) + " must be an array");
    std::vector<std::uint64_t> out;
    for (const auto& v : arr) out.push_back(index_from_json(v, what));
    return out;
}

std::vector<CountingSet> children_from_json(const Json& arr, const char* what) {
    if (!arr.is_array() || arr.empty()) throw DomainError(std::string(what) + " needs a nonempty array of sets");
    std::vector<CountingSet> out;
    for (const auto& c : arr) out.push_back(counting_set_from_json(c));
    return out;
}

} // namespace

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Rat(j.get<std::uint64_t>());
    throw DomainError("probabilities must be given as \"num/den\" or decimal strings");
}

Event event_from_json(const AtomSpace& space, const Json& members) {
    if (!members.is_array()) throw DomainError("event must be an array of atoms");
    std::vector<std::size_t> atoms;
    for (const auto& m : members) {
        if (m.is_string()) {
            auto idx = space.find_label(m.get<std::string>());
            if (!idx) throw DomainError("unknown atom label '" + m.get<std::string>() + "'");
            atoms.push_back(*idx);
        } else {
            atoms.push_back(index_from_json(m, "atom index"));
        }
    }
    return make_event(space, atoms);
}

Json event_to_json(const Event& e) {
    Json arr = Json::array();
    for (std::size_t a : e.atoms()) arr.push_back(a);
    return arr;
}

Assessment assessment_from_json(const Json& doc) {
    const std::size_t atoms = index_from_json(field(doc, "atoms"), "atoms");
    std::vector<std::string> labels;
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
    Assessment a(AtomSpace(atoms, std::move(labels)));
    const Json& entries = field(doc, "assessments");
    if (!entries.is_array()) throw DomainError("'assessments' must be an array");
    for (const auto& e : entries) a.add(event_from_json(a.space(), field(e, "event")), rat_from_json(field(e, "p")));
    return a;
}

Json assessment_to_json(const Assessment& a) {
    Json doc;
    doc["atoms"] = a.space().size();
    if (!a.space().labels().empty()) doc["labels"] = a.space().labels();
    doc["assessments"] = Json::array();
    for (const auto& e : a.entries()) doc["assessments"].push_back({{"event", event_to_json(e.event)}, {"p", rat_json(e.p)}});
    return doc;
}

Json verdict_to_json(const Assessment& a, const CoherenceVerdict& v) {
    Json doc;
    doc["verdict"] = v.coherent() ? "coherent" : "incoherent";
    if (v.coherent()) {
        Json w = Json::array();
        for (const Rat& x : v.witness) w.push_back(rat_json(x));
        doc["witness"] = std::move(w);
    } else {
        Json stakes = Json::array();
        for (std::size_t i = 0; i < a.entries().size(); ++i)
            stakes.push_back({{"event", event_to_json(a.entries()[i].event)}, {"stake", rat_json(v.dutch_book->stakes[i])}});
        doc["certificate"] = {{"stakes", std::move(stakes)},
                              {"guaranteed_loss", rat_json(v.dutch_book->guaranteed_loss)}};
    }
    doc["certificate_verified"] = certificate_holds(a, v);
    return doc;
}

CountingSet counting_set_from_json(const Json& doc) {
    if (!doc.is_object() || doc.size() != 1) throw DomainError("set descriptor must be an object with one key");
    const auto& [key, body] = *doc.items().begin();
    if (key == "finite") return CountingSet::finite(index_list(body, "finite members"));
    if (key == "cofinite") return CountingSet::cofinite(index_list(body, "cofinite exclusions"));
    if (key == "progression")
        return CountingSet::progression(index_from_json(field(body, "first"), "first"),
                                        index_from_json(field(body, "step"), "step"));
    if (key == "blocks") {
        if (!body.is_array()) throw DomainError("blocks must be an array of [first, last] pairs");
        std::vector<IndexBlock> ranges;
        for (const auto& r : body) {
            if (!r.is_array() || r.size() != 2) throw DomainError("each block is a [first, last] pair");
            ranges.push_back({index_from_json(r[0], "block start"), index_from_json(r[1], "block end")});
        }
        return CountingSet::blocks(std::move(ranges));
    }
    if (key == "geometric")
        return CountingSet::geometric_blocks(index_from_json(field(body, "base"), "base"),
                                             index_from_json(field(body, "period"), "period"),
                                             index_from_json(field(body, "phase"), "phase"));
    if (key == "union" || key == "intersection") {
        auto kids = children_from_json(body, key.c_str());
        CountingSet acc = kids[0];
        for (std::size_t i = 1; i < kids.size(); ++i)
            acc = key == "union" ? CountingSet::unite(acc, kids[i]) : CountingSet::intersect(acc, kids[i]);
        return acc;
    }
    if (key == "complement") return CountingSet::complement(counting_set_from_json(body));
    throw DomainError("unknown set descriptor '" + key + "'");
}

Json counting_set_to_json(const CountingSet& s) {
    const auto& n = s.node();
    switch (n.kind) {
    case CountingSet::Kind::Finite: return {{"finite", n.values}};
    case CountingSet::Kind::Cofinite: return {{"cofinite", n.values}};
    case CountingSet::Kind::Progression: return {{"progression", {{"first", n.a}, {"step", n.b}}}};
    case CountingSet::Kind::Blocks: {
        Json arr = Json::array();
        for (const auto& r : n.ranges) arr.push_back({r.first, r.last});
        return {{"blocks", std::move(arr)}};
    }
    case CountingSet::Kind::GeometricBlocks: return {{"geometric", {{"base", n.a}, {"period", n.b}, {"phase", n.c}}}};
    case CountingSet::Kind::Union:
    case CountingSet::Kind::Intersection: {
        Json arr = Json::array();
        for (const auto& c : n.children) arr.push_back(counting_set_to_json(c));
        return {{n.kind == CountingSet::Kind::Union ? "union" : "intersection", std::move(arr)}};
    }
    case CountingSet::Kind::Complement: return {{"complement", counting_set_to_json(n.children.at(0))}};
    }
    return {};
}

Json density_to_json(const DensityValue& d) {
    if (d.determined()) return {{"kind", "exists"}, {"value", rat_json(d.value)}};
    if (!d.estimated) return {{"kind", "divergent"}, {"liminf", rat_json(d.liminf)}, {"limsup", rat_json(d.limsup)}};
    return {{"kind", "undetermined"}, {"window_min", rat_json(d.liminf)}, {"window_max", rat_json(d.limsup)}};
}

Json levels_to_json(const PiecewiseLevels& levels) {
    Json jumps = Json::array();
    for (const auto& j : levels.jumps)
        jumps.push_back({{"at", rat_json(j.location)}, {"left", rat_json(j.left)}, {"right", rat_json(j.right)}});
    return {{"minus_inf", rat_json(levels.minus_inf)}, {"jumps", std::move(jumps)}, {"plus_inf", rat_json(levels.plus_inf)}};
}

PiecewiseLevels levels_from_json(const Json& doc) {
    PiecewiseLevels lv;
    lv.minus_inf = rat_from_json(field(doc, "minus_inf"));
    lv.plus_inf = rat_from_json(field(doc, "plus_inf"));
    if (doc.contains("jumps"))
        for (const auto& j : doc.at("jumps"))
            lv.jumps.push_back({rat_from_json(field(j, "at")), rat_from_json(field(j, "left")), rat_from_json(field(j, "right"))});
    return lv;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DomainError("'" + path + "' is not valid JSON: " + e.what());
    }
}

} // namespace finadd
