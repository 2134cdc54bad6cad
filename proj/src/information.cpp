#include "dik/information.hpp"

#include <algorithm>

namespace dik {

std::string PieceOfInformation::key() const {
    std::string k = "<{";
    bool first = true;
    for (const auto& o : objects) {
        k += (first ? "" : ",") + o;
        first = false;
    }
    k += "},{";
    first = true;
    for (const auto& a : atoms) {
        k += (first ? "" : "; ") + to_string(a);
        first = false;
    }
    for (const auto& f : formulas) {
        k += (first ? "" : "; ") + to_string(f);
        first = false;
    }
    return k + "}>";
}

std::string to_string(const PieceOfInformation& p) { return p.key(); }

ObjectSet objects_of(const GroundAtom& a, const std::map<std::string, std::vector<Object>>& set_objects) {
    ObjectSet out;
    for (const auto& arg : a.args) {
        out.insert(arg);
        if (auto it = set_objects.find(arg); it != set_objects.end()) out.insert(it->second.begin(), it->second.end());
    }
    return out;
}

namespace {

bool object_set_less(const ObjectSet& a, const ObjectSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), object_less);
}

}  // namespace

std::vector<PieceOfInformation> build_pieces(const AtomSet& atoms,
                                             const std::map<std::string, std::vector<Object>>& set_objects,
                                             Provenance::Kind kind) {
    std::vector<std::pair<ObjectSet, const GroundAtom*>> tagged;
    std::vector<ObjectSet> keys;
    for (const auto& a : atoms) {
        auto objs = objects_of(a, set_objects);
        tagged.emplace_back(objs, &a);
        keys.push_back(std::move(objs));
    }
    std::sort(keys.begin(), keys.end(), object_set_less);
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    std::vector<PieceOfInformation> pieces;
    for (auto& key : keys) {
        PieceOfInformation p;
        p.provenance.kind = kind;
        for (const auto& [objs, atom] : tagged)
            if (std::includes(key.begin(), key.end(), objs.begin(), objs.end(), object_less)) p.atoms.push_back(*atom);
        std::sort(p.atoms.begin(), p.atoms.end());
        p.objects = std::move(key);
        pieces.push_back(std::move(p));
    }
    return pieces;
}

GroundSet piece_ground(std::size_t count) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < count; ++i) ids.push_back("I" + std::to_string(i + 1));
    return GroundSet(std::move(ids));
}

InformationSpace deductive_preorder_topology(std::vector<PieceOfInformation> pieces, const ClosureOperator& deduce) {
    const auto n = pieces.size();
    auto ground = piece_ground(n);
    std::vector<AtomSet> closures;
    std::vector<std::set<std::string>> formula_keys;
    for (const auto& p : pieces) {
        closures.push_back(deduce(AtomSet(p.atoms.begin(), p.atoms.end())));
        std::set<std::string> fk;
        for (const auto& f : p.formulas) fk.insert(to_string(f));
        formula_keys.push_back(std::move(fk));
    }
    BoolMatrix leq = BoolMatrix::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), false);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            bool derivable = std::all_of(pieces[b].atoms.begin(), pieces[b].atoms.end(),
                                         [&](const GroundAtom& g) { return closures[a].contains(g); }) &&
                             std::includes(formula_keys[a].begin(), formula_keys[a].end(), formula_keys[b].begin(),
                                           formula_keys[b].end());
            leq(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = derivable;
        }
    }
    Preorder order(ground, std::move(leq));
    auto structure = alexandrov_topology(order);
    return {std::move(pieces), std::move(structure), InformationSpace::Mode::DeductivePreorder, std::move(order)};
}

InformationSpace induced_structure(std::vector<PieceOfInformation> pieces,
                                   const std::vector<std::vector<std::size_t>>& seeds) {
    auto ground = piece_ground(pieces.size());
    std::vector<SubsetMask> masks;
    for (const auto& seed : seeds) {
        SubsetMask m = ground.empty_set();
        for (auto i : seed) {
            if (i >= pieces.size()) throw MalformedInput("seed references piece " + std::to_string(i + 1) + " of " +
                                                         std::to_string(pieces.size()));
            if (pieces[i].objects != pieces[seed.front()].objects)
                throw ConstraintError("seed mixes object sets: " + ground.element(seed.front()) + " " +
                                      pieces[seed.front()].key() + " and " + ground.element(i) + " " + pieces[i].key());
            m = m.with(i);
        }
        masks.push_back(m);
    }
    auto structure = generate_topology(ground, masks);
    return {std::move(pieces), std::move(structure), InformationSpace::Mode::Induced, std::nullopt};
}

InformationSpace discrete_structure(std::vector<PieceOfInformation> pieces) {
    auto structure = discrete_topology(piece_ground(pieces.size()));
    return {std::move(pieces), std::move(structure), InformationSpace::Mode::Discrete, std::nullopt};
}

InformationSpace indiscrete_structure(std::vector<PieceOfInformation> pieces) {
    auto structure = indiscrete_topology(piece_ground(pieces.size()));
    return {std::move(pieces), std::move(structure), InformationSpace::Mode::Indiscrete, std::nullopt};
}

}  // namespace dik
