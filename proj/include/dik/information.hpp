#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dik/logic.hpp"
#include "dik/topology.hpp"

namespace dik {

struct Provenance {
    enum class Kind { Interpreted, Deduced };
    Kind kind = Kind::Interpreted;
    std::vector<std::size_t> antecedents;  // piece indices, deduced pieces only
};

// ⟨O, R⟩: domain objects and the relations over them.
struct PieceOfInformation {
    ObjectSet objects;
    std::vector<GroundAtom> atoms;            // sorted
    std::vector<QuantifiedFormula> formulas;
    Provenance provenance;

    // Canonical serialised form; equal pieces have equal keys.
    std::string key() const;
};

std::string to_string(const PieceOfInformation& p);

// Objects an atom involves; set-valued objects also contribute their members.
ObjectSet objects_of(const GroundAtom& a, const std::map<std::string, std::vector<Object>>& set_objects);

// One piece per distinct object set O occurring among the atoms, holding
// every atom whose objects lie within O. Pieces are ordered by (|O|, O).
std::vector<PieceOfInformation> build_pieces(const AtomSet& atoms,
                                             const std::map<std::string, std::vector<Object>>& set_objects,
                                             Provenance::Kind kind = Provenance::Kind::Interpreted);

struct InformationSpace {
    enum class Mode { DeductivePreorder, Induced, Discrete, Indiscrete };

    std::vector<PieceOfInformation> pieces;
    FiniteTopology structure;
    Mode mode = Mode::DeductivePreorder;
    std::optional<Preorder> preorder;  // deductive mode only
};

using ClosureOperator = std::function<AtomSet(const AtomSet&)>;

// Ground set over pieces: "I1", "I2", …
GroundSet piece_ground(std::size_t count);

// a ⪯ b iff every relation of b is in the deductive closure of a; the
// information structure is the Alexandrov topology of ⪯.
InformationSpace deductive_preorder_topology(std::vector<PieceOfInformation> pieces, const ClosureOperator& deduce);

// Smallest topology containing the seed families of pieces. Each seed must
// consist of pieces over one object set; throws ConstraintError otherwise.
InformationSpace induced_structure(std::vector<PieceOfInformation> pieces,
                                   const std::vector<std::vector<std::size_t>>& seeds);

InformationSpace discrete_structure(std::vector<PieceOfInformation> pieces);
InformationSpace indiscrete_structure(std::vector<PieceOfInformation> pieces);

}  // namespace dik
