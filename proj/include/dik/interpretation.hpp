#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dik/data_space.hpp"
#include "dik/domain.hpp"

namespace dik {

// Explicit instance r[t1, …, tn] of a data relation; arguments name open sets of D*.
struct RelationInstance {
    std::string relation;
    std::vector<std::string> args;
};

// D*: labelled open sets of a data space plus the data functions and
// relations over them that the user wants interpreted.
struct DStar {
    std::map<std::string, SubsetMask> opens;
    std::map<std::string, DataFunction> functions;
    std::map<std::string, DataRelation> relations;
    std::vector<RelationInstance> instances;
};

// Image of an open set: one domain object, or a set of domain objects with
// the name it goes by in relations.
struct ObjectImage {
    Value members;
    std::optional<std::string> label;  // set images only

    bool is_set() const noexcept { return label.has_value() || members.size() != 1; }
    std::string name() const;
};

struct InterpretationMap {
    std::map<std::string, ObjectImage> objects;        // open-set label -> image
    std::map<std::string, std::string> functions;      // data function -> domain function
    std::map<std::string, std::string> relations;      // data relation -> domain relation
};

struct Interpretation {
    AtomSet atoms;
    std::map<std::string, ObjectImage> assignments;    // open-set label -> image
    std::map<std::string, Value> set_objects;          // set label -> members
};

// Translates every true data-relation instance of D* into the mapped domain
// relation over the mapped objects. Throws IncompleteInterpretation when a
// D* element has no image, SignatureError on unknown targets or arity clash.
Interpretation interpret(const FiniteTopology& space, const DStar& dstar, const InterpretationMap& imap,
                         const DomainSignature& sig);

// The signature extended with one class per set-valued image.
DomainSignature with_set_classes(DomainSignature sig, const Interpretation& interp);

}  // namespace dik
