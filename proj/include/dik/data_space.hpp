#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "dik/topology.hpp"

namespace dik {

using OpenTuple = std::vector<SubsetMask>;

// Map from a finite set T of open-set tuples to open sets. Intersection and
// union are built in; anything else is a lookup table whose keys form T.
struct DataFunction {
    enum class Kind { Intersection, Union, Table };

    std::string name;
    std::size_t arity = 2;
    Kind kind = Kind::Table;
    std::map<OpenTuple, SubsetMask> table;

    static DataFunction intersection() { return {"intersection", 2, Kind::Intersection, {}}; }
    static DataFunction union_of() { return {"union", 2, Kind::Union, {}}; }
};

// Map from T to {true, false}. Subset and equality are built in.
struct DataRelation {
    enum class Kind { Subset, Equal, Table };

    std::string name;
    std::size_t arity = 2;
    Kind kind = Kind::Table;
    std::map<OpenTuple, bool> table;

    static DataRelation subset() { return {"subset", 2, Kind::Subset, {}}; }
    static DataRelation equal() { return {"equal", 2, Kind::Equal, {}}; }
};

SubsetMask eval_data_function(const FiniteTopology& t, const DataFunction& f, const OpenTuple& args);
bool eval_data_relation(const FiniteTopology& t, const DataRelation& r, const OpenTuple& args);

// Terms and formulas for quantified data relations such as
// ∀t∈τ ∃s∈τ (t ∪ s = X). Variables are numbered by their quantifier position.
struct OpenTerm;

struct OpenApply {
    DataFunction function;
    std::vector<OpenTerm> args;
};

struct OpenTerm {
    std::variant<std::size_t, SubsetMask, OpenApply> node;

    static OpenTerm var(std::size_t i) { return {i}; }
    static OpenTerm constant(SubsetMask m) { return {m}; }
    static OpenTerm apply(DataFunction f, std::vector<OpenTerm> args) { return {OpenApply{std::move(f), std::move(args)}}; }
};

struct OpenFormula {
    enum class Op { Atom, Not, And, Or };

    Op op = Op::Atom;
    DataRelation relation;            // Atom only
    std::vector<OpenTerm> args;       // Atom only
    std::vector<OpenFormula> children;

    static OpenFormula atom(DataRelation r, std::vector<OpenTerm> args) { return {Op::Atom, std::move(r), std::move(args), {}}; }
    static OpenFormula negation(OpenFormula f) { return {Op::Not, {}, {}, {std::move(f)}}; }
    static OpenFormula conjunction(std::vector<OpenFormula> fs) { return {Op::And, {}, {}, std::move(fs)}; }
    static OpenFormula disjunction(std::vector<OpenFormula> fs) { return {Op::Or, {}, {}, std::move(fs)}; }
};

enum class Quantifier { ForAll, Exists };

// Quantifiers range over all open sets of the topology.
struct QuantifiedOpenRelation {
    std::vector<Quantifier> prefix;
    OpenFormula matrix;
};

// Exhaustive evaluation over t.opens() for each bound variable.
bool eval_data_relation(const FiniteTopology& t, const QuantifiedOpenRelation& q);

}  // namespace dik
