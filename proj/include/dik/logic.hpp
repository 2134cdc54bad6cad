#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dik/data_space.hpp"

namespace dik {

// Domain objects are opaque identifiers. Identifiers that read as numbers
// order numerically so that {3,7,11,23} prints the way one expects.
using Object = std::string;

std::optional<double> as_number(std::string_view text);
std::string format_number(double v);
bool object_less(const Object& a, const Object& b);

struct ObjectLess {
    bool operator()(const Object& a, const Object& b) const { return object_less(a, b); }
};

using ObjectSet = std::set<Object, ObjectLess>;

// Propositional relation: relation symbol applied to domain objects. A
// negated atom records an observed failure of the relation.
struct GroundAtom {
    std::string relation;
    std::vector<Object> args;
    bool negated = false;

    GroundAtom positive() const { return {relation, args, false}; }

    friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
    friend bool operator<(const GroundAtom& a, const GroundAtom& b);
};

using AtomSet = std::set<GroundAtom>;

std::string to_string(const GroundAtom& a);

// Parses "rel(a,b)", "!rel(a)" or "¬rel(a)". Arguments are taken verbatim.
GroundAtom parse_ground_atom(std::string_view text);

struct Term {
    enum class Kind { Variable, Constant };
    Kind kind = Kind::Constant;
    std::string name;

    static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }
    static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
    bool is_variable() const noexcept { return kind == Kind::Variable; }
    friend bool operator==(const Term&, const Term&) = default;
};

struct PatternAtom {
    std::string relation;
    std::vector<Term> terms;
    friend bool operator==(const PatternAtom&, const PatternAtom&) = default;
};

std::string to_string(const PatternAtom& a);

// Boolean combination of pattern atoms.
struct FormulaNode {
    enum class Op { Atom, Not, And, Or };
    Op op = Op::Atom;
    PatternAtom atom;
    std::vector<FormulaNode> children;

    static FormulaNode leaf(PatternAtom a) { return {Op::Atom, std::move(a), {}}; }
    friend bool operator==(const FormulaNode&, const FormulaNode&) = default;
};

// Prefix of (quantifier, variable, class) triples over a quantifier-free matrix.
struct QuantifiedFormula {
    struct Binding {
        Quantifier quantifier = Quantifier::ForAll;
        std::string variable;
        std::string class_name;
        friend bool operator==(const Binding&, const Binding&) = default;
    };

    std::vector<Binding> prefix;
    FormulaNode matrix;

    // ∀x1∈C1 … ∀xn∈Cn R(x1, …, xn)
    static QuantifiedFormula universal(const std::string& relation, const std::vector<std::string>& classes);

    friend bool operator==(const QuantifiedFormula&, const QuantifiedFormula&) = default;
};

// "∀x∈G HasCapital(x)"
std::string to_string(const QuantifiedFormula& f);

// Variable names used for generated formulas: x, y, z, x4, x5, ...
std::string variable_name(std::size_t position);

}  // namespace dik
