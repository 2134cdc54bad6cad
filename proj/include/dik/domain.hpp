#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dik/logic.hpp"

namespace dik {

// Value of a domain expression: a set of domain objects, kept sorted and
// duplicate-free. A scalar is a singleton.
using Value = std::vector<Object>;

Value make_value(std::vector<Object> objects);
Value scalar(Object o);
std::string to_string(const Value& v);  // "11" or "{3,7,11,23}"

enum class Builtin { Sum, Count, Mean, Min, Max, Add, Sub, Mul, Div, Union, Intersection };

std::optional<Builtin> builtin_from_name(std::string_view name);
std::string_view builtin_name(Builtin b);
std::size_t builtin_arity(Builtin b);

// Either an enumerated graph (scalar argument tuple -> scalar value) or one
// of the arithmetic / set builtins. `domain_class`, when set, is the
// subdomain δ the function is defined over.
struct FunctionSymbol {
    std::string name;
    std::size_t arity = 1;
    std::optional<Builtin> builtin;
    std::map<std::vector<Object>, Object> graph;
    std::optional<std::string> domain_class;
};

struct RelationSymbol {
    std::string name;
    std::size_t arity = 1;
    bool primitive = true;
    std::vector<std::string> depends_on;                 // derived relations only
    std::vector<std::vector<std::string>> closed_world;  // class tuples declared fully observed
};

struct ClassInfo {
    std::vector<Object> members;  // sorted with object_less
    bool enumerable = true;       // false: members are a sample of an open-ended class
};

// Object declared in the domain. Derived objects carry the function and
// arguments (object names) that define them.
struct ObjectSymbol {
    std::string name;
    bool primitive = true;
    std::string function;
    std::vector<std::string> args;
};

struct DomainSignature {
    std::string name;
    std::map<std::string, ClassInfo> classes;
    std::map<std::string, FunctionSymbol> functions;
    std::map<std::string, RelationSymbol> relations;
    std::vector<ObjectSymbol> objects;
    std::map<std::string, Value> derived_values;  // filled by resolve_signature

    bool has_class(const std::string& c) const { return classes.contains(c); }
    bool in_class(const Object& o, const std::string& c) const;
    bool knows_object(const Object& o) const;
    const FunctionSymbol& function(const std::string& name) const;  // throws SignatureError
};

// Checks that derived objects and relations only reference functions and
// earlier definitions (no cycles), then evaluates derived objects in
// dependency order. Throws SignatureError.
DomainSignature resolve_signature(DomainSignature sig);

// Applies a function symbol. Throws DomainError if the function is not
// defined on the arguments.
Value apply_function(const DomainSignature& sig, const std::string& name, const std::vector<Value>& args);

}  // namespace dik
