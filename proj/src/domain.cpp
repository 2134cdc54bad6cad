#include "dik/domain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace dik {

Value make_value(std::vector<Object> objects) {
    std::sort(objects.begin(), objects.end(), object_less);
    objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
    return objects;
}

Value scalar(Object o) { return {std::move(o)}; }

std::string to_string(const Value& v) {
    if (v.size() == 1) return v.front();
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out + "}";
}

namespace {

constexpr std::pair<std::string_view, Builtin> kBuiltins[] = {
    {"sum", Builtin::Sum}, {"count", Builtin::Count}, {"mean", Builtin::Mean}, {"min", Builtin::Min},
    {"max", Builtin::Max}, {"add", Builtin::Add},     {"sub", Builtin::Sub},   {"mul", Builtin::Mul},
    {"div", Builtin::Div}, {"union", Builtin::Union}, {"intersection", Builtin::Intersection},
};

}  // namespace

std::optional<Builtin> builtin_from_name(std::string_view name) {
    for (auto [n, b] : kBuiltins)
        if (n == name) return b;
    return std::nullopt;
}

std::string_view builtin_name(Builtin b) {
    for (auto [n, k] : kBuiltins)
        if (k == b) return n;
    return "?";
}

std::size_t builtin_arity(Builtin b) {
    switch (b) {
        case Builtin::Sum:
        case Builtin::Count:
        case Builtin::Mean:
        case Builtin::Min:
        case Builtin::Max:
            return 1;
        default:
            return 2;
    }
}

bool DomainSignature::in_class(const Object& o, const std::string& c) const {
    auto it = classes.find(c);
    if (it == classes.end()) return false;
    return std::binary_search(it->second.members.begin(), it->second.members.end(), o, object_less);
}

bool DomainSignature::knows_object(const Object& o) const {
    for (const auto& [_, info] : classes)
        if (std::binary_search(info.members.begin(), info.members.end(), o, object_less)) return true;
    for (const auto& s : objects)
        if (s.name == o) return true;
    return false;
}

const FunctionSymbol& DomainSignature::function(const std::string& fname) const {
    auto it = functions.find(fname);
    if (it == functions.end()) throw SignatureError("unknown domain function '" + fname + "'");
    return it->second;
}

namespace {

double number_of(const std::string& fn, const Object& o) {
    auto v = as_number(o);
    if (!v) throw DomainError(fn + ": '" + o + "' is not a number");
    return *v;
}

double single_number(const std::string& fn, const Value& v) {
    if (v.size() != 1) throw DomainError(fn + ": expected a single object, got " + to_string(v));
    return number_of(fn, v.front());
}

Value apply_builtin(const std::string& fn, Builtin b, const std::vector<Value>& args) {
    auto numbers = [&](const Value& v) {
        std::vector<double> out;
        for (const auto& o : v) out.push_back(number_of(fn, o));
        return out;
    };
    switch (b) {
        case Builtin::Sum: {
            double s = 0;
            for (double x : numbers(args[0])) s += x;
            return scalar(format_number(s));
        }
        case Builtin::Count:
            return scalar(format_number(static_cast<double>(args[0].size())));
        case Builtin::Mean: {
            if (args[0].empty()) throw DomainError(fn + ": mean of the empty set");
            double s = 0;
            for (double x : numbers(args[0])) s += x;
            return scalar(format_number(s / static_cast<double>(args[0].size())));
        }
        case Builtin::Min:
        case Builtin::Max: {
            auto xs = numbers(args[0]);
            if (xs.empty()) throw DomainError(fn + ": extremum of the empty set");
            auto it = b == Builtin::Min ? std::min_element(xs.begin(), xs.end()) : std::max_element(xs.begin(), xs.end());
            return scalar(format_number(*it));
        }
        case Builtin::Add:
            return scalar(format_number(single_number(fn, args[0]) + single_number(fn, args[1])));
        case Builtin::Sub:
            return scalar(format_number(single_number(fn, args[0]) - single_number(fn, args[1])));
        case Builtin::Mul:
            return scalar(format_number(single_number(fn, args[0]) * single_number(fn, args[1])));
        case Builtin::Div: {
            const double d = single_number(fn, args[1]);
            if (d == 0) throw DomainError(fn + ": division by zero");
            return scalar(format_number(single_number(fn, args[0]) / d));
        }
        case Builtin::Union: {
            std::vector<Object> all = args[0];
            all.insert(all.end(), args[1].begin(), args[1].end());
            return make_value(std::move(all));
        }
        case Builtin::Intersection: {
            Value out;
            std::set_intersection(args[0].begin(), args[0].end(), args[1].begin(), args[1].end(), std::back_inserter(out),
                                  object_less);
            return out;
        }
    }
    return {};
}

}  // namespace

Value apply_function(const DomainSignature& sig, const std::string& name, const std::vector<Value>& raw_args) {
    const auto& f = sig.function(name);
    if (raw_args.size() != f.arity)
        throw DomainError(name + " expects " + std::to_string(f.arity) + " arguments, got " + std::to_string(raw_args.size()));
    std::vector<Value> args;
    for (const auto& a : raw_args) args.push_back(make_value(a));
    if (f.domain_class) {
        for (const auto& a : args)
            for (const auto& o : a)
                if (!sig.in_class(o, *f.domain_class))
                    throw DomainError(name + " is not defined on '" + o + "' (outside " + *f.domain_class + ")");
    }
    if (f.builtin) return apply_builtin(name, *f.builtin, args);

    std::vector<Object> key;
    for (const auto& a : args) {
        if (a.size() != 1) throw DomainError(name + ": expected a single object, got " + to_string(a));
        key.push_back(a.front());
    }
    auto it = f.graph.find(key);
    if (it == f.graph.end()) throw DomainError(name + " is not defined on " + to_string(make_value(key)));
    return scalar(it->second);
}

DomainSignature resolve_signature(DomainSignature sig) {
    for (auto& [name, info] : sig.classes) info.members = make_value(std::move(info.members));
    for (const auto& [name, f] : sig.functions) {
        if (f.builtin && builtin_arity(*f.builtin) != f.arity)
            throw SignatureError("function '" + name + "' declares arity " + std::to_string(f.arity) + " but builtin " +
                                 std::string(builtin_name(*f.builtin)) + " takes " +
                                 std::to_string(builtin_arity(*f.builtin)));
        for (const auto& [key, _] : f.graph)
            if (key.size() != f.arity) throw SignatureError("function '" + name + "' has a graph entry of wrong arity");
        if (f.domain_class && !sig.has_class(*f.domain_class))
            throw SignatureError("function '" + name + "' is defined over unknown class '" + *f.domain_class + "'");
    }

    // Dependency graph over derived objects and derived relations. Nodes are
    // names; edges point from a definition to what it references.
    std::map<std::string, std::vector<std::string>> deps;
    std::map<std::string, const ObjectSymbol*> object_defs;
    for (const auto& o : sig.objects) {
        if (deps.contains(o.name) || object_defs.contains(o.name))
            throw SignatureError("object '" + o.name + "' defined twice");
        object_defs[o.name] = &o;
        if (o.primitive) continue;
        if (!sig.functions.contains(o.function))
            throw SignatureError("derived object '" + o.name + "' uses unknown function '" + o.function + "'");
        deps[o.name] = o.args;
    }
    for (const auto& [name, r] : sig.relations) {
        if (r.primitive) continue;
        for (const auto& d : r.depends_on)
            if (!sig.functions.contains(d) && !sig.relations.contains(d))
                throw SignatureError("derived relation '" + name + "' references unknown '" + d + "'");
        std::vector<std::string> rel_deps;
        for (const auto& d : r.depends_on)
            if (sig.relations.contains(d)) rel_deps.push_back(d);
        deps["relation:" + name] = rel_deps;
    }
    // Relation dependencies are keyed with a prefix so they cannot collide with objects.
    for (auto& [node, ds] : deps)
        if (node.starts_with("relation:"))
            for (auto& d : ds) d = "relation:" + d;

    enum class Mark { None, Active, Done };
    std::map<std::string, Mark> mark;
    std::vector<std::string> order;
    std::function<void(const std::string&, std::vector<std::string>&)> visit = [&](const std::string& n,
                                                                                   std::vector<std::string>& path) {
        auto& m = mark[n];
        if (m == Mark::Done) return;
        path.push_back(n);
        if (m == Mark::Active) {
            std::string cycle;
            for (const auto& p : path) cycle += (cycle.empty() ? "" : " -> ") + p;
            throw SignatureError("cyclic definition: " + cycle);
        }
        m = Mark::Active;
        if (auto it = deps.find(n); it != deps.end())
            for (const auto& d : it->second) visit(d, path);
        mark[n] = Mark::Done;
        path.pop_back();
        order.push_back(n);
    };
    for (const auto& [node, _] : deps) {
        std::vector<std::string> path;
        visit(node, path);
    }

    for (const auto& n : order) {
        auto it = object_defs.find(n);
        if (it == object_defs.end() || it->second->primitive) continue;
        const auto& def = *it->second;
        std::vector<Value> args;
        for (const auto& a : def.args) {
            if (auto dv = sig.derived_values.find(a); dv != sig.derived_values.end()) {
                args.push_back(dv->second);
            } else if (auto cls = sig.classes.find(a); cls != sig.classes.end()) {
                args.push_back(cls->second.members);
            } else if (sig.knows_object(a) || as_number(a)) {
                args.push_back(scalar(a));
            } else {
                throw SignatureError("derived object '" + n + "' references undefined '" + a + "'");
            }
        }
        try {
            sig.derived_values[n] = apply_function(sig, def.function, args);
        } catch (const DomainError& e) {
            throw SignatureError("derived object '" + n + "': " + e.what());
        }
    }
    return sig;
}

}  // namespace dik
