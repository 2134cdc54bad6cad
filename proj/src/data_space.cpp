#include "dik/data_space.hpp"

namespace dik {

namespace {

void check_args(const FiniteTopology& t, const std::string& name, std::size_t arity, const OpenTuple& args) {
    if (args.size() != arity)
        throw DomainError(name + " expects " + std::to_string(arity) + " arguments, got " + std::to_string(args.size()));
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i].width() != t.ground().size()) throw MalformedInput("argument width mismatch in " + name);
        if (!t.is_open(args[i]))
            throw DomainError(name + ": argument " + std::to_string(i + 1) + " " + format_subset(t.ground(), args[i]) +
                              " is not open");
    }
}

}  // namespace

SubsetMask eval_data_function(const FiniteTopology& t, const DataFunction& f, const OpenTuple& args) {
    check_args(t, f.name, f.arity, args);
    SubsetMask result;
    switch (f.kind) {
        case DataFunction::Kind::Intersection:
            result = t.ground().full_set();
            for (const auto& a : args) result = result & a;
            return result;
        case DataFunction::Kind::Union:
            result = t.ground().empty_set();
            for (const auto& a : args) result = result | a;
            return result;
        case DataFunction::Kind::Table: {
            auto it = f.table.find(args);
            if (it == f.table.end()) throw DomainError(f.name + ": argument tuple is outside the declared domain");
            if (!t.is_open(it->second)) throw DomainError(f.name + ": table value is not open");
            return it->second;
        }
    }
    return result;
}

bool eval_data_relation(const FiniteTopology& t, const DataRelation& r, const OpenTuple& args) {
    check_args(t, r.name, r.arity, args);
    switch (r.kind) {
        case DataRelation::Kind::Subset:
            return args[0].subset_of(args[1]);
        case DataRelation::Kind::Equal:
            return args[0] == args[1];
        case DataRelation::Kind::Table: {
            auto it = r.table.find(args);
            if (it == r.table.end()) throw DomainError(r.name + ": argument tuple is outside the declared domain");
            return it->second;
        }
    }
    return false;
}

namespace {

SubsetMask eval_term(const FiniteTopology& t, const OpenTerm& term, const std::vector<SubsetMask>& env) {
    return std::visit(
        [&](const auto& node) -> SubsetMask {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, std::size_t>) {
                if (node >= env.size()) throw MalformedInput("unbound variable in open-set formula");
                return env[node];
            } else if constexpr (std::is_same_v<T, SubsetMask>) {
                return node;
            } else {
                OpenTuple args;
                for (const auto& a : node.args) args.push_back(eval_term(t, a, env));
                return eval_data_function(t, node.function, args);
            }
        },
        term.node);
}

bool eval_matrix(const FiniteTopology& t, const OpenFormula& f, const std::vector<SubsetMask>& env) {
    switch (f.op) {
        case OpenFormula::Op::Atom: {
            OpenTuple args;
            for (const auto& a : f.args) args.push_back(eval_term(t, a, env));
            return eval_data_relation(t, f.relation, args);
        }
        case OpenFormula::Op::Not:
            return !eval_matrix(t, f.children.at(0), env);
        case OpenFormula::Op::And:
            for (const auto& c : f.children)
                if (!eval_matrix(t, c, env)) return false;
            return true;
        case OpenFormula::Op::Or:
            for (const auto& c : f.children)
                if (eval_matrix(t, c, env)) return true;
            return false;
    }
    return false;
}

bool eval_prefix(const FiniteTopology& t, const QuantifiedOpenRelation& q, std::vector<SubsetMask>& env) {
    if (env.size() == q.prefix.size()) return eval_matrix(t, q.matrix, env);
    const bool forall = q.prefix[env.size()] == Quantifier::ForAll;
    for (const auto& u : t.opens()) {
        env.push_back(u);
        const bool v = eval_prefix(t, q, env);
        env.pop_back();
        if (forall && !v) return false;
        if (!forall && v) return true;
    }
    return forall;
}

}  // namespace

bool eval_data_relation(const FiniteTopology& t, const QuantifiedOpenRelation& q) {
    std::vector<SubsetMask> env;
    return eval_prefix(t, q, env);
}

}  // namespace dik
