#include "dik/inference.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "dik/error.hpp"
#include "dik/information.hpp"

namespace dik {

std::vector<std::string> HornRule::variables() const {
    std::vector<std::string> out;
    for (const auto& a : body)
        for (const auto& t : a.terms)
            if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return out;
}

HornRule make_rule(std::vector<PatternAtom> body, PatternAtom head, std::map<std::string, std::string> variable_classes,
                   std::size_t line) {
    HornRule r{std::move(body), std::move(head), std::move(variable_classes), line};
    const auto vars = r.variables();
    for (const auto& t : r.head.terms)
        if (t.is_variable() && std::find(vars.begin(), vars.end(), t.name) == vars.end())
            throw RuleError("head variable " + t.name + " of " + to_string(r) + " does not occur in the body");
    return r;
}

std::string to_string(const HornRule& r) {
    // class annotations go on the first occurrence of each variable
    std::set<std::string> seen;
    auto render = [&](const PatternAtom& a) {
        std::string out = a.relation + "(";
        for (std::size_t i = 0; i < a.terms.size(); ++i) {
            const auto& t = a.terms[i];
            out += (i ? "," : "") + t.name;
            auto cls = r.variable_classes.find(t.name);
            if (t.is_variable() && cls != r.variable_classes.end() && seen.insert(t.name).second) out += ":" + cls->second;
        }
        return out + ")";
    };
    std::string out;
    for (std::size_t i = 0; i < r.body.size(); ++i) out += (i ? " & " : "") + render(r.body[i]);
    return out + " -> " + render(r.head);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.' || c == '-' ||
               static_cast<unsigned char>(c) >= 0x80;
    });
}

struct RuleParser {
    const std::string& source;
    std::size_t line;
    std::map<std::string, std::string> classes;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(source, line, what); }

    PatternAtom atom(std::string_view text) {
        text = trim(text);
        auto open = text.find('(');
        if (open == std::string_view::npos || text.back() != ')') fail("expected rel(args) but found '" + std::string(text) + "'");
        PatternAtom a;
        a.relation = std::string(trim(text.substr(0, open)));
        if (!is_identifier(a.relation)) fail("bad relation name '" + a.relation + "'");
        auto inner = text.substr(open + 1, text.size() - open - 2);
        if (trim(inner).empty()) return a;
        while (true) {
            auto comma = inner.find(',');
            auto arg = trim(inner.substr(0, comma));
            std::string_view cls;
            if (auto colon = arg.find(':'); colon != std::string_view::npos) {
                cls = trim(arg.substr(colon + 1));
                arg = trim(arg.substr(0, colon));
                if (!is_identifier(cls)) fail("bad class name in '" + std::string(text) + "'");
            }
            if (!is_identifier(arg)) fail("bad argument in '" + std::string(text) + "'");
            const bool variable = std::isupper(static_cast<unsigned char>(arg.front()));
            if (!cls.empty()) {
                if (!variable) fail("class annotation on constant " + std::string(arg));
                auto [it, fresh] = classes.emplace(std::string(arg), std::string(cls));
                if (!fresh && it->second != cls)
                    throw RuleError(source + ":" + std::to_string(line) + ": variable " + std::string(arg) +
                                    " annotated with both " + it->second + " and " + std::string(cls));
            }
            a.terms.push_back(variable ? Term::variable(std::string(arg)) : Term::constant(std::string(arg)));
            if (comma == std::string_view::npos) break;
            inner.remove_prefix(comma + 1);
        }
        return a;
    }
};

}  // namespace

RuleSet parse_rules(std::string_view text, const std::string& source) {
    RuleSet rules;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        RuleParser p{source, line_no, {}};
        auto arrow = line.find("->");
        if (arrow == std::string_view::npos) p.fail("missing '->'");
        if (line.find("->", arrow + 2) != std::string_view::npos) p.fail("more than one '->'");
        auto body_text = trim(line.substr(0, arrow));
        if (body_text.empty()) p.fail("empty rule body");
        std::vector<PatternAtom> body;
        while (true) {
            auto amp = body_text.find('&');
            body.push_back(p.atom(body_text.substr(0, amp)));
            if (amp == std::string_view::npos) break;
            body_text.remove_prefix(amp + 1);
        }
        auto head = p.atom(line.substr(arrow + 2));
        try {
            rules.push_back(make_rule(std::move(body), std::move(head), std::move(p.classes), line_no));
        } catch (const RuleError& e) {
            throw RuleError(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return rules;
}

void check_rules(const RuleSet& rules, const DomainSignature& sig) {
    std::map<std::string, std::size_t> arity;
    for (const auto& [name, rel] : sig.relations) arity[name] = rel.arity;
    for (const auto& r : rules) {
        const std::string where = r.line ? "rule on line " + std::to_string(r.line) : "rule " + to_string(r);
        for (const auto& [var, cls] : r.variable_classes)
            if (!sig.has_class(cls)) throw RuleError(where + ": unknown class " + cls + " for " + var);
        auto check = [&](const PatternAtom& a) {
            auto [it, fresh] = arity.emplace(a.relation, a.terms.size());
            if (!fresh && it->second != a.terms.size())
                throw RuleError(where + ": " + a.relation + " used with " + std::to_string(a.terms.size()) +
                                " arguments but has arity " + std::to_string(it->second));
        };
        for (const auto& a : r.body) check(a);
        check(r.head);
    }
}

namespace {

using Bindings = std::map<std::string, Object>;

GroundAtom instantiate(const PatternAtom& p, const Bindings& b) {
    GroundAtom g{p.relation, {}, false};
    for (const auto& t : p.terms) g.args.push_back(t.is_variable() ? b.at(t.name) : t.name);
    return g;
}

// Enumerates every binding of the rule body against the positive atoms.
void match_body(const HornRule& rule, const DomainSignature& sig,
                const std::map<std::string, std::vector<GroundAtom>>& by_relation,
                const std::function<void(const Bindings&, const std::vector<GroundAtom>&)>& emit) {
    Bindings b;
    std::vector<GroundAtom> premises;
    std::function<void(std::size_t)> step = [&](std::size_t i) {
        if (i == rule.body.size()) {
            emit(b, premises);
            return;
        }
        const auto& pat = rule.body[i];
        auto it = by_relation.find(pat.relation);
        if (it == by_relation.end()) return;
        for (const auto& g : it->second) {
            if (g.args.size() != pat.terms.size()) continue;
            std::vector<std::string> added;
            bool ok = true;
            for (std::size_t k = 0; k < pat.terms.size() && ok; ++k) {
                const auto& t = pat.terms[k];
                if (!t.is_variable()) {
                    ok = t.name == g.args[k];
                } else if (auto bound = b.find(t.name); bound != b.end()) {
                    ok = bound->second == g.args[k];
                } else {
                    auto cls = rule.variable_classes.find(t.name);
                    ok = cls == rule.variable_classes.end() || sig.in_class(g.args[k], cls->second);
                    if (ok) {
                        b.emplace(t.name, g.args[k]);
                        added.push_back(t.name);
                    }
                }
            }
            if (ok) {
                premises.push_back(g);
                step(i + 1);
                premises.pop_back();
            }
            for (const auto& v : added) b.erase(v);
        }
    };
    step(0);
}

}  // namespace

Closure deduce(const AtomSet& facts, const RuleSet& rules, const DomainSignature& sig) {
    Closure c{facts, {}};
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::string, std::vector<GroundAtom>> by_relation;
        for (const auto& a : c.atoms)
            if (!a.negated) by_relation[a.relation].push_back(a);
        std::vector<std::pair<GroundAtom, Derivation>> fresh;
        for (std::size_t r = 0; r < rules.size(); ++r) {
            match_body(rules[r], sig, by_relation, [&](const Bindings& b, const std::vector<GroundAtom>& premises) {
                auto head = instantiate(rules[r].head, b);
                if (!c.atoms.contains(head)) fresh.emplace_back(std::move(head), Derivation{r, b, premises});
            });
        }
        for (auto& [atom, d] : fresh) {
            if (c.atoms.insert(atom).second) {
                c.derivations.emplace(atom, std::move(d));
                changed = true;
            }
        }
    }
    return c;
}

namespace {

bool closed_world_for(const std::string& relation, const std::vector<std::string>& classes, const DomainSignature& sig,
                      const InductionConfig& config) {
    if (config.closed_world_relations.contains(relation)) return true;
    if (config.closed_world_tuples.contains({relation, classes})) return true;
    auto it = sig.relations.find(relation);
    return it != sig.relations.end() &&
           std::find(it->second.closed_world.begin(), it->second.closed_world.end(), classes) !=
               it->second.closed_world.end();
}

// Calls f on every tuple of the cartesian product; stops when f returns false.
bool for_each_tuple(const std::vector<const std::vector<Object>*>& domains,
                    const std::function<bool(const std::vector<Object>&)>& f) {
    std::vector<Object> tuple(domains.size());
    std::function<bool(std::size_t)> step = [&](std::size_t i) {
        if (i == domains.size()) return f(tuple);
        for (const auto& o : *domains[i]) {
            tuple[i] = o;
            if (!step(i + 1)) return false;
        }
        return true;
    };
    return step(0);
}

}  // namespace

std::vector<QuantifiedConjecture> induce(const AtomSet& atoms, const DomainSignature& sig, const InductionConfig& config) {
    std::map<std::string, std::size_t> arity;
    for (const auto& a : atoms)
        if (!a.negated) arity.emplace(a.relation, a.args.size());

    std::vector<std::string> class_names;
    for (const auto& [name, info] : sig.classes)
        if (!info.members.empty()) class_names.push_back(name);

    std::vector<QuantifiedConjecture> out;
    for (const auto& [relation, n] : arity) {
        if (n == 0 || class_names.empty()) continue;
        std::vector<std::size_t> pick(n, 0);
        while (true) {
            std::vector<std::string> classes;
            for (auto i : pick) classes.push_back(class_names[i]);
            auto inside = [&](const GroundAtom& a) {
                if (a.relation != relation || a.args.size() != n) return false;
                for (std::size_t k = 0; k < n; ++k)
                    if (!sig.in_class(a.args[k], classes[k])) return false;
                return true;
            };

            std::vector<GroundAtom> support;
            bool failure = false;
            for (const auto& a : atoms) {
                if (!inside(a)) continue;
                if (a.negated)
                    failure = true;
                else
                    support.push_back(a);
            }
            if (!failure && support.size() >= config.min_support && closed_world_for(relation, classes, sig, config)) {
                std::vector<const std::vector<Object>*> domains;
                for (const auto& c : classes) domains.push_back(&sig.classes.at(c).members);
                failure = !for_each_tuple(domains, [&](const std::vector<Object>& t) {
                    return atoms.contains(GroundAtom{relation, t, false});
                });
            }
            if (!failure && support.size() >= config.min_support) {
                QuantifiedConjecture c;
                c.formula = QuantifiedFormula::universal(relation, classes);
                c.relation = relation;
                c.classes = classes;
                c.support = support.size();
                c.antecedents = std::move(support);
                out.push_back(std::move(c));
            }

            std::size_t k = n;
            while (k > 0 && ++pick[k - 1] == class_names.size()) pick[--k] = 0;
            if (k == 0) break;
        }
    }
    return out;
}

std::string_view to_string(ValidationMethod m) {
    switch (m) {
        case ValidationMethod::Assumption: return "by-assumption";
        case ValidationMethod::ExhaustiveVerification: return "by-exhaustive-verification";
        case ValidationMethod::Belief: return "by-belief";
    }
    return "?";
}

std::string_view to_string(Outcome o) {
    switch (o) {
        case Outcome::Valid: return "valid";
        case Outcome::Invalid: return "invalid";
        case Outcome::Undetermined: return "undetermined";
    }
    return "?";
}

std::string_view to_string(ConjectureStatus s) {
    switch (s) {
        case ConjectureStatus::Conjectured: return "conjectured";
        case ConjectureStatus::Validated: return "validated";
        case ConjectureStatus::Refuted: return "refuted";
    }
    return "?";
}

namespace {

bool eval_matrix(const FormulaNode& n, const Bindings& env, const AtomSet& facts) {
    switch (n.op) {
        case FormulaNode::Op::Atom: {
            GroundAtom g{n.atom.relation, {}, false};
            for (const auto& t : n.atom.terms) {
                if (!t.is_variable()) {
                    g.args.push_back(t.name);
                } else if (auto it = env.find(t.name); it != env.end()) {
                    g.args.push_back(it->second);
                } else {
                    throw RuleError("free variable " + t.name + " in " + to_string(n.atom));
                }
            }
            return facts.contains(g);
        }
        case FormulaNode::Op::Not: return !eval_matrix(n.children.at(0), env, facts);
        case FormulaNode::Op::And:
            return std::all_of(n.children.begin(), n.children.end(),
                               [&](const FormulaNode& c) { return eval_matrix(c, env, facts); });
        case FormulaNode::Op::Or:
            return std::any_of(n.children.begin(), n.children.end(),
                               [&](const FormulaNode& c) { return eval_matrix(c, env, facts); });
    }
    return false;
}

const std::vector<Object>& class_members(const DomainSignature& sig, const std::string& cls) {
    auto it = sig.classes.find(cls);
    if (it == sig.classes.end()) throw CapabilityError("class " + cls + " is not declared; cannot enumerate it");
    if (!it->second.enumerable) throw CapabilityError("class " + cls + " is not finite; cannot enumerate it");
    return it->second.members;
}

// Exhaustive evaluation. On failure `path` holds the bindings leading to it.
bool evaluate(const QuantifiedFormula& f, std::size_t i, Bindings& env, std::vector<Object>& path,
              const DomainSignature& sig, const AtomSet& facts, std::size_t& checks) {
    if (i == f.prefix.size()) {
        ++checks;
        return eval_matrix(f.matrix, env, facts);
    }
    const auto& b = f.prefix[i];
    const auto& members = class_members(sig, b.class_name);
    for (const auto& o : members) {
        env[b.variable] = o;
        path.push_back(o);
        std::vector<Object> inner;
        bool value = evaluate(f, i + 1, env, inner, sig, facts, checks);
        if (b.quantifier == Quantifier::ForAll && !value) {
            path.insert(path.end(), inner.begin(), inner.end());
            env.erase(b.variable);
            return false;
        }
        path.pop_back();
        if (b.quantifier == Quantifier::Exists && value) {
            env.erase(b.variable);
            return true;
        }
    }
    env.erase(b.variable);
    return b.quantifier == Quantifier::ForAll;
}

ValidationRecord accepted(std::string target, ValidationMethod method) {
    ValidationRecord r{std::move(target), method, Outcome::Valid, std::nullopt, {}};
    r.checks.push_back("accepted " + std::string(to_string(method)));
    return r;
}

std::string tuple_string(const std::vector<Object>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i];
    return s + ")";
}

}  // namespace

bool holds(const QuantifiedFormula& f, const DomainSignature& sig, const AtomSet& facts) {
    Bindings env;
    std::vector<Object> path;
    std::size_t checks = 0;
    return evaluate(f, 0, env, path, sig, facts, checks);
}

ValidationRecord validate(const QuantifiedFormula& f, ValidationMethod method, const DomainSignature& sig,
                          const AtomSet& facts) {
    if (method != ValidationMethod::ExhaustiveVerification) return accepted(to_string(f), method);
    Bindings env;
    std::vector<Object> path;
    std::size_t checks = 0;
    ValidationRecord r{to_string(f), method, Outcome::Valid, std::nullopt, {}};
    if (!evaluate(f, 0, env, path, sig, facts, checks)) {
        r.outcome = Outcome::Invalid;
        r.witness = path;
        r.checks.push_back("fails at " + tuple_string(path));
    }
    r.checks.insert(r.checks.begin(), std::to_string(checks) + " bindings checked");
    return r;
}

ValidationRecord validate(const QuantifiedConjecture& c, ValidationMethod method, const DomainSignature& sig,
                          const AtomSet& facts) {
    return validate(c.formula, method, sig, facts);
}

ValidationRecord validate(const GroundAtom& a, ValidationMethod method, const AtomSet& facts) {
    if (method != ValidationMethod::ExhaustiveVerification) return accepted(to_string(a), method);
    ValidationRecord r{to_string(a), method, Outcome::Valid, std::nullopt, {}};
    const bool ok = a.negated ? !facts.contains(a.positive()) : facts.contains(a);
    r.checks.push_back(to_string(a) + (ok ? " holds" : " does not hold"));
    if (!ok) {
        r.outcome = Outcome::Invalid;
        r.witness = a.args;
    }
    return r;
}

ValidationRecord validate(const PieceOfInformation& p, ValidationMethod method, const DomainSignature& sig,
                          const AtomSet& facts) {
    if (method != ValidationMethod::ExhaustiveVerification) return accepted(p.key(), method);
    ValidationRecord r{p.key(), method, Outcome::Valid, std::nullopt, {}};
    for (const auto& a : p.atoms) {
        auto sub = validate(a, method, facts);
        r.checks.insert(r.checks.end(), sub.checks.begin(), sub.checks.end());
        if (sub.outcome == Outcome::Invalid && r.outcome == Outcome::Valid) {
            r.outcome = Outcome::Invalid;
            r.witness = sub.witness;
        }
    }
    for (const auto& f : p.formulas) {
        auto sub = validate(f, method, sig, facts);
        for (const auto& c : sub.checks) r.checks.push_back(to_string(f) + ": " + c);
        if (sub.outcome == Outcome::Invalid && r.outcome == Outcome::Valid) {
            r.outcome = Outcome::Invalid;
            r.witness = sub.witness;
        }
    }
    return r;
}

ValidationRecord validate(const MethodSpec& m, ValidationMethod method, const DomainSignature& sig) {
    if (method != ValidationMethod::ExhaustiveVerification) return accepted(m.name, method);
    if (!m.given.domain_class)
        throw CapabilityError("method " + m.name + " declares no finite input domain; cannot verify exhaustively");
    const auto& members = class_members(sig, *m.given.domain_class);
    ValidationRecord r{m.name, method, Outcome::Valid, std::nullopt, {}};
    if (!m.goal.equals) {
        r.outcome = Outcome::Undetermined;
        r.checks.push_back("no goal predicate to check");
        return r;
    }

    std::vector<std::vector<Value>> inputs;
    if (m.given.subset_size > 0) {
        const auto k = m.given.subset_size;
        if (k <= members.size()) {
            std::vector<bool> chosen(members.size(), false);
            std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(k), true);
            do {
                std::vector<Object> subset;
                for (std::size_t i = 0; i < members.size(); ++i)
                    if (chosen[i]) subset.push_back(members[i]);
                inputs.push_back({make_value(std::move(subset))});
            } while (std::prev_permutation(chosen.begin(), chosen.end()));
        }
    } else {
        std::vector<const std::vector<Object>*> domains(m.given.slots.size(), &members);
        for_each_tuple(domains, [&](const std::vector<Object>& t) {
            std::vector<Value> in;
            for (const auto& o : t) in.push_back(scalar(o));
            inputs.push_back(std::move(in));
            return true;
        });
    }

    for (const auto& in : inputs) {
        std::string label;
        for (std::size_t i = 0; i < in.size(); ++i) label += (i ? "," : "") + to_string(in[i]);
        std::vector<Object> witness;
        for (const auto& v : in) witness.push_back(to_string(v));
        bool ok = false;
        std::string note;
        try {
            auto result = execute_method(m, sig, in);
            auto expected = evaluate(*m.goal.equals, sig, result.slots);
            const auto& got = result.slots.at(m.goal.output);
            ok = got == expected;
            note = m.goal.output + " = " + to_string(got) + (ok ? " as required" : ", expected " + to_string(expected));
        } catch (const DomainError& e) {
            note = std::string("execution failed: ") + e.what();
        }
        r.checks.push_back(m.name + "(" + label + "): " + note);
        if (!ok && r.outcome == Outcome::Valid) {
            r.outcome = Outcome::Invalid;
            r.witness = witness;
        }
    }
    r.checks.insert(r.checks.begin(), std::to_string(inputs.size()) + " executions checked");
    return r;
}

}  // namespace dik
