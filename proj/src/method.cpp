#include "dik/method.hpp"

#include <set>

namespace dik {

void check_method(const MethodSpec& spec, const DomainSignature& sig) {
    std::set<std::string> defined(spec.given.slots.begin(), spec.given.slots.end());
    if (defined.size() != spec.given.slots.size()) throw SignatureError(spec.name + ": duplicate given slot");
    for (std::size_t i = 0; i < spec.instructions.size(); ++i) {
        const auto& ins = spec.instructions[i];
        const auto where = spec.name + ": instruction " + std::to_string(i);
        auto it = sig.functions.find(ins.function);
        if (it == sig.functions.end()) throw SignatureError(where + " uses unknown function '" + ins.function + "'");
        if (it->second.arity != ins.args.size())
            throw SignatureError(where + " passes " + std::to_string(ins.args.size()) + " arguments to " + ins.function +
                                 "/" + std::to_string(it->second.arity));
        for (const auto& a : ins.args)
            if (a.kind == InstructionArg::Kind::Slot && !defined.contains(a.text))
                throw SignatureError(where + " reads undefined slot '" + a.text + "'");
        if (ins.result.empty()) throw SignatureError(where + " has no result slot");
        defined.insert(ins.result);
    }
    if (!spec.goal.output.empty() && !defined.contains(spec.goal.output))
        throw SignatureError(spec.name + ": goal output '" + spec.goal.output + "' is never produced");
    if (spec.given.domain_class && !sig.has_class(*spec.given.domain_class))
        throw SignatureError(spec.name + ": unknown input class '" + *spec.given.domain_class + "'");
    if (spec.given.subset_size > 0 && spec.given.slots.size() != 1)
        throw SignatureError(spec.name + ": subset inputs require exactly one given slot");
}

MethodResult execute_method(const MethodSpec& spec, const DomainSignature& sig, const std::vector<Value>& inputs) {
    check_method(spec, sig);
    if (inputs.size() != spec.given.slots.size())
        throw DomainError(spec.name + " expects " + std::to_string(spec.given.slots.size()) + " inputs");
    MethodResult out;
    out.trace.method = spec.name;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        out.slots[spec.given.slots[i]] = make_value(inputs[i]);
        out.trace.inputs[spec.given.slots[i]] = make_value(inputs[i]);
    }
    for (std::size_t i = 0; i < spec.instructions.size(); ++i) {
        const auto& ins = spec.instructions[i];
        std::vector<Value> args;
        for (const auto& a : ins.args)
            args.push_back(a.kind == InstructionArg::Kind::Slot ? out.slots.at(a.text) : scalar(a.text));
        Value result;
        try {
            result = apply_function(sig, ins.function, args);
        } catch (const DomainError& e) {
            throw InstructionError(i, e.what());
        }
        out.trace.operations.push_back({i, ins.function, args, result, ins.result});
        out.slots[ins.result] = std::move(result);
    }
    return out;
}

std::map<std::string, Value> replay(const OperationTrace& trace, const DomainSignature& sig) {
    std::map<std::string, Value> slots = trace.inputs;
    for (const auto& op : trace.operations) {
        auto result = apply_function(sig, op.function, op.args);
        if (result != op.result)
            throw DomainError("replay of instruction " + std::to_string(op.instruction) + " gave " + to_string(result) +
                              " instead of " + to_string(op.result));
        slots[op.slot] = std::move(result);
    }
    return slots;
}

Value evaluate(const GoalExpr& e, const DomainSignature& sig, const std::map<std::string, Value>& slots) {
    switch (e.kind) {
        case GoalExpr::Kind::Slot: {
            auto it = slots.find(e.name);
            if (it == slots.end()) throw DomainError("goal references undefined slot '" + e.name + "'");
            return it->second;
        }
        case GoalExpr::Kind::Literal:
            return scalar(e.name);
        case GoalExpr::Kind::Apply: {
            std::vector<Value> args;
            for (const auto& a : e.args) args.push_back(evaluate(a, sig, slots));
            return apply_function(sig, e.name, args);
        }
    }
    return {};
}

std::string render_statement(const std::string& tmpl, const std::map<std::string, Value>& slots,
                             const std::map<std::string, std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
        if (tmpl[i] == '{') {
            auto close = tmpl.find('}', i);
            if (close != std::string::npos) {
                const auto key = tmpl.substr(i + 1, close - i - 1);
                if (auto l = labels.find(key); l != labels.end()) {
                    out += l->second;
                } else if (auto s = slots.find(key); s != slots.end()) {
                    out += to_string(s->second);
                } else {
                    out += tmpl.substr(i, close - i + 1);
                }
                i = close;
                continue;
            }
        }
        out += tmpl[i];
    }
    return out;
}

std::string to_string(const OperationTrace& trace) {
    std::string out = trace.method + "(";
    bool first = true;
    for (const auto& [slot, v] : trace.inputs) {
        out += (first ? "" : ", ") + slot + "=" + to_string(v);
        first = false;
    }
    out += ")";
    for (const auto& op : trace.operations) {
        out += "; " + op.slot + " = " + op.function + "(";
        for (std::size_t i = 0; i < op.args.size(); ++i) out += (i ? "," : "") + to_string(op.args[i]);
        out += ") = " + to_string(op.result);
    }
    return out;
}

}  // namespace dik
