#include "dik/interpretation.hpp"

namespace dik {

std::string ObjectImage::name() const {
    if (label) return *label;
    return to_string(members);
}

Interpretation interpret(const FiniteTopology& space, const DStar& dstar, const InterpretationMap& imap,
                         const DomainSignature& sig) {
    Interpretation out;
    for (const auto& [label, mask] : dstar.opens) {
        if (!space.is_open(mask))
            throw DomainError("D* member '" + label + "' = " + format_subset(space.ground(), mask) + " is not open");
        auto it = imap.objects.find(label);
        if (it == imap.objects.end()) throw IncompleteInterpretation("open set '" + label + "' has no image");
        ObjectImage image = it->second;
        image.members = make_value(image.members);
        if (image.members.empty()) throw SignatureError("open set '" + label + "' maps to no objects");
        for (const auto& o : image.members)
            if (!sig.knows_object(o))
                throw SignatureError("image of '" + label + "' uses object '" + o + "' unknown to domain " + sig.name);
        if (image.is_set()) out.set_objects[image.name()] = image.members;
        out.assignments[label] = std::move(image);
    }
    for (const auto& [name, f] : dstar.functions) {
        auto it = imap.functions.find(name);
        if (it == imap.functions.end()) throw IncompleteInterpretation("data function '" + name + "' has no image");
        auto target = sig.functions.find(it->second);
        if (target == sig.functions.end())
            throw SignatureError("data function '" + name + "' maps to unknown domain function '" + it->second + "'");
        if (target->second.arity != f.arity)
            throw SignatureError("data function '" + name + "' has arity " + std::to_string(f.arity) + " but '" +
                                 it->second + "' has arity " + std::to_string(target->second.arity));
    }
    for (const auto& [name, r] : dstar.relations) {
        auto it = imap.relations.find(name);
        if (it == imap.relations.end()) throw IncompleteInterpretation("data relation '" + name + "' has no image");
        auto target = sig.relations.find(it->second);
        if (target == sig.relations.end())
            throw SignatureError("data relation '" + name + "' maps to unknown domain relation '" + it->second + "'");
        if (target->second.arity != r.arity)
            throw SignatureError("data relation '" + name + "' has arity " + std::to_string(r.arity) + " but '" +
                                 it->second + "' has arity " + std::to_string(target->second.arity));
    }

    for (const auto& inst : dstar.instances) {
        auto rel = dstar.relations.find(inst.relation);
        if (rel == dstar.relations.end())
            throw IncompleteInterpretation("instance uses data relation '" + inst.relation + "' outside D*");
        OpenTuple args;
        GroundAtom atom{imap.relations.at(inst.relation), {}, false};
        for (const auto& label : inst.args) {
            auto m = dstar.opens.find(label);
            if (m == dstar.opens.end())
                throw IncompleteInterpretation("instance of '" + inst.relation + "' uses open set '" + label +
                                               "' outside D*");
            args.push_back(m->second);
            atom.args.push_back(out.assignments.at(label).name());
        }
        if (eval_data_relation(space, rel->second, args)) out.atoms.insert(std::move(atom));
    }
    return out;
}

DomainSignature with_set_classes(DomainSignature sig, const Interpretation& interp) {
    for (const auto& [label, members] : interp.set_objects) {
        auto& cls = sig.classes[label];
        cls.members = make_value(members);
        cls.enumerable = true;
        if (!sig.knows_object(label)) sig.objects.push_back({label, true, {}, {}});
    }
    return sig;
}

}  // namespace dik
