#include "transnli/logic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace transnli::logic {

std::string to_string(EntailmentLabel label) {
    return label == EntailmentLabel::yes ? "yes" : "unk";
}

EntailmentLabel parse_label(const std::string& text) {
    if (text == "yes") return EntailmentLabel::yes;
    if (text == "unk") return EntailmentLabel::unk;
    throw std::invalid_argument("unknown entailment label: " + text);
}

FormulaPtr make_atom(Atom a) {
    auto f = std::make_shared<Formula>();
    f->kind = FormulaKind::atom;
    f->atom = std::move(a);
    return f;
}

FormulaPtr make_atom(std::string predicate, std::vector<std::string> args) {
    return make_atom(Atom{std::move(predicate), std::move(args)});
}

FormulaPtr make_not(FormulaPtr f) {
    auto n = std::make_shared<Formula>();
    n->kind = FormulaKind::negation;
    n->lhs = std::move(f);
    return n;
}

static FormulaPtr make_binary(FormulaKind kind, FormulaPtr lhs, FormulaPtr rhs) {
    auto n = std::make_shared<Formula>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs) {
    return make_binary(FormulaKind::conjunction, std::move(lhs), std::move(rhs));
}

FormulaPtr make_or(FormulaPtr lhs, FormulaPtr rhs) {
    return make_binary(FormulaKind::disjunction, std::move(lhs), std::move(rhs));
}

bool equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case FormulaKind::atom:
            return a.atom == b.atom;
        case FormulaKind::negation:
            return equal(*a.lhs, *b.lhs);
        case FormulaKind::conjunction:
        case FormulaKind::disjunction:
            return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
    return false;
}

int connective_count(const Formula& f) {
    switch (f.kind) {
        case FormulaKind::atom:
            return 0;
        case FormulaKind::negation:
            return 1 + connective_count(*f.lhs);
        case FormulaKind::conjunction:
        case FormulaKind::disjunction:
            return 1 + connective_count(*f.lhs) + connective_count(*f.rhs);
    }
    return 0;
}

static void collect_atoms(const Formula& f, std::vector<Atom>& out) {
    switch (f.kind) {
        case FormulaKind::atom:
            if (std::find(out.begin(), out.end(), f.atom) == out.end()) out.push_back(f.atom);
            return;
        case FormulaKind::negation:
            collect_atoms(*f.lhs, out);
            return;
        case FormulaKind::conjunction:
        case FormulaKind::disjunction:
            collect_atoms(*f.lhs, out);
            collect_atoms(*f.rhs, out);
            return;
    }
}

std::vector<Atom> atoms_of(const Formula& f) {
    std::vector<Atom> out;
    collect_atoms(f, out);
    return out;
}

bool evaluate(const Formula& f, const std::map<Atom, bool>& assignment) {
    switch (f.kind) {
        case FormulaKind::atom: {
            const auto it = assignment.find(f.atom);
            if (it == assignment.end()) {
                throw MissingAtomError("assignment lacks atom: " + to_string(f));
            }
            return it->second;
        }
        case FormulaKind::negation:
            return !evaluate(*f.lhs, assignment);
        case FormulaKind::conjunction:
            return evaluate(*f.lhs, assignment) && evaluate(*f.rhs, assignment);
        case FormulaKind::disjunction:
            return evaluate(*f.lhs, assignment) || evaluate(*f.rhs, assignment);
    }
    return false;
}

namespace {

// Mask-based evaluation used by the enumerating oracle.
bool eval_mask(const Formula& f, const std::map<Atom, int>& index, std::uint32_t mask) {
    switch (f.kind) {
        case FormulaKind::atom:
            return (mask >> index.at(f.atom)) & 1u;
        case FormulaKind::negation:
            return !eval_mask(*f.lhs, index, mask);
        case FormulaKind::conjunction:
            return eval_mask(*f.lhs, index, mask) && eval_mask(*f.rhs, index, mask);
        case FormulaKind::disjunction:
            return eval_mask(*f.lhs, index, mask) || eval_mask(*f.rhs, index, mask);
    }
    return false;
}

}  // namespace

bool entails(const Formula& f1, const Formula& f2) {
    std::map<Atom, int> index;
    for (const auto& atom : atoms_of(f1)) index.emplace(atom, 0);
    for (const auto& atom : atoms_of(f2)) index.emplace(atom, 0);
    if (index.size() > static_cast<std::size_t>(kEntailmentAtomCap)) {
        throw AtomBudgetError("entailment check over " + std::to_string(index.size()) +
                              " atoms exceeds the cap of " + std::to_string(kEntailmentAtomCap));
    }
    int next = 0;
    for (auto& [atom, slot] : index) slot = next++;

    const std::uint32_t total = 1u << index.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (eval_mask(f1, index, mask) && !eval_mask(f2, index, mask)) return false;
    }
    return true;
}

FormulaPtr select_hypothesis_formula(const Formula& f1, Rng& rng,
                                     std::optional<bool> force_positive) {
    const auto atoms = atoms_of(f1);
    const Atom& chosen = atoms[static_cast<std::size_t>(rng.below(atoms.size()))];
    const bool positive = force_positive ? *force_positive : rng.coin();
    auto atom = make_atom(chosen);
    return positive ? atom : make_not(std::move(atom));
}

std::string to_string(const Formula& f) {
    switch (f.kind) {
        case FormulaKind::atom: {
            std::ostringstream out;
            out << f.atom.predicate << '(';
            for (std::size_t i = 0; i < f.atom.args.size(); ++i) {
                if (i) out << ',';
                out << f.atom.args[i];
            }
            out << ')';
            return out.str();
        }
        case FormulaKind::negation:
            return "not(" + to_string(*f.lhs) + ")";
        case FormulaKind::conjunction:
            return "and(" + to_string(*f.lhs) + "," + to_string(*f.rhs) + ")";
        case FormulaKind::disjunction:
            return "or(" + to_string(*f.lhs) + "," + to_string(*f.rhs) + ")";
    }
    return {};
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw FormulaParseError(what + " at offset " + std::to_string(pos) + " in: " + text);
    }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }

    std::string identifier() {
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        if (pos == start) fail("expected identifier");
        return text.substr(start, pos - start);
    }

    FormulaPtr formula() {
        const std::string head = identifier();
        expect('(');
        if (head == "not") {
            auto inner = formula();
            expect(')');
            return make_not(std::move(inner));
        }
        if (head == "and" || head == "or") {
            auto lhs = formula();
            expect(',');
            auto rhs = formula();
            expect(')');
            return head == "and" ? make_and(std::move(lhs), std::move(rhs))
                                 : make_or(std::move(lhs), std::move(rhs));
        }
        std::vector<std::string> args;
        args.push_back(identifier());
        while (peek() == ',') {
            ++pos;
            args.push_back(identifier());
        }
        expect(')');
        if (args.size() > 2) fail("atoms take at most two arguments");
        return make_atom(head, std::move(args));
    }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    Parser parser{text};
    auto f = parser.formula();
    if (parser.pos != text.size()) parser.fail("trailing input");
    return f;
}

}  // namespace transnli::logic
