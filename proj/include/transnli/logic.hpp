#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "transnli/rng.hpp"

namespace transnli::logic {

// Binary entailment label. Serialized exactly as "yes" / "unk".
enum class EntailmentLabel { yes, unk };

std::string to_string(EntailmentLabel label);
EntailmentLabel parse_label(const std::string& text);
inline EntailmentLabel flip(EntailmentLabel label) {
    return label == EntailmentLabel::yes ? EntailmentLabel::unk : EntailmentLabel::yes;
}

// Ground atom: a verb lemma applied to one (intransitive) or two (transitive)
// proper-name lemmas.
struct Atom {
    std::string predicate;
    std::vector<std::string> args;

    bool operator==(const Atom&) const = default;
    auto operator<=>(const Atom&) const = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class FormulaKind { atom, negation, conjunction, disjunction };

// Immutable ground Boolean formula tree.
struct Formula {
    FormulaKind kind = FormulaKind::atom;
    Atom atom;             // kind == atom
    FormulaPtr lhs, rhs;   // negation uses lhs only
};

FormulaPtr make_atom(Atom a);
FormulaPtr make_atom(std::string predicate, std::vector<std::string> args);
FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_or(FormulaPtr lhs, FormulaPtr rhs);

bool equal(const Formula& a, const Formula& b);
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

// Number of not/and/or nodes.
int connective_count(const Formula& f);

// Distinct atoms in left-to-right first-occurrence order.
std::vector<Atom> atoms_of(const Formula& f);

struct MissingAtomError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AtomBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormulaParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Standard Boolean semantics; the assignment must cover atoms_of(f).
bool evaluate(const Formula& f, const std::map<Atom, bool>& assignment);

// Exhaustive truth-table check: true iff every assignment over the combined
// atoms satisfying f1 also satisfies f2. Exact for this ground fragment.
// Throws AtomBudgetError above the cap.
inline constexpr int kEntailmentAtomCap = 16;
bool entails(const Formula& f1, const Formula& f2);

inline bool equivalent(const Formula& a, const Formula& b) {
    return entails(a, b) && entails(b, a);
}

// Draws A or not(A) for an atom A of f1: atom uniform over distinct atoms,
// polarity uniform unless forced (true = positive).
FormulaPtr select_hypothesis_formula(const Formula& f1, Rng& rng,
                                     std::optional<bool> force_positive = std::nullopt);

// Prefix notation with lowercase lemmas, e.g.
// and(found(henry,john),not(found(daniel,elliot))). Round-trips bit-exactly.
std::string to_string(const Formula& f);
FormulaPtr parse_formula(const std::string& text);

}  // namespace transnli::logic
