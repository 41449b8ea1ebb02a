#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "transnli/lexicon.hpp"
#include "transnli/logic.hpp"
#include "transnli/rng.hpp"
#include "transnli/semterm.hpp"

namespace transnli::grammar {

// Rewriting rules of the Boolean fragment. Leaves carry the lexical choice.
enum class Rule {
    clause,        // S  -> NP VP
    neg_clause,    // S  -> Sneg S
    np_name,       // NP -> PN
    np_pair,       // NP -> PN CON PN
    np_triple,     // NP -> PN , PN , CON PN
    vp_intrans,    // VP -> IV
    vp_trans,      // VP -> TV NP
    vp_neg,        // VP -> Vneg VP_base
    leaf_name,     // PN terminal
    leaf_verb,     // IV / TV terminal
    leaf_con,      // CON terminal
};

enum class Connective { conj, disj };

// Syntax tree of one generated sentence. Tense is a root-level feature; the
// same derivation realizes in either tense.
struct Derivation {
    Rule rule = Rule::leaf_name;
    std::vector<Derivation> children;
    std::string lemma;                    // leaf_name / leaf_verb
    Connective con = Connective::conj;    // leaf_con
    Tense tense = Tense::past;            // meaningful at the root
};

struct Sentence {
    std::string text;
    Tense tense = Tense::past;
};

struct GenerationConstraints {
    int max_connectives = 6;
    Tense tense = Tense::past;
};

struct GrammarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Samples a derivation with uniform rule choice at every nonterminal,
// resampling until the composed formula respects the connective cap. All the
// proper names in one sentence are distinct.
Derivation generate_sentence(Rng& rng, const GenerationConstraints& constraints,
                             const Lexicon& lexicon);

// Bottom-up semantic composition following the per-rule lambda terms.
SemPtr compose_semantics(const Derivation& d);

// compose + beta-normalize + convert, the usual path to a logical form.
logic::FormulaPtr formula_of(const Derivation& d);

// Surface realization: capitalized, period-terminated, single-spaced. Verbs
// agree with tense and subject number; sentential negation renders as
// "It is/was not the case that ..." and verbal negation as
// "do/does/did not" plus the base form.
Sentence realize(const Derivation& d, Tense tense, const Lexicon& lexicon);

// Mid-sentence rendering (no capitalization, no final period) used when the
// clause is embedded under a main-clause template.
std::string realize_clause_text(const Derivation& d, Tense tense, const Lexicon& lexicon);

// Renders an atom or negated atom as a sentence; any other shape is an error.
Sentence realize_formula(const logic::Formula& f, Tense tense, const Lexicon& lexicon);

// Inverse of realize for strings produced over the given lexicon. The
// returned derivation has its root tense set from the surface form.
Derivation parse_sentence(const std::string& text, const Lexicon& lexicon);

// Whitespace tokenization with commas split off as their own tokens and the
// final period removed; shared by the parser and the realization checks.
std::vector<std::string> tokenize(const std::string& text);

}  // namespace transnli::grammar
