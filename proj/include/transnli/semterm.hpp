#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "transnli/logic.hpp"

namespace transnli::grammar {

struct SemTerm;
using SemPtr = std::shared_ptr<const SemTerm>;

enum class SemKind {
    variable,
    constant,      // entity symbol
    abstraction,   // lambda
    application,
    negation,
    conjunction,
    disjunction,
    predicate,     // verb lemma applied to entity terms
};

// Simply-typed lambda term over Boolean connectives and ground predicates.
// Immutable; subterms are shared.
struct SemTerm {
    SemKind kind = SemKind::variable;
    int var = -1;                 // variable id (variable / abstraction binder)
    std::string symbol;           // constant entity or predicate lemma
    SemPtr a, b;                  // abstraction body = a; application fn = a, arg = b;
                                  // negation operand = a; conjunction/disjunction = a, b
    std::vector<SemPtr> args;     // predicate arguments
};

SemPtr sem_var(int id);
SemPtr sem_const(std::string symbol);
SemPtr sem_lam(int var, SemPtr body);
SemPtr sem_app(SemPtr fn, SemPtr arg);
SemPtr sem_not(SemPtr t);
SemPtr sem_and(SemPtr lhs, SemPtr rhs);
SemPtr sem_or(SemPtr lhs, SemPtr rhs);
SemPtr sem_pred(std::string symbol, std::vector<SemPtr> args);

struct NormalizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Signals a term whose normal form is not a connective/atom tree, i.e. a
// grammar or composition bug.
struct NonFormulaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full beta reduction, normal order; confluent on this typed fragment.
SemPtr beta_normalize(SemPtr term, int max_steps = 100000);

// Converts a beta-normal connective/atom tree into a Formula.
logic::FormulaPtr to_formula(const SemPtr& normal_form);

// normalize = beta_normalize then to_formula.
logic::FormulaPtr normalize(const SemPtr& term);

// Debug rendering, e.g. (\x1. swim(x1)).
std::string to_string(const SemPtr& term);

}  // namespace transnli::grammar
