#include "transnli/semterm.hpp"

#include <algorithm>
#include <sstream>

namespace transnli::grammar {

SemPtr sem_var(int id) {
    auto t = std::make_shared<SemTerm>();
    t->kind = SemKind::variable;
    t->var = id;
    return t;
}

SemPtr sem_const(std::string symbol) {
    auto t = std::make_shared<SemTerm>();
    t->kind = SemKind::constant;
    t->symbol = std::move(symbol);
    return t;
}

SemPtr sem_lam(int var, SemPtr body) {
    auto t = std::make_shared<SemTerm>();
    t->kind = SemKind::abstraction;
    t->var = var;
    t->a = std::move(body);
    return t;
}

SemPtr sem_app(SemPtr fn, SemPtr arg) {
    auto t = std::make_shared<SemTerm>();
    t->kind = SemKind::application;
    t->a = std::move(fn);
    t->b = std::move(arg);
    return t;
}

SemPtr sem_not(SemPtr inner) {
    auto t = std::make_shared<SemTerm>();
    t->kind = SemKind::negation;
    t->a = std::move(inner);
    return t;
}

SemPtr sem_and(SemPtr lhs, SemPtr rhs) {
    auto t = std::make_shared<SemTerm>();
    t->kind = SemKind::conjunction;
    t->a = std::move(lhs);
    t->b = std::move(rhs);
    return t;
}

SemPtr sem_or(SemPtr lhs, SemPtr rhs) {
    auto t = std::make_shared<SemTerm>();
    t->kind = SemKind::disjunction;
    t->a = std::move(lhs);
    t->b = std::move(rhs);
    return t;
}

SemPtr sem_pred(std::string symbol, std::vector<SemPtr> args) {
    auto t = std::make_shared<SemTerm>();
    t->kind = SemKind::predicate;
    t->symbol = std::move(symbol);
    t->args = std::move(args);
    return t;
}

namespace {

bool occurs_free(const SemPtr& term, int var) {
    switch (term->kind) {
        case SemKind::variable:
            return term->var == var;
        case SemKind::constant:
            return false;
        case SemKind::abstraction:
            return term->var != var && occurs_free(term->a, var);
        case SemKind::application:
        case SemKind::conjunction:
        case SemKind::disjunction:
            return occurs_free(term->a, var) || occurs_free(term->b, var);
        case SemKind::negation:
            return occurs_free(term->a, var);
        case SemKind::predicate:
            return std::any_of(term->args.begin(), term->args.end(),
                               [var](const SemPtr& arg) { return occurs_free(arg, var); });
    }
    return false;
}

// Capture-avoiding substitution [var := value]term; binders are renamed with
// fresh ids when they would capture a free variable of value.
SemPtr substitute(const SemPtr& term, int var, const SemPtr& value, int& next_fresh) {
    switch (term->kind) {
        case SemKind::variable:
            return term->var == var ? value : term;
        case SemKind::constant:
            return term;
        case SemKind::abstraction: {
            if (term->var == var) return term;
            if (occurs_free(value, term->var)) {
                const int fresh = next_fresh++;
                auto renamed_body = substitute(term->a, term->var, sem_var(fresh), next_fresh);
                return sem_lam(fresh, substitute(renamed_body, var, value, next_fresh));
            }
            return sem_lam(term->var, substitute(term->a, var, value, next_fresh));
        }
        case SemKind::application:
            return sem_app(substitute(term->a, var, value, next_fresh),
                           substitute(term->b, var, value, next_fresh));
        case SemKind::negation:
            return sem_not(substitute(term->a, var, value, next_fresh));
        case SemKind::conjunction:
            return sem_and(substitute(term->a, var, value, next_fresh),
                           substitute(term->b, var, value, next_fresh));
        case SemKind::disjunction:
            return sem_or(substitute(term->a, var, value, next_fresh),
                          substitute(term->b, var, value, next_fresh));
        case SemKind::predicate: {
            std::vector<SemPtr> args;
            args.reserve(term->args.size());
            for (const auto& arg : term->args) {
                args.push_back(substitute(arg, var, value, next_fresh));
            }
            return sem_pred(term->symbol, std::move(args));
        }
    }
    return term;
}

int max_var(const SemPtr& term) {
    int best = term->var;
    const auto fold = [&best](const SemPtr& sub) {
        if (sub) best = std::max(best, max_var(sub));
    };
    fold(term->a);
    fold(term->b);
    for (const auto& arg : term->args) fold(arg);
    return best;
}

// One normal-order step; returns nullptr when term is already normal.
SemPtr step(const SemPtr& term, int& next_fresh) {
    switch (term->kind) {
        case SemKind::variable:
        case SemKind::constant:
            return nullptr;
        case SemKind::abstraction: {
            if (auto body = step(term->a, next_fresh)) return sem_lam(term->var, body);
            return nullptr;
        }
        case SemKind::application: {
            if (term->a->kind == SemKind::abstraction) {
                return substitute(term->a->a, term->a->var, term->b, next_fresh);
            }
            if (auto fn = step(term->a, next_fresh)) return sem_app(fn, term->b);
            if (auto arg = step(term->b, next_fresh)) return sem_app(term->a, arg);
            return nullptr;
        }
        case SemKind::negation: {
            if (auto inner = step(term->a, next_fresh)) return sem_not(inner);
            return nullptr;
        }
        case SemKind::conjunction: {
            if (auto lhs = step(term->a, next_fresh)) return sem_and(lhs, term->b);
            if (auto rhs = step(term->b, next_fresh)) return sem_and(term->a, rhs);
            return nullptr;
        }
        case SemKind::disjunction: {
            if (auto lhs = step(term->a, next_fresh)) return sem_or(lhs, term->b);
            if (auto rhs = step(term->b, next_fresh)) return sem_or(term->a, rhs);
            return nullptr;
        }
        case SemKind::predicate: {
            for (std::size_t i = 0; i < term->args.size(); ++i) {
                if (auto arg = step(term->args[i], next_fresh)) {
                    auto args = term->args;
                    args[i] = arg;
                    return sem_pred(term->symbol, std::move(args));
                }
            }
            return nullptr;
        }
    }
    return nullptr;
}

}  // namespace

SemPtr beta_normalize(SemPtr term, int max_steps) {
    int next_fresh = max_var(term) + 1;
    for (int i = 0; i < max_steps; ++i) {
        auto reduced = step(term, next_fresh);
        if (!reduced) return term;
        term = std::move(reduced);
    }
    throw NormalizationError("beta reduction exceeded " + std::to_string(max_steps) + " steps");
}

logic::FormulaPtr to_formula(const SemPtr& t) {
    switch (t->kind) {
        case SemKind::negation:
            return logic::make_not(to_formula(t->a));
        case SemKind::conjunction:
            return logic::make_and(to_formula(t->a), to_formula(t->b));
        case SemKind::disjunction:
            return logic::make_or(to_formula(t->a), to_formula(t->b));
        case SemKind::predicate: {
            std::vector<std::string> args;
            args.reserve(t->args.size());
            for (const auto& arg : t->args) {
                if (arg->kind != SemKind::constant) {
                    throw NonFormulaError("predicate argument is not an entity constant: " +
                                          to_string(t));
                }
                args.push_back(arg->symbol);
            }
            return logic::make_atom(t->symbol, std::move(args));
        }
        default:
            throw NonFormulaError("normal form is not a formula: " + to_string(t));
    }
}

logic::FormulaPtr normalize(const SemPtr& term) {
    return to_formula(beta_normalize(term));
}

std::string to_string(const SemPtr& t) {
    std::ostringstream out;
    switch (t->kind) {
        case SemKind::variable:
            out << 'x' << t->var;
            break;
        case SemKind::constant:
            out << t->symbol;
            break;
        case SemKind::abstraction:
            out << "(\\x" << t->var << ". " << to_string(t->a) << ')';
            break;
        case SemKind::application:
            out << '(' << to_string(t->a) << ' ' << to_string(t->b) << ')';
            break;
        case SemKind::negation:
            out << "not(" << to_string(t->a) << ')';
            break;
        case SemKind::conjunction:
            out << "and(" << to_string(t->a) << ',' << to_string(t->b) << ')';
            break;
        case SemKind::disjunction:
            out << "or(" << to_string(t->a) << ',' << to_string(t->b) << ')';
            break;
        case SemKind::predicate: {
            out << t->symbol << '(';
            for (std::size_t i = 0; i < t->args.size(); ++i) {
                if (i) out << ',';
                out << to_string(t->args[i]);
            }
            out << ')';
            break;
        }
    }
    return out.str();
}

}  // namespace transnli::grammar
