#include "transnli/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace transnli::grammar {

namespace {

Derivation leaf_name(std::string lemma) {
    Derivation d;
    d.rule = Rule::leaf_name;
    d.lemma = std::move(lemma);
    return d;
}

Derivation leaf_verb(std::string lemma) {
    Derivation d;
    d.rule = Rule::leaf_verb;
    d.lemma = std::move(lemma);
    return d;
}

Derivation leaf_con(Connective con) {
    Derivation d;
    d.rule = Rule::leaf_con;
    d.con = con;
    return d;
}

Derivation make_node(Rule rule, std::vector<Derivation> children) {
    Derivation d;
    d.rule = rule;
    d.children = std::move(children);
    return d;
}

// Draws a proper name without replacement so every name in a sentence is
// distinct, matching the shape of all the attested examples.
std::string draw_name(Rng& rng, std::vector<std::string>& pool) {
    const std::size_t i = static_cast<std::size_t>(rng.below(pool.size()));
    std::string name = pool[i];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    return name;
}

Connective draw_con(Rng& rng) {
    return rng.coin() ? Connective::conj : Connective::disj;
}

Derivation gen_np(Rng& rng, std::vector<std::string>& pool) {
    switch (rng.below(3)) {
        case 0:
            return make_node(Rule::np_name, {leaf_name(draw_name(rng, pool))});
        case 1: {
            auto first = leaf_name(draw_name(rng, pool));
            auto con = leaf_con(draw_con(rng));
            auto second = leaf_name(draw_name(rng, pool));
            return make_node(Rule::np_pair, {std::move(first), std::move(con), std::move(second)});
        }
        default: {
            auto first = leaf_name(draw_name(rng, pool));
            auto second = leaf_name(draw_name(rng, pool));
            auto con = leaf_con(draw_con(rng));
            auto third = leaf_name(draw_name(rng, pool));
            return make_node(Rule::np_triple, {std::move(first), std::move(second), std::move(con),
                                               std::move(third)});
        }
    }
}

Derivation gen_vp(Rng& rng, const Lexicon& lexicon, std::vector<std::string>& pool,
                  bool allow_vneg) {
    const std::uint64_t alt = rng.below(allow_vneg ? 3 : 2);
    switch (alt) {
        case 0:
            return make_node(Rule::vp_intrans,
                             {leaf_verb(rng.pick(lexicon.intransitive_verbs()).lemma)});
        case 1: {
            auto verb = leaf_verb(rng.pick(lexicon.transitive_verbs()).lemma);
            auto object = gen_np(rng, pool);
            return make_node(Rule::vp_trans, {std::move(verb), std::move(object)});
        }
        default:
            return make_node(Rule::vp_neg, {gen_vp(rng, lexicon, pool, false)});
    }
}

Derivation gen_clause(Rng& rng, const Lexicon& lexicon, std::vector<std::string>& pool) {
    auto subject = gen_np(rng, pool);
    auto vp = gen_vp(rng, lexicon, pool, true);
    return make_node(Rule::clause, {std::move(subject), std::move(vp)});
}

Derivation gen_s(Rng& rng, const Lexicon& lexicon, std::vector<std::string>& pool,
                 bool allow_sneg) {
    if (allow_sneg && rng.coin()) {
        return make_node(Rule::neg_clause, {gen_s(rng, lexicon, pool, false)});
    }
    return gen_clause(rng, lexicon, pool);
}

std::vector<std::string> name_pool(const Lexicon& lexicon) {
    std::vector<std::string> pool;
    pool.reserve(lexicon.proper_names().size());
    for (const auto& e : lexicon.proper_names()) pool.push_back(e.lemma);
    return pool;
}

}  // namespace

Derivation generate_sentence(Rng& rng, const GenerationConstraints& constraints,
                             const Lexicon& lexicon) {
    if (constraints.max_connectives < 0) {
        throw GrammarError("max_connectives must be nonnegative");
    }
    // Rejection sampling against the connective cap; after 1000 misses the
    // draw moves to a freshly derived stream rather than looping forever on
    // an unlucky one.
    Rng local = rng.derive("generate-sentence-local");
    Rng* stream = &rng;
    int attempts = 0;
    int relaxations = 0;
    for (;;) {
        auto pool = name_pool(lexicon);
        Derivation d = gen_s(*stream, lexicon, pool, true);
        d.tense = constraints.tense;
        if (logic::connective_count(*formula_of(d)) <= constraints.max_connectives) return d;
        if (++attempts >= 1000) {
            attempts = 0;
            local = rng.derive("generate-sentence-relax-" + std::to_string(relaxations++));
            stream = &local;
        }
    }
}

namespace {

// Per-rule composition terms; fresh variable ids keep binders distinct.
struct Composer {
    int fresh = 0;

    SemPtr pn(const std::string& lemma) {
        const int f = fresh++;
        return sem_lam(f, sem_app(sem_var(f), sem_const(lemma)));
    }

    SemPtr iv(const std::string& lemma) {
        const int x = fresh++;
        return sem_lam(x, sem_pred(lemma, {sem_var(x)}));
    }

    SemPtr tv(const std::string& lemma) {
        const int y = fresh++;
        const int x = fresh++;
        return sem_lam(y, sem_lam(x, sem_pred(lemma, {sem_var(x), sem_var(y)})));
    }

    SemPtr con(Connective c) {
        const int p = fresh++;
        const int q = fresh++;
        auto body = c == Connective::conj ? sem_and(sem_var(p), sem_var(q))
                                          : sem_or(sem_var(p), sem_var(q));
        return sem_lam(p, sem_lam(q, std::move(body)));
    }

    SemPtr negator() {
        const int p = fresh++;
        return sem_lam(p, sem_not(sem_var(p)));
    }

    SemPtr np(const Derivation& d) {
        switch (d.rule) {
            case Rule::np_name:
                return pn(d.children.at(0).lemma);
            case Rule::np_pair: {
                const int f = fresh++;
                auto lhs = sem_app(pn(d.children.at(0).lemma), sem_var(f));
                auto rhs = sem_app(pn(d.children.at(2).lemma), sem_var(f));
                auto joined = sem_app(sem_app(con(d.children.at(1).con), std::move(lhs)),
                                      std::move(rhs));
                return sem_lam(f, std::move(joined));
            }
            case Rule::np_triple: {
                const int f = fresh++;
                auto first = sem_app(pn(d.children.at(0).lemma), sem_var(f));
                auto second = sem_app(pn(d.children.at(1).lemma), sem_var(f));
                auto third = sem_app(pn(d.children.at(3).lemma), sem_var(f));
                auto inner = sem_app(sem_app(con(d.children.at(2).con), std::move(second)),
                                     std::move(third));
                auto joined = sem_app(sem_app(con(d.children.at(2).con), std::move(first)),
                                      std::move(inner));
                return sem_lam(f, std::move(joined));
            }
            default:
                throw GrammarError("expected an NP node");
        }
    }

    SemPtr vp(const Derivation& d) {
        switch (d.rule) {
            case Rule::vp_intrans:
                return iv(d.children.at(0).lemma);
            case Rule::vp_trans: {
                const int x = fresh++;
                const int y = fresh++;
                auto applied = sem_app(sem_app(tv(d.children.at(0).lemma), sem_var(y)), sem_var(x));
                auto body = sem_app(np(d.children.at(1)), sem_lam(y, std::move(applied)));
                return sem_lam(x, std::move(body));
            }
            case Rule::vp_neg: {
                const int x = fresh++;
                auto body = sem_app(negator(), sem_app(vp(d.children.at(0)), sem_var(x)));
                return sem_lam(x, std::move(body));
            }
            default:
                throw GrammarError("expected a VP node");
        }
    }

    SemPtr s(const Derivation& d) {
        switch (d.rule) {
            case Rule::clause:
                return sem_app(np(d.children.at(0)), vp(d.children.at(1)));
            case Rule::neg_clause:
                return sem_app(negator(), s(d.children.at(0)));
            default:
                throw GrammarError("expected an S node");
        }
    }
};

}  // namespace

SemPtr compose_semantics(const Derivation& d) {
    Composer composer;
    return composer.s(d);
}

logic::FormulaPtr formula_of(const Derivation& d) {
    return normalize(compose_semantics(d));
}

namespace {

Number np_number(const Derivation& np) {
    return np.rule == Rule::np_name ? Number::singular : Number::plural;
}

const char* con_word(Connective c) {
    return c == Connective::conj ? "and" : "or";
}

void realize_np(const Derivation& d, const Lexicon& lexicon, std::vector<std::string>& out) {
    const auto surface = [&lexicon](const Derivation& leaf) {
        return lexicon.require(leaf.lemma, LexCategory::proper_name).base;
    };
    switch (d.rule) {
        case Rule::np_name:
            out.push_back(surface(d.children.at(0)));
            return;
        case Rule::np_pair:
            out.push_back(surface(d.children.at(0)));
            out.push_back(con_word(d.children.at(1).con));
            out.push_back(surface(d.children.at(2)));
            return;
        case Rule::np_triple:
            out.push_back(surface(d.children.at(0)) + ",");
            out.push_back(surface(d.children.at(1)) + ",");
            out.push_back(con_word(d.children.at(2).con));
            out.push_back(surface(d.children.at(3)));
            return;
        default:
            throw GrammarError("expected an NP node");
    }
}

const LexEntry& verb_entry(const Lexicon& lexicon, const std::string& lemma) {
    if (const auto* e = lexicon.find(lemma, LexCategory::intransitive_verb)) return *e;
    return lexicon.require(lemma, LexCategory::transitive_verb);
}

void realize_vp_base(const Derivation& d, const Lexicon& lexicon, std::vector<std::string>& out) {
    switch (d.rule) {
        case Rule::vp_intrans:
            out.push_back(verb_entry(lexicon, d.children.at(0).lemma).base);
            return;
        case Rule::vp_trans:
            out.push_back(verb_entry(lexicon, d.children.at(0).lemma).base);
            realize_np(d.children.at(1), lexicon, out);
            return;
        default:
            throw GrammarError("verbal negation expects a base VP");
    }
}

void realize_vp(const Derivation& d, Tense tense, Number number, const Lexicon& lexicon,
                std::vector<std::string>& out) {
    switch (d.rule) {
        case Rule::vp_intrans:
            out.push_back(inflect(verb_entry(lexicon, d.children.at(0).lemma), tense, number));
            return;
        case Rule::vp_trans:
            out.push_back(inflect(verb_entry(lexicon, d.children.at(0).lemma), tense, number));
            realize_np(d.children.at(1), lexicon, out);
            return;
        case Rule::vp_neg:
            if (tense == Tense::past) {
                out.push_back("did");
            } else {
                out.push_back(number == Number::singular ? "does" : "do");
            }
            out.push_back("not");
            realize_vp_base(d.children.at(0), lexicon, out);
            return;
        default:
            throw GrammarError("expected a VP node");
    }
}

void realize_s(const Derivation& d, Tense tense, const Lexicon& lexicon,
               std::vector<std::string>& out) {
    switch (d.rule) {
        case Rule::neg_clause:
            out.push_back("it");
            out.push_back(tense == Tense::past ? "was" : "is");
            out.push_back("not");
            out.push_back("the");
            out.push_back("case");
            out.push_back("that");
            realize_s(d.children.at(0), tense, lexicon, out);
            return;
        case Rule::clause: {
            const auto& subject = d.children.at(0);
            realize_np(subject, lexicon, out);
            realize_vp(d.children.at(1), tense, np_number(subject), lexicon, out);
            return;
        }
        default:
            throw GrammarError("expected an S node");
    }
}

std::string join(const std::vector<std::string>& tokens) {
    std::string text;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) text += ' ';
        text += tokens[i];
    }
    return text;
}

}  // namespace

std::string realize_clause_text(const Derivation& d, Tense tense, const Lexicon& lexicon) {
    std::vector<std::string> tokens;
    realize_s(d, tense, lexicon, tokens);
    return join(tokens);
}

Sentence realize(const Derivation& d, Tense tense, const Lexicon& lexicon) {
    std::string text = realize_clause_text(d, tense, lexicon);
    if (!text.empty()) text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    text += '.';
    return Sentence{std::move(text), tense};
}

namespace {

Derivation clause_for_atom(const logic::Atom& atom, bool negated, const Lexicon& lexicon) {
    if (atom.args.empty() || atom.args.size() > 2) {
        throw ShapeError("atom arity must be 1 or 2: " + atom.predicate);
    }
    auto subject = make_node(Rule::np_name, {leaf_name(atom.args[0])});
    Derivation vp;
    if (atom.args.size() == 1) {
        lexicon.require(atom.predicate, LexCategory::intransitive_verb);
        vp = make_node(Rule::vp_intrans, {leaf_verb(atom.predicate)});
    } else {
        lexicon.require(atom.predicate, LexCategory::transitive_verb);
        auto object = make_node(Rule::np_name, {leaf_name(atom.args[1])});
        vp = make_node(Rule::vp_trans, {leaf_verb(atom.predicate), std::move(object)});
    }
    if (negated) vp = make_node(Rule::vp_neg, {std::move(vp)});
    return make_node(Rule::clause, {std::move(subject), std::move(vp)});
}

}  // namespace

Sentence realize_formula(const logic::Formula& f, Tense tense, const Lexicon& lexicon) {
    if (f.kind == logic::FormulaKind::atom) {
        return realize(clause_for_atom(f.atom, false, lexicon), tense, lexicon);
    }
    if (f.kind == logic::FormulaKind::negation && f.lhs->kind == logic::FormulaKind::atom) {
        return realize(clause_for_atom(f.lhs->atom, true, lexicon), tense, lexicon);
    }
    throw ShapeError("only atoms and negated atoms realize as hypotheses: " +
                     logic::to_string(f));
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream in(text);
    std::string raw;
    while (in >> raw) {
        while (!raw.empty() && raw.back() == '.') raw.pop_back();
        std::string::size_type start = 0;
        while (start < raw.size()) {
            const auto comma = raw.find(',', start);
            if (comma == std::string::npos) {
                tokens.push_back(raw.substr(start));
                break;
            }
            if (comma > start) tokens.push_back(raw.substr(start, comma - start));
            tokens.push_back(",");
            start = comma + 1;
        }
    }
    return tokens;
}

namespace {

std::string lowered(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

struct SentenceParser {
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    const Lexicon& lexicon;
    std::optional<Tense> tense;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " near token " + std::to_string(pos));
    }

    bool done() const { return pos >= tokens.size(); }

    const std::string& peek() const {
        static const std::string empty;
        return done() ? empty : tokens[pos];
    }

    std::string take() {
        if (done()) fail("unexpected end of sentence");
        return tokens[pos++];
    }

    void note_tense(Tense t) {
        if (tense && *tense != t) fail("inconsistent tense marking");
        tense = t;
    }

    Derivation parse_pn() {
        const std::string token = take();
        for (const auto& hit : lexicon.lookup_surface(token)) {
            if (hit.entry->category == LexCategory::proper_name) {
                return leaf_name(hit.entry->lemma);
            }
        }
        fail("expected a proper name, got '" + token + "'");
    }

    Connective parse_con() {
        const std::string token = take();
        if (token == "and") return Connective::conj;
        if (token == "or") return Connective::disj;
        fail("expected 'and' or 'or', got '" + token + "'");
    }

    Derivation parse_np() {
        auto first = parse_pn();
        if (peek() == ",") {
            take();
            auto second = parse_pn();
            if (take() != ",") fail("expected ',' in a coordinated triple");
            auto con = leaf_con(parse_con());
            auto third = parse_pn();
            return make_node(Rule::np_triple, {std::move(first), std::move(second),
                                               std::move(con), std::move(third)});
        }
        if (peek() == "and" || peek() == "or") {
            auto con = leaf_con(parse_con());
            auto second = parse_pn();
            return make_node(Rule::np_pair,
                             {std::move(first), std::move(con), std::move(second)});
        }
        return make_node(Rule::np_name, {std::move(first)});
    }

    Derivation parse_base_vp() {
        const std::string token = take();
        for (const auto& hit : lexicon.lookup_surface(token)) {
            if (hit.feature != "base") continue;
            if (hit.entry->category == LexCategory::intransitive_verb) {
                return make_node(Rule::vp_intrans, {leaf_verb(hit.entry->lemma)});
            }
            if (hit.entry->category == LexCategory::transitive_verb) {
                auto object = parse_np();
                return make_node(Rule::vp_trans,
                                 {leaf_verb(hit.entry->lemma), std::move(object)});
            }
        }
        fail("expected a base verb form, got '" + token + "'");
    }

    Derivation parse_vp(Number subject_number) {
        const std::string& head = peek();
        if (head == "did" || head == "does" || head == "do") {
            take();
            if (head == "did") {
                note_tense(Tense::past);
            } else {
                note_tense(Tense::present);
                const Number expected = head == "does" ? Number::singular : Number::plural;
                if (expected != subject_number) fail("auxiliary does not agree with the subject");
            }
            if (take() != "not") fail("expected 'not' after the auxiliary");
            return make_node(Rule::vp_neg, {parse_base_vp()});
        }
        const std::string token = take();
        for (const auto& hit : lexicon.lookup_surface(token)) {
            const auto category = hit.entry->category;
            if (category != LexCategory::intransitive_verb &&
                category != LexCategory::transitive_verb) {
                continue;
            }
            if (hit.feature == "past") {
                note_tense(Tense::past);
            } else if (hit.feature == "pres_3sg") {
                note_tense(Tense::present);
                if (subject_number != Number::singular) fail("3sg verb with a plural subject");
            } else if (hit.feature == "base") {
                // Base in finite position is the present plural form.
                note_tense(Tense::present);
                if (subject_number != Number::plural) fail("plural verb with a singular subject");
            } else {
                continue;
            }
            if (category == LexCategory::intransitive_verb) {
                return make_node(Rule::vp_intrans, {leaf_verb(hit.entry->lemma)});
            }
            auto object = parse_np();
            return make_node(Rule::vp_trans, {leaf_verb(hit.entry->lemma), std::move(object)});
        }
        fail("expected a finite verb, got '" + token + "'");
    }

    Derivation parse_clause() {
        auto subject = parse_np();
        auto vp = parse_vp(np_number(subject));
        return make_node(Rule::clause, {std::move(subject), std::move(vp)});
    }

    Derivation parse_s(bool allow_sneg) {
        if (allow_sneg && pos + 6 <= tokens.size() && lowered(tokens[pos]) == "it" &&
            (tokens[pos + 1] == "is" || tokens[pos + 1] == "was") && tokens[pos + 2] == "not" &&
            tokens[pos + 3] == "the" && tokens[pos + 4] == "case" && tokens[pos + 5] == "that") {
            note_tense(tokens[pos + 1] == "was" ? Tense::past : Tense::present);
            pos += 6;
            return make_node(Rule::neg_clause, {parse_s(false)});
        }
        return parse_clause();
    }
};

}  // namespace

Derivation parse_sentence(const std::string& text, const Lexicon& lexicon) {
    if (text.empty() || text.back() != '.') {
        throw ParseError("sentence must end with a period: " + text);
    }
    SentenceParser parser{tokenize(text), 0, lexicon, std::nullopt};
    // The initial capital on a function word ("It ...") is undone before
    // lexical lookup; proper names keep their capitals.
    if (!parser.tokens.empty() && lexicon.lookup_surface(parser.tokens[0]).empty()) {
        std::string& first = parser.tokens[0];
        const std::string folded = lowered(first);
        if (folded == "it") first = folded;
    }
    Derivation root = parser.parse_s(true);
    if (!parser.done()) parser.fail("trailing tokens after the clause");
    if (!parser.tense) parser.fail("no finite verb found");
    root.tense = *parser.tense;
    return root;
}

}  // namespace transnli::grammar
