#include "transnli/lexicon.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace transnli::grammar {

std::string to_string(Tense t) {
    return t == Tense::past ? "past" : "present";
}

Tense parse_tense(const std::string& text) {
    if (text == "past") return Tense::past;
    if (text == "present") return Tense::present;
    throw std::invalid_argument("unknown tense: " + text);
}

std::string to_string(LexCategory c) {
    switch (c) {
        case LexCategory::proper_name: return "PN";
        case LexCategory::intransitive_verb: return "IV";
        case LexCategory::transitive_verb: return "TV";
    }
    return {};
}

static LexCategory parse_category(const std::string& text) {
    if (text == "PN") return LexCategory::proper_name;
    if (text == "IV") return LexCategory::intransitive_verb;
    if (text == "TV") return LexCategory::transitive_verb;
    throw LexiconError("unknown lexical category: " + text);
}

std::string inflect(const LexEntry& entry, Tense tense, Number number) {
    const std::string& form = tense == Tense::past
                                  ? entry.past
                                  : (number == Number::singular ? entry.pres_3sg : entry.pres_pl);
    if (form.empty()) {
        throw MissingInflectionError("lexicon entry '" + entry.lemma + "' lacks the " +
                                     to_string(tense) + " form");
    }
    return form;
}

namespace {

LexEntry pn(const std::string& lemma, const std::string& surface) {
    return LexEntry{lemma, LexCategory::proper_name, surface, "", "", ""};
}

LexEntry iv(const std::string& base, const std::string& past, const std::string& sg) {
    return LexEntry{base, LexCategory::intransitive_verb, base, past, sg, base};
}

LexEntry tv(const std::string& base, const std::string& past, const std::string& sg) {
    return LexEntry{base, LexCategory::transitive_verb, base, past, sg, base};
}

}  // namespace

Lexicon Lexicon::builtin() {
    Lexicon lex;
    lex.add(pn("ann", "Ann"));
    lex.add(pn("bob", "Bob"));
    lex.add(pn("chris", "Chris"));
    lex.add(pn("daniel", "Daniel"));
    lex.add(pn("elliot", "Elliot"));
    lex.add(pn("fred", "Fred"));
    lex.add(pn("greg", "Greg"));
    lex.add(pn("henry", "Henry"));
    lex.add(pn("john", "John"));
    lex.add(pn("tom", "Tom"));

    lex.add(iv("swim", "swam", "swims"));
    lex.add(iv("drink", "drank", "drinks"));
    lex.add(iv("smoke", "smoked", "smokes"));
    lex.add(iv("run", "ran", "runs"));
    lex.add(iv("sleep", "slept", "sleeps"));
    lex.add(iv("dance", "danced", "dances"));
    lex.add(iv("sing", "sang", "sings"));
    lex.add(iv("laugh", "laughed", "laughs"));
    lex.add(iv("cry", "cried", "cries"));
    lex.add(iv("walk", "walked", "walks"));

    lex.add(tv("see", "saw", "sees"));
    lex.add(tv("visit", "visited", "visits"));
    lex.add(tv("touch", "touched", "touches"));
    lex.add(tv("find", "found", "finds"));
    lex.add(tv("praise", "praised", "praises"));
    lex.add(tv("admire", "admired", "admires"));
    lex.add(tv("hate", "hated", "hates"));
    lex.add(tv("love", "loved", "loves"));
    lex.add(tv("help", "helped", "helps"));
    lex.add(tv("call", "called", "calls"));
    return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LexiconError("cannot open lexicon file: " + path.string());
    Lexicon lex;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::string col;
        std::istringstream fields(line);
        while (std::getline(fields, col, '\t')) cols.push_back(col);
        while (cols.size() < 6) cols.emplace_back();
        if (cols.size() > 6 || cols[0].empty() || cols[1].empty()) {
            throw LexiconError("malformed lexicon row " + std::to_string(row) + " in " +
                               path.string());
        }
        LexEntry entry{cols[0], parse_category(cols[1]), cols[2], cols[3], cols[4], cols[5]};
        if (entry.category != LexCategory::proper_name &&
            (entry.base.empty() || entry.past.empty() || entry.pres_3sg.empty() ||
             entry.pres_pl.empty())) {
            throw LexiconError("verb row " + std::to_string(row) + " must carry all four forms");
        }
        lex.add(std::move(entry));
    }
    return lex;
}

void Lexicon::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw LexiconError("cannot write lexicon file: " + path.string());
    const auto dump = [&out](const std::vector<LexEntry>& entries) {
        for (const auto& e : entries) {
            out << e.lemma << '\t' << to_string(e.category) << '\t' << e.base << '\t' << e.past
                << '\t' << e.pres_3sg << '\t' << e.pres_pl << '\n';
        }
    };
    dump(proper_names_);
    dump(intransitive_);
    dump(transitive_);
}

void Lexicon::add(LexEntry entry) {
    auto& bucket = entry.category == LexCategory::proper_name ? proper_names_
                   : entry.category == LexCategory::intransitive_verb ? intransitive_
                                                                      : transitive_;
    bucket.push_back(std::move(entry));
}

const LexEntry* Lexicon::find(const std::string& lemma, LexCategory category) const {
    const auto& bucket = category == LexCategory::proper_name ? proper_names_
                         : category == LexCategory::intransitive_verb ? intransitive_
                                                                      : transitive_;
    for (const auto& e : bucket) {
        if (e.lemma == lemma) return &e;
    }
    return nullptr;
}

const LexEntry& Lexicon::require(const std::string& lemma, LexCategory category) const {
    if (const auto* entry = find(lemma, category)) return *entry;
    throw LexiconError("lexicon has no " + to_string(category) + " entry for '" + lemma + "'");
}

std::vector<Lexicon::SurfaceHit> Lexicon::lookup_surface(const std::string& token) const {
    std::vector<SurfaceHit> hits;
    const auto scan = [&hits, &token](const std::vector<LexEntry>& entries) {
        for (const auto& e : entries) {
            if (e.base == token) hits.push_back(SurfaceHit{&e, "base"});
            if (e.past == token) hits.push_back(SurfaceHit{&e, "past"});
            if (e.pres_3sg == token) hits.push_back(SurfaceHit{&e, "pres_3sg"});
            if (e.pres_pl == token && e.pres_pl != e.base) {
                hits.push_back(SurfaceHit{&e, "pres_pl"});
            }
        }
    };
    scan(proper_names_);
    scan(intransitive_);
    scan(transitive_);
    return hits;
}

}  // namespace transnli::grammar
