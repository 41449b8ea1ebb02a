#include "transnli/veridical.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace transnli::veridical {

std::string to_string(VerbClass c) {
    return c == VerbClass::veridical ? "veridical" : "non_veridical";
}

VerbClass parse_verb_class(const std::string& text) {
    if (text == "veridical") return VerbClass::veridical;
    if (text == "non_veridical") return VerbClass::non_veridical;
    throw InventoryError("unknown verb class: " + text);
}

namespace {

VerbEntry verb(VerbClass c, const std::string& lemma, const std::string& past,
               const std::string& sg) {
    return VerbEntry{lemma, c, past, sg, lemma};
}

}  // namespace

VerbInventory VerbInventory::builtin() {
    VerbInventory inv;
    const auto v = VerbClass::veridical;
    inv.add(verb(v, "realize", "realized", "realizes"));
    inv.add(verb(v, "acknowledge", "acknowledged", "acknowledges"));
    inv.add(verb(v, "remember", "remembered", "remembers"));
    inv.add(verb(v, "note", "noted", "notes"));
    inv.add(verb(v, "find", "found", "finds"));
    inv.add(verb(v, "notice", "noticed", "notices"));
    inv.add(verb(v, "learn", "learned", "learns"));
    inv.add(verb(v, "see", "saw", "sees"));
    inv.add(verb(v, "reveal", "revealed", "reveals"));
    inv.add(verb(v, "discover", "discovered", "discovers"));
    inv.add(verb(v, "understand", "understood", "understands"));
    inv.add(verb(v, "know", "knew", "knows"));
    inv.add(verb(v, "admit", "admitted", "admits"));
    inv.add(verb(v, "recognize", "recognized", "recognizes"));
    inv.add(verb(v, "observe", "observed", "observes"));

    const auto n = VerbClass::non_veridical;
    inv.add(verb(n, "feel", "felt", "feels"));
    inv.add(verb(n, "claim", "claimed", "claims"));
    inv.add(verb(n, "doubt", "doubted", "doubts"));
    inv.add(verb(n, "hope", "hoped", "hopes"));
    inv.add(verb(n, "predict", "predicted", "predicts"));
    inv.add(verb(n, "imply", "implied", "implies"));
    inv.add(verb(n, "suspect", "suspected", "suspects"));
    inv.add(verb(n, "wish", "wished", "wishes"));
    inv.add(verb(n, "think", "thought", "thinks"));
    inv.add(verb(n, "believe", "believed", "believes"));
    inv.add(verb(n, "hear", "heard", "hears"));
    inv.add(verb(n, "expect", "expected", "expects"));
    inv.add(verb(n, "estimate", "estimated", "estimates"));
    inv.add(verb(n, "assume", "assumed", "assumes"));
    inv.add(verb(n, "argue", "argued", "argues"));
    return inv;
}

VerbInventory VerbInventory::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InventoryError("cannot open verb inventory: " + path.string());
    VerbInventory inv;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::vector<std::string> cols;
        std::string col;
        while (std::getline(fields, col, '\t')) cols.push_back(col);
        if (cols.size() != 5) {
            throw InventoryError("malformed verb row " + std::to_string(row) + " in " +
                                 path.string());
        }
        inv.add(VerbEntry{cols[0], parse_verb_class(cols[1]), cols[2], cols[3], cols[4]});
    }
    return inv;
}

void VerbInventory::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw InventoryError("cannot write verb inventory: " + path.string());
    for (const auto& e : entries_) {
        out << e.lemma << '\t' << to_string(e.verb_class) << '\t' << e.past << '\t' << e.pres_3sg
            << '\t' << e.pres_pl << '\n';
    }
}

std::vector<VerbEntry> VerbInventory::of_class(VerbClass c) const {
    std::vector<VerbEntry> out;
    for (const auto& e : entries_) {
        if (e.verb_class == c) out.push_back(e);
    }
    return out;
}

const VerbEntry* VerbInventory::find(const std::string& lemma) const {
    for (const auto& e : entries_) {
        if (e.lemma == lemma) return &e;
    }
    return nullptr;
}

const VerbEntry& VerbInventory::require(const std::string& lemma) const {
    if (const auto* e = find(lemma)) return *e;
    throw InventoryError("no clause-embedding verb '" + lemma + "'");
}

void VerbInventory::add(VerbEntry entry) {
    entries_.push_back(std::move(entry));
}

logic::EntailmentLabel veridical_label(const VerbEntry& verb) {
    return verb.verb_class == VerbClass::veridical ? logic::EntailmentLabel::yes
                                                   : logic::EntailmentLabel::unk;
}

std::string inflect(const VerbEntry& verb, Tense tense, Number number) {
    if (tense == Tense::past) return verb.past;
    return number == Number::singular ? verb.pres_3sg : verb.pres_pl;
}

namespace {

Template tmpl(const std::string& id, Number number, const std::string& pattern,
              bool past_only = false) {
    return Template{id, pattern, number, past_only};
}

void validate_template(const Template& t) {
    const auto count = [&t](const std::string& slot) {
        std::size_t n = 0;
        for (auto at = t.pattern.find(slot); at != std::string::npos;
             at = t.pattern.find(slot, at + slot.size())) {
            ++n;
        }
        return n;
    };
    if (count("{f}") != 1 || count("{s}") != 1) {
        throw TemplateError("template '" + t.id + "' must contain {f} and {s} exactly once");
    }
}

}  // namespace

std::vector<Template> template_inventory(TemplateSetting setting) {
    const auto sg = Number::singular;
    const auto pl = Number::plural;
    std::vector<Template> out;
    if (setting == TemplateSetting::default_set) {
        out.push_back(tmpl("someone", sg, "Someone {f} that {s}"));
        validate_template(out.front());
        return out;
    }
    // Pronoun subjects.
    out.push_back(tmpl("at-that-moment-we", pl, "At that moment, we {f} that {s}", true));
    out.push_back(tmpl("then-he", sg, "Then he {f} that {s}"));
    out.push_back(tmpl("she", sg, "She {f} that {s}"));
    out.push_back(tmpl("he", sg, "He {f} that {s}"));
    out.push_back(tmpl("they", pl, "They {f} that {s}"));
    out.push_back(tmpl("we", pl, "We {f} that {s}"));
    out.push_back(tmpl("i", pl, "I {f} that {s}"));
    out.push_back(tmpl("later-she", sg, "Later, she {f} that {s}"));
    out.push_back(tmpl("afterwards-they", pl, "Afterwards, they {f} that {s}"));
    out.push_back(tmpl("at-first-he", sg, "At first, he {f} that {s}"));
    out.push_back(tmpl("in-the-end-we", pl, "In the end, we {f} that {s}"));
    out.push_back(tmpl("yesterday-i", pl, "Yesterday, I {f} that {s}", true));
    out.push_back(tmpl("by-then-everyone", sg, "By then, everyone {f} that {s}", true));
    // Specific groups.
    out.push_back(tmpl("the-customers", pl, "The customers {f} that {s}"));
    out.push_back(tmpl("some-economists", pl, "Some economists {f} that {s}"));
    out.push_back(tmpl("the-students", pl, "The students {f} that {s}"));
    out.push_back(tmpl("the-villagers", pl, "The villagers {f} that {s}"));
    out.push_back(tmpl("several-analysts", pl, "Several analysts {f} that {s}"));
    out.push_back(tmpl("the-researchers", pl, "The researchers {f} that {s}"));
    out.push_back(tmpl("most-experts", pl, "Most experts {f} that {s}"));
    out.push_back(tmpl("the-neighbors", pl, "The neighbors {f} that {s}"));
    out.push_back(tmpl("a-few-reporters", pl, "A few reporters {f} that {s}"));
    out.push_back(tmpl("the-committee-members", pl, "The committee members {f} that {s}"));
    out.push_back(tmpl("many-scientists", pl, "Many scientists {f} that {s}"));
    out.push_back(tmpl("the-local-farmers", pl, "The local farmers {f} that {s}"));
    out.push_back(tmpl("some-tourists", pl, "Some tourists {f} that {s}"));
    out.push_back(tmpl("the-engineers", pl, "The engineers {f} that {s}"));
    // Proper-noun subjects.
    out.push_back(tmpl("hanson", sg, "Hanson {f} that {s}"));
    out.push_back(tmpl("watson", sg, "Watson {f} that {s}"));
    out.push_back(tmpl("baker", sg, "Baker {f} that {s}"));
    out.push_back(tmpl("morgan", sg, "Morgan {f} that {s}"));
    out.push_back(tmpl("parker", sg, "Parker {f} that {s}"));
    out.push_back(tmpl("sanders", sg, "Sanders {f} that {s}"));
    out.push_back(tmpl("bennett", sg, "Bennett {f} that {s}"));
    out.push_back(tmpl("carter", sg, "Carter {f} that {s}"));
    out.push_back(tmpl("murphy", sg, "Murphy {f} that {s}"));
    out.push_back(tmpl("collins", sg, "Collins {f} that {s}"));
    out.push_back(tmpl("harper", sg, "Harper {f} that {s}"));
    out.push_back(tmpl("turner", sg, "Turner {f} that {s}"));
    out.push_back(tmpl("walker", sg, "Walker {f} that {s}"));
    for (const auto& t : out) validate_template(t);
    return out;
}

std::vector<Template> load_templates(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw TemplateError("cannot open template file: " + path.string());
    std::vector<Template> out;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::vector<std::string> cols;
        std::string col;
        while (std::getline(fields, col, '\t')) cols.push_back(col);
        if (cols.size() < 3 || cols.size() > 4) {
            throw TemplateError("malformed template row " + std::to_string(row) + " in " +
                                path.string());
        }
        Number number;
        if (cols[1] == "sg") {
            number = Number::singular;
        } else if (cols[1] == "pl") {
            number = Number::plural;
        } else {
            throw TemplateError("template row " + std::to_string(row) +
                                ": subject_number must be sg or pl");
        }
        bool past_only = false;
        if (cols.size() == 4) {
            if (cols[3] == "past") {
                past_only = true;
            } else if (cols[3] != "any") {
                throw TemplateError("template row " + std::to_string(row) +
                                    ": tense must be any or past");
            }
        }
        Template t{cols[0], cols[2], number, past_only};
        validate_template(t);
        out.push_back(std::move(t));
    }
    return out;
}

void save_templates(const std::filesystem::path& path, const std::vector<Template>& templates) {
    std::ofstream out(path);
    if (!out) throw TemplateError("cannot write template file: " + path.string());
    for (const auto& t : templates) {
        out << t.id << '\t' << (t.subject_number == Number::singular ? "sg" : "pl") << '\t'
            << t.pattern << '\t' << (t.past_only ? "past" : "any") << '\n';
    }
}

std::string instantiate(const Template& tmpl, const std::string& verb_form,
                        const std::string& complement) {
    validate_template(tmpl);
    std::string text = tmpl.pattern;
    text.replace(text.find("{f}"), 3, verb_form);
    text.replace(text.find("{s}"), 3, complement);
    if (!text.empty()) {
        text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    }
    text += '.';
    return text;
}

TenseShift shift_tense(const std::string& sentence, Tense target) {
    static const std::vector<std::pair<std::string, std::string>> to_past = {
        {"is", "was"}, {"are", "were"}, {"Is", "Was"}, {"Are", "Were"}};
    static const std::vector<std::pair<std::string, std::string>> to_present = {
        {"was", "is"}, {"were", "are"}, {"Was", "Is"}, {"Were", "Are"}};
    static const std::vector<std::string> be_forms = {"is",  "are", "was", "were",
                                                      "Is",  "Are", "Was", "Were"};

    const auto& table = target == Tense::past ? to_past : to_present;
    std::ostringstream out;
    std::istringstream in(sentence);
    std::string token;
    bool found = false;
    bool changed = false;
    bool first = true;
    while (in >> token) {
        std::size_t core_end = token.size();
        while (core_end > 0 && std::ispunct(static_cast<unsigned char>(token[core_end - 1]))) {
            --core_end;
        }
        const std::string core = token.substr(0, core_end);
        if (std::find(be_forms.begin(), be_forms.end(), core) != be_forms.end()) found = true;
        for (const auto& [from, to] : table) {
            if (core == from) {
                token = to + token.substr(core_end);
                changed = true;
                break;
            }
        }
        if (!first) out << ' ';
        out << token;
        first = false;
    }
    if (!changed) return TenseShift{sentence, found};
    return TenseShift{out.str(), found};
}

namespace {

std::string strip_final_period(std::string text) {
    while (!text.empty() && (text.back() == '.' || text.back() == ' ')) text.pop_back();
    return text;
}

std::string lowercase_first(std::string text) {
    if (!text.empty()) {
        text[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(text[0])));
    }
    return text;
}

}  // namespace

Embedded embed(const std::string& complement, const VerbEntry& verb, const Template& tmpl,
               Tense tense) {
    std::string body = complement;
    bool applied = true;
    if (tense == Tense::past) {
        const auto shifted = shift_tense(body, Tense::past);
        body = shifted.text;
        applied = shifted.be_form_found;
    }
    body = lowercase_first(strip_final_period(std::move(body)));
    const std::string form = inflect(verb, tense, tmpl.subject_number);
    return Embedded{instantiate(tmpl, form, body), applied};
}

std::string embed(const grammar::Derivation& complement, const grammar::Lexicon& lexicon,
                  const VerbEntry& verb, const Template& tmpl, Tense tense) {
    const std::string body = grammar::realize_clause_text(complement, tense, lexicon);
    const std::string form = inflect(verb, tense, tmpl.subject_number);
    return instantiate(tmpl, form, body);
}

}  // namespace transnli::veridical
