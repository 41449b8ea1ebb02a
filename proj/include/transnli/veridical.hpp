#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "transnli/grammar.hpp"
#include "transnli/lexicon.hpp"
#include "transnli/logic.hpp"
#include "transnli/rng.hpp"

namespace transnli::veridical {

using grammar::Number;
using grammar::Tense;

enum class VerbClass { veridical, non_veridical };

std::string to_string(VerbClass c);
VerbClass parse_verb_class(const std::string& text);

// Clause-embedding verb with its entailment class and finite forms.
struct VerbEntry {
    std::string lemma;
    VerbClass verb_class = VerbClass::veridical;
    std::string past;
    std::string pres_3sg;
    std::string pres_pl;
};

struct InventoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class VerbInventory {
public:
    // The fixed 30-verb inventory, 15 veridical and 15 non-veridical.
    static VerbInventory builtin();

    // Tab-separated `lemma  class  past  pres_3sg  pres_pl`.
    static VerbInventory load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    const std::vector<VerbEntry>& entries() const { return entries_; }
    std::vector<VerbEntry> of_class(VerbClass c) const;
    const VerbEntry& require(const std::string& lemma) const;
    const VerbEntry* find(const std::string& lemma) const;

    void add(VerbEntry entry);

private:
    std::vector<VerbEntry> entries_;
};

// The gold label of f(s1) -> s1: yes exactly for veridical verbs.
logic::EntailmentLabel veridical_label(const VerbEntry& verb);

std::string inflect(const VerbEntry& verb, Tense tense, Number number);

// Main-clause template with slots {f} (embedding verb) and {s} (complement).
// past_only marks templates whose adverbial fixes the tense.
struct Template {
    std::string id;
    std::string pattern;
    Number subject_number = Number::singular;
    bool past_only = false;
};

struct TemplateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TemplateSetting { default_set, extended };

// default -> the single "Someone {f} that {s}" template; extended -> the 40
// main clauses spanning pronoun, specific-group, and proper-noun subjects.
std::vector<Template> template_inventory(TemplateSetting setting);

// Tab-separated `id  subject_number  pattern` with an optional fourth column
// `tense` in {any, past}.
std::vector<Template> load_templates(const std::filesystem::path& path);
void save_templates(const std::filesystem::path& path, const std::vector<Template>& templates);

// Fills the slots; the verb form and the complement each appear exactly once
// and the result is capitalized and period-terminated.
std::string instantiate(const Template& tmpl, const std::string& verb_form,
                        const std::string& complement);

// Token-bounded be-form rewrite (is/was, are/were, capitalized variants).
// Sentences with no be-form come back unchanged with be_form_found = false.
struct TenseShift {
    std::string text;
    bool be_form_found = false;
};
TenseShift shift_tense(const std::string& sentence, Tense target);

// Embeds a raw sentence (the naturalistic path): the complement is tense
// shifted when f is past, lowercased at its first character, and slotted into
// the template with f inflected for tense and the template's subject number.
struct Embedded {
    std::string text;
    bool tense_shift_applied = true;
};
Embedded embed(const std::string& complement, const VerbEntry& verb, const Template& tmpl,
               Tense tense);

// Embeds a fragment-grammar derivation (the synthetic path): the complement
// is re-realized in the target tense.
std::string embed(const grammar::Derivation& complement, const grammar::Lexicon& lexicon,
                  const VerbEntry& verb, const Template& tmpl, Tense tense);

struct FlipRecord {
    std::string example_id;
    logic::EntailmentLabel original_label = logic::EntailmentLabel::yes;
    logic::EntailmentLabel flipped_label = logic::EntailmentLabel::unk;
};

// Flips the labels of floor(fraction * n) examples sampled uniformly without
// replacement, in place; everything else is untouched. Reapplying the same
// seed restores the original labels.
template <typename Pair>
std::vector<FlipRecord> flip_labels(std::vector<Pair>& pairs, double fraction, Rng& rng) {
    if (fraction < 0.0 || fraction > 1.0) {
        throw std::invalid_argument("flip fraction must lie in [0, 1]");
    }
    const std::size_t count =
        static_cast<std::size_t>(std::floor(fraction * static_cast<double>(pairs.size())));
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    order.resize(count);
    std::sort(order.begin(), order.end());

    std::vector<FlipRecord> records;
    records.reserve(count);
    for (const std::size_t i : order) {
        auto& pair = pairs[i];
        const auto original = pair.label;
        pair.label = logic::flip(original);
        records.push_back(FlipRecord{pair.id, original, pair.label});
    }
    return records;
}

}  // namespace transnli::veridical
