#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace transnli::grammar {

enum class Tense { past, present };
enum class Number { singular, plural };

std::string to_string(Tense t);
Tense parse_tense(const std::string& text);

enum class LexCategory { proper_name, intransitive_verb, transitive_verb };

std::string to_string(LexCategory c);

// One lexicon row. Proper names carry the capitalized surface in `base` and
// leave the inflection slots empty; verbs carry all four forms.
struct LexEntry {
    std::string lemma;
    LexCategory category = LexCategory::proper_name;
    std::string base;
    std::string past;
    std::string pres_3sg;
    std::string pres_pl;
};

struct MissingInflectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Morphology lookup: past is number-invariant; present picks pres_3sg or
// pres_pl by subject number.
std::string inflect(const LexEntry& entry, Tense tense, Number number);

struct LexiconError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Lexicon {
public:
    // The fixed 10 PN / 10 IV / 10 TV inventory.
    static Lexicon builtin();

    // Tab-separated `lemma  category  base  past  pres_3sg  pres_pl` with
    // category in {PN, IV, TV}; PN rows leave the inflection columns empty.
    static Lexicon load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    const std::vector<LexEntry>& proper_names() const { return proper_names_; }
    const std::vector<LexEntry>& intransitive_verbs() const { return intransitive_; }
    const std::vector<LexEntry>& transitive_verbs() const { return transitive_; }

    const LexEntry& require(const std::string& lemma, LexCategory category) const;
    const LexEntry* find(const std::string& lemma, LexCategory category) const;

    // Surface-form lookup for parsing: returns (entry, matched form feature)
    // pairs; feature is one of "base", "past", "pres_3sg", "pres_pl".
    struct SurfaceHit {
        const LexEntry* entry;
        std::string feature;
    };
    std::vector<SurfaceHit> lookup_surface(const std::string& token) const;

    void add(LexEntry entry);

private:
    std::vector<LexEntry> proper_names_;
    std::vector<LexEntry> intransitive_;
    std::vector<LexEntry> transitive_;
};

}  // namespace transnli::grammar
