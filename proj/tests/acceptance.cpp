// Acceptance suite: runs the release checks end to end and prints one
// PASS/FAIL line per criterion.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "transnli/cli.hpp"
#include "transnli/dataset.hpp"
#include "transnli/eval.hpp"
#include "transnli/grammar.hpp"
#include "transnli/io.hpp"
#include "transnli/logic.hpp"
#include "transnli/veridical.hpp"

using namespace transnli;
using dataset::InferencePair;
using dataset::PairKind;
using logic::EntailmentLabel;

namespace {

namespace fs = std::filesystem;

struct Criterion {
    Criterion(int n, std::string t) : number(n), title(std::move(t)) {}

    int number;
    std::string title;
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (notes.size() < 12) notes.push_back(what);
        }
    }

    void finish() {
        std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", number, title.c_str());
        for (const auto& note : notes) std::printf("        - %s\n", note.c_str());
        std::fflush(stdout);
        CHECK_MESSAGE(ok, "criterion " << number << ": " << title);
    }
};

const fs::path& work_root() {
    static const fs::path root = [] {
        const auto dir = fs::temp_directory_path() / "transnli-acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }();
    return root;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- shared fixtures -------------------------------------------------------

struct GeneratedRun {
    fs::path dir;
    int exit_code = -1;
    double seconds = 0.0;
};

const GeneratedRun& synthetic_run() {
    static const GeneratedRun run = [] {
        GeneratedRun r;
        const auto out = work_root() / "synth";
        const auto start = std::chrono::steady_clock::now();
        r.exit_code = cli::run(
            {"transnli", "generate-synthetic", "--seed", "42", "--out", out.string()});
        r.seconds = seconds_since(start);
        r.dir = out / "synthetic-42";
        return r;
    }();
    return run;
}

const fs::path& mock_sick() {
    static const fs::path path = [] {
        const auto file = work_root() / "mock-sick.txt";
        std::ofstream out(file);
        out << "pair_ID\tsentence_A\tsentence_B\tentailment_label\trelatedness_score\t"
               "SemEval_set\n";
        out << "2299\tA boy is playing a guitar.\tA kid is playing a guitar.\tENTAILMENT\t4.5"
               "\tTRAIN\n";
        out << "5024\tThe woman is putting makeup on the man.\tA man's face is being painted by "
               "a woman.\tENTAILMENT\t4.8\tTRAIN\n";
        out << "2049\tA cat is playing with a device.\tThe boy is enthusiastically playing in "
               "the mud.\tNEUTRAL\t1.2\tTRAIN\n";
        // Filler rows: exactly 500 yes and 500 unk in TRAIN overall.
        for (int i = 0; i < 498; ++i) {
            out << 10000 + i << "\tA man is holding object " << i
                << ".\tA person is holding object " << i << ".\tENTAILMENT\t4.2\tTRAIN\n";
        }
        for (int i = 0; i < 300; ++i) {
            out << 20000 + i << "\tA woman is reading book " << i << ".\tA man is driving car "
                << i << ".\tNEUTRAL\t1.5\tTRAIN\n";
        }
        for (int i = 0; i < 199; ++i) {
            out << 30000 + i << "\tA dog is chasing ball " << i << ".\tNo dog is chasing ball "
                << i << ".\tCONTRADICTION\t3.4\tTRAIN\n";
        }
        out << "40001\tA chef is cooking pasta.\tA person is cooking pasta.\tENTAILMENT\t4.4"
               "\tTRIAL\n";
        out << "40002\tA bird is flying.\tA bird is swimming.\tCONTRADICTION\t3.0\tTEST\n";
        return file;
    }();
    return path;
}

const GeneratedRun& naturalistic_run() {
    static const GeneratedRun run = [] {
        GeneratedRun r;
        const auto out = work_root() / "natural";
        const auto start = std::chrono::steady_clock::now();
        r.exit_code = cli::run({"transnli", "generate-naturalistic", "--seed", "7", "--out",
                                out.string(), "--sick", mock_sick().string()});
        r.seconds = seconds_since(start);
        r.dir = out / "naturalistic-7";
        return r;
    }();
    return run;
}

const GeneratedRun& flip_run() {
    static const GeneratedRun run = [] {
        GeneratedRun r;
        const auto out = work_root() / "flip";
        r.exit_code = cli::run({"transnli", "generate-naturalistic", "--seed", "9", "--out",
                                out.string(), "--sick", mock_sick().string(), "--n-sick", "100",
                                "--flip-labels", "0.1"});
        r.dir = out / "naturalistic-9";
        return r;
    }();
    return run;
}

// ---- helpers ---------------------------------------------------------------

void flatten(const logic::Formula& f, logic::FormulaKind kind,
             std::vector<const logic::Formula*>& out) {
    if (f.kind == kind) {
        flatten(*f.lhs, kind, out);
        flatten(*f.rhs, kind, out);
        return;
    }
    out.push_back(&f);
}

// Structural equality up to associativity of and/or chains.
bool equal_mod_assoc(const logic::Formula& a, const logic::Formula& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case logic::FormulaKind::atom:
            return a.atom == b.atom;
        case logic::FormulaKind::negation:
            return equal_mod_assoc(*a.lhs, *b.lhs);
        case logic::FormulaKind::conjunction:
        case logic::FormulaKind::disjunction: {
            std::vector<const logic::Formula*> left;
            std::vector<const logic::Formula*> right;
            flatten(a, a.kind, left);
            flatten(b, b.kind, right);
            if (left.size() != right.size()) return false;
            for (std::size_t i = 0; i < left.size(); ++i) {
                if (!equal_mod_assoc(*left[i], *right[i])) return false;
            }
            return true;
        }
    }
    return false;
}

// Independent brute-force oracle for criterion 2 (odometer enumeration over a
// string-keyed environment), written apart from the library implementation.
bool reference_entails(const logic::Formula& f1, const logic::Formula& f2) {
    std::set<std::string> names;
    const std::function<void(const logic::Formula&)> collect = [&](const logic::Formula& f) {
        if (f.kind == logic::FormulaKind::atom) {
            names.insert(logic::to_string(f));
            return;
        }
        collect(*f.lhs);
        if (f.rhs) collect(*f.rhs);
    };
    collect(f1);
    collect(f2);
    const std::function<bool(const logic::Formula&, const std::map<std::string, bool>&)> value =
        [&](const logic::Formula& f, const std::map<std::string, bool>& env) -> bool {
        switch (f.kind) {
            case logic::FormulaKind::atom: return env.at(logic::to_string(f));
            case logic::FormulaKind::negation: return !value(*f.lhs, env);
            case logic::FormulaKind::conjunction: return value(*f.lhs, env) && value(*f.rhs, env);
            case logic::FormulaKind::disjunction: return value(*f.lhs, env) || value(*f.rhs, env);
        }
        return false;
    };
    std::vector<std::string> order(names.begin(), names.end());
    std::map<std::string, bool> env;
    for (const auto& n : order) env[n] = false;
    for (;;) {
        if (value(f1, env) && !value(f2, env)) return false;
        std::size_t i = 0;
        while (i < order.size() && env[order[i]]) env[order[i++]] = false;
        if (i == order.size()) return true;
        env[order[i]] = true;
    }
}

logic::FormulaPtr random_formula(Rng& rng, int budget,
                                 const std::vector<logic::FormulaPtr>& pool) {
    if (budget == 0 || rng.below(3) == 0) return rng.pick(pool);
    switch (rng.below(3)) {
        case 0: return logic::make_not(random_formula(rng, budget - 1, pool));
        case 1:
            return logic::make_and(random_formula(rng, (budget - 1) / 2, pool),
                                   random_formula(rng, (budget - 1) / 2, pool));
        default:
            return logic::make_or(random_formula(rng, (budget - 1) / 2, pool),
                                  random_formula(rng, (budget - 1) / 2, pool));
    }
}

std::map<std::string, const InferencePair*> index_pairs(const std::vector<InferencePair>& pairs) {
    std::map<std::string, const InferencePair*> out;
    for (const auto& pair : pairs) out.emplace(pair.id, &pair);
    return out;
}

int count_label(const std::vector<InferencePair>& pairs, EntailmentLabel label) {
    int n = 0;
    for (const auto& pair : pairs) {
        if (pair.label == label) ++n;
    }
    return n;
}

const InferencePair* find_by_prefix(const std::vector<InferencePair>& pairs,
                                    const std::string& prefix) {
    for (const auto& pair : pairs) {
        if (pair.id.rfind(prefix, 0) == 0) return &pair;
    }
    return nullptr;
}

// Relative path -> file contents for byte-identical tree comparison.
std::map<std::string, std::string> snapshot_tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        out[fs::relative(entry.path(), root).string()] = body.str();
    }
    return out;
}

const veridical::VerbInventory& verbs() {
    static const veridical::VerbInventory inventory = veridical::VerbInventory::builtin();
    return inventory;
}

const grammar::Lexicon& lex() {
    static const grammar::Lexicon lexicon = grammar::Lexicon::builtin();
    return lexicon;
}

}  // namespace

TEST_CASE("criterion 1") {
    Criterion c{1, "semantic composition fidelity on the worked examples"};
    const auto start = std::chrono::steady_clock::now();

    const auto check = [&c](const std::string& sentence, const std::string& expected) {
        const auto derivation = grammar::parse_sentence(sentence, lex());
        const auto formula = grammar::formula_of(derivation);
        c.expect(equal_mod_assoc(*formula, *logic::parse_formula(expected)),
                 sentence + " -> " + logic::to_string(*formula) + " != " + expected);
    };
    check("Ann and Bob saw Chris or Daniel.",
          "and(or(see(ann,chris),see(ann,daniel)),or(see(bob,chris),see(bob,daniel)))");
    check("Ann and Bob did not swim.", "and(not(swim(ann)),not(swim(bob)))");
    check("It was not the case that Greg hated John or Elliot.",
          "not(or(hate(greg,john),hate(greg,elliot)))");

    c.expect(seconds_since(start) < 1.0, "composition took >= 1 s");
    c.finish();
}

TEST_CASE("criterion 2") {
    Criterion c{2, "entailment oracle agrees with brute force on 10,000 random pairs"};
    const auto start = std::chrono::steady_clock::now();

    const std::vector<logic::FormulaPtr> pool{
        logic::make_atom("swim", {"ann"}), logic::make_atom("run", {"bob"}),
        logic::make_atom("see", {"ann", "bob"}), logic::make_atom("hate", {"greg", "john"})};
    Rng rng(20260808);
    int disagreements = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto f1 = random_formula(rng, 6, pool);
        const auto f2 = random_formula(rng, 6, pool);
        if (logic::entails(*f1, *f2) != reference_entails(*f1, *f2)) ++disagreements;
    }
    c.expect(disagreements == 0, std::to_string(disagreements) + " disagreements");
    c.expect(seconds_since(start) < 30.0, "cross-check took >= 30 s");
    c.finish();
}

TEST_CASE("criterion 3") {
    Criterion c{3, "composition rule matches all four label rows"};
    c.expect(dataset::compose_label(EntailmentLabel::yes, EntailmentLabel::yes) ==
                 EntailmentLabel::yes,
             "(yes,yes)");
    c.expect(dataset::compose_label(EntailmentLabel::yes, EntailmentLabel::unk) ==
                 EntailmentLabel::unk,
             "(yes,unk)");
    c.expect(dataset::compose_label(EntailmentLabel::unk, EntailmentLabel::yes) ==
                 EntailmentLabel::unk,
             "(unk,yes)");
    c.expect(dataset::compose_label(EntailmentLabel::unk, EntailmentLabel::unk) ==
                 EntailmentLabel::unk,
             "(unk,unk)");
    c.finish();
}

TEST_CASE("criterion 4") {
    Criterion c{4, "default synthetic release has the exact counts, ratios, and no overlap"};
    const auto& run = synthetic_run();
    c.expect(run.exit_code == 0, "generate-synthetic exited nonzero");
    c.expect(run.seconds < 60.0,
             "generation took " + std::to_string(run.seconds) + " s (>= 60 s)");

    const auto i2 = io::read_pairs_jsonl(run.dir / "i2.jsonl");
    const auto i1 = io::read_pairs_jsonl(run.dir / "i1.jsonl");
    const auto comp = io::read_pairs_jsonl(run.dir / "comp.jsonl");
    c.expect(i2.size() == 3000, "I2 count " + std::to_string(i2.size()));
    c.expect(i1.size() == 6000, "I1 count " + std::to_string(i1.size()));
    c.expect(comp.size() == 6000, "COMP count " + std::to_string(comp.size()));
    c.expect(count_label(i2, EntailmentLabel::yes) == 1500, "I2 label ratio not 1500:1500");
    c.expect(count_label(i1, EntailmentLabel::yes) == 3000, "I1 label ratio not 3000:3000");
    c.expect(count_label(comp, EntailmentLabel::yes) == 1500, "COMP yes count != 1500");
    c.expect(count_label(comp, EntailmentLabel::unk) == 4500, "COMP unk count != 4500");

    // Every premise formula respects the connective cap.
    std::ifstream formulas(run.dir / "formulas.jsonl");
    std::string line;
    int formula_rows = 0;
    int over_cap = 0;
    while (std::getline(formulas, line)) {
        if (line.empty()) continue;
        ++formula_rows;
        const auto object = io::Json::parse(line);
        const auto f1 = logic::parse_formula(object.at("f1").get<std::string>());
        if (logic::connective_count(*f1) > 6) ++over_cap;
    }
    c.expect(formula_rows == 3000, "formula audit rows " + std::to_string(formula_rows));
    c.expect(over_cap == 0, std::to_string(over_cap) + " premises over the connective cap");

    // Train basics against the composite test set: no shared text pairs.
    const auto manifest = io::read_manifest(run.dir / "validation_manifest.json");
    const std::set<std::string> train_ids(manifest.train.begin(), manifest.train.end());
    std::vector<InferencePair> train;
    for (const auto* pool : {&i1, &i2}) {
        for (const auto& pair : *pool) {
            if (train_ids.count(pair.id)) train.push_back(pair);
        }
    }
    const auto overlap = dataset::check_no_overlap(train, comp);
    c.expect(overlap.empty(), std::to_string(overlap.size()) + " overlapping text pairs");
    c.finish();
}

TEST_CASE("criterion 5") {
    Criterion c{5, "naturalistic release shape and the worked embeddings"};
    const auto& run = naturalistic_run();
    c.expect(run.exit_code == 0, "generate-naturalistic exited nonzero");

    const auto i2 = io::read_pairs_jsonl(run.dir / "i2.jsonl");
    const auto i1 = io::read_pairs_jsonl(run.dir / "i1.jsonl");
    const auto comp = io::read_pairs_jsonl(run.dir / "comp.jsonl");
    c.expect(i2.size() == 1000, "I2 count " + std::to_string(i2.size()));
    c.expect(i1.size() == 30000, "I1 count " + std::to_string(i1.size()));
    c.expect(comp.size() == 30000, "COMP count " + std::to_string(comp.size()));
    c.expect(count_label(i2, EntailmentLabel::yes) == 500, "I2 labels not 500:500");
    bool all_train = true;
    for (const auto& pair : i2) all_train = all_train && pair.split && *pair.split == "TRAIN";
    c.expect(all_train, "sampled I2 rows outside the training split");

    // The worked embeddings, byte for byte, through the same embed path the
    // builder uses.
    const auto someone =
        veridical::template_inventory(veridical::TemplateSetting::default_set).front();
    c.expect(veridical::embed("A boy is playing a guitar.", verbs().require("realize"), someone,
                              grammar::Tense::past)
                     .text == "Someone realized that a boy was playing a guitar.",
             "realize/2299 past embedding mismatch");
    c.expect(veridical::embed("The woman is putting makeup on the man.",
                              verbs().require("doubt"), someone, grammar::Tense::present)
                     .text == "Someone doubts that the woman is putting makeup on the man.",
             "doubt/5024 present embedding mismatch");
    c.expect(veridical::embed("A person is brushing a cat.", verbs().require("see"), someone,
                              grammar::Tense::present)
                     .text == "Someone sees that a person is brushing a cat.",
             "see embedding mismatch");

    // The dataset rows carry those embeddings at their sampled tense.
    const auto* row2299 = find_by_prefix(i1, "naturalistic-I1-2299-realize-");
    c.expect(row2299 != nullptr, "no I1 row for (2299, realize)");
    if (row2299) {
        c.expect(row2299->label == EntailmentLabel::yes, "(2299, realize) label is not yes");
        const std::string expected =
            *row2299->tense == grammar::Tense::past
                ? "Someone realized that a boy was playing a guitar."
                : "Someone realizes that a boy is playing a guitar.";
        c.expect(row2299->premise == expected,
                 "(2299, realize) premise '" + row2299->premise + "'");
    }
    const auto* row5024 = find_by_prefix(comp, "naturalistic-COMP-5024-doubt-");
    c.expect(row5024 != nullptr, "no COMP row for (5024, doubt)");
    if (row5024) {
        c.expect(row5024->label == EntailmentLabel::unk, "(5024, doubt) label is not unk");
        const std::string expected =
            *row5024->tense == grammar::Tense::past
                ? "Someone doubted that the woman was putting makeup on the man."
                : "Someone doubts that the woman is putting makeup on the man.";
        c.expect(row5024->premise == expected,
                 "(5024, doubt) premise '" + row5024->premise + "'");
    }
    c.finish();
}

TEST_CASE("criterion 6") {
    Criterion c{6, "hypothesis round-trip through the parser is logically exact"};
    const auto& run = synthetic_run();
    const auto i2 = io::read_pairs_jsonl(run.dir / "i2.jsonl");

    std::map<std::string, std::string> f2_by_id;
    std::ifstream formulas(run.dir / "formulas.jsonl");
    std::string line;
    while (std::getline(formulas, line)) {
        if (line.empty()) continue;
        const auto object = io::Json::parse(line);
        f2_by_id[object.at("id").get<std::string>()] = object.at("f2").get<std::string>();
    }

    int failures = 0;
    int checked = 0;
    for (const auto& pair : i2) {
        if (checked == 1000) break;
        ++checked;
        const auto expected = logic::parse_formula(f2_by_id.at(pair.id));
        const auto parsed = grammar::parse_sentence(pair.hypothesis, lex());
        const auto recovered = grammar::formula_of(parsed);
        if (!logic::entails(*recovered, *expected) || !logic::entails(*expected, *recovered)) {
            ++failures;
        }
    }
    c.expect(checked == 1000, "only " + std::to_string(checked) + " hypotheses available");
    c.expect(failures == 0, std::to_string(failures) + " round-trip failures");
    c.finish();
}

TEST_CASE("criterion 7") {
    Criterion c{7, "validation reserves exactly a stratified tenth of each basic set"};
    for (const auto* run : {&synthetic_run(), &naturalistic_run()}) {
        const auto i2 = io::read_pairs_jsonl(run->dir / "i2.jsonl");
        const auto i1 = io::read_pairs_jsonl(run->dir / "i1.jsonl");
        const auto manifest = io::read_manifest(run->dir / "validation_manifest.json");
        const std::set<std::string> val(manifest.validation.begin(), manifest.validation.end());

        const auto audit = [&c, &val](const std::vector<InferencePair>& pairs,
                                      const std::string& name) {
            std::map<std::string, int> total_by_label;
            std::map<std::string, int> val_by_label;
            int held = 0;
            for (const auto& pair : pairs) {
                const auto label = logic::to_string(pair.label);
                ++total_by_label[label];
                if (val.count(pair.id)) {
                    ++held;
                    ++val_by_label[label];
                }
            }
            const int expected = static_cast<int>(pairs.size()) / 10;
            c.expect(held == expected, name + " holds " + std::to_string(held) + " of " +
                                           std::to_string(pairs.size()));
            for (const auto& [label, total] : total_by_label) {
                const double target = 0.10 * total;
                c.expect(std::abs(val_by_label[label] - target) <= 1.0,
                         name + " label " + label + " off balance");
            }
        };
        audit(i1, run->dir.filename().string() + "/i1");
        audit(i2, run->dir.filename().string() + "/i2");
    }
    c.finish();
}

TEST_CASE("criterion 8") {
    Criterion c{8, "label flips cover exactly the sampled tenth and reverse exactly"};
    const auto& run = flip_run();
    c.expect(run.exit_code == 0, "flip run exited nonzero");

    const auto i1 = io::read_pairs_jsonl(run.dir / "i1.jsonl");
    const auto comp = io::read_pairs_jsonl(run.dir / "comp.jsonl");
    const auto manifest = io::read_manifest(run.dir / "validation_manifest.json");
    const auto flips = io::read_flip_audit(run.dir / "flip_audit.jsonl");

    std::set<std::string> train_i1;
    const auto by_id = index_pairs(i1);
    for (const auto& id : manifest.train) {
        if (by_id.count(id)) train_i1.insert(id);
    }
    const auto expected = static_cast<std::size_t>(0.1 * static_cast<double>(train_i1.size()));
    c.expect(flips.size() == expected,
             std::to_string(flips.size()) + " flips, expected " + std::to_string(expected));

    std::set<std::string> flipped_ids;
    for (const auto& record : flips) {
        flipped_ids.insert(record.example_id);
        c.expect(train_i1.count(record.example_id) == 1,
                 record.example_id + " flipped outside the I1 training set");
        const auto it = by_id.find(record.example_id);
        if (it == by_id.end()) continue;
        const auto& pair = *it->second;
        c.expect(pair.label == record.flipped_label, "emitted label disagrees with the audit");
        // Reapplying the audit restores the class-derived label.
        c.expect(record.original_label ==
                     veridical::veridical_label(verbs().require(*pair.verb)),
                 "audit original label is not the class label");
        c.expect(record.original_label != record.flipped_label, "no-op flip record");
    }
    for (const auto& pair : i1) {
        if (flipped_ids.count(pair.id)) continue;
        c.expect(pair.label == veridical::veridical_label(verbs().require(*pair.verb)),
                 pair.id + " changed without an audit record");
    }
    // Composite labels stay derived from the unflipped classes.
    for (const auto& pair : comp) {
        c.expect(*pair.i1_label == veridical::veridical_label(verbs().require(*pair.verb)),
                 pair.id + " composite i1 label drifted");
        c.expect(pair.label == dataset::compose_label(*pair.i1_label, *pair.i2_label),
                 pair.id + " composite label drifted");
    }
    c.finish();
}

TEST_CASE("criterion 9") {
    Criterion c{9, "augmentation manifests nest and cover exactly k veridical verbs"};
    const auto& run = flip_run();
    const auto comp = io::read_pairs_jsonl(run.dir / "comp.jsonl");
    const auto comp_by_id = index_pairs(comp);
    const auto validation = io::read_manifest(run.dir / "validation_manifest.json");

    for (const std::string condition :
         {"with_both_basics", "with_i1_only", "with_i2_only", "comp_only"}) {
        std::set<std::string> previous;
        for (int k = 0; k <= 15; ++k) {
            const int rc = cli::run({"transnli", "split", "--seed", "3", "--out",
                                     run.dir.string(), "--mode", "augment", "--condition",
                                     condition, "--k", std::to_string(k)});
            c.expect(rc == 0, condition + " k=" + std::to_string(k) + " exited nonzero");
            const auto manifest = io::read_manifest(
                run.dir / ("manifest-augment-" + condition + "-k" + std::to_string(k) +
                           "-3.json"));
            const std::set<std::string> train(manifest.train.begin(), manifest.train.end());
            bool nested = true;
            for (const auto& id : previous) nested = nested && train.count(id);
            c.expect(nested, condition + " k=" + std::to_string(k) + " is not a superset");
            previous = train;

            std::set<std::string> train_verbs;
            bool only_veridical = true;
            bool only_comp = true;
            for (const auto& id : manifest.train) {
                const auto it = comp_by_id.find(id);
                if (it == comp_by_id.end()) {
                    only_comp = false;
                    continue;
                }
                train_verbs.insert(*it->second->verb);
                only_veridical = only_veridical &&
                                 *it->second->verb_class == veridical::VerbClass::veridical;
            }
            c.expect(static_cast<int>(train_verbs.size()) == k,
                     condition + " k=" + std::to_string(k) + " covers " +
                         std::to_string(train_verbs.size()) + " verbs");
            c.expect(only_veridical, condition + " includes non-veridical composite examples");
            c.expect(manifest.test.size() == comp.size(), "test set is not the full composite");
            if (condition == "comp_only") {
                c.expect(only_comp, "comp_only contains basic examples");
            }
            if (condition == "with_both_basics" && k == 0) {
                const std::set<std::string> basics(validation.train.begin(),
                                                   validation.train.end());
                c.expect(train == basics, "with_both_basics k=0 is not the basic training set");
            }
        }
    }
    const int rc = cli::run({"transnli", "split", "--seed", "3", "--out", run.dir.string(),
                             "--mode", "augment", "--condition", "comp_only", "--k", "16"});
    c.expect(rc == 1, "k=16 did not exit with a validation error");
    c.finish();
}

TEST_CASE("criterion 10") {
    Criterion c{10, "heuristic baselines behave structurally on the synthetic composite set"};
    const auto& run = synthetic_run();
    const auto comp = io::read_pairs_jsonl(run.dir / "comp.jsonl");

    std::vector<io::Prediction> predictions;
    predictions.reserve(comp.size());
    for (const auto& pair : comp) {
        predictions.push_back(io::Prediction{pair.id, eval::subsequence_baseline(pair)});
    }
    const auto report = eval::score(predictions, comp);
    c.expect(report.cell_yy && report.cell_yy->accuracy() == 100.0,
             "subsequence (yes,yes) cell is not 100.0");

    // The positive-hypothesis portion of the (yes,unk) cell is entirely
    // mispredicted as yes.
    int positive_yu = 0;
    int wrong_yu = 0;
    std::map<std::string, EntailmentLabel> predicted;
    for (const auto& p : predictions) predicted[p.id] = p.predicted;
    for (const auto& pair : comp) {
        if (*pair.i1_label != EntailmentLabel::yes || *pair.i2_label != EntailmentLabel::unk) {
            continue;
        }
        if (pair.hypothesis.find(" did not ") != std::string::npos) continue;
        ++positive_yu;
        if (predicted.at(pair.id) == EntailmentLabel::yes) ++wrong_yu;
    }
    c.expect(positive_yu > 0, "no positive-hypothesis (yes,unk) examples");
    c.expect(wrong_yu == positive_yu,
             "subsequence accuracy on the positive (yes,unk) subset is not 0.0");

    int negated_pairs = 0;
    int negation_unk = 0;
    for (const auto& pair : comp) {
        const bool has_not = (" " + pair.premise).find(" not ") != std::string::npos ||
                             (" " + pair.hypothesis).find(" not ") != std::string::npos;
        if (!has_not) continue;
        ++negated_pairs;
        if (eval::negation_baseline(pair) == EntailmentLabel::unk) ++negation_unk;
    }
    c.expect(negated_pairs > 0, "no negated pairs in the composite set");
    c.expect(negation_unk == negated_pairs, "negation baseline missed a negated pair");

    // Through the CLI as well.
    const auto out = work_root() / "eval-subseq";
    const int rc = cli::run({"transnli", "evaluate", "--seed", "1", "--out", out.string(),
                             "--gold", (run.dir / "comp.jsonl").string(), "--baseline",
                             "subsequence"});
    c.expect(rc == 0, "evaluate --baseline subsequence exited nonzero");
    std::ifstream report_file(out / "report.json");
    io::Json object;
    report_file >> object;
    c.expect(object.at("cell_yy").get<double>() == 100.0, "report.json (yes,yes) cell != 100.0");
    c.finish();
}

TEST_CASE("criterion 11") {
    Criterion c{11, "likert discretization thresholds exactly at 4 with majority vote"};
    using eval::LikertTriple;
    c.expect(eval::discretize_likert(LikertTriple{{5, 5, 4}}) == EntailmentLabel::yes,
             "(5,5,4)");
    c.expect(eval::discretize_likert(LikertTriple{{4, 3, 2}}) == EntailmentLabel::unk,
             "(4,3,2)");
    c.expect(eval::discretize_likert(LikertTriple{{4, 4, 1}}) == EntailmentLabel::yes,
             "(4,4,1)");
    c.expect(eval::discretize_likert(LikertTriple{{4, 4, 4}}) == EntailmentLabel::yes,
             "score 4 must map to yes");
    c.expect(eval::discretize_likert(LikertTriple{{3, 3, 3}}) == EntailmentLabel::unk,
             "score 3 must map to unk");
    c.finish();
}

TEST_CASE("criterion 12") {
    Criterion c{12, "identical configs produce byte-identical output trees"};

    const auto rerun = [&c](const std::string& name, const std::vector<std::string>& args,
                            const fs::path& out_dir) {
        fs::remove_all(out_dir);
        int rc = cli::run(args);
        c.expect(rc == 0, name + " first run exited nonzero");
        const auto first = snapshot_tree(out_dir);
        fs::remove_all(out_dir);
        rc = cli::run(args);
        c.expect(rc == 0, name + " second run exited nonzero");
        const auto second = snapshot_tree(out_dir);
        c.expect(first == second, name + " trees differ between runs");
        c.expect(!first.empty(), name + " produced no files");
    };

    const auto base = work_root() / "determinism";
    rerun("generate-synthetic",
          {"transnli", "generate-synthetic", "--seed", "5", "--out", (base / "a").string(),
           "--n-boolean", "200"},
          base / "a");
    rerun("generate-naturalistic",
          {"transnli", "generate-naturalistic", "--seed", "5", "--out", (base / "b").string(),
           "--sick", mock_sick().string(), "--n-sick", "50", "--flip-labels", "0.1"},
          base / "b");

    // split writes a single manifest into an existing run directory.
    const auto run_dir = base / "b" / "naturalistic-5";
    const auto manifest_path = run_dir / "manifest-random-3.json";
    const std::vector<std::string> split_args{
        "transnli", "split", "--seed", "3", "--out", run_dir.string(), "--mode", "random"};
    c.expect(cli::run(split_args) == 0, "split first run exited nonzero");
    std::string first_manifest;
    {
        std::ifstream in(manifest_path, std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        first_manifest = body.str();
    }
    fs::remove(manifest_path);
    c.expect(cli::run(split_args) == 0, "split second run exited nonzero");
    {
        std::ifstream in(manifest_path, std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        c.expect(first_manifest == body.str(), "split manifests differ between runs");
    }

    rerun("evaluate",
          {"transnli", "evaluate", "--seed", "1", "--out", (base / "c").string(), "--gold",
           (run_dir / "comp.jsonl").string(), "--baseline", "negation"},
          base / "c");
    c.finish();
}
