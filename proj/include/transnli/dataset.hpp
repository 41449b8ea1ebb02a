#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "transnli/grammar.hpp"
#include "transnli/logic.hpp"
#include "transnli/rng.hpp"
#include "transnli/veridical.hpp"

namespace transnli::dataset {

enum class PairKind { I1, I2, COMP };
enum class DatasetKind { synthetic, naturalistic };

std::string to_string(PairKind kind);
PairKind parse_kind(const std::string& text);
std::string to_string(DatasetKind kind);
DatasetKind parse_dataset_kind(const std::string& text);

// One premise-hypothesis example with its gold label and full provenance.
struct InferencePair {
    std::string id;
    std::string premise;
    std::string hypothesis;
    logic::EntailmentLabel label = logic::EntailmentLabel::unk;
    PairKind kind = PairKind::I2;
    DatasetKind dataset = DatasetKind::synthetic;
    std::optional<std::string> verb;
    std::optional<veridical::VerbClass> verb_class;
    std::optional<std::string> template_id;
    std::optional<grammar::Tense> tense;
    std::optional<logic::EntailmentLabel> i1_label;
    std::optional<logic::EntailmentLabel> i2_label;
    std::optional<std::string> source_id;
    std::optional<std::string> split;              // source corpus split for ingested rows
    std::optional<bool> tense_shift_applied;       // false marks a complement with no be-form
};

struct TransitivityRecord {
    std::string i1_id;
    std::string i2_id;
    std::string comp_id;
};

struct SplitManifest {
    std::string name;
    std::uint64_t seed = 0;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::vector<std::string> train;
    std::vector<std::string> validation;
    std::vector<std::string> test;
};

struct DatasetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Row-level ingestion failure; carries the 1-based row number.
struct SickRowError : DatasetError {
    SickRowError(const std::string& what, int row)
        : DatasetError(what + " (row " + std::to_string(row) + ")"), row(row) {}
    int row;
};

// The transitivity rule: yes iff both inputs are yes.
logic::EntailmentLabel compose_label(logic::EntailmentLabel l1, logic::EntailmentLabel l2);

// A generated Boolean inference pair together with the material the
// downstream builders need: the premise derivation and both formulas.
struct SyntheticI2 {
    InferencePair pair;
    grammar::Derivation derivation;
    logic::FormulaPtr premise_formula;
    logic::FormulaPtr hypothesis_formula;
};

// Generates n Boolean inference pairs, exactly n/2 yes and n/2 unk, premises
// within the connective cap, labels from the entailment oracle, no duplicate
// (premise, hypothesis) texts and no pair whose hypothesis equals its
// premise. The hypothesis takes the surface polarity of the chosen atom, so
// a verbally negated complement yields a negated hypothesis.
std::vector<SyntheticI2> build_boolean_pairs(int n, Rng& rng, const grammar::Lexicon& lexicon,
                                             int max_connectives = 6);

std::vector<InferencePair> to_pairs(const std::vector<SyntheticI2>& items);

// Reads the SICK tab-separated layout (header with pair_ID, sentence_A,
// sentence_B, entailment_label, SemEval_set). ENTAILMENT maps to yes,
// NEUTRAL and CONTRADICTION to unk.
std::vector<InferencePair> ingest_sick(const std::filesystem::path& path);

// Uniform label-balanced sample of n pairs from the training split.
std::vector<InferencePair> sample_sick(const std::vector<InferencePair>& pairs, int n, Rng& rng);

struct TransitivityBuild {
    std::vector<InferencePair> i1;
    std::vector<InferencePair> comp;
    std::vector<TransitivityRecord> records;
};

// Synthetic mode: each Boolean pair is crossed with one veridical and one
// non-veridical verb; embeddings are past tense so composite hypotheses match
// the complement's inflection.
TransitivityBuild build_transitivity_set(const std::vector<SyntheticI2>& i2,
                                         const veridical::VerbInventory& verbs,
                                         const std::vector<veridical::Template>& templates,
                                         Rng& rng, const grammar::Lexicon& lexicon);

// Naturalistic mode: every pair is crossed with all verbs; the embedding
// tense is sampled per (verb, pair) and the complement and hypothesis are
// tense shifted together.
TransitivityBuild build_transitivity_set(const std::vector<InferencePair>& i2,
                                         const veridical::VerbInventory& verbs,
                                         const std::vector<veridical::Template>& templates,
                                         Rng& rng);

// Reserves `fraction` of each basic set for validation, stratified by label
// (and verb class for I1) with largest-remainder rounding; the composite set
// is entirely test.
SplitManifest split_validation(const std::vector<InferencePair>& i1,
                               const std::vector<InferencePair>& i2,
                               const std::vector<InferencePair>& comp, double fraction, Rng& rng);

// Sanity-check split: uniform 9:1 split of the composite set with the basic
// sets folded into train.
SplitManifest random_split(const std::vector<InferencePair>& i1,
                           const std::vector<InferencePair>& i2,
                           const std::vector<InferencePair>& comp, Rng& rng);

enum class AugmentCondition { with_both_basics, with_i1_only, with_i2_only, comp_only };

std::string to_string(AugmentCondition condition);
AugmentCondition parse_condition(const std::string& text);

// Training set = the condition's basic train ids plus every composite example
// whose verb is among the first k veridical verbs in a seed-fixed order; the
// test set is the full composite set.
SplitManifest build_augmentation_manifest(AugmentCondition condition, int k, Rng& rng,
                                          const SplitManifest& validation_split,
                                          const std::vector<InferencePair>& i1,
                                          const std::vector<InferencePair>& i2,
                                          const std::vector<InferencePair>& comp,
                                          const veridical::VerbInventory& verbs);

struct OverlapEntry {
    std::string train_id;
    std::string test_id;
    std::string premise;
    std::string hypothesis;
};

// Lists (premise, hypothesis) text pairs appearing in both sets; a release
// requires an empty report.
std::vector<OverlapEntry> check_no_overlap(const std::vector<InferencePair>& train,
                                           const std::vector<InferencePair>& test);

}  // namespace transnli::dataset
