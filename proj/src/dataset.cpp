#include "transnli/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace transnli::dataset {

using logic::EntailmentLabel;
using veridical::VerbClass;

std::string to_string(PairKind kind) {
    switch (kind) {
        case PairKind::I1: return "I1";
        case PairKind::I2: return "I2";
        case PairKind::COMP: return "COMP";
    }
    return {};
}

PairKind parse_kind(const std::string& text) {
    if (text == "I1") return PairKind::I1;
    if (text == "I2") return PairKind::I2;
    if (text == "COMP") return PairKind::COMP;
    throw DatasetError("unknown pair kind: " + text);
}

std::string to_string(DatasetKind kind) {
    return kind == DatasetKind::synthetic ? "synthetic" : "naturalistic";
}

DatasetKind parse_dataset_kind(const std::string& text) {
    if (text == "synthetic") return DatasetKind::synthetic;
    if (text == "naturalistic") return DatasetKind::naturalistic;
    throw DatasetError("unknown dataset kind: " + text);
}

EntailmentLabel compose_label(EntailmentLabel l1, EntailmentLabel l2) {
    return (l1 == EntailmentLabel::yes && l2 == EntailmentLabel::yes) ? EntailmentLabel::yes
                                                                      : EntailmentLabel::unk;
}

namespace {

std::string pad_index(int value, int width = 5) {
    std::string digits = std::to_string(value);
    if (static_cast<int>(digits.size()) < width) {
        digits.insert(digits.begin(), width - digits.size(), '0');
    }
    return digits;
}

std::string pair_key(const std::string& premise, const std::string& hypothesis) {
    return premise + '\x1f' + hypothesis;
}

bool has_verbal_negation(const grammar::Derivation& d) {
    if (d.rule == grammar::Rule::vp_neg) return true;
    return std::any_of(d.children.begin(), d.children.end(), has_verbal_negation);
}

}  // namespace

std::vector<SyntheticI2> build_boolean_pairs(int n, Rng& rng, const grammar::Lexicon& lexicon,
                                             int max_connectives) {
    if (n < 0 || n % 2 != 0) throw DatasetError("pair count must be even and nonnegative");

    const grammar::GenerationConstraints constraints{max_connectives, grammar::Tense::past};
    std::vector<SyntheticI2> out;
    out.reserve(static_cast<std::size_t>(n));
    std::set<std::string> seen;
    int need_yes = n / 2;
    int need_unk = n / 2;

    while (need_yes + need_unk > 0) {
        auto derivation = grammar::generate_sentence(rng, constraints, lexicon);
        const auto f1 = grammar::formula_of(derivation);
        const auto premise = grammar::realize(derivation, grammar::Tense::past, lexicon);
        const bool negated_vp = has_verbal_negation(derivation);

        auto atoms = logic::atoms_of(*f1);
        std::vector<std::size_t> order(atoms.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);

        for (const std::size_t idx : order) {
            // The hypothesis takes the atom's surface polarity: negated when
            // the premise VP carries verbal negation.
            auto f2 = logic::make_atom(atoms[idx]);
            if (negated_vp) f2 = logic::make_not(std::move(f2));
            const auto hypothesis = grammar::realize_formula(*f2, grammar::Tense::past, lexicon);
            if (hypothesis.text == premise.text) continue;

            const auto label = logic::entails(*f1, *f2) ? EntailmentLabel::yes
                                                        : EntailmentLabel::unk;
            int& need = label == EntailmentLabel::yes ? need_yes : need_unk;
            if (need == 0) continue;
            if (!seen.insert(pair_key(premise.text, hypothesis.text)).second) continue;

            const int index = static_cast<int>(out.size()) + 1;
            const std::string source = "s" + pad_index(index);
            InferencePair pair;
            pair.id = "synthetic-I2-" + source;
            pair.premise = premise.text;
            pair.hypothesis = hypothesis.text;
            pair.label = label;
            pair.kind = PairKind::I2;
            pair.dataset = DatasetKind::synthetic;
            pair.tense = grammar::Tense::past;
            pair.source_id = source;
            out.push_back(SyntheticI2{std::move(pair), std::move(derivation), f1, f2});
            --need;
            break;
        }
    }
    return out;
}

std::vector<InferencePair> to_pairs(const std::vector<SyntheticI2>& items) {
    std::vector<InferencePair> out;
    out.reserve(items.size());
    for (const auto& item : items) out.push_back(item.pair);
    return out;
}

std::vector<InferencePair> ingest_sick(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open SICK file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DatasetError("SICK file is empty: " + path.string());

    std::vector<std::string> header;
    {
        std::istringstream fields(line);
        std::string col;
        while (std::getline(fields, col, '\t')) header.push_back(col);
    }
    const auto column = [&header, &path](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw DatasetError("SICK file " + path.string() + " lacks column " + name);
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t id_col = column("pair_ID");
    const std::size_t a_col = column("sentence_A");
    const std::size_t b_col = column("sentence_B");
    const std::size_t label_col = column("entailment_label");
    const std::size_t split_col = column("SemEval_set");
    const std::size_t needed = std::max({id_col, a_col, b_col, label_col, split_col}) + 1;

    std::vector<InferencePair> out;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::istringstream fields(line);
        std::string col;
        while (std::getline(fields, col, '\t')) cols.push_back(col);
        if (cols.size() < needed) throw SickRowError("malformed SICK row", row);

        EntailmentLabel label;
        const std::string& raw = cols[label_col];
        if (raw == "ENTAILMENT") {
            label = EntailmentLabel::yes;
        } else if (raw == "NEUTRAL" || raw == "CONTRADICTION") {
            label = EntailmentLabel::unk;
        } else {
            throw SickRowError("unknown SICK label '" + raw + "'", row);
        }

        InferencePair pair;
        pair.id = "naturalistic-I2-" + cols[id_col];
        pair.premise = cols[a_col];
        pair.hypothesis = cols[b_col];
        pair.label = label;
        pair.kind = PairKind::I2;
        pair.dataset = DatasetKind::naturalistic;
        pair.source_id = cols[id_col];
        pair.split = cols[split_col];
        out.push_back(std::move(pair));
    }
    return out;
}

std::vector<InferencePair> sample_sick(const std::vector<InferencePair>& pairs, int n, Rng& rng) {
    if (n < 0 || n % 2 != 0) throw DatasetError("sample size must be even and nonnegative");

    std::vector<const InferencePair*> yes_pool;
    std::vector<const InferencePair*> unk_pool;
    std::set<std::string> seen_sources;
    for (const auto& pair : pairs) {
        if (!pair.split || *pair.split != "TRAIN") continue;
        if (pair.source_id && !seen_sources.insert(*pair.source_id).second) continue;
        (pair.label == EntailmentLabel::yes ? yes_pool : unk_pool).push_back(&pair);
    }
    const std::size_t per_label = static_cast<std::size_t>(n) / 2;
    if (yes_pool.size() < per_label || unk_pool.size() < per_label) {
        throw DatasetError("insufficient SICK training pool: " + std::to_string(yes_pool.size()) +
                           " yes / " + std::to_string(unk_pool.size()) + " unk, need " +
                           std::to_string(per_label) + " each");
    }

    rng.shuffle(yes_pool);
    rng.shuffle(unk_pool);
    std::vector<const InferencePair*> chosen(yes_pool.begin(),
                                             yes_pool.begin() + static_cast<long>(per_label));
    chosen.insert(chosen.end(), unk_pool.begin(), unk_pool.begin() + static_cast<long>(per_label));
    std::sort(chosen.begin(), chosen.end(), [](const InferencePair* a, const InferencePair* b) {
        const auto& lhs = a->source_id ? *a->source_id : a->id;
        const auto& rhs = b->source_id ? *b->source_id : b->id;
        if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
        return lhs < rhs;
    });

    std::vector<InferencePair> out;
    out.reserve(chosen.size());
    for (const auto* pair : chosen) out.push_back(*pair);
    return out;
}

namespace {

struct PairIds {
    std::string i1;
    std::string comp;
};

PairIds make_ids(DatasetKind dataset, const std::string& source, const std::string& verb,
                 const std::string& template_id, grammar::Tense tense) {
    const std::string suffix =
        source + "-" + verb + "-" + template_id + "-" + grammar::to_string(tense);
    const std::string prefix = to_string(dataset);
    return PairIds{prefix + "-I1-" + suffix, prefix + "-COMP-" + suffix};
}

InferencePair base_member(DatasetKind dataset, PairKind kind, const veridical::VerbEntry& verb,
                          const veridical::Template& tmpl, grammar::Tense tense,
                          const std::string& source) {
    InferencePair pair;
    pair.kind = kind;
    pair.dataset = dataset;
    pair.verb = verb.lemma;
    pair.verb_class = verb.verb_class;
    pair.template_id = tmpl.id;
    pair.tense = tense;
    pair.source_id = source;
    return pair;
}

}  // namespace

TransitivityBuild build_transitivity_set(const std::vector<SyntheticI2>& i2,
                                         const veridical::VerbInventory& verbs,
                                         const std::vector<veridical::Template>& templates,
                                         Rng& rng, const grammar::Lexicon& lexicon) {
    if (i2.empty()) throw DatasetError("cannot cross an empty basic set");
    if (templates.empty()) throw DatasetError("template inventory is empty");

    const auto veridicals = verbs.of_class(VerbClass::veridical);
    const auto non_veridicals = verbs.of_class(VerbClass::non_veridical);
    if (veridicals.empty() || non_veridicals.empty()) {
        throw DatasetError("verb inventory must contain both classes");
    }

    // Embeddings are past tense: the composite hypothesis is the past-tense
    // Boolean hypothesis, so the complement must carry the same inflection.
    const grammar::Tense tense = grammar::Tense::past;

    TransitivityBuild build;
    build.i1.reserve(i2.size() * 2);
    build.comp.reserve(i2.size() * 2);
    std::set<std::string> seen_i1;

    for (const auto& item : i2) {
        for (const auto* pool : {&veridicals, &non_veridicals}) {
            auto order = *pool;
            rng.shuffle(order);
            const veridical::Template& tmpl =
                templates.size() == 1 ? templates.front() : rng.pick(templates);

            const std::string i1_hypothesis = item.pair.premise;
            bool placed = false;
            for (const auto& verb : order) {
                const std::string premise =
                    veridical::embed(item.derivation, lexicon, verb, tmpl, tense);
                if (!seen_i1.insert(pair_key(premise, i1_hypothesis)).second) continue;

                const std::string source = item.pair.source_id.value_or(item.pair.id);
                const auto ids = make_ids(DatasetKind::synthetic, source, verb.lemma, tmpl.id,
                                          tense);
                const auto i1_label = veridical::veridical_label(verb);

                InferencePair i1 = base_member(DatasetKind::synthetic, PairKind::I1, verb, tmpl,
                                               tense, source);
                i1.id = ids.i1;
                i1.premise = premise;
                i1.hypothesis = i1_hypothesis;
                i1.label = i1_label;

                InferencePair comp = base_member(DatasetKind::synthetic, PairKind::COMP, verb,
                                                 tmpl, tense, source);
                comp.id = ids.comp;
                comp.premise = premise;
                comp.hypothesis = item.pair.hypothesis;
                comp.label = compose_label(i1_label, item.pair.label);
                comp.i1_label = i1_label;
                comp.i2_label = item.pair.label;

                build.records.push_back(TransitivityRecord{ids.i1, item.pair.id, ids.comp});
                build.i1.push_back(std::move(i1));
                build.comp.push_back(std::move(comp));
                placed = true;
                break;
            }
            if (!placed) {
                throw DatasetError("could not place a distinct embedding for " + item.pair.id);
            }
        }
    }
    return build;
}

TransitivityBuild build_transitivity_set(const std::vector<InferencePair>& i2,
                                         const veridical::VerbInventory& verbs,
                                         const std::vector<veridical::Template>& templates,
                                         Rng& rng) {
    if (i2.empty()) throw DatasetError("cannot cross an empty basic set");
    if (templates.empty()) throw DatasetError("template inventory is empty");

    TransitivityBuild build;
    build.i1.reserve(i2.size() * verbs.entries().size());
    build.comp.reserve(i2.size() * verbs.entries().size());

    for (const auto& pair : i2) {
        for (const auto& verb : verbs.entries()) {
            const veridical::Template& tmpl =
                templates.size() == 1 ? templates.front() : rng.pick(templates);
            const grammar::Tense tense =
                tmpl.past_only ? grammar::Tense::past
                               : (rng.coin() ? grammar::Tense::past : grammar::Tense::present);

            const auto embedded = veridical::embed(pair.premise, verb, tmpl, tense);
            std::string i1_hypothesis = pair.premise;
            std::string comp_hypothesis = pair.hypothesis;
            bool hypothesis_shifted = true;
            if (tense == grammar::Tense::past) {
                const auto s1 = veridical::shift_tense(pair.premise, grammar::Tense::past);
                const auto s2 = veridical::shift_tense(pair.hypothesis, grammar::Tense::past);
                i1_hypothesis = s1.text;
                comp_hypothesis = s2.text;
                hypothesis_shifted = s2.be_form_found;
            }

            const std::string source = pair.source_id.value_or(pair.id);
            const auto ids = make_ids(DatasetKind::naturalistic, source, verb.lemma, tmpl.id,
                                      tense);
            const auto i1_label = veridical::veridical_label(verb);

            InferencePair i1 = base_member(DatasetKind::naturalistic, PairKind::I1, verb, tmpl,
                                           tense, source);
            i1.id = ids.i1;
            i1.premise = embedded.text;
            i1.hypothesis = i1_hypothesis;
            i1.label = i1_label;
            if (!embedded.tense_shift_applied) i1.tense_shift_applied = false;

            InferencePair comp = base_member(DatasetKind::naturalistic, PairKind::COMP, verb,
                                             tmpl, tense, source);
            comp.id = ids.comp;
            comp.premise = embedded.text;
            comp.hypothesis = comp_hypothesis;
            comp.label = compose_label(i1_label, pair.label);
            comp.i1_label = i1_label;
            comp.i2_label = pair.label;
            if (!embedded.tense_shift_applied || !hypothesis_shifted) {
                comp.tense_shift_applied = false;
            }

            build.records.push_back(TransitivityRecord{ids.i1, pair.id, ids.comp});
            build.i1.push_back(std::move(i1));
            build.comp.push_back(std::move(comp));
        }
    }
    return build;
}

namespace {

// Largest-remainder allocation of the validation quota across strata, so the
// per-label balance stays within one example of exact.
std::vector<std::string> stratified_take(
    const std::vector<const InferencePair*>& members,
    const std::function<std::string(const InferencePair&)>& stratum_of, double fraction,
    Rng& rng) {
    std::map<std::string, std::vector<const InferencePair*>> strata;
    for (const auto* pair : members) strata[stratum_of(*pair)].push_back(pair);

    const auto total_quota = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(members.size())));

    std::vector<std::pair<std::string, double>> remainders;
    std::map<std::string, std::size_t> quotas;
    std::size_t assigned = 0;
    for (const auto& [key, list] : strata) {
        const double exact = fraction * static_cast<double>(list.size());
        const auto base = static_cast<std::size_t>(std::floor(exact));
        quotas[key] = base;
        assigned += base;
        remainders.emplace_back(key, exact - static_cast<double>(base));
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; assigned < total_quota && i < remainders.size(); ++i) {
        ++quotas[remainders[i].first];
        ++assigned;
    }

    std::vector<std::string> validation;
    for (auto& [key, list] : strata) {
        rng.shuffle(list);
        const std::size_t take = std::min(quotas[key], list.size());
        for (std::size_t i = 0; i < take; ++i) validation.push_back(list[i]->id);
    }
    std::sort(validation.begin(), validation.end());
    return validation;
}

std::vector<const InferencePair*> pointers(const std::vector<InferencePair>& pairs) {
    std::vector<const InferencePair*> out;
    out.reserve(pairs.size());
    for (const auto& pair : pairs) out.push_back(&pair);
    return out;
}

void append_ids(std::vector<std::string>& out, const std::vector<InferencePair>& pairs) {
    for (const auto& pair : pairs) out.push_back(pair.id);
}

}  // namespace

SplitManifest split_validation(const std::vector<InferencePair>& i1,
                               const std::vector<InferencePair>& i2,
                               const std::vector<InferencePair>& comp, double fraction,
                               Rng& rng) {
    if (fraction < 0.0 || fraction > 1.0) {
        throw DatasetError("validation fraction must lie in [0, 1]");
    }

    const auto i1_stratum = [](const InferencePair& pair) {
        std::string key = logic::to_string(pair.label);
        if (pair.verb_class) key += "/" + veridical::to_string(*pair.verb_class);
        return key;
    };
    const auto label_stratum = [](const InferencePair& pair) {
        return logic::to_string(pair.label);
    };

    Rng i1_rng = rng.derive("validation-i1");
    Rng i2_rng = rng.derive("validation-i2");
    auto val_i1 = stratified_take(pointers(i1), i1_stratum, fraction, i1_rng);
    auto val_i2 = stratified_take(pointers(i2), label_stratum, fraction, i2_rng);

    std::set<std::string> held_out(val_i1.begin(), val_i1.end());
    held_out.insert(val_i2.begin(), val_i2.end());

    SplitManifest manifest;
    manifest.name = "validation-split";
    manifest.seed = rng.seed();
    manifest.params["fraction"] = fraction;
    for (const auto& pair : i1) {
        if (!held_out.count(pair.id)) manifest.train.push_back(pair.id);
    }
    for (const auto& pair : i2) {
        if (!held_out.count(pair.id)) manifest.train.push_back(pair.id);
    }
    manifest.validation.insert(manifest.validation.end(), val_i1.begin(), val_i1.end());
    manifest.validation.insert(manifest.validation.end(), val_i2.begin(), val_i2.end());
    append_ids(manifest.test, comp);
    return manifest;
}

SplitManifest random_split(const std::vector<InferencePair>& i1,
                           const std::vector<InferencePair>& i2,
                           const std::vector<InferencePair>& comp, Rng& rng) {
    std::vector<std::string> comp_ids;
    append_ids(comp_ids, comp);
    rng.shuffle(comp_ids);
    const auto test_size = static_cast<std::size_t>(
        std::llround(static_cast<double>(comp_ids.size()) * 0.1));

    SplitManifest manifest;
    manifest.name = "random-9-1";
    manifest.seed = rng.seed();
    manifest.params["ratio"] = "9:1";
    manifest.test.assign(comp_ids.begin(), comp_ids.begin() + static_cast<long>(test_size));
    std::sort(manifest.test.begin(), manifest.test.end());
    append_ids(manifest.train, i1);
    append_ids(manifest.train, i2);
    std::vector<std::string> comp_train(comp_ids.begin() + static_cast<long>(test_size),
                                        comp_ids.end());
    std::sort(comp_train.begin(), comp_train.end());
    manifest.train.insert(manifest.train.end(), comp_train.begin(), comp_train.end());
    return manifest;
}

std::string to_string(AugmentCondition condition) {
    switch (condition) {
        case AugmentCondition::with_both_basics: return "with_both_basics";
        case AugmentCondition::with_i1_only: return "with_i1_only";
        case AugmentCondition::with_i2_only: return "with_i2_only";
        case AugmentCondition::comp_only: return "comp_only";
    }
    return {};
}

AugmentCondition parse_condition(const std::string& text) {
    if (text == "with_both_basics") return AugmentCondition::with_both_basics;
    if (text == "with_i1_only") return AugmentCondition::with_i1_only;
    if (text == "with_i2_only") return AugmentCondition::with_i2_only;
    if (text == "comp_only") return AugmentCondition::comp_only;
    throw DatasetError("unknown augmentation condition: " + text);
}

SplitManifest build_augmentation_manifest(AugmentCondition condition, int k, Rng& rng,
                                          const SplitManifest& validation_split,
                                          const std::vector<InferencePair>& i1,
                                          const std::vector<InferencePair>& i2,
                                          const std::vector<InferencePair>& comp,
                                          const veridical::VerbInventory& verbs) {
    const auto veridicals = verbs.of_class(VerbClass::veridical);
    if (k < 0 || k > static_cast<int>(veridicals.size())) {
        throw DatasetError("k must lie in [0, " + std::to_string(veridicals.size()) + "]");
    }

    std::vector<std::string> order;
    order.reserve(veridicals.size());
    for (const auto& verb : veridicals) order.push_back(verb.lemma);
    Rng order_rng = rng.derive("augment-verb-order");
    order_rng.shuffle(order);
    const std::set<std::string> included(order.begin(), order.begin() + k);

    const std::set<std::string> basic_train(validation_split.train.begin(),
                                            validation_split.train.end());
    const bool use_i1 = condition == AugmentCondition::with_both_basics ||
                        condition == AugmentCondition::with_i1_only;
    const bool use_i2 = condition == AugmentCondition::with_both_basics ||
                        condition == AugmentCondition::with_i2_only;

    SplitManifest manifest;
    manifest.name = "augment-" + to_string(condition) + "-k" + std::to_string(k);
    manifest.seed = rng.seed();
    manifest.params["condition"] = to_string(condition);
    manifest.params["k"] = k;
    manifest.params["veridical_verb_order"] = order;
    manifest.params["included_verbs"] =
        std::vector<std::string>(order.begin(), order.begin() + k);

    if (use_i1) {
        for (const auto& pair : i1) {
            if (basic_train.count(pair.id)) manifest.train.push_back(pair.id);
        }
    }
    if (use_i2) {
        for (const auto& pair : i2) {
            if (basic_train.count(pair.id)) manifest.train.push_back(pair.id);
        }
    }
    for (const auto& pair : comp) {
        if (pair.verb && included.count(*pair.verb)) manifest.train.push_back(pair.id);
    }
    manifest.validation = validation_split.validation;
    append_ids(manifest.test, comp);
    return manifest;
}

std::vector<OverlapEntry> check_no_overlap(const std::vector<InferencePair>& train,
                                           const std::vector<InferencePair>& test) {
    std::map<std::string, const InferencePair*> train_texts;
    for (const auto& pair : train) {
        train_texts.emplace(pair_key(pair.premise, pair.hypothesis), &pair);
    }
    std::vector<OverlapEntry> report;
    for (const auto& pair : test) {
        const auto it = train_texts.find(pair_key(pair.premise, pair.hypothesis));
        if (it != train_texts.end()) {
            report.push_back(
                OverlapEntry{it->second->id, pair.id, pair.premise, pair.hypothesis});
        }
    }
    return report;
}

}  // namespace transnli::dataset
