#include "transnli/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "transnli/dataset.hpp"
#include "transnli/eval.hpp"
#include "transnli/io.hpp"
#include "transnli/veridical.hpp"

namespace transnli::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kValidationFraction = 0.10;

struct RunConfig {
    std::uint64_t seed = 1;
    std::string out;
    std::string sick;
    int n_boolean = 3000;
    int n_sick = 1000;
    int max_connectives = 6;
    std::string templates = "default";
    double flip_fraction = 0.0;
    std::string mode;
    std::string condition = "with_both_basics";
    int k = 0;
    std::string gold;
    std::vector<std::string> preds;
    std::string baseline;
    std::string lexicon_file;
    std::string verbs_file;
    std::string template_file;
};

std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const char c : canonical) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_input(const std::string& path, const std::string& what) {
    if (path.empty() || !fs::exists(path)) {
        throw InputError(what + " not found: " + path);
    }
}

grammar::Lexicon load_lexicon(const RunConfig& cfg) {
    if (cfg.lexicon_file.empty()) return grammar::Lexicon::builtin();
    require_input(cfg.lexicon_file, "lexicon file");
    return grammar::Lexicon::load(cfg.lexicon_file);
}

veridical::VerbInventory load_verbs(const RunConfig& cfg) {
    if (cfg.verbs_file.empty()) return veridical::VerbInventory::builtin();
    require_input(cfg.verbs_file, "verb inventory file");
    return veridical::VerbInventory::load(cfg.verbs_file);
}

std::vector<veridical::Template> load_template_set(const RunConfig& cfg) {
    if (!cfg.template_file.empty()) {
        require_input(cfg.template_file, "template file");
        return veridical::load_templates(cfg.template_file);
    }
    return veridical::template_inventory(cfg.templates == "extended"
                                             ? veridical::TemplateSetting::extended
                                             : veridical::TemplateSetting::default_set);
}

io::Json base_run_record(const std::string& command, const RunConfig& cfg,
                         const std::string& hash) {
    io::Json record;
    record["command"] = command;
    record["seed"] = cfg.seed;
    record["config_hash"] = hash;
    return record;
}

void write_pair_files(const fs::path& dir, const std::string& stem,
                      const std::vector<dataset::InferencePair>& pairs) {
    io::write_pairs_jsonl(dir / (stem + ".jsonl"), pairs);
    io::write_pairs_tsv(dir / (stem + ".tsv"), pairs);
}

void write_overlap_report(const fs::path& path,
                          const std::vector<dataset::OverlapEntry>& entries) {
    io::Json report;
    report["overlapping"] = entries.size();
    io::Json list = io::Json::array();
    for (const auto& entry : entries) {
        io::Json item;
        item["train_id"] = entry.train_id;
        item["test_id"] = entry.test_id;
        item["premise"] = entry.premise;
        item["hypothesis"] = entry.hypothesis;
        list.push_back(item);
    }
    report["entries"] = list;
    io::write_json(path, report);
}

std::vector<dataset::InferencePair> select_by_ids(
    const std::vector<dataset::InferencePair>& pairs, const std::vector<std::string>& ids) {
    std::map<std::string, const dataset::InferencePair*> by_id;
    for (const auto& pair : pairs) by_id.emplace(pair.id, &pair);
    std::vector<dataset::InferencePair> out;
    for (const auto& id : ids) {
        const auto it = by_id.find(id);
        if (it != by_id.end()) out.push_back(*it->second);
    }
    return out;
}

int cmd_generate_synthetic(const RunConfig& cfg, const std::string& hash) {
    const auto lexicon = load_lexicon(cfg);
    const auto verbs = load_verbs(cfg);
    const auto templates = load_template_set(cfg);
    Rng root(cfg.seed);

    Rng boolean_rng = root.derive("boolean-premises");
    const auto items =
        dataset::build_boolean_pairs(cfg.n_boolean, boolean_rng, lexicon, cfg.max_connectives);
    const auto i2 = dataset::to_pairs(items);

    Rng cross_rng = root.derive("transitivity-crossing");
    const auto build = dataset::build_transitivity_set(items, verbs, templates, cross_rng, lexicon);

    Rng split_rng = root.derive("validation-split");
    auto manifest =
        dataset::split_validation(build.i1, i2, build.comp, kValidationFraction, split_rng);
    manifest.seed = cfg.seed;
    manifest.params["n_boolean"] = cfg.n_boolean;
    manifest.params["max_connectives"] = cfg.max_connectives;
    manifest.params["templates"] = cfg.templates;

    const fs::path dir = fs::path(cfg.out) / ("synthetic-" + std::to_string(cfg.seed));
    fs::create_directories(dir);

    io::Json run = base_run_record("generate-synthetic", cfg, hash);
    run["params"]["n_boolean"] = cfg.n_boolean;
    run["params"]["max_connectives"] = cfg.max_connectives;
    run["params"]["templates"] = cfg.templates;
    run["params"]["validation_fraction"] = kValidationFraction;
    io::write_json(dir / "run.json", run);

    write_pair_files(dir, "i2", i2);
    write_pair_files(dir, "i1", build.i1);
    write_pair_files(dir, "comp", build.comp);
    io::write_formulas_jsonl(dir / "formulas.jsonl", items);
    io::write_records_jsonl(dir / "records.jsonl", build.records);
    io::write_manifest(dir / "validation_manifest.json", manifest, hash);

    std::vector<dataset::InferencePair> train = select_by_ids(build.i1, manifest.train);
    {
        auto i2_train = select_by_ids(i2, manifest.train);
        train.insert(train.end(), i2_train.begin(), i2_train.end());
    }
    write_overlap_report(dir / "overlap_report.json",
                         dataset::check_no_overlap(train, build.comp));

    std::cout << "wrote " << i2.size() << " I2 / " << build.i1.size() << " I1 / "
              << build.comp.size() << " COMP examples to " << dir.string() << "\n";
    return 0;
}

int cmd_generate_naturalistic(const RunConfig& cfg, const std::string& hash) {
    require_input(cfg.sick, "SICK file");
    const auto verbs = load_verbs(cfg);
    const auto templates = load_template_set(cfg);
    Rng root(cfg.seed);

    const auto ingested = dataset::ingest_sick(cfg.sick);
    Rng sample_rng = root.derive("sick-sample");
    const auto i2 = dataset::sample_sick(ingested, cfg.n_sick, sample_rng);

    Rng cross_rng = root.derive("transitivity-crossing");
    auto build = dataset::build_transitivity_set(i2, verbs, templates, cross_rng);

    Rng split_rng = root.derive("validation-split");
    auto manifest =
        dataset::split_validation(build.i1, i2, build.comp, kValidationFraction, split_rng);
    manifest.seed = cfg.seed;
    manifest.params["n_sick"] = cfg.n_sick;
    manifest.params["templates"] = cfg.templates;
    manifest.params["flip_fraction"] = cfg.flip_fraction;

    // Setting II: labels are flipped on the I1 training portion only, so the
    // composite test labels stay derived from the unflipped verb classes.
    std::vector<veridical::FlipRecord> flips;
    if (cfg.flip_fraction > 0.0) {
        struct IdLabel {
            std::string id;
            logic::EntailmentLabel label;
        };
        std::set<std::string> train_ids(manifest.train.begin(), manifest.train.end());
        std::vector<IdLabel> view;
        for (const auto& pair : build.i1) {
            if (train_ids.count(pair.id)) view.push_back(IdLabel{pair.id, pair.label});
        }
        Rng flip_rng = root.derive("label-flips");
        flips = veridical::flip_labels(view, cfg.flip_fraction, flip_rng);
        std::map<std::string, logic::EntailmentLabel> flipped;
        for (const auto& record : flips) flipped.emplace(record.example_id, record.flipped_label);
        for (auto& pair : build.i1) {
            const auto it = flipped.find(pair.id);
            if (it != flipped.end()) pair.label = it->second;
        }
    }

    const fs::path dir = fs::path(cfg.out) / ("naturalistic-" + std::to_string(cfg.seed));
    fs::create_directories(dir);

    io::Json run = base_run_record("generate-naturalistic", cfg, hash);
    run["params"]["n_sick"] = cfg.n_sick;
    run["params"]["templates"] = cfg.templates;
    run["params"]["flip_fraction"] = cfg.flip_fraction;
    run["params"]["validation_fraction"] = kValidationFraction;
    io::write_json(dir / "run.json", run);

    write_pair_files(dir, "i2", i2);
    write_pair_files(dir, "i1", build.i1);
    write_pair_files(dir, "comp", build.comp);
    io::write_records_jsonl(dir / "records.jsonl", build.records);
    io::write_manifest(dir / "validation_manifest.json", manifest, hash);
    if (cfg.flip_fraction > 0.0) io::write_flip_audit(dir / "flip_audit.jsonl", flips);

    std::cout << "wrote " << i2.size() << " I2 / " << build.i1.size() << " I1 / "
              << build.comp.size() << " COMP examples to " << dir.string() << "\n";
    return 0;
}

int cmd_split(const RunConfig& cfg, const std::string& hash) {
    const fs::path dir(cfg.out);
    for (const char* stem : {"i1.jsonl", "i2.jsonl", "comp.jsonl"}) {
        require_input((dir / stem).string(), stem);
    }
    const auto i1 = io::read_pairs_jsonl(dir / "i1.jsonl");
    const auto i2 = io::read_pairs_jsonl(dir / "i2.jsonl");
    const auto comp = io::read_pairs_jsonl(dir / "comp.jsonl");
    Rng root(cfg.seed);

    dataset::SplitManifest manifest;
    fs::path target;
    if (cfg.mode == "random") {
        Rng split_rng = root.derive("random-split");
        manifest = dataset::random_split(i1, i2, comp, split_rng);
        target = dir / ("manifest-random-" + std::to_string(cfg.seed) + ".json");
    } else {
        require_input((dir / "validation_manifest.json").string(), "validation manifest");
        const auto validation = io::read_manifest(dir / "validation_manifest.json");
        const auto verbs = load_verbs(cfg);
        Rng augment_rng = root.derive("augment");
        manifest = dataset::build_augmentation_manifest(
            dataset::parse_condition(cfg.condition), cfg.k, augment_rng, validation, i1, i2,
            comp, verbs);
        target = dir / ("manifest-augment-" + cfg.condition + "-k" + std::to_string(cfg.k) +
                        "-" + std::to_string(cfg.seed) + ".json");
    }
    manifest.seed = cfg.seed;
    io::write_manifest(target, manifest, hash);
    std::cout << "wrote " << target.string() << " (" << manifest.train.size() << " train / "
              << manifest.validation.size() << " validation / " << manifest.test.size()
              << " test ids)\n";
    return 0;
}

int cmd_evaluate(const RunConfig& cfg, const std::string& hash) {
    require_input(cfg.gold, "gold file");
    const auto gold = io::read_pairs_jsonl(cfg.gold);
    const fs::path dir(cfg.out);
    fs::create_directories(dir);

    std::vector<eval::BreakdownReport> reports;
    if (!cfg.baseline.empty()) {
        std::vector<io::Prediction> predictions;
        predictions.reserve(gold.size());
        for (const auto& pair : gold) {
            const auto label = cfg.baseline == "subsequence" ? eval::subsequence_baseline(pair)
                                                             : eval::negation_baseline(pair);
            predictions.push_back(io::Prediction{pair.id, label});
        }
        io::write_predictions_tsv(dir / ("predictions-" + cfg.baseline + ".tsv"), predictions);
        reports.push_back(eval::score(predictions, gold));
    } else {
        for (const auto& pred_path : cfg.preds) {
            require_input(pred_path, "prediction file");
            reports.push_back(eval::score(io::read_predictions_tsv(pred_path), gold));
        }
    }

    io::Json run = base_run_record("evaluate", cfg, hash);
    run["params"]["gold"] = cfg.gold;
    run["params"]["runs"] = reports.size();
    if (!cfg.baseline.empty()) run["params"]["baseline"] = cfg.baseline;
    io::write_json(dir / "evaluate_run.json", run);

    std::ostringstream text;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (reports.size() > 1) text << "run " << (i + 1) << "\n";
        text << eval::render_table(reports[i]) << "\n";
        const auto name = reports.size() > 1 ? "report-" + std::to_string(i + 1) + ".json"
                                             : std::string("report.json");
        io::write_json(dir / name, eval::to_json(reports[i]));
    }
    if (reports.size() > 1) {
        const auto aggregate = eval::aggregate_runs(reports);
        text << "aggregate (mean±std over " << reports.size() << " runs)\n"
             << eval::render_table(aggregate);
        io::write_json(dir / "aggregate.json", eval::to_json(aggregate));
    }
    io::write_text(dir / "report.txt", text.str());
    std::cout << text.str();
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& arg : args) argv.push_back(arg.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Generator and evaluation harness for transitivity NLI datasets"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto add_seed = [&cfg](CLI::App* cmd) {
        cmd->add_option("--seed", cfg.seed, "root random seed")->required();
    };
    const auto add_overrides = [&cfg](CLI::App* cmd, bool with_lexicon) {
        if (with_lexicon) {
            cmd->add_option("--lexicon", cfg.lexicon_file, "lexicon TSV override");
        }
        cmd->add_option("--verbs", cfg.verbs_file, "clause-embedding verb TSV override");
        cmd->add_option("--template-file", cfg.template_file, "template TSV override");
        cmd->add_option("--templates", cfg.templates, "template setting")
            ->check(CLI::IsMember({"default", "extended"}));
    };

    auto* synth = app.add_subcommand("generate-synthetic",
                                     "generate the Boolean transitivity dataset");
    add_seed(synth);
    synth->add_option("--out", cfg.out, "output directory")->required();
    synth->add_option("--n-boolean", cfg.n_boolean, "number of Boolean inference pairs");
    synth->add_option("--max-connectives", cfg.max_connectives,
                      "premise formula connective cap");
    add_overrides(synth, true);

    auto* natural = app.add_subcommand("generate-naturalistic",
                                       "generate the SICK-based transitivity dataset");
    add_seed(natural);
    natural->add_option("--out", cfg.out, "output directory")->required();
    natural->add_option("--sick", cfg.sick, "path to the SICK tab-separated file")->required();
    natural->add_option("--n-sick", cfg.n_sick, "number of sampled SICK pairs");
    natural->add_option("--flip-labels", cfg.flip_fraction,
                        "fraction of I1 training labels to flip");
    add_overrides(natural, false);

    auto* split = app.add_subcommand("split", "emit split or augmentation manifests");
    add_seed(split);
    split->add_option("--out", cfg.out, "generated run directory")->required();
    split->add_option("--mode", cfg.mode, "split mode")
        ->required()
        ->check(CLI::IsMember({"random", "augment"}));
    split->add_option("--condition", cfg.condition, "augmentation condition")
        ->check(CLI::IsMember(
            {"with_both_basics", "with_i1_only", "with_i2_only", "comp_only"}));
    split->add_option("--k", cfg.k, "number of veridical verbs to include");
    split->add_option("--verbs", cfg.verbs_file, "clause-embedding verb TSV override");

    auto* evaluate = app.add_subcommand("evaluate", "score predictions into breakdown reports");
    add_seed(evaluate);
    evaluate->add_option("--out", cfg.out, "report output directory")->required();
    evaluate->add_option("--gold", cfg.gold, "gold JSONL file")->required();
    evaluate->add_option("--pred", cfg.preds, "prediction TSV file (repeatable)");
    evaluate->add_option("--baseline", cfg.baseline, "built-in heuristic baseline")
        ->check(CLI::IsMember({"subsequence", "negation"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    // The output directory stays out of the hash: where a run is written must
    // not change the bytes it contains.
    std::ostringstream canonical;
    canonical << app.get_subcommands().front()->get_name() << '|' << cfg.seed << '|'
              << cfg.sick << '|' << cfg.n_boolean << '|' << cfg.n_sick << '|'
              << cfg.max_connectives << '|' << cfg.templates << '|' << cfg.flip_fraction << '|'
              << cfg.mode << '|' << cfg.condition << '|' << cfg.k << '|' << cfg.gold << '|'
              << cfg.baseline << '|' << cfg.lexicon_file << '|' << cfg.verbs_file << '|'
              << cfg.template_file;
    for (const auto& pred : cfg.preds) canonical << '|' << pred;
    const std::string hash = config_hash(canonical.str());

    try {
        if (evaluate->parsed()) {
            if (cfg.baseline.empty() == cfg.preds.empty()) {
                std::cerr << "evaluate needs either --pred files or a --baseline\n";
                return 1;
            }
            return cmd_evaluate(cfg, hash);
        }
        if (synth->parsed()) return cmd_generate_synthetic(cfg, hash);
        if (natural->parsed()) return cmd_generate_naturalistic(cfg, hash);
        if (split->parsed()) {
            if (cfg.mode == "augment" && cfg.condition.empty()) {
                std::cerr << "augment mode needs --condition\n";
                return 1;
            }
            return cmd_split(cfg, hash);
        }
        return 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const io::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace transnli::cli
