#include "transnli/io.hpp"

#include <fstream>
#include <sstream>

namespace transnli::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path.string());
    return in;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> cols;
    std::istringstream fields(line);
    std::string col;
    while (std::getline(fields, col, '\t')) cols.push_back(col);
    return cols;
}

}  // namespace

Json to_json(const dataset::InferencePair& pair) {
    Json object;
    object["id"] = pair.id;
    object["premise"] = pair.premise;
    object["hypothesis"] = pair.hypothesis;
    object["label"] = logic::to_string(pair.label);
    object["kind"] = dataset::to_string(pair.kind);
    if (pair.verb) object["verb"] = *pair.verb;
    if (pair.verb_class) object["verb_class"] = veridical::to_string(*pair.verb_class);
    if (pair.template_id) object["template_id"] = *pair.template_id;
    if (pair.tense) object["tense"] = grammar::to_string(*pair.tense);
    if (pair.i1_label) object["i1_label"] = logic::to_string(*pair.i1_label);
    if (pair.i2_label) object["i2_label"] = logic::to_string(*pair.i2_label);
    if (pair.source_id) object["source_id"] = *pair.source_id;
    if (pair.split) object["split"] = *pair.split;
    if (pair.tense_shift_applied) object["tense_shift_applied"] = *pair.tense_shift_applied;
    object["dataset"] = dataset::to_string(pair.dataset);
    return object;
}

dataset::InferencePair pair_from_json(const Json& object) {
    dataset::InferencePair pair;
    pair.id = object.at("id").get<std::string>();
    pair.premise = object.at("premise").get<std::string>();
    pair.hypothesis = object.at("hypothesis").get<std::string>();
    pair.label = logic::parse_label(object.at("label").get<std::string>());
    pair.kind = dataset::parse_kind(object.at("kind").get<std::string>());
    pair.dataset = dataset::parse_dataset_kind(object.at("dataset").get<std::string>());
    if (object.contains("verb")) pair.verb = object["verb"].get<std::string>();
    if (object.contains("verb_class")) {
        pair.verb_class = veridical::parse_verb_class(object["verb_class"].get<std::string>());
    }
    if (object.contains("template_id")) pair.template_id = object["template_id"].get<std::string>();
    if (object.contains("tense")) {
        pair.tense = grammar::parse_tense(object["tense"].get<std::string>());
    }
    if (object.contains("i1_label")) {
        pair.i1_label = logic::parse_label(object["i1_label"].get<std::string>());
    }
    if (object.contains("i2_label")) {
        pair.i2_label = logic::parse_label(object["i2_label"].get<std::string>());
    }
    if (object.contains("source_id")) pair.source_id = object["source_id"].get<std::string>();
    if (object.contains("split")) pair.split = object["split"].get<std::string>();
    if (object.contains("tense_shift_applied")) {
        pair.tense_shift_applied = object["tense_shift_applied"].get<bool>();
    }
    return pair;
}

void write_pairs_jsonl(const std::filesystem::path& path,
                       const std::vector<dataset::InferencePair>& pairs) {
    auto out = open_out(path);
    for (const auto& pair : pairs) out << to_json(pair).dump() << '\n';
}

std::vector<dataset::InferencePair> read_pairs_jsonl(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<dataset::InferencePair> pairs;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        try {
            pairs.push_back(pair_from_json(Json::parse(line)));
        } catch (const Json::exception& e) {
            throw IoError("bad JSON at " + path.string() + ":" + std::to_string(row) + ": " +
                          e.what());
        }
    }
    return pairs;
}

void write_pairs_tsv(const std::filesystem::path& path,
                     const std::vector<dataset::InferencePair>& pairs) {
    auto out = open_out(path);
    out << "id\tpremise\thypothesis\tlabel\tkind\tverb\tverb_class\ti1_label\ti2_label\t"
           "source_id\tdataset\n";
    for (const auto& pair : pairs) {
        out << pair.id << '\t' << pair.premise << '\t' << pair.hypothesis << '\t'
            << logic::to_string(pair.label) << '\t' << dataset::to_string(pair.kind) << '\t'
            << pair.verb.value_or("") << '\t'
            << (pair.verb_class ? veridical::to_string(*pair.verb_class) : "") << '\t'
            << (pair.i1_label ? logic::to_string(*pair.i1_label) : "") << '\t'
            << (pair.i2_label ? logic::to_string(*pair.i2_label) : "") << '\t'
            << pair.source_id.value_or("") << '\t' << dataset::to_string(pair.dataset) << '\n';
    }
}

void write_manifest(const std::filesystem::path& path, const dataset::SplitManifest& manifest,
                    const std::string& config_hash) {
    Json object;
    object["name"] = manifest.name;
    object["seed"] = manifest.seed;
    Json params = manifest.params;
    params["config_hash"] = config_hash;
    object["params"] = params;
    object["train"] = manifest.train;
    object["validation"] = manifest.validation;
    object["test"] = manifest.test;
    write_json(path, object);
}

dataset::SplitManifest read_manifest(const std::filesystem::path& path) {
    auto in = open_in(path);
    Json object;
    try {
        in >> object;
    } catch (const Json::exception& e) {
        throw IoError("bad manifest " + path.string() + ": " + e.what());
    }
    dataset::SplitManifest manifest;
    manifest.name = object.at("name").get<std::string>();
    manifest.seed = object.at("seed").get<std::uint64_t>();
    manifest.params = object.value("params", Json::object());
    manifest.train = object.at("train").get<std::vector<std::string>>();
    manifest.validation = object.at("validation").get<std::vector<std::string>>();
    manifest.test = object.at("test").get<std::vector<std::string>>();
    return manifest;
}

void write_formulas_jsonl(const std::filesystem::path& path,
                          const std::vector<dataset::SyntheticI2>& items) {
    auto out = open_out(path);
    for (const auto& item : items) {
        Json object;
        object["id"] = item.pair.id;
        object["f1"] = logic::to_string(*item.premise_formula);
        object["f2"] = logic::to_string(*item.hypothesis_formula);
        out << object.dump() << '\n';
    }
}

void write_records_jsonl(const std::filesystem::path& path,
                         const std::vector<dataset::TransitivityRecord>& records) {
    auto out = open_out(path);
    for (const auto& record : records) {
        Json object;
        object["i1_id"] = record.i1_id;
        object["i2_id"] = record.i2_id;
        object["comp_id"] = record.comp_id;
        out << object.dump() << '\n';
    }
}

void write_flip_audit(const std::filesystem::path& path,
                      const std::vector<veridical::FlipRecord>& records) {
    auto out = open_out(path);
    for (const auto& record : records) {
        Json object;
        object["example_id"] = record.example_id;
        object["original_label"] = logic::to_string(record.original_label);
        object["flipped_label"] = logic::to_string(record.flipped_label);
        out << object.dump() << '\n';
    }
}

std::vector<veridical::FlipRecord> read_flip_audit(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<veridical::FlipRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const Json object = Json::parse(line);
        records.push_back(veridical::FlipRecord{
            object.at("example_id").get<std::string>(),
            logic::parse_label(object.at("original_label").get<std::string>()),
            logic::parse_label(object.at("flipped_label").get<std::string>())});
    }
    return records;
}

std::vector<Prediction> read_predictions_tsv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<Prediction> predictions;
    std::string line;
    int row = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto cols = split_tabs(line);
        if (first) {
            first = false;
            if (cols.size() >= 2 && cols[0] == "id" && cols[1] == "predicted") continue;
        }
        if (cols.size() < 2) {
            throw IoError("malformed prediction row " + std::to_string(row) + " in " +
                          path.string());
        }
        predictions.push_back(Prediction{cols[0], logic::parse_label(cols[1])});
    }
    return predictions;
}

void write_predictions_tsv(const std::filesystem::path& path,
                           const std::vector<Prediction>& predictions) {
    auto out = open_out(path);
    out << "id\tpredicted\n";
    for (const auto& p : predictions) {
        out << p.id << '\t' << logic::to_string(p.predicted) << '\n';
    }
}

std::vector<LikertRow> read_likert_tsv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<LikertRow> rows;
    std::string line;
    int row = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto cols = split_tabs(line);
        if (first) {
            first = false;
            if (!cols.empty() && cols[0] == "id") continue;
        }
        if (cols.size() < 4) {
            throw IoError("malformed likert row " + std::to_string(row) + " in " + path.string());
        }
        LikertRow entry;
        entry.id = cols[0];
        for (int i = 0; i < 3; ++i) {
            try {
                entry.scores[static_cast<std::size_t>(i)] = std::stoi(cols[static_cast<std::size_t>(i) + 1]);
            } catch (const std::exception&) {
                throw IoError("non-numeric likert score in row " + std::to_string(row) + " of " +
                              path.string());
            }
        }
        rows.push_back(std::move(entry));
    }
    return rows;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
}

void write_json(const std::filesystem::path& path, const Json& object) {
    auto out = open_out(path);
    out << object.dump(2) << '\n';
}

}  // namespace transnli::io
