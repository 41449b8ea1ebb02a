#pragma once

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "transnli/dataset.hpp"
#include "transnli/veridical.hpp"

namespace transnli::io {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

Json to_json(const dataset::InferencePair& pair);
dataset::InferencePair pair_from_json(const Json& object);

// One object per line, fields in declaration order, absent optionals omitted.
void write_pairs_jsonl(const std::filesystem::path& path,
                       const std::vector<dataset::InferencePair>& pairs);
std::vector<dataset::InferencePair> read_pairs_jsonl(const std::filesystem::path& path);

// Companion export with the fixed header
// id premise hypothesis label kind verb verb_class i1_label i2_label source_id dataset.
void write_pairs_tsv(const std::filesystem::path& path,
                     const std::vector<dataset::InferencePair>& pairs);

void write_manifest(const std::filesystem::path& path, const dataset::SplitManifest& manifest,
                    const std::string& config_hash);
dataset::SplitManifest read_manifest(const std::filesystem::path& path);

// Audit file for the Boolean set: id, premise formula, hypothesis formula.
void write_formulas_jsonl(const std::filesystem::path& path,
                          const std::vector<dataset::SyntheticI2>& items);

void write_records_jsonl(const std::filesystem::path& path,
                         const std::vector<dataset::TransitivityRecord>& records);

void write_flip_audit(const std::filesystem::path& path,
                      const std::vector<veridical::FlipRecord>& records);
std::vector<veridical::FlipRecord> read_flip_audit(const std::filesystem::path& path);

struct Prediction {
    std::string id;
    logic::EntailmentLabel predicted = logic::EntailmentLabel::unk;
};

// Tab-separated `id  predicted` with a header row.
std::vector<Prediction> read_predictions_tsv(const std::filesystem::path& path);
void write_predictions_tsv(const std::filesystem::path& path,
                           const std::vector<Prediction>& predictions);

struct LikertRow {
    std::string id;
    std::array<int, 3> scores{};
};

// Tab-separated `id  score1  score2  score3`; a leading header row is allowed.
std::vector<LikertRow> read_likert_tsv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const Json& object);

}  // namespace transnli::io
