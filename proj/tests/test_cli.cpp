#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "transnli/cli.hpp"
#include "transnli/dataset.hpp"
#include "transnli/eval.hpp"
#include "transnli/io.hpp"

using namespace transnli;
namespace fs = std::filesystem;

namespace {

const fs::path& root() {
    static const fs::path dir = [] {
        const auto path = fs::temp_directory_path() / "transnli-cli-tests";
        fs::remove_all(path);
        fs::create_directories(path);
        return path;
    }();
    return dir;
}

// Small synthetic run shared by the test cases.
const fs::path& small_run() {
    static const fs::path dir = [] {
        const auto out = root() / "gen";
        const int rc = cli::run({"transnli", "generate-synthetic", "--seed", "11", "--out",
                                 out.string(), "--n-boolean", "100"});
        REQUIRE(rc == 0);
        return out / "synthetic-11";
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

}  // namespace

TEST_CASE("generated run directory carries its full provenance") {
    const auto& dir = small_run();
    for (const char* file :
         {"run.json", "i1.jsonl", "i1.tsv", "i2.jsonl", "i2.tsv", "comp.jsonl", "comp.tsv",
          "formulas.jsonl", "records.jsonl", "validation_manifest.json",
          "overlap_report.json"}) {
        CHECK(fs::exists(dir / file));
    }
    io::Json run;
    std::ifstream in(dir / "run.json");
    in >> run;
    CHECK(run.at("seed") == 11);
    CHECK(run.at("command") == "generate-synthetic");
    CHECK_FALSE(run.at("config_hash").get<std::string>().empty());

    const auto manifest = io::read_manifest(dir / "validation_manifest.json");
    CHECK(manifest.seed == 11);
    CHECK(manifest.params.at("config_hash") == run.at("config_hash"));
}

TEST_CASE("every manifest id resolves to exactly one emitted example") {
    const auto& dir = small_run();
    std::map<std::string, int> owners;
    for (const char* file : {"i1.jsonl", "i2.jsonl", "comp.jsonl"}) {
        for (const auto& pair : io::read_pairs_jsonl(dir / file)) ++owners[pair.id];
    }
    for (const auto& [id, count] : owners) {
        INFO(id);
        CHECK(count == 1);
    }
    const auto manifest = io::read_manifest(dir / "validation_manifest.json");
    for (const auto* section : {&manifest.train, &manifest.validation, &manifest.test}) {
        for (const auto& id : *section) {
            INFO(id);
            CHECK(owners.count(id) == 1);
        }
    }
}

TEST_CASE("TSV companion export has the fixed header") {
    const auto& dir = small_run();
    std::ifstream in(dir / "comp.tsv");
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "id\tpremise\thypothesis\tlabel\tkind\tverb\tverb_class\ti1_label\ti2_label\t"
          "source_id\tdataset");
    std::string row;
    std::getline(in, row);
    CHECK(row.find("\tCOMP\t") != std::string::npos);
    int rows = 1;
    while (std::getline(in, row)) ++rows;
    CHECK(rows == 200);
}

TEST_CASE("evaluate aggregates multiple prediction files") {
    const auto& dir = small_run();
    const auto gold = io::read_pairs_jsonl(dir / "comp.jsonl");

    // Two prediction files with different error patterns.
    const auto preds_a = root() / "preds-a.tsv";
    const auto preds_b = root() / "preds-b.tsv";
    {
        std::vector<io::Prediction> a;
        std::vector<io::Prediction> b;
        int i = 0;
        for (const auto& pair : gold) {
            a.push_back(io::Prediction{pair.id, pair.label});
            b.push_back(io::Prediction{
                pair.id, ++i % 10 == 0 ? logic::flip(pair.label) : pair.label});
        }
        io::write_predictions_tsv(preds_a, a);
        io::write_predictions_tsv(preds_b, b);
    }

    const auto out = root() / "eval-multi";
    const int rc = cli::run({"transnli", "evaluate", "--seed", "1", "--out", out.string(),
                             "--gold", (dir / "comp.jsonl").string(), "--pred", preds_a.string(),
                             "--pred", preds_b.string()});
    REQUIRE(rc == 0);
    CHECK(fs::exists(out / "report-1.json"));
    CHECK(fs::exists(out / "report-2.json"));
    CHECK(fs::exists(out / "aggregate.json"));

    io::Json aggregate;
    std::ifstream in(out / "aggregate.json");
    in >> aggregate;
    CHECK(aggregate.at("overall").at("runs") == 2);
    const auto formatted = aggregate.at("overall").at("formatted").get<std::string>();
    CHECK(formatted.find("±") != std::string::npos);
    const auto text = slurp(out / "report.txt");
    CHECK(text.find("aggregate") != std::string::npos);
}

TEST_CASE("exit codes distinguish validation from I/O failures") {
    // Unknown flag value: validation error.
    CHECK(cli::run({"transnli", "split", "--seed", "1", "--out", small_run().string(), "--mode",
                    "bogus"}) == 1);
    // Missing required option.
    CHECK(cli::run({"transnli", "generate-synthetic", "--out", "/tmp/x"}) == 1);
    // Missing input file: I/O error.
    CHECK(cli::run({"transnli", "generate-naturalistic", "--seed", "1", "--out",
                    (root() / "nat").string(), "--sick", (root() / "missing.txt").string()}) ==
          2);
    CHECK(cli::run({"transnli", "evaluate", "--seed", "1", "--out", (root() / "e").string(),
                    "--gold", (root() / "missing.jsonl").string(), "--baseline",
                    "subsequence"}) == 2);
    // --pred and --baseline are mutually exclusive, and one is required.
    const auto gold = small_run() / "comp.jsonl";
    CHECK(cli::run({"transnli", "evaluate", "--seed", "1", "--out", (root() / "e2").string(),
                    "--gold", gold.string()}) == 1);
    // Odd pair count is a validation error.
    CHECK(cli::run({"transnli", "generate-synthetic", "--seed", "1", "--out",
                    (root() / "odd").string(), "--n-boolean", "7"}) == 1);
}

TEST_CASE("split mode random emits a 9:1 composite manifest") {
    const auto& dir = small_run();
    const int rc = cli::run(
        {"transnli", "split", "--seed", "4", "--out", dir.string(), "--mode", "random"});
    REQUIRE(rc == 0);
    const auto manifest = io::read_manifest(dir / "manifest-random-4.json");
    CHECK(manifest.test.size() == 20);  // 10% of 200 composite examples
    const std::set<std::string> test_ids(manifest.test.begin(), manifest.test.end());
    for (const auto& id : manifest.train) CHECK_FALSE(test_ids.count(id));
}

TEST_CASE("extended templates span forty ids in the emitted data") {
    const auto out = root() / "ext";
    // A tiny SICK pool is enough to touch many templates.
    const auto sick = root() / "sick-ext.txt";
    {
        std::ofstream file(sick);
        file << "pair_ID\tsentence_A\tsentence_B\tentailment_label\tSemEval_set\n";
        for (int i = 0; i < 40; ++i) {
            file << 100 + i << "\tA man is holding object " << i
                 << ".\tA person is holding object " << i << ".\tENTAILMENT\tTRAIN\n";
            file << 200 + i << "\tA woman is reading book " << i << ".\tA man is driving car "
                 << i << ".\tNEUTRAL\tTRAIN\n";
        }
    }
    const int rc = cli::run({"transnli", "generate-naturalistic", "--seed", "2", "--out",
                             out.string(), "--sick", sick.string(), "--n-sick", "80",
                             "--templates", "extended"});
    REQUIRE(rc == 0);
    const auto i1 = io::read_pairs_jsonl(out / "naturalistic-2" / "i1.jsonl");
    REQUIRE(i1.size() == 80 * 30);
    std::set<std::string> template_ids;
    for (const auto& pair : i1) {
        template_ids.insert(*pair.template_id);
        // Past-only templates never carry present tense.
        if (*pair.template_id == "at-that-moment-we" || *pair.template_id == "yesterday-i" ||
            *pair.template_id == "by-then-everyone") {
            CHECK(*pair.tense == grammar::Tense::past);
        }
    }
    CHECK(template_ids.size() == 40);
}
