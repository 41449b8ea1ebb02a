#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "transnli/dataset.hpp"
#include "transnli/io.hpp"
#include "transnli/logic.hpp"

namespace transnli::eval {

using io::Prediction;

struct ScoringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CellStats {
    int total = 0;
    int correct = 0;

    double accuracy() const { return total == 0 ? 0.0 : 100.0 * correct / total; }
};

// Per-(i1_label, i2_label) accuracies over the composite test set, plus the
// overall test accuracy and optional basic-set validation accuracies. Cells
// with no examples stay absent.
struct BreakdownReport {
    std::optional<CellStats> cell_yy;
    std::optional<CellStats> cell_yu;
    std::optional<CellStats> cell_uy;
    std::optional<CellStats> cell_uu;
    CellStats overall;
    std::optional<CellStats> val_i1;
    std::optional<CellStats> val_i2;
};

// Joins predictions against gold examples by id. Every COMP gold id needs
// exactly one prediction; unknown ids are an error. I1/I2 predictions, when
// present, feed the validation accuracies.
BreakdownReport score(const std::vector<Prediction>& predictions,
                      const std::vector<dataset::InferencePair>& gold);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
    int runs = 0;
};

struct AggregateReport {
    std::optional<MeanStd> cell_yy;
    std::optional<MeanStd> cell_yu;
    std::optional<MeanStd> cell_uy;
    std::optional<MeanStd> cell_uu;
    MeanStd overall;
    std::optional<MeanStd> val_i1;
    std::optional<MeanStd> val_i2;
};

// Per-cell mean and sample standard deviation over at least two runs with
// identical cell structure.
AggregateReport aggregate_runs(const std::vector<BreakdownReport>& reports);

// "65.0±7.1" style rendering with one decimal place.
std::string format_mean_std(const MeanStd& value);

// Predicts yes iff the hypothesis tokens (lowercased, punctuation stripped)
// form a subsequence of the premise tokens.
logic::EntailmentLabel subsequence_baseline(const std::string& premise,
                                            const std::string& hypothesis);
inline logic::EntailmentLabel subsequence_baseline(const dataset::InferencePair& pair) {
    return subsequence_baseline(pair.premise, pair.hypothesis);
}

// Predicts unk as soon as either side contains a negation token.
logic::EntailmentLabel negation_baseline(const std::string& premise,
                                         const std::string& hypothesis);
inline logic::EntailmentLabel negation_baseline(const dataset::InferencePair& pair) {
    return negation_baseline(pair.premise, pair.hypothesis);
}

struct LikertTriple {
    std::array<int, 3> scores{};
};

// Each 5-point score maps to yes at 4 or higher; the output is the majority
// of the three discretized labels.
logic::EntailmentLabel discretize_likert(const LikertTriple& triple);

// Tables 4-8 shaped text rendering.
std::string render_table(const BreakdownReport& report);
std::string render_table(const AggregateReport& report);

// Machine-readable object with fields cell_yy, cell_yu, cell_uy, cell_uu,
// overall, val_i1, val_i2, counts; absent cells omitted.
io::Json to_json(const BreakdownReport& report);
io::Json to_json(const AggregateReport& report);

}  // namespace transnli::eval
