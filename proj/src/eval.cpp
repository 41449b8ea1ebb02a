#include "transnli/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace transnli::eval {

using dataset::InferencePair;
using dataset::PairKind;
using logic::EntailmentLabel;

BreakdownReport score(const std::vector<Prediction>& predictions,
                      const std::vector<InferencePair>& gold) {
    std::map<std::string, const InferencePair*> by_id;
    for (const auto& pair : gold) {
        if (!by_id.emplace(pair.id, &pair).second) {
            throw ScoringError("duplicate gold id: " + pair.id);
        }
    }

    std::map<std::string, EntailmentLabel> predicted;
    std::vector<std::string> unknown;
    for (const auto& p : predictions) {
        if (!by_id.count(p.id)) {
            unknown.push_back(p.id);
            continue;
        }
        if (!predicted.emplace(p.id, p.predicted).second) {
            throw ScoringError("duplicate prediction for id: " + p.id);
        }
    }
    if (!unknown.empty()) {
        std::string joined;
        for (const auto& id : unknown) joined += (joined.empty() ? "" : ", ") + id;
        throw ScoringError("predictions reference unknown ids: " + joined);
    }

    std::vector<std::string> missing;
    for (const auto& pair : gold) {
        if (pair.kind == PairKind::COMP && !predicted.count(pair.id)) missing.push_back(pair.id);
    }
    if (!missing.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < missing.size() && i < 10; ++i) {
            joined += (joined.empty() ? "" : ", ") + missing[i];
        }
        throw ScoringError("missing predictions for " + std::to_string(missing.size()) +
                           " composite ids: " + joined);
    }

    BreakdownReport report;
    const auto tally = [](std::optional<CellStats>& cell, bool correct) {
        if (!cell) cell = CellStats{};
        ++cell->total;
        if (correct) ++cell->correct;
    };

    for (const auto& pair : gold) {
        const auto it = predicted.find(pair.id);
        if (it == predicted.end()) continue;
        const bool correct = it->second == pair.label;
        switch (pair.kind) {
            case PairKind::COMP: {
                if (!pair.i1_label || !pair.i2_label) {
                    throw ScoringError("composite gold lacks basic labels: " + pair.id);
                }
                ++report.overall.total;
                if (correct) ++report.overall.correct;
                const bool i1_yes = *pair.i1_label == EntailmentLabel::yes;
                const bool i2_yes = *pair.i2_label == EntailmentLabel::yes;
                if (i1_yes && i2_yes) {
                    tally(report.cell_yy, correct);
                } else if (i1_yes) {
                    tally(report.cell_yu, correct);
                } else if (i2_yes) {
                    tally(report.cell_uy, correct);
                } else {
                    tally(report.cell_uu, correct);
                }
                break;
            }
            case PairKind::I1:
                tally(report.val_i1, correct);
                break;
            case PairKind::I2:
                tally(report.val_i2, correct);
                break;
        }
    }
    return report;
}

namespace {

MeanStd summarize(const std::vector<double>& values) {
    MeanStd out;
    out.runs = static_cast<int>(values.size());
    double sum = 0.0;
    for (const double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (const double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    return out;
}

}  // namespace

AggregateReport aggregate_runs(const std::vector<BreakdownReport>& reports) {
    if (reports.size() < 2) {
        throw ScoringError("aggregation needs at least two reports");
    }

    const auto& first = reports.front();
    const auto collect = [&reports, &first](auto member) -> std::optional<MeanStd> {
        const bool present = (first.*member).has_value();
        std::vector<double> values;
        for (const auto& report : reports) {
            if ((report.*member).has_value() != present) {
                throw ScoringError("reports disagree on cell structure");
            }
            if (present) values.push_back((report.*member)->accuracy());
        }
        if (!present) return std::nullopt;
        return summarize(values);
    };

    AggregateReport out;
    out.cell_yy = collect(&BreakdownReport::cell_yy);
    out.cell_yu = collect(&BreakdownReport::cell_yu);
    out.cell_uy = collect(&BreakdownReport::cell_uy);
    out.cell_uu = collect(&BreakdownReport::cell_uu);
    std::vector<double> overall;
    for (const auto& report : reports) overall.push_back(report.overall.accuracy());
    out.overall = summarize(overall);
    out.val_i1 = collect(&BreakdownReport::val_i1);
    out.val_i2 = collect(&BreakdownReport::val_i2);
    return out;
}

std::string format_mean_std(const MeanStd& value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.1f±%.1f", value.mean, value.std);
    return buffer;
}

namespace {

std::vector<std::string> baseline_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream in(text);
    std::string raw;
    while (in >> raw) {
        std::size_t begin = 0;
        std::size_t end = raw.size();
        while (begin < end && std::ispunct(static_cast<unsigned char>(raw[begin]))) ++begin;
        while (end > begin && std::ispunct(static_cast<unsigned char>(raw[end - 1]))) --end;
        if (begin == end) continue;
        std::string token = raw.substr(begin, end - begin);
        for (char& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        tokens.push_back(std::move(token));
    }
    return tokens;
}

}  // namespace

EntailmentLabel subsequence_baseline(const std::string& premise, const std::string& hypothesis) {
    const auto p = baseline_tokens(premise);
    const auto h = baseline_tokens(hypothesis);
    std::size_t at = 0;
    for (const auto& token : h) {
        while (at < p.size() && p[at] != token) ++at;
        if (at == p.size()) return EntailmentLabel::unk;
        ++at;
    }
    return EntailmentLabel::yes;
}

EntailmentLabel negation_baseline(const std::string& premise, const std::string& hypothesis) {
    const auto negated = [](const std::string& text) {
        for (const auto& token : baseline_tokens(text)) {
            if (token == "not" || token == "no" || token == "n't") return true;
            if (token.size() > 3 && token.compare(token.size() - 3, 3, "n't") == 0) return true;
        }
        return false;
    };
    return (negated(premise) || negated(hypothesis)) ? EntailmentLabel::unk
                                                     : EntailmentLabel::yes;
}

EntailmentLabel discretize_likert(const LikertTriple& triple) {
    int yes_votes = 0;
    for (const int score : triple.scores) {
        if (score < 1 || score > 5) {
            throw std::out_of_range("likert score out of range: " + std::to_string(score));
        }
        if (score >= 4) ++yes_votes;
    }
    return yes_votes >= 2 ? EntailmentLabel::yes : EntailmentLabel::unk;
}

namespace {

struct CellRow {
    const char* i1;
    const char* i2;
    const char* comp;
    const std::optional<CellStats> BreakdownReport::*stats;
    const std::optional<MeanStd> AggregateReport::*agg;
    const char* json_key;
};

constexpr CellRow kCellRows[] = {
    {"yes", "yes", "yes", &BreakdownReport::cell_yy, &AggregateReport::cell_yy, "cell_yy"},
    {"yes", "unk", "unk", &BreakdownReport::cell_yu, &AggregateReport::cell_yu, "cell_yu"},
    {"unk", "yes", "unk", &BreakdownReport::cell_uy, &AggregateReport::cell_uy, "cell_uy"},
    {"unk", "unk", "unk", &BreakdownReport::cell_uu, &AggregateReport::cell_uu, "cell_uu"},
};

std::string fixed1(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.1f", value);
    return buffer;
}

void table_line(std::ostringstream& out, const std::string& a, const std::string& b,
                const std::string& c, const std::string& d, const std::string& e) {
    const auto pad = [](const std::string& s, std::size_t width) {
        return s + std::string(s.size() < width ? width - s.size() : 1, ' ');
    };
    out << pad(a, 12) << pad(b, 10) << pad(c, 12) << pad(d, 12) << e << '\n';
}

}  // namespace

std::string render_table(const BreakdownReport& report) {
    std::ostringstream out;
    table_line(out, "f(s1)->s1", "s1->s2", "f(s1)->s2", "accuracy", "count");
    for (const auto& row : kCellRows) {
        const auto& cell = report.*(row.stats);
        if (!cell) continue;
        table_line(out, row.i1, row.i2, row.comp, fixed1(cell->accuracy()),
                   std::to_string(cell->total));
    }
    table_line(out, "overall", "", "", fixed1(report.overall.accuracy()),
               std::to_string(report.overall.total));
    if (report.val_i1) {
        table_line(out, "val f(s1)->s1", "", "", fixed1(report.val_i1->accuracy()),
                   std::to_string(report.val_i1->total));
    }
    if (report.val_i2) {
        table_line(out, "val s1->s2", "", "", fixed1(report.val_i2->accuracy()),
                   std::to_string(report.val_i2->total));
    }
    return out.str();
}

std::string render_table(const AggregateReport& report) {
    std::ostringstream out;
    table_line(out, "f(s1)->s1", "s1->s2", "f(s1)->s2", "accuracy", "runs");
    for (const auto& row : kCellRows) {
        const auto& cell = report.*(row.agg);
        if (!cell) continue;
        table_line(out, row.i1, row.i2, row.comp, format_mean_std(*cell),
                   std::to_string(cell->runs));
    }
    table_line(out, "overall", "", "", format_mean_std(report.overall),
               std::to_string(report.overall.runs));
    if (report.val_i1) {
        table_line(out, "val f(s1)->s1", "", "", format_mean_std(*report.val_i1),
                   std::to_string(report.val_i1->runs));
    }
    if (report.val_i2) {
        table_line(out, "val s1->s2", "", "", format_mean_std(*report.val_i2),
                   std::to_string(report.val_i2->runs));
    }
    return out.str();
}

io::Json to_json(const BreakdownReport& report) {
    io::Json object;
    io::Json counts;
    for (const auto& row : kCellRows) {
        const auto& cell = report.*(row.stats);
        if (!cell) continue;
        object[row.json_key] = cell->accuracy();
        counts[row.json_key] = cell->total;
    }
    object["overall"] = report.overall.accuracy();
    counts["overall"] = report.overall.total;
    if (report.val_i1) {
        object["val_i1"] = report.val_i1->accuracy();
        counts["val_i1"] = report.val_i1->total;
    }
    if (report.val_i2) {
        object["val_i2"] = report.val_i2->accuracy();
        counts["val_i2"] = report.val_i2->total;
    }
    object["counts"] = counts;
    return object;
}

io::Json to_json(const AggregateReport& report) {
    io::Json object;
    const auto entry = [](const MeanStd& value) {
        io::Json cell;
        cell["mean"] = value.mean;
        cell["std"] = value.std;
        cell["runs"] = value.runs;
        cell["formatted"] = format_mean_std(value);
        return cell;
    };
    for (const auto& row : kCellRows) {
        const auto& cell = report.*(row.agg);
        if (!cell) continue;
        object[row.json_key] = entry(*cell);
    }
    object["overall"] = entry(report.overall);
    if (report.val_i1) object["val_i1"] = entry(*report.val_i1);
    if (report.val_i2) object["val_i2"] = entry(*report.val_i2);
    return object;
}

}  // namespace transnli::eval
