#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace nnca {

inline constexpr int kReportSchemaVersion = 1;

/// One measured value for one replicate. Angle measures compare the rank-1
/// and rank-2 spans and are stored under rank 2.
struct Measurement {
    std::string cell;  // study cell, e.g. "scenario-a" or "n=10,d=100"
    std::size_t replicate = 0;
    std::string method;
    std::size_t rank = 0;
    std::string measure;
    double value = 0.0;
};

struct SummaryRow {
    std::string cell;
    std::string method;
    std::size_t rank = 0;
    std::string measure;
    std::size_t count = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double std_dev = 0.0;  // sample standard deviation (n - 1), 0 for a single value
};

struct ExcludedReplicate {
    std::string cell;
    std::size_t replicate = 0;
    std::string reason;
};

struct StudyReport {
    std::string study;
    nlohmann::ordered_json config;
    std::vector<Measurement> records;
    std::vector<SummaryRow> summary;
    std::vector<ExcludedReplicate> excluded;

    /// Summary row for the key, or nullptr.
    const SummaryRow* find(const std::string& cell, const std::string& method, std::size_t rank,
                           const std::string& measure) const;
};

/// Groups records by (cell, method, rank, measure) in order of first
/// appearance and computes min/max/mean/median/std of each group.
std::vector<SummaryRow> summarize(const std::vector<Measurement>& records);

nlohmann::ordered_json to_json(const StudyReport& report);
std::string records_csv(const StudyReport& report);
std::string summary_csv(const StudyReport& report);

}  // namespace nnca
