#include "nnca/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "nnca/matrix_io.hpp"

namespace nnca {

const SummaryRow* StudyReport::find(const std::string& cell, const std::string& method, std::size_t rank,
                                    const std::string& measure) const {
    for (const auto& row : summary) {
        if (row.cell == cell && row.method == method && row.rank == rank && row.measure == measure) {
            return &row;
        }
    }
    return nullptr;
}

std::vector<SummaryRow> summarize(const std::vector<Measurement>& records) {
    using Key = std::tuple<std::string, std::string, std::size_t, std::string>;
    std::map<Key, std::size_t> slot;
    std::vector<Key> keys;
    std::vector<std::vector<double>> values;
    for (const auto& m : records) {
        Key key{m.cell, m.method, m.rank, m.measure};
        auto [it, inserted] = slot.try_emplace(key, keys.size());
        if (inserted) {
            keys.push_back(key);
            values.emplace_back();
        }
        values[it->second].push_back(m.value);
    }

    std::vector<SummaryRow> rows;
    rows.reserve(keys.size());
    for (std::size_t g = 0; g < keys.size(); ++g) {
        auto v = values[g];
        const auto n = static_cast<double>(v.size());
        SummaryRow row{std::get<0>(keys[g]), std::get<1>(keys[g]), std::get<2>(keys[g]), std::get<3>(keys[g]),
                       v.size()};
        double sum = 0.0;
        for (double x : v) {
            sum += x;
        }
        row.mean = sum / n;
        double ss = 0.0;
        for (double x : v) {
            ss += (x - row.mean) * (x - row.mean);
        }
        row.std_dev = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        std::sort(v.begin(), v.end());
        row.min = v.front();
        row.max = v.back();
        const std::size_t mid = v.size() / 2;
        row.median = v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::ordered_json to_json(const StudyReport& report) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["study"] = report.study;
    j["config"] = report.config;
    auto& summary = j["summary"] = nlohmann::ordered_json::array();
    for (const auto& r : report.summary) {
        summary.push_back({{"cell", r.cell},
                           {"method", r.method},
                           {"rank", r.rank},
                           {"measure", r.measure},
                           {"count", r.count},
                           {"min", r.min},
                           {"max", r.max},
                           {"mean", r.mean},
                           {"median", r.median},
                           {"std", r.std_dev}});
    }
    auto& excluded = j["excluded"] = nlohmann::ordered_json::array();
    for (const auto& e : report.excluded) {
        excluded.push_back({{"cell", e.cell}, {"replicate", e.replicate}, {"reason", e.reason}});
    }
    auto& records = j["records"] = nlohmann::ordered_json::array();
    for (const auto& m : report.records) {
        records.push_back({{"cell", m.cell},
                           {"replicate", m.replicate},
                           {"method", m.method},
                           {"rank", m.rank},
                           {"measure", m.measure},
                           {"value", m.value}});
    }
    return j;
}

std::string records_csv(const StudyReport& report) {
    std::string out = "cell,replicate,method,rank,measure,value\n";
    for (const auto& m : report.records) {
        out += '"' + m.cell + "\"," + std::to_string(m.replicate) + ',' + m.method + ',' + std::to_string(m.rank) +
               ',' + m.measure + ',' + io::format_double(m.value) + '\n';
    }
    return out;
}

std::string summary_csv(const StudyReport& report) {
    std::string out = "cell,method,rank,measure,count,min,max,mean,median,std\n";
    for (const auto& r : report.summary) {
        out += '"' + r.cell + "\"," + r.method + ',' + std::to_string(r.rank) + ',' + r.measure + ',' +
               std::to_string(r.count) + ',' + io::format_double(r.min) + ',' + io::format_double(r.max) + ',' +
               io::format_double(r.mean) + ',' + io::format_double(r.median) + ',' + io::format_double(r.std_dev) +
               '\n';
    }
    return out;
}

}  // namespace nnca
