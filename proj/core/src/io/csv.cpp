#include "dtc/io/csv.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace dtc::io {
namespace {

std::string sample_tag_name(SampleTag tag) {
    switch (tag) {
        case SampleTag::PostPulse: return "post_pulse";
        case SampleTag::PrePulse: return "pre_pulse";
        case SampleTag::SegmentBoundary: return "segment";
    }
    return "post_pulse";
}

std::string utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string diagram_csv(const PhaseDiagram& diagram) {
    std::string out = "x_param,y_param,value,stderr,n_realizations\r\n";
    for (std::size_t iy = 0; iy < diagram.ny(); ++iy) {
        for (std::size_t ix = 0; ix < diagram.nx(); ++ix) {
            out += format_double(diagram.x_values[ix]);
            out += ',';
            out += format_double(diagram.y_values[iy]);
            out += ',';
            out += format_double(diagram.value_at(ix, iy));
            out += ',';
            out += format_double(diagram.error_at(ix, iy));
            out += ',';
            out += std::to_string(diagram.realizations);
            out += "\r\n";
        }
    }
    return out;
}

std::string trajectory_csv(const TrajectoryRecord& record) {
    std::string out = "period,tag,segment";
    for (int site = 1; site <= record.n_sites; ++site) {
        const std::string s = std::to_string(site);
        out += ",s" + s + "_x,s" + s + "_y,s" + s + "_z";
    }
    out += ",end_length\r\n";
    for (const TrajectorySample& sample : record.samples) {
        out += std::to_string(sample.period_index);
        out += ',';
        out += sample_tag_name(sample.tag);
        out += ',';
        out += std::to_string(sample.segment);
        for (const auto& spin : sample.spins)
            for (double v : spin) {
                out += ',';
                out += format_double(v);
            }
        out += ',';
        out += format_double(sample.end_length);
        out += "\r\n";
    }
    return out;
}

std::string tool_version() {
#ifdef DTCSIM_VERSION
    return DTCSIM_VERSION;
#else
    return "0.0.0";
#endif
}

std::string provenance_json(const RunConfig& config, const std::string& command,
                            const std::vector<CellFailure>& failures,
                            bool include_timestamp) {
    nlohmann::ordered_json doc;
    doc["tool"] = "dtcsim";
    doc["version"] = tool_version();
    doc["command"] = command;
    if (include_timestamp) doc["timestamp_utc"] = utc_timestamp();
    doc["config"] = nlohmann::ordered_json::parse(serialize_config(config));
    if (!failures.empty()) {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const CellFailure& f : failures) {
            nlohmann::ordered_json e;
            e["ix"] = f.ix;
            e["iy"] = f.iy;
            e["message"] = f.message;
            list.push_back(std::move(e));
        }
        doc["failures"] = std::move(list);
    }
    return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error(path + ": cannot open for writing");
    const std::size_t written = std::fwrite(content.data(), 1, content.size(), f);
    const int rc = std::fclose(f);
    if (written != content.size() || rc != 0)
        throw std::runtime_error(path + ": short write");
}

}  // namespace dtc::io
