#include "pipeclimb/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace pipeclimb {

namespace {

void append_num(std::string& out, double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    out += buf;
}

} // namespace

void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw RangeError("cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw RangeError("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string trace_to_csv(const SimTrace& trace) {
    std::string out = kTraceHeader;
    out += '\n';
    out.reserve(out.size() + trace.records.size() * 220);
    for (const TraceRecord& rec : trace.records) {
        append_num(out, rec.t_s);
        out += ',';
        append_num(out, rec.s_mm);
        out += ',';
        out += std::to_string(rec.segment_index);
        for (const auto& block :
             {rec.track_speed_mm_s, rec.required_speed_mm_s, rec.slip, rec.normal_force_n}) {
            for (double v : block) {
                out += ',';
                append_num(out, v);
            }
        }
        out += '\n';
    }
    return out;
}

void write_trace_csv(const std::filesystem::path& path, const SimTrace& trace) {
    atomic_write_file(path, trace_to_csv(trace));
}

SimTrace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw RangeError("cannot open trace file " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != kTraceHeader) {
        throw ParameterError("trace file " + path.string() + " has an unexpected header");
    }
    SimTrace trace;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::array<double, 15> fields{};
        std::size_t pos = 0;
        for (int f = 0; f < 15; ++f) {
            const std::size_t next = line.find(',', pos);
            const std::string cell = line.substr(pos, next == std::string::npos ? next : next - pos);
            try {
                fields[f] = std::stod(cell);
            } catch (const std::exception&) {
                std::ostringstream msg;
                msg << "trace file " << path.string() << " line " << line_no
                    << ": bad numeric field '" << cell << "'";
                throw ParameterError(msg.str());
            }
            if (next == std::string::npos && f != 14) {
                std::ostringstream msg;
                msg << "trace file " << path.string() << " line " << line_no << ": expected 15 fields";
                throw ParameterError(msg.str());
            }
            pos = next + 1;
        }
        TraceRecord rec;
        rec.t_s = fields[0];
        rec.s_mm = fields[1];
        rec.segment_index = static_cast<std::size_t>(fields[2]);
        for (int i = 0; i < 3; ++i) {
            rec.track_speed_mm_s[i] = fields[3 + i];
            rec.required_speed_mm_s[i] = fields[6 + i];
            rec.slip[i] = fields[9 + i];
            rec.normal_force_n[i] = fields[12 + i];
        }
        trace.records.push_back(rec);
    }
    if (trace.records.size() >= 2) {
        trace.dt_s = trace.records[1].t_s - trace.records[0].t_s;
        trace.final_time_s = trace.records.back().t_s + trace.dt_s;
    } else if (!trace.records.empty()) {
        trace.final_time_s = trace.records.back().t_s;
    }
    return trace;
}

std::string summary_to_json(const SimSummary& summary) {
    nlohmann::json doc;
    doc["scenario"] = summary.scenario;
    doc["status"] = run_status_name(summary.status);
    doc["total_time_s"] = summary.total_time_s;
    doc["aggregate_ape_pct"] = summary.aggregate_ape_pct;
    doc["centerline_length_mm"] = summary.centerline_length_mm;
    doc["track_distance_mm"] = summary.track_distance_mm;
    doc["segments"] = nlohmann::json::array();
    for (const SegmentSummary& seg : summary.segments) {
        nlohmann::json s;
        s["kind"] = seg.kind;
        s["entry_time_s"] = seg.entry_time_s;
        s["exit_time_s"] = seg.exit_time_s;
        s["duration_s"] = seg.duration_s;
        s["mean_speed_mm_s"] = seg.mean_speed_mm_s;
        s["ape_pct"] = seg.ape_pct;
        s["max_abs_slip"] = seg.max_abs_slip;
        s["traction_violation_steps"] = seg.traction_violation_steps;
        doc["segments"].push_back(std::move(s));
    }
    return doc.dump(2) + "\n";
}

void write_summary_json(const std::filesystem::path& path, const SimSummary& summary) {
    atomic_write_file(path, summary_to_json(summary));
}

} // namespace pipeclimb
