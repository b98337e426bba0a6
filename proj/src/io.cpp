#include "gpckit/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gpckit {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path());
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write to '" + tmp.string() + "'");
        out << content;
    }
    fs::rename(tmp, target);
}

std::string pole_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    out << "P,lambda,R,vref,pole_index,re,im,modulus,stable\n";
    for (const auto& rec : records) {
        if (!rec.error.empty()) continue;
        int idx = 0;
        for (const auto& p : rec.poles) {
            out << rec.horizon_p << ',' << format_number(rec.lambda_weight) << ','
                << format_number(rec.r) << ',' << format_number(rec.vo_ref) << ',' << idx++
                << ',' << format_number(p.real()) << ',' << format_number(p.imag()) << ','
                << format_number(std::abs(p)) << ',' << (rec.stable ? "true" : "false") << '\n';
        }
    }
    return out.str();
}

std::string summary_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    out << "P,lambda,R,vref,max_modulus,stable\n";
    for (const auto& rec : records) {
        out << rec.horizon_p << ',' << format_number(rec.lambda_weight) << ','
            << format_number(rec.r) << ',' << format_number(rec.vo_ref) << ',';
        if (rec.error.empty()) {
            out << format_number(rec.max_modulus) << ',' << (rec.stable ? "true" : "false");
        } else {
            out << "nan,error";
        }
        out << '\n';
    }
    return out.str();
}

std::string trace_csv(const SimTrace& trace) {
    std::ostringstream out;
    out << "t,iL,vO,duty,ref\n";
    for (std::size_t i = 0; i < trace.t.size(); ++i) {
        out << format_number(trace.t[i]) << ',' << format_number(trace.il[i]) << ','
            << format_number(trace.vo[i]) << ',' << format_number(trace.duty[i]) << ','
            << format_number(trace.ref[i]) << '\n';
    }
    return out.str();
}

std::string metrics_text(const SimMetrics& m) {
    std::ostringstream out;
    out << "steady_state_error " << format_number(m.steady_state_error) << '\n'
        << "overshoot " << format_number(m.overshoot) << '\n'
        << "settling_time_2pct " << format_number(m.settling_time_2pct) << '\n'
        << "unstable " << (m.unstable ? "true" : "false") << '\n'
        << "duty_railed_fraction " << format_number(m.duty_railed_fraction) << '\n';
    return out.str();
}

std::string metrics_json(const SimMetrics& m, const SimTrace& trace, const std::string& note) {
    nlohmann::json doc;
    doc["steady_state_error"] = m.steady_state_error;
    doc["overshoot"] = m.overshoot;
    doc["settling_time_2pct"] = m.settling_time_2pct;
    doc["unstable"] = m.unstable;
    doc["duty_railed_fraction"] = m.duty_railed_fraction;
    doc["blown_up"] = trace.blown_up;
    doc["vo_floored"] = trace.vo_floored;
    doc["samples"] = trace.t.size();
    if (!note.empty()) doc["scenario_note"] = note;
    return doc.dump(2) + "\n";
}

}  // namespace gpckit
