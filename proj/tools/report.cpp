#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

namespace exclusia::cli {

namespace {

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    // keep it recognizably a float
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

void emit(const Json& j, std::ostringstream& os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) { os << "{}"; return; }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad << Json(it.key()).dump() << ": ";
                emit(it.value(), os, indent + 2);
            }
            os << "\n" << close << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) { os << "[]"; return; }
            bool scalars = true;
            for (const auto& e : j) scalars = scalars && !e.is_structured();
            if (scalars) {
                os << "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    emit(j[i], os, indent);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                emit(j[i], os, indent + 2);
            }
            os << "\n" << close << "]";
            return;
        }
        case Json::value_t::number_float: os << format_double(j.get<double>()); return;
        default: os << j.dump(); return;
    }
}

}  // namespace

std::string dump(const Json& j) {
    std::ostringstream os;
    emit(j, os, 0);
    os << "\n";
    return os.str();
}

Json to_json(const ProcessParams& p) {
    return Json{{"q", p.q}, {"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}, {"L", p.L}};
}

Json to_json(const ObservableReport& r) {
    Json j;
    j["method"] = r.method;
    j["current"] = r.current;
    j["densities"] = r.densities;
    j["currents"] = r.currents;
    j["current_spread"] = r.current_spread;
    if (r.method == "kmc") {
        j["current_stderr"] = r.current_stderr;
        j["density_stderr"] = r.density_stderr;
    }
    if (!r.Z.empty()) {
        j["Z"] = r.Z;
        j["Z_log_scale"] = r.z_log_scale;
    }
    if (!r.probabilities.empty()) j["probabilities"] = r.probabilities;
    if (r.tolerance > 0.0) j["tolerance"] = r.tolerance;
    if (r.truncation > 0) j["truncation"] = r.truncation;
    return j;
}

std::string profile_csv(const ObservableReport& r) {
    std::ostringstream os;
    os << "site,density,density_stderr\n";
    for (std::size_t i = 0; i < r.densities.size(); ++i) {
        const double se = i < r.density_stderr.size() ? r.density_stderr[i] : 0.0;
        os << (i + 1) << ',' << format_double(r.densities[i]) << ',' << format_double(se) << '\n';
    }
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::filesystem::path out(path);
    if (const char* dir = std::getenv("EXCLUSIA_OUTPUT_DIR"); dir && *dir && out.is_relative())
        out = std::filesystem::path(dir) / out;
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::filesystem::filesystem_error("cannot open output", out, std::make_error_code(std::errc::io_error));
    f << text;
    f.close();
    if (!f) throw std::filesystem::filesystem_error("write failed", out, std::make_error_code(std::errc::io_error));
}

}  // namespace exclusia::cli
