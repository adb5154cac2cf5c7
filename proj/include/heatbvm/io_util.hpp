#ifndef HEATBVM_IO_UTIL_HPP
#define HEATBVM_IO_UTIL_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace heatbvm {

// Decimal form with 17 significant digits; round-trips any double exactly.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Strict full-string numeric parses for CSV fields: trailing characters
// and non-finite values are rejected with a runtime_error naming the file.
inline double parse_csv_double(const std::string& s, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw std::runtime_error(context + ": bad numeric field '" + s + "'");
}

inline long long parse_csv_int(const std::string& s, const std::string& context) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw std::runtime_error(context + ": bad integer field '" + s + "'");
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace heatbvm

#endif
