#include "io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace shearwave::app {

std::string format_number(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), width_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += header[i];
    }
    buffer_ += '\n';
    std::ofstream out(path_, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path_.string());
    out << buffer_;
    buffer_.clear();
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != width_) throw std::logic_error("CSV row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += format_number(values[i]);
    }
    buffer_ += '\n';
    if (buffer_.size() > (1u << 16)) {
        std::ofstream(path_, std::ios::app) << buffer_;
        buffer_.clear();
    }
}

CsvWriter::~CsvWriter() {
    if (!buffer_.empty()) std::ofstream(path_, std::ios::app) << buffer_;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return nlohmann::json::parse(in);
}

nlohmann::json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

}  // namespace shearwave::app
