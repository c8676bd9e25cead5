#pragma once

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace shearwave::app {

/// Writes a CSV file with a header row; numbers use 17 significant digits.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;
    void row(const std::vector<double>& values);
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    std::size_t width_;
    std::string buffer_;
};

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_number(double v);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// Replaces non-finite numbers by strings ("inf", "-inf", "nan") so reports stay valid JSON.
nlohmann::json number(double v);

}  // namespace shearwave::app
