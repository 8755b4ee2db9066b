#include "mcor/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mcor {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

} // namespace

CsvTable ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open CSV file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV file: " + path.string());
    const std::vector<std::string> header = split(strip_cr(line), ',');
    const std::size_t cols = header.size();

    std::vector<double> cells;
    std::size_t rows = 0;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break; // trailing newline
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != cols) {
            std::ostringstream msg;
            msg << path.string() << ": line " << lineno << " has " << fields.size()
                << " fields, expected " << cols;
            throw std::invalid_argument(msg.str());
        }
        for (std::size_t c = 0; c < cols; ++c) {
            const std::string& f = fields[c];
            double v = 0.0;
            const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (res.ec != std::errc{} || res.ptr != f.data() + f.size()) {
                std::ostringstream msg;
                msg << path.string() << ": line " << lineno << ", column " << (c + 1) << " ('"
                    << header[c] << "'): value '" << f << "' is not numeric";
                throw std::invalid_argument(msg.str());
            }
            cells.push_back(v);
        }
        ++rows;
    }
    if (rows == 0) throw std::invalid_argument(path.string() + ": no data rows");

    Matrix values(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) values(r, c) = cells[r * cols + c];
    return CsvTable{header, std::move(values)};
}

std::string format_double(double v) {
    char buf[40];
    // %.17g round-trips every double exactly
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const Matrix& values) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write CSV file: " + path.string());
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << '\n';
    for (std::size_t r = 0; r < values.rows(); ++r) {
        for (std::size_t c = 0; c < values.cols(); ++c)
            out << (c ? "," : "") << format_double(values(r, c));
        out << '\n';
    }
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write CSV file: " + path.string());
    for (std::size_t c = 0; c < header.size(); ++c)
        out << (c ? "," : "") << header[c];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << row[c];
        out << '\n';
    }
}

ComponentPartition parse_partition(const std::string& text, std::size_t dataset_cols,
                                   const KernelSpec& kernel) {
    if (text.empty()) throw std::invalid_argument("empty partition specification");
    std::vector<ComponentSpec> comps;
    for (const std::string& group : split(text, '|')) {
        ComponentSpec comp;
        comp.kernel = kernel;
        for (const std::string& field : split(group, ',')) {
            std::size_t idx = 0;
            const auto res = std::from_chars(field.data(), field.data() + field.size(), idx);
            if (res.ec != std::errc{} || res.ptr != field.data() + field.size() || idx == 0)
                throw std::invalid_argument("partition: '" + field +
                                            "' is not a 1-based column index");
            comp.columns.push_back(idx - 1);
        }
        comps.push_back(std::move(comp));
    }
    return ComponentPartition(std::move(comps), dataset_cols);
}

} // namespace mcor
