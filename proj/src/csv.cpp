#include "betaflow/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace betaflow {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::Ref<const Eigen::ArrayXXd>& rows) {
    if (header.size() != static_cast<std::size_t>(rows.cols()))
        throw std::invalid_argument("write_csv: header/column count mismatch");
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out << ',';
        out << header[c];
    }
    out << '\n';
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        for (Eigen::Index j = 0; j < rows.cols(); ++j) {
            if (j) out << ',';
            out << format_g17(rows(i, j));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    CsvTable table;
    {
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) table.header.push_back(field);
    }
    const std::size_t cols = table.header.size();
    if (cols == 0) throw std::runtime_error("read_csv: no columns in " + path);

    std::vector<double> values;
    std::size_t n_rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::size_t c = 0;
        while (std::getline(ss, field, ',')) {
            std::size_t used = 0;
            values.push_back(std::stod(field, &used));
            ++c;
        }
        if (c != cols)
            throw std::runtime_error("read_csv: ragged row in " + path);
        ++n_rows;
    }
    table.data.resize(static_cast<Eigen::Index>(n_rows),
                      static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < n_rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            table.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                values[i * cols + j];
    return table;
}

}  // namespace betaflow
