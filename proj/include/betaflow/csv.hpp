#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace betaflow {

/// %.17g rendering; enough digits to roundtrip a double exactly.
std::string format_g17(double v);

struct CsvTable {
    std::vector<std::string> header;
    Eigen::ArrayXXd data;  // rows x columns
};

/// Write a numeric CSV: comma separators, header row, LF endings.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::Ref<const Eigen::ArrayXXd>& rows);

CsvTable read_csv(const std::string& path);

}  // namespace betaflow
