#ifndef PDCSIM_IO_HPP
#define PDCSIM_IO_HPP

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <vector>

namespace pdcsim {

// CSV with a header row; numbers are written with the shortest decimal that
// round-trips, so identical data yields identical bytes.
void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// 8-bit binary PGM (P5), row-major, linear min->0 max->255. A constant
// matrix maps to all zeros.
void write_pgm(const std::filesystem::path& file, const Eigen::MatrixXd& matrix);

void write_text(const std::filesystem::path& file, const std::string& content);

}  // namespace pdcsim

#endif
