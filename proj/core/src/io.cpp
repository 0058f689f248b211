#include "pdcsim/io.hpp"

#include <cmath>
#include <fstream>

#include "pdcsim/config.hpp"
#include "pdcsim/errors.hpp"

namespace pdcsim {

namespace {

std::ofstream open_for_write(const std::filesystem::path& file, std::ios::openmode mode) {
  std::ofstream out(file, mode);
  if (!out) throw Error("cannot open for writing: " + file.string());
  return out;
}

}  // namespace

void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_for_write(file, std::ios::out | std::ios::trunc);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw Error("CSV row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  if (!out) throw Error("failed while writing " + file.string());
}

void write_pgm(const std::filesystem::path& file, const Eigen::MatrixXd& matrix) {
  if (matrix.size() == 0) throw Error("refusing to write an empty PGM");
  const double lo = matrix.minCoeff();
  const double hi = matrix.maxCoeff();
  const double scale = (hi > lo) ? 255.0 / (hi - lo) : 0.0;

  std::ofstream out = open_for_write(file, std::ios::out | std::ios::trunc | std::ios::binary);
  out << "P5\n" << matrix.cols() << " " << matrix.rows() << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(matrix.cols()));
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      row[static_cast<std::size_t>(j)] =
          static_cast<unsigned char>(std::lround((matrix(i, j) - lo) * scale));
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw Error("failed while writing " + file.string());
}

void write_text(const std::filesystem::path& file, const std::string& content) {
  std::ofstream out = open_for_write(file, std::ios::out | std::ios::trunc);
  out << content;
  if (!out) throw Error("failed while writing " + file.string());
}

}  // namespace pdcsim
