#include "pcpr/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace pcpr {

namespace detail {

constexpr std::int64_t kMaxDim = 1 << 26;  // 64M entries per side

void write_i64(std::ostream& out, std::int64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::int64_t read_i64(std::istream& in, const std::string& what) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8))
    throw io_error(io_fault::truncated_payload, what + ": truncated payload");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return static_cast<std::int64_t>(v);
}

void write_doubles(std::ostream& out, const double* data, std::int64_t count) {
  // x86-64 doubles are already little-endian IEEE-754
  out.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(count * 8));
}

void read_doubles(std::istream& in, double* data, std::int64_t count,
                  const std::string& what) {
  if (!in.read(reinterpret_cast<char*>(data),
               static_cast<std::streamsize>(count * 8)))
    throw io_error(io_fault::truncated_payload, what + ": truncated payload");
}

void check_magic(std::istream& in, const char (&magic)[8],
                 const std::string& what) {
  char buf[8];
  if (!in.read(buf, 8) || std::memcmp(buf, magic, 8) != 0)
    throw io_error(io_fault::malformed_header, what + ": malformed header");
}

void check_dim(std::int64_t v, const std::string& what) {
  if (v < 0 || v > kMaxDim)
    throw io_error(io_fault::dimension_overflow,
                   what + ": dimension overflow (" + std::to_string(v) + ")");
}

}  // namespace detail

namespace {

using namespace detail;

constexpr char kMatrixMagic[8] = {'P', 'C', 'P', 'R', 'M', 'A', 'T', '1'};
constexpr char kVectorMagic[8] = {'P', 'C', 'P', 'R', 'V', 'E', 'C', '1'};

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out)
    throw io_error(io_fault::not_found, "cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw io_error(io_fault::not_found, "cannot open: " + path);
  return in;
}

}  // namespace

void write_matrix_bin(const std::string& path, const Matrix& a) {
  auto out = open_out(path, true);
  out.write(kMatrixMagic, 8);
  write_i64(out, a.rows());
  write_i64(out, a.cols());
  // store row-major regardless of Eigen's internal layout
  for (Index i = 0; i < a.rows(); ++i) {
    const Vector row = a.row(i);
    write_doubles(out, row.data(), row.size());
  }
  if (!out) throw io_error(io_fault::bad_value, "write failed: " + path);
}

Matrix read_matrix_bin(const std::string& path) {
  auto in = open_in(path, true);
  check_magic(in, kMatrixMagic, path);
  const std::int64_t rows = read_i64(in, path);
  const std::int64_t cols = read_i64(in, path);
  check_dim(rows, path);
  check_dim(cols, path);
  if (rows > 0 && cols > kMaxDim / rows)
    throw io_error(io_fault::dimension_overflow, path + ": dimension overflow");
  Matrix a(rows, cols);
  std::vector<double> row(static_cast<std::size_t>(cols));
  for (std::int64_t i = 0; i < rows; ++i) {
    read_doubles(in, row.data(), cols, path);
    for (std::int64_t j = 0; j < cols; ++j) a(i, j) = row[j];
  }
  return a;
}

void write_vector_bin(const std::string& path, const Vector& v) {
  auto out = open_out(path, true);
  out.write(kVectorMagic, 8);
  write_i64(out, v.size());
  write_doubles(out, v.data(), v.size());
  if (!out) throw io_error(io_fault::bad_value, "write failed: " + path);
}

Vector read_vector_bin(const std::string& path) {
  auto in = open_in(path, true);
  check_magic(in, kVectorMagic, path);
  const std::int64_t len = read_i64(in, path);
  check_dim(len, path);
  Vector v(len);
  read_doubles(in, v.data(), len, path);
  return v;
}

void write_matrix_csv(const std::string& path, const Matrix& a) {
  auto out = open_out(path, false);
  out.precision(17);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << a(i, j);
    }
    out << '\n';
  }
  if (!out) throw io_error(io_fault::bad_value, "write failed: " + path);
}

Matrix read_matrix_csv(const std::string& path) {
  auto in = open_in(path, false);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw io_error(io_fault::bad_value,
                       path + ": bad value '" + cell + "' at row " +
                           std::to_string(rows.size()));
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw io_error(io_fault::bad_value,
                     path + ": ragged row " + std::to_string(rows.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Matrix(0, 0);
  Matrix a(rows.size(), rows.front().size());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return a;
}

void write_vector_csv(const std::string& path, const Vector& v) {
  auto out = open_out(path, false);
  out.precision(17);
  for (Index i = 0; i < v.size(); ++i) out << v[i] << '\n';
  if (!out) throw io_error(io_fault::bad_value, "write failed: " + path);
}

Vector read_vector_csv(const std::string& path) {
  const Matrix m = read_matrix_csv(path);
  if (m.size() == 0) return Vector(0);
  if (m.cols() != 1)
    throw io_error(io_fault::bad_value, path + ": expected a single column");
  return m.col(0);
}

}  // namespace pcpr
