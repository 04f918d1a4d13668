#pragma once

#include "pcpr/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace pcpr {

// Binary containers: 8-byte magic, dimensions as 64-bit little-endian
// integers, then the payload as row-major little-endian doubles.
//   matrix: "PCPRMAT1" rows cols data
//   vector: "PCPRVEC1" len data
// Read errors are distinct: malformed_header, dimension_overflow,
// truncated_payload.
void write_matrix_bin(const std::string& path, const Matrix& a);
Matrix read_matrix_bin(const std::string& path);
void write_vector_bin(const std::string& path, const Vector& v);
Vector read_vector_bin(const std::string& path);

// CSV interop variant: one row per line, values with 17 significant digits
// (round-trips to 1e-15 relative or better).
void write_matrix_csv(const std::string& path, const Matrix& a);
Matrix read_matrix_csv(const std::string& path);
void write_vector_csv(const std::string& path, const Vector& v);
Vector read_vector_csv(const std::string& path);

// Stream-level primitives shared by the container formats.
namespace detail {
void write_i64(std::ostream& out, std::int64_t v);
std::int64_t read_i64(std::istream& in, const std::string& what);
void write_doubles(std::ostream& out, const double* data, std::int64_t count);
void read_doubles(std::istream& in, double* data, std::int64_t count,
                  const std::string& what);
void check_magic(std::istream& in, const char (&magic)[8],
                 const std::string& what);
void check_dim(std::int64_t v, const std::string& what);
}  // namespace detail

}  // namespace pcpr
