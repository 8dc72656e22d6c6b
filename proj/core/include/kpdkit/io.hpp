#pragma once

// Text formats.
//
// Hypermatrix:
//   dims: n1 n2 ... nd
//   <n1*...*nd whitespace-separated decimals, last axis fastest>
// Lines whose first non-blank character is '#' are comments. Writers emit
// 17 significant digits; values round-trip exactly.
//
// Permutation map:
//   permmap: n
//   <n 1-based destinations>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kpdkit/matrix.hpp"
#include "kpdkit/stp.hpp"
#include "kpdkit/tensor_core.hpp"

namespace kpdkit {

/// Throws ParseError carrying the offending line.
Hypermatrix read_hypermatrix(std::istream& in);
Hypermatrix read_hypermatrix(const std::filesystem::path& path);

void write_hypermatrix(std::ostream& out, const Hypermatrix& h);
void write_vector(std::ostream& out, std::span<const double> v);  // as a d=1 hypermatrix

/// Accepts either a d=2 hypermatrix or plain whitespace rows (one matrix row
/// per non-comment line).
Matrix read_matrix(std::istream& in);
Matrix read_matrix(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const Matrix& m);  // as a d=2 hypermatrix

void write_permmap(std::ostream& out, const PermutationMap& map);
PermutationMap read_permmap(std::istream& in);

/// 17 significant digits; reads back to the same double.
std::string format_double(double x);

/// "4,4" or "4 4" -> {4, 4}. Throws DomainError.
std::vector<std::size_t> parse_dims_list(std::string_view text);

}  // namespace kpdkit
