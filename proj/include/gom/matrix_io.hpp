#pragma once

#include <filesystem>
#include <string>

#include "gom/similarity.hpp"

namespace gom {

/// Binary similarity-matrix file, all integers and reals little-endian:
///
///   "GSIM"            4-byte magic
///   u32 version       currently 1
///   u64 N
///   u8  structure     0 = dense, 1 = block
///   u64 evaluations   measure evaluations spent building the matrix
///   block only: u64 cluster label for each of the N graphs
///   f64 entries       dense: N*N row-major; block: each cluster's block
///                     row-major, clusters in label order, members ascending
inline constexpr std::uint32_t kMatrixFormatVersion = 1;

std::string serialize_matrix(const SimilarityMatrix& matrix);
SimilarityMatrix deserialize_matrix(const std::string& bytes);

void save_matrix(const SimilarityMatrix& matrix, const std::filesystem::path& path);
/// Throws IoError on a malformed or truncated file.
SimilarityMatrix load_matrix(const std::filesystem::path& path);

/// CSV export: a line holding N, then "i,j,score" for every stored entry.
std::string matrix_to_csv(const SimilarityMatrix& matrix);

}  // namespace gom
