#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gom/graph.hpp"

namespace gom {

/// Ordered collection of graphs. Indices are stable and key the similarity
/// matrix, the training set and every output file.
struct GraphDataset {
    std::string name;
    std::vector<Graph> graphs;

    std::size_t size() const noexcept { return graphs.size(); }
    const Graph& operator[](std::size_t i) const { return graphs[i]; }
};

/// Name of the manifest listing edge-list files in index order.
inline constexpr const char* kManifestName = "manifest.txt";

/// Loads a dataset directory: `manifest.txt` names one edge-list file per
/// line (blank and '#' lines ignored). Graph ids are the file stems; the
/// dataset name is the directory name. Throws IoError / ParseError.
GraphDataset load_dataset(const std::filesystem::path& dir);

/// Writes every graph as `<id>.edges` plus the manifest. Creates `dir`.
void save_dataset(const GraphDataset& dataset, const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace gom
