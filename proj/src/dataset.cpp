#include "gom/dataset.hpp"

#include <fstream>
#include <sstream>

#include "gom/errors.hpp"

namespace gom {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << contents;
    if (!out) throw IoError("short write to " + path.string());
}

GraphDataset load_dataset(const std::filesystem::path& dir) {
    const auto manifest_path = dir / kManifestName;
    if (!std::filesystem::exists(manifest_path)) {
        throw IoError("dataset " + dir.string() + " has no " + kManifestName);
    }
    GraphDataset dataset;
    auto canonical = std::filesystem::weakly_canonical(dir);
    dataset.name = canonical.filename().string();
    if (dataset.name.empty()) dataset.name = canonical.parent_path().filename().string();

    std::istringstream manifest(read_file(manifest_path));
    std::string line;
    while (std::getline(manifest, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const std::filesystem::path file = dir / line;
        try {
            dataset.graphs.push_back(parse_edge_list(read_file(file), std::filesystem::path(line).stem().string()));
        } catch (const ParseError& e) {
            throw e.with_context(file.string());
        }
    }
    if (dataset.graphs.empty()) throw IoError("dataset " + dir.string() + " lists no graphs");
    return dataset;
}

void save_dataset(const GraphDataset& dataset, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    std::string manifest;
    for (const auto& g : dataset.graphs) {
        const std::string file = g.id() + ".edges";
        write_file(dir / file, to_edge_list(g));
        manifest += file;
        manifest += '\n';
    }
    write_file(dir / kManifestName, manifest);
}

}  // namespace gom
