#include "gom/matrix_io.hpp"

#include "gom/format.hpp"

#include <bit>
#include <cstring>

#include "gom/dataset.hpp"
#include "gom/errors.hpp"

namespace gom {

namespace {

constexpr char kMagic[4] = {'G', 'S', 'I', 'M'};

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
public:
    explicit Reader(const std::string& bytes) : bytes_(bytes) {}

    std::uint64_t u64() { return read(8); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(read(4)); }
    std::uint8_t u8() { return static_cast<std::uint8_t>(read(1)); }
    double f64() { return std::bit_cast<double>(u64()); }

    void expect_magic() {
        need(4);
        if (std::memcmp(bytes_.data(), kMagic, 4) != 0) throw IoError("not a similarity-matrix file (bad magic)");
        pos_ = 4;
    }
    bool at_end() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n) const {
        if (bytes_.size() - pos_ < n) throw IoError("similarity-matrix file is truncated");
    }
    std::uint64_t read(int n) {
        need(static_cast<std::size_t>(n));
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) {
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + static_cast<std::size_t>(i)]))
                 << (8 * i);
        }
        pos_ += static_cast<std::size_t>(n);
        return v;
    }

    const std::string& bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_matrix(const SimilarityMatrix& matrix) {
    std::string out(kMagic, 4);
    put_u32(out, kMatrixFormatVersion);
    put_u64(out, matrix.size());
    out.push_back(static_cast<char>(matrix.structure()));
    put_u64(out, matrix.evaluations());
    if (matrix.structure() == SimilarityMatrix::Structure::block) {
        for (auto c : matrix.assignment()) put_u64(out, c);
    }
    for (std::size_t c = 0; c < matrix.cluster_count(); ++c) {
        for (double v : matrix.block_values(c)) put_u64(out, std::bit_cast<std::uint64_t>(v));
    }
    return out;
}

SimilarityMatrix deserialize_matrix(const std::string& bytes) {
    Reader in(bytes);
    in.expect_magic();
    const auto version = in.u32();
    if (version != kMatrixFormatVersion) {
        throw IoError("unsupported similarity-matrix version " + std::to_string(version));
    }
    const auto n = in.u64();
    if (n == 0 || n > (std::uint64_t{1} << 32)) throw IoError("implausible matrix size " + std::to_string(n));
    const auto tag = in.u8();
    const auto evaluations = in.u64();

    SimilarityMatrix m;
    if (tag == static_cast<std::uint8_t>(SimilarityMatrix::Structure::dense)) {
        m = SimilarityMatrix::dense(static_cast<std::size_t>(n));
    } else if (tag == static_cast<std::uint8_t>(SimilarityMatrix::Structure::block)) {
        std::vector<std::size_t> labels(static_cast<std::size_t>(n));
        for (auto& c : labels) {
            c = static_cast<std::size_t>(in.u64());
            if (c >= n) throw IoError("cluster label out of range");
        }
        try {
            m = SimilarityMatrix::block(std::move(labels));
        } catch (const ConfigError& e) {
            throw IoError(std::string("invalid cluster assignment: ") + e.what());
        }
    } else {
        throw IoError("unknown matrix structure tag " + std::to_string(tag));
    }
    for (std::size_t c = 0; c < m.cluster_count(); ++c) {
        for (double& v : m.block_values(c)) {
            v = in.f64();
            if (!(v >= 0.0 && v <= 1.0)) throw IoError("matrix entry outside [0, 1]");
        }
    }
    if (!in.at_end()) throw IoError("trailing bytes after similarity matrix");
    m.set_evaluations(evaluations);
    return m;
}

void save_matrix(const SimilarityMatrix& matrix, const std::filesystem::path& path) {
    write_file(path, serialize_matrix(matrix));
}

SimilarityMatrix load_matrix(const std::filesystem::path& path) {
    try {
        return deserialize_matrix(read_file(path));
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

std::string matrix_to_csv(const SimilarityMatrix& matrix) {
    std::string out = std::to_string(matrix.size()) + "\n";
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j : matrix.members(matrix.cluster_of(i))) {
            out += std::to_string(i) + ',' + std::to_string(j) + ',' + format_real(matrix.at(i, j)) + '\n';
        }
    }
    return out;
}

}  // namespace gom
