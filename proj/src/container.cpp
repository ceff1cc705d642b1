#include "frtc/container.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace frtc {

namespace {

void put_u16le(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

void put_f64le(std::string& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
    }
}

std::uint16_t get_u16le(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

double get_f64le(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) {
        bits = (bits << 8) | p[i];
    }
    return std::bit_cast<double>(bits);
}

constexpr std::size_t kHeaderBytes = 16;
// Caps width*height so a corrupt header cannot request an absurd allocation.
constexpr std::uint64_t kMaxPixels = std::uint64_t{1} << 30;

std::string lower_ext(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void save_container(const EncryptedImage& image, const std::filesystem::path& path) {
    const Index rows = image.rows();
    const Index cols = image.cols();
    for (const auto& ch : image.channels) {
        if (ch.rows() != rows || ch.cols() != cols) {
            throw DimensionError("encrypted channels disagree in shape");
        }
    }
    if (rows < 1 || cols < 1) {
        throw InvalidArgument("cannot save an empty encrypted image");
    }
    if (static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols) > kMaxPixels) {
        throw FormatError("container dimension overflow");
    }

    std::string bytes;
    bytes.reserve(kHeaderBytes + static_cast<std::size_t>(3 * rows * cols * 16));
    bytes.append(kContainerMagic, 4);
    put_u16le(bytes, kContainerVersion);
    bytes.push_back(static_cast<char>(image.algorithm));
    put_u32le(bytes, static_cast<std::uint32_t>(cols));
    put_u32le(bytes, static_cast<std::uint32_t>(rows));
    bytes.push_back(3);
    for (const auto& ch : image.channels) {
        for (Index r = 0; r < rows; ++r) {
            for (Index c = 0; c < cols; ++c) {
                put_f64le(bytes, ch(r, c).real());
                put_f64le(bytes, ch(r, c).imag());
            }
        }
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

EncryptedImage load_container(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open: " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < kHeaderBytes) {
        throw FormatError("container too short for its header");
    }
    if (std::memcmp(bytes.data(), kContainerMagic, 4) != 0) {
        throw FormatError("not a FRTC container (bad magic)");
    }
    const std::uint16_t version = get_u16le(bytes.data() + 4);
    if (version != kContainerVersion) {
        throw FormatError("unsupported container version " + std::to_string(version));
    }
    const auto alg = algorithm_from_code(bytes[6]);
    if (!alg) {
        throw FormatError("unknown algorithm code in container");
    }
    const std::uint32_t width = get_u32le(bytes.data() + 7);
    const std::uint32_t height = get_u32le(bytes.data() + 11);
    const unsigned channel_count = bytes[15];
    if (channel_count != 3) {
        throw FormatError("container must hold 3 channels");
    }
    if (width == 0 || height == 0 ||
        static_cast<std::uint64_t>(width) * height > kMaxPixels) {
        throw FormatError("container dimension overflow");
    }
    const std::uint64_t expected =
        kHeaderBytes + std::uint64_t{3} * width * height * 16;
    if (bytes.size() != expected) {
        throw FormatError("container payload truncated or oversized");
    }

    EncryptedImage image;
    image.algorithm = *alg;
    const unsigned char* p = bytes.data() + kHeaderBytes;
    for (auto& ch : image.channels) {
        ch = CMatrix(height, width);
        for (std::uint32_t r = 0; r < height; ++r) {
            for (std::uint32_t c = 0; c < width; ++c) {
                const double re = get_f64le(p);
                const double im = get_f64le(p + 8);
                p += 16;
                ch(r, c) = Complex(re, im);
            }
        }
    }
    return image;
}

bool is_container_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char magic[4] = {};
    in.read(magic, 4);
    return in.gcount() == 4 && std::memcmp(magic, kContainerMagic, 4) == 0;
}

PlainImage load_image(const std::filesystem::path& path) {
    const std::string ext = lower_ext(path);
    if (ext != ".png" && ext != ".tif" && ext != ".tiff") {
        throw FormatError("unsupported image format '" + ext + "' (supported: PNG, TIFF)");
    }
    cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (mat.empty()) {
        throw IoError("cannot read image: " + path.string());
    }
    if (mat.depth() != CV_8U) {
        throw FormatError("unsupported bit depth (8-bit input required): " + path.string());
    }
    if (mat.channels() != 1 && mat.channels() != 3) {
        throw FormatError("unsupported channel count " + std::to_string(mat.channels()) +
                          " (grayscale or RGB required)");
    }

    PlainImage image;
    const int rows = mat.rows;
    const int cols = mat.cols;
    for (auto& ch : image.channels) {
        ch = RMatrix(rows, cols);
    }
    if (mat.channels() == 1) {
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                const double v = mat.at<std::uint8_t>(r, c);
                image.channels[0](r, c) = v;
                image.channels[1](r, c) = v;
                image.channels[2](r, c) = v;
            }
        }
    } else {
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                const auto px = mat.at<cv::Vec3b>(r, c);  // OpenCV stores BGR
                image.channels[0](r, c) = px[2];
                image.channels[1](r, c) = px[1];
                image.channels[2](r, c) = px[0];
            }
        }
    }
    return image;
}

void save_image(const PlainImage& image, const std::filesystem::path& path) {
    const Index rows = image.rows();
    const Index cols = image.cols();
    cv::Mat mat(static_cast<int>(rows), static_cast<int>(cols), CV_8UC3);
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            auto& px = mat.at<cv::Vec3b>(static_cast<int>(r), static_cast<int>(c));
            for (int k = 0; k < 3; ++k) {
                const double v = std::clamp(image.channels[k](r, c), 0.0, 255.0);
                px[2 - k] = static_cast<std::uint8_t>(std::lround(v));
            }
        }
    }
    if (!cv::imwrite(path.string(), mat)) {
        throw IoError("cannot write image: " + path.string());
    }
}

void export_preview(const EncryptedImage& image, const std::filesystem::path& path) {
    PlainImage preview;
    for (int k = 0; k < 3; ++k) {
        RMatrix mag = image.channels[k].cwiseAbs();
        const double lo = mag.minCoeff();
        const double hi = mag.maxCoeff();
        if (hi > lo) {
            preview.channels[k] = (mag.array() - lo) / (hi - lo) * 255.0;
        } else {
            preview.channels[k] = RMatrix::Zero(mag.rows(), mag.cols());
        }
    }
    save_image(preview, path);
}

namespace {

struct KeyFileData {
    std::map<std::string, std::string> values;
    std::map<std::string, int> lines;
};

KeyFileData parse_key_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open key file: " + path.string());
    }
    KeyFileData data;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
        while (!line.empty() && is_space(line.back())) line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && is_space(line[start])) ++start;
        if (start == line.size()) continue;
        const auto eq = line.find('=', start);
        if (eq == std::string::npos) {
            throw FormatError("key file line " + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = line.substr(start, eq - start);
        std::string value = line.substr(eq + 1);
        const auto trim = [&](std::string& s) {
            while (!s.empty() && is_space(s.back())) s.pop_back();
            std::size_t b = 0;
            while (b < s.size() && is_space(s[b])) ++b;
            s.erase(0, b);
        };
        trim(key);
        trim(value);
        if (key.empty()) {
            throw FormatError("key file line " + std::to_string(lineno) + ": empty key");
        }
        if (data.values.count(key) != 0) {
            throw FormatError("key file line " + std::to_string(lineno) + ": duplicate key '" +
                              key + "'");
        }
        data.values[key] = value;
        data.lines[key] = lineno;
    }
    return data;
}

double parse_double_field(const KeyFileData& data, const std::string& key) {
    const auto it = data.values.find(key);
    if (it == data.values.end()) {
        throw FormatError("key file: missing field '" + key + "'");
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw FormatError("key file line " + std::to_string(data.lines.at(key)) +
                          ": cannot parse number for '" + key + "'");
    }
}

std::uint64_t parse_u64_field(const KeyFileData& data, const std::string& key) {
    const auto it = data.values.find(key);
    if (it == data.values.end()) {
        throw FormatError("key file: missing field '" + key + "'");
    }
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw FormatError("key file line " + std::to_string(data.lines.at(key)) +
                          ": cannot parse integer for '" + key + "'");
    }
}

MaskSpec parse_mask(const KeyFileData& data, const std::string& prefix,
                    std::int64_t shared_burn_in, std::vector<std::string>& known_keys) {
    const std::string kind_key = prefix + ".kind";
    const auto it = data.values.find(kind_key);
    if (it == data.values.end()) {
        throw FormatError("key file: missing field '" + kind_key + "'");
    }
    const auto kind = mask_kind_from_string(it->second);
    if (!kind) {
        throw FormatError("key file line " + std::to_string(data.lines.at(kind_key)) +
                          ": unknown mask kind '" + it->second + "'");
    }
    known_keys.push_back(kind_key);
    MaskSpec spec;
    spec.kind = *kind;
    spec.burn_in = shared_burn_in;
    switch (*kind) {
        case MaskKind::UniformRandom:
            spec.seed = parse_u64_field(data, prefix + ".seed");
            known_keys.push_back(prefix + ".seed");
            break;
        case MaskKind::Logistic:
            spec.p = parse_double_field(data, prefix + ".p");
            spec.x0 = parse_double_field(data, prefix + ".x0");
            known_keys.push_back(prefix + ".p");
            known_keys.push_back(prefix + ".x0");
            break;
        case MaskKind::Tent:
            spec.a = parse_double_field(data, prefix + ".a");
            spec.x0 = parse_double_field(data, prefix + ".x0");
            known_keys.push_back(prefix + ".a");
            known_keys.push_back(prefix + ".x0");
            break;
        case MaskKind::KaplanYorke:
            spec.a = parse_double_field(data, prefix + ".a");
            spec.b = parse_double_field(data, prefix + ".b");
            spec.x0 = parse_double_field(data, prefix + ".x0");
            spec.y0 = parse_double_field(data, prefix + ".y0");
            known_keys.push_back(prefix + ".a");
            known_keys.push_back(prefix + ".b");
            known_keys.push_back(prefix + ".x0");
            known_keys.push_back(prefix + ".y0");
            break;
    }
    const std::string burn_key = prefix + ".burn_in";
    if (data.values.count(burn_key) != 0) {
        spec.burn_in = static_cast<std::int64_t>(parse_u64_field(data, burn_key));
        known_keys.push_back(burn_key);
    }
    return spec;
}

void write_mask(std::ostream& out, const std::string& prefix, const MaskSpec& spec) {
    out << prefix << ".kind=" << to_string(spec.kind) << '\n';
    switch (spec.kind) {
        case MaskKind::UniformRandom:
            out << prefix << ".seed=" << spec.seed << '\n';
            break;
        case MaskKind::Logistic:
            out << prefix << ".p=" << fmt17(spec.p) << '\n';
            out << prefix << ".x0=" << fmt17(spec.x0) << '\n';
            break;
        case MaskKind::Tent:
            out << prefix << ".a=" << fmt17(spec.a) << '\n';
            out << prefix << ".x0=" << fmt17(spec.x0) << '\n';
            break;
        case MaskKind::KaplanYorke:
            out << prefix << ".a=" << fmt17(spec.a) << '\n';
            out << prefix << ".b=" << fmt17(spec.b) << '\n';
            out << prefix << ".x0=" << fmt17(spec.x0) << '\n';
            out << prefix << ".y0=" << fmt17(spec.y0) << '\n';
            break;
    }
}

}  // namespace

EncryptionKey read_key(const std::filesystem::path& path) {
    const KeyFileData data = parse_key_lines(path);
    std::vector<std::string> known_keys;

    const auto alg_it = data.values.find("algorithm");
    if (alg_it == data.values.end()) {
        throw FormatError("key file: missing field 'algorithm'");
    }
    const auto alg = algorithm_from_string(alg_it->second);
    if (!alg) {
        throw FormatError("key file line " + std::to_string(data.lines.at("algorithm")) +
                          ": unknown algorithm '" + alg_it->second + "'");
    }
    known_keys.push_back("algorithm");

    EncryptionKey key;
    key.algorithm = *alg;
    key.alpha = parse_double_field(data, "alpha");
    key.beta = parse_double_field(data, "beta");
    key.gamma = parse_double_field(data, "gamma");
    key.delta = parse_double_field(data, "delta");
    known_keys.insert(known_keys.end(), {"alpha", "beta", "gamma", "delta"});

    std::int64_t shared_burn_in = 1000;
    if (data.values.count("burn_in") != 0) {
        shared_burn_in = static_cast<std::int64_t>(parse_u64_field(data, "burn_in"));
        known_keys.push_back("burn_in");
    }
    key.mask1 = parse_mask(data, "mask1", shared_burn_in, known_keys);
    key.mask2 = parse_mask(data, "mask2", shared_burn_in, known_keys);

    for (const auto& [k, v] : data.values) {
        if (std::find(known_keys.begin(), known_keys.end(), k) == known_keys.end()) {
            throw FormatError("key file line " + std::to_string(data.lines.at(k)) +
                              ": unknown key '" + k + "'");
        }
    }

    try {
        key.validate();
    } catch (const InvalidArgument& e) {
        throw FormatError("key file " + path.string() + ": " + e.what());
    }
    return key;
}

void write_key(const EncryptionKey& key, const std::filesystem::path& path) {
    key.validate();
    std::ostringstream out;
    out << "algorithm=" << to_string(key.algorithm) << '\n';
    out << "alpha=" << fmt17(key.alpha) << '\n';
    out << "beta=" << fmt17(key.beta) << '\n';
    out << "gamma=" << fmt17(key.gamma) << '\n';
    out << "delta=" << fmt17(key.delta) << '\n';
    if (key.mask1.burn_in == key.mask2.burn_in) {
        out << "burn_in=" << key.mask1.burn_in << '\n';
    }
    write_mask(out, "mask1", key.mask1);
    write_mask(out, "mask2", key.mask2);
    if (key.mask1.burn_in != key.mask2.burn_in) {
        out << "mask1.burn_in=" << key.mask1.burn_in << '\n';
        out << "mask2.burn_in=" << key.mask2.burn_in << '\n';
    }

    std::ofstream file(path, std::ios::trunc);
    if (!file) {
        throw IoError("cannot open for writing: " + path.string());
    }
    file << out.str();
    if (!file) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace frtc
