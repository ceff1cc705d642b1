#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frtc/chaos.hpp"
#include "frtc/container.hpp"
#include "frtc/metrics.hpp"
#include "frtc/pipeline.hpp"
#include "frtc/types.hpp"
#include "selftest.hpp"

namespace {

using namespace frtc;

// Exit codes: 0 success, 1 usage error, 2 data/format error, 3 selftest failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_order_range(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ':')) {
        try {
            std::size_t pos = 0;
            parts.push_back(std::stod(piece, &pos));
            if (pos != piece.size()) throw std::invalid_argument("junk");
        } catch (const std::exception&) {
            throw UsageError("malformed order range '" + text + "' (expected start:step:end)");
        }
    }
    if (parts.size() != 3) {
        throw UsageError("malformed order range '" + text + "' (expected start:step:end)");
    }
    const double start = parts[0];
    const double step = parts[1];
    const double end = parts[2];
    if (step <= 0.0 || end < start) {
        throw UsageError("order range must have step > 0 and end >= start");
    }
    // k max from exact arithmetic on the printed decimals, so 0:0.1:1 yields
    // exactly 11 rows instead of losing the endpoint to float accumulation.
    const double span = (end - start) / step;
    long long kmax = std::llround(span);
    if (std::abs(span - static_cast<double>(kmax)) > 1e-9 * std::max(1.0, std::abs(span))) {
        kmax = static_cast<long long>(std::floor(span + 1e-12));
    }
    std::vector<double> orders;
    orders.reserve(static_cast<std::size_t>(kmax) + 1);
    for (long long k = 0; k <= kmax; ++k) {
        orders.push_back(start + static_cast<double>(k) * step);
    }
    return orders;
}

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        std::size_t pos = 0;
        out.push_back(std::stod(piece, &pos));
        if (pos != piece.size()) throw std::invalid_argument("junk in number list");
    }
    return out;
}

MaskSpec seed_arg_to_spec(const std::string& arg, MaskSpec defaults) {
    if (arg.empty()) return defaults;
    MaskSpec spec = defaults;
    try {
        switch (defaults.kind) {
            case MaskKind::UniformRandom: {
                std::size_t pos = 0;
                spec.seed = std::stoull(arg, &pos);
                if (pos != arg.size()) throw std::invalid_argument("junk");
                break;
            }
            case MaskKind::Logistic: {
                const auto vals = parse_csv_doubles(arg);
                if (vals.size() == 1) {
                    spec.x0 = vals[0];
                } else if (vals.size() == 2) {
                    spec.p = vals[0];
                    spec.x0 = vals[1];
                } else {
                    throw std::invalid_argument("count");
                }
                break;
            }
            case MaskKind::Tent: {
                const auto vals = parse_csv_doubles(arg);
                if (vals.size() == 1) {
                    spec.x0 = vals[0];
                } else if (vals.size() == 2) {
                    spec.a = vals[0];
                    spec.x0 = vals[1];
                } else {
                    throw std::invalid_argument("count");
                }
                break;
            }
            case MaskKind::KaplanYorke: {
                const auto vals = parse_csv_doubles(arg);
                if (vals.size() == 2) {
                    spec.x0 = vals[0];
                    spec.y0 = vals[1];
                } else if (vals.size() == 4) {
                    spec.a = vals[0];
                    spec.b = vals[1];
                    spec.x0 = vals[2];
                    spec.y0 = vals[3];
                } else {
                    throw std::invalid_argument("count");
                }
                break;
            }
        }
    } catch (const std::exception&) {
        throw UsageError("cannot parse seed argument '" + arg + "' for mask kind " +
                         to_string(defaults.kind));
    }
    return spec;
}

ComplexChannels load_any(const std::filesystem::path& path) {
    if (is_container_file(path)) {
        return load_container(path).channels;
    }
    return to_complex(load_image(path));
}

void write_matrix_csv(const std::filesystem::path& path, const RMatrix& m) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    char buf[64];
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
            out << buf << (c + 1 < m.cols() ? "," : "");
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

struct CommonFlags {
    int threads = 0;  // 0 = auto (channel-level parallelism), 1 = serial
};

PipelineOptions pipeline_options(const CommonFlags& flags, bool cache_enabled = true) {
    PipelineOptions options;
    options.plans = PlanSource(cache_enabled ? PlanSource::Cache::Shared : PlanSource::Cache::None);
    options.parallel_channels = flags.threads != 1;
    return options;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional-Fourier image encryption with chaotic phase masks"};
    app.require_subcommand(1);

    // keygen
    auto* keygen = app.add_subcommand("keygen", "write a key file");
    std::string kg_algorithm;
    std::string kg_orders = "0.5,0.5,0.5,0.5";
    std::string kg_seed1, kg_seed2, kg_out;
    std::int64_t kg_burn_in = 1000;
    keygen->add_option("--algorithm", kg_algorithm, "A31|A32|A33|A41|A42|A43")->required();
    keygen->add_option("--orders", kg_orders, "alpha,beta,gamma,delta (default 0.5,0.5,0.5,0.5)");
    keygen->add_option("--seed1", kg_seed1,
                       "mask1 parameters: uniform seed | [p,]x0 | [a,]x0 | [a,b,]x0,y0");
    keygen->add_option("--seed2", kg_seed2, "mask2 parameters, same shape as --seed1");
    keygen->add_option("--burn-in", kg_burn_in, "chaotic transient iterations to discard");
    keygen->add_option("--out", kg_out, "output key file")->required();

    // encrypt
    auto* encrypt_cmd = app.add_subcommand("encrypt", "encrypt an image into a FRTC container");
    std::string en_in, en_key, en_out, en_preview;
    CommonFlags en_flags;
    encrypt_cmd->add_option("--in", en_in, "input image (8-bit PNG/TIFF)")->required();
    encrypt_cmd->add_option("--key", en_key, "key file")->required();
    encrypt_cmd->add_option("--out", en_out, "output container (.frtc)")->required();
    encrypt_cmd->add_option("--preview", en_preview, "optional magnitude preview image");
    encrypt_cmd->add_option("--threads", en_flags.threads, "1 = serial, otherwise per-channel");

    // decrypt
    auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt a FRTC container");
    std::string de_in, de_key, de_out;
    CommonFlags de_flags;
    decrypt_cmd->add_option("--in", de_in, "input container")->required();
    decrypt_cmd->add_option("--key", de_key, "key file")->required();
    decrypt_cmd->add_option("--out", de_out,
                            ".png/.tif writes the real part as 8-bit; .frtc keeps full precision")
        ->required();
    decrypt_cmd->add_option("--threads", de_flags.threads, "1 = serial, otherwise per-channel");

    // mse
    auto* mse_cmd = app.add_subcommand("mse", "per-channel MSE between two images/containers");
    std::string ms_a, ms_b, ms_out;
    mse_cmd->add_option("--a", ms_a, "image or container")->required();
    mse_cmd->add_option("--b", ms_b, "image or container")->required();
    mse_cmd->add_option("--out", ms_out, "write CSV here instead of stdout");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "MSE as a function of decryption order");
    std::string sw_in, sw_key, sw_orders = "0:0.1:1", sw_out, sw_mode = "decrypt-order";
    CommonFlags sw_flags;
    sweep_cmd->add_option("--in", sw_in, "input image")->required();
    sweep_cmd->add_option("--key", sw_key, "key file")->required();
    sweep_cmd->add_option("--orders", sw_orders, "start:step:end inclusive");
    sweep_cmd->add_option("--out", sw_out, "output CSV")->required();
    sweep_cmd->add_option("--mode", sw_mode, "decrypt-order (default) or both-orders");
    sweep_cmd->add_option("--threads", sw_flags.threads, "1 = serial, otherwise per-channel");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "baseline-vs-proposed timing table");
    std::string be_in, be_pair, be_orders = "0:0.1:1", be_out, be_cache = "off", be_key;
    int be_repeats = 5;
    bench_cmd->add_option("--in", be_in, "input image")->required();
    bench_cmd->add_option("--pair", be_pair, "A31:A41, A32:A42 or A33:A43")->required();
    bench_cmd->add_option("--orders", be_orders, "start:step:end inclusive");
    bench_cmd->add_option("--repeats", be_repeats, "timed runs per measurement (median)");
    bench_cmd->add_option("--cache", be_cache, "on|off: reuse transform plans across runs");
    bench_cmd->add_option("--key", be_key, "optional key file supplying mask parameters");
    bench_cmd->add_option("--out", be_out, "output CSV")->required();

    // mask-dump
    auto* mask_cmd = app.add_subcommand("mask-dump", "dump a key's chaotic map and mask phase");
    std::string md_key, md_out_s, md_out_phase;
    int md_mask = 1;
    Index md_rows = 256, md_cols = 256;
    mask_cmd->add_option("--key", md_key, "key file")->required();
    mask_cmd->add_option("--mask", md_mask, "which mask, 1 or 2")->check(CLI::Range(1, 2));
    mask_cmd->add_option("--rows", md_rows, "mask rows");
    mask_cmd->add_option("--cols", md_cols, "mask cols");
    mask_cmd->add_option("--out-s", md_out_s, "CSV for the real field S");
    mask_cmd->add_option("--out-phase", md_out_phase, "CSV for the mask phase (radians)");

    // selftest
    auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in invariant suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (keygen->parsed()) {
            const auto alg = algorithm_from_string(kg_algorithm);
            if (!alg) throw UsageError("unknown algorithm '" + kg_algorithm + "'");
            const auto orders = parse_csv_doubles(kg_orders);
            if (orders.size() != 4) throw UsageError("--orders needs four comma-separated values");
            EncryptionKey key;
            key.algorithm = *alg;
            key.alpha = orders[0];
            key.beta = orders[1];
            key.gamma = orders[2];
            key.delta = orders[3];
            auto [d1, d2] = default_mask_pair(*alg);
            d1.burn_in = kg_burn_in;
            d2.burn_in = kg_burn_in;
            key.mask1 = seed_arg_to_spec(kg_seed1, d1);
            key.mask2 = seed_arg_to_spec(kg_seed2, d2);
            write_key(key, kg_out);
        } else if (encrypt_cmd->parsed()) {
            const EncryptionKey key = read_key(en_key);
            const PlainImage image = load_image(en_in);
            const EncryptedImage enc = encrypt(image, key, pipeline_options(en_flags));
            save_container(enc, en_out);
            if (!en_preview.empty()) export_preview(enc, en_preview);
        } else if (decrypt_cmd->parsed()) {
            const EncryptionKey key = read_key(de_key);
            const EncryptedImage enc = load_container(de_in);
            const ComplexChannels dec = decrypt(enc, key, pipeline_options(de_flags));
            std::filesystem::path out_path(de_out);
            std::string ext = out_path.extension().string();
            for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (ext == ".frtc") {
                EncryptedImage full;
                full.algorithm = key.algorithm;
                full.channels = dec;
                save_container(full, out_path);
            } else {
                save_image(to_plain(dec), out_path);
            }
        } else if (mse_cmd->parsed()) {
            const ComplexChannels a = load_any(ms_a);
            const ComplexChannels b = load_any(ms_b);
            const MseTriple mse = mse_channels(a, b);
            if (ms_out.empty()) {
                write_mse_csv(std::cout, mse);
            } else {
                std::ofstream out(ms_out, std::ios::trunc);
                if (!out) throw IoError("cannot open for writing: " + ms_out);
                write_mse_csv(out, mse);
            }
        } else if (sweep_cmd->parsed()) {
            const EncryptionKey key = read_key(sw_key);
            const PlainImage image = load_image(sw_in);
            const auto orders = parse_order_range(sw_orders);
            SweepMode mode;
            if (sw_mode == "decrypt-order") {
                mode = SweepMode::DecryptOrder;
            } else if (sw_mode == "both-orders") {
                mode = SweepMode::BothOrders;
            } else {
                throw UsageError("--mode must be decrypt-order or both-orders");
            }
            const auto rows = sweep_orders(image, key, orders, mode, pipeline_options(sw_flags));
            std::ofstream out(sw_out, std::ios::trunc);
            if (!out) throw IoError("cannot open for writing: " + sw_out);
            write_sweep_csv(out, rows);
        } else if (bench_cmd->parsed()) {
            const auto colon = be_pair.find(':');
            if (colon == std::string::npos) {
                throw UsageError("--pair must look like A31:A41");
            }
            const auto base_alg = algorithm_from_string(be_pair.substr(0, colon));
            const auto prop_alg = algorithm_from_string(be_pair.substr(colon + 1));
            if (!base_alg || !prop_alg) {
                throw UsageError("unknown algorithm in pair '" + be_pair + "'");
            }
            EncryptionKey baseline;
            if (!be_key.empty()) {
                baseline = read_key(be_key);
                baseline.algorithm = *base_alg;
            } else {
                baseline.algorithm = *base_alg;
                std::tie(baseline.mask1, baseline.mask2) = default_mask_pair(*base_alg);
            }
            EncryptionKey proposed = baseline;
            proposed.algorithm = *prop_alg;
            try {
                validate_bench_pair(baseline, proposed);
            } catch (const InvalidArgument& e) {
                throw UsageError(e.what());
            }
            if (be_cache != "on" && be_cache != "off") {
                throw UsageError("--cache must be on or off");
            }
            if (be_repeats < 1) throw UsageError("--repeats must be >= 1");
            const PlainImage image = load_image(be_in);
            const auto orders = parse_order_range(be_orders);
            const auto rows =
                speedup_report(image, baseline, proposed, orders, be_repeats, be_cache == "on");
            std::ofstream out(be_out, std::ios::trunc);
            if (!out) throw IoError("cannot open for writing: " + be_out);
            write_timing_csv(out, rows);
        } else if (mask_cmd->parsed()) {
            if (md_out_s.empty() && md_out_phase.empty()) {
                throw UsageError("mask-dump needs --out-s and/or --out-phase");
            }
            const EncryptionKey key = read_key(md_key);
            const MaskSpec& spec = (md_mask == 1) ? key.mask1 : key.mask2;
            if (!md_out_s.empty()) {
                write_matrix_csv(md_out_s, mask_real_field(spec, md_rows, md_cols));
            }
            if (!md_out_phase.empty()) {
                const PhaseMask mask = make_mask(spec, md_rows, md_cols);
                write_matrix_csv(md_out_phase, mask.values.cwiseArg());
            }
        } else if (selftest_cmd->parsed()) {
            if (!frtc_cli::run_selftest()) {
                std::cerr << "selftest: FAILED\n";
                return kExitNumeric;
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}
