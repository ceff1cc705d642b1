#include "frtc/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>

namespace frtc {

namespace {

double mse_one(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("MSE operands must have identical dimensions");
    }
    return (a - b).squaredNorm() / static_cast<double>(a.size());
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

MseTriple mse_channels(const ComplexChannels& a, const ComplexChannels& b) {
    return {mse_one(a[0], b[0]), mse_one(a[1], b[1]), mse_one(a[2], b[2])};
}

MseTriple mse_channels(const PlainImage& a, const ComplexChannels& b) {
    return mse_channels(to_complex(a), b);
}

MseTriple mse_channels(const PlainImage& a, const PlainImage& b) {
    return mse_channels(to_complex(a), to_complex(b));
}

std::vector<SweepRow> sweep_orders(const PlainImage& image, const EncryptionKey& key,
                                   const std::vector<double>& orders, SweepMode mode,
                                   const PipelineOptions& options) {
    if (orders.empty()) {
        throw InvalidArgument("sweep needs a nonempty order list");
    }
    key.validate();
    std::vector<SweepRow> rows;
    rows.reserve(orders.size());
    if (mode == SweepMode::DecryptOrder) {
        const EncryptedImage enc = encrypt(image, key, options);
        for (double v : orders) {
            const ComplexChannels dec = decrypt(enc, key.with_orders(v, v, v, v), options);
            rows.push_back({v, mse_channels(image, dec)});
        }
    } else {
        for (double v : orders) {
            const EncryptionKey kv = key.with_orders(v, v, v, v);
            const EncryptedImage enc = encrypt(image, kv, options);
            const ComplexChannels dec = decrypt(enc, kv, options);
            rows.push_back({v, mse_channels(image, dec)});
        }
    }
    return rows;
}

double time_pipeline(const PlainImage& image, const EncryptionKey& key, int repeats,
                     bool cache_enabled) {
    if (repeats < 1) {
        throw InvalidArgument("repeats must be >= 1");
    }
    PipelineOptions options;
    options.plans = PlanSource(cache_enabled ? PlanSource::Cache::Shared
                                             : PlanSource::Cache::None);
    options.parallel_channels = false;

    const auto run_once = [&] {
        const EncryptedImage enc = encrypt(image, key, options);
        const ComplexChannels dec = decrypt(enc, key, options);
        // Fold a value into a volatile sink so the round trip cannot be elided.
        volatile double sink = dec[0](0, 0).real();
        (void)sink;
    };

    run_once();  // warm-up, excluded
    std::vector<double> seconds(static_cast<std::size_t>(repeats));
    for (auto& s : seconds) {
        const auto t0 = std::chrono::steady_clock::now();
        run_once();
        const auto t1 = std::chrono::steady_clock::now();
        s = std::chrono::duration<double>(t1 - t0).count();
    }
    return median_of(std::move(seconds));
}

void validate_bench_pair(const EncryptionKey& baseline, const EncryptionKey& proposed) {
    baseline.validate();
    proposed.validate();
    if (is_dwt_variant(baseline.algorithm) || !is_dwt_variant(proposed.algorithm)) {
        throw InvalidArgument("bench pair must be baseline A3x paired with proposed A4x");
    }
    if (mask_kind_for(baseline.algorithm) != mask_kind_for(proposed.algorithm)) {
        throw InvalidArgument("bench pair must share one mask family (A31:A41, A32:A42, A33:A43)");
    }
    EncryptionKey probe = proposed;
    probe.algorithm = baseline.algorithm;
    if (!(probe == baseline)) {
        throw InvalidArgument("bench pair keys must differ only in algorithm");
    }
}

std::vector<TimingRow> speedup_report(const PlainImage& image, const EncryptionKey& baseline,
                                      const EncryptionKey& proposed,
                                      const std::vector<double>& orders, int repeats,
                                      bool cache_enabled) {
    validate_bench_pair(baseline, proposed);
    if (orders.empty()) {
        throw InvalidArgument("speedup report needs a nonempty order list");
    }
    std::vector<TimingRow> rows;
    rows.reserve(orders.size());
    for (double v : orders) {
        TimingRow row;
        row.order = v;
        row.baseline_seconds =
            time_pipeline(image, baseline.with_orders(v, v, v, v), repeats, cache_enabled);
        row.proposed_seconds =
            time_pipeline(image, proposed.with_orders(v, v, v, v), repeats, cache_enabled);
        row.ratio = row.baseline_seconds / row.proposed_seconds;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "order,mse_r,mse_g,mse_b\n";
    for (const auto& row : rows) {
        out << fmt17(row.order) << ',' << fmt17(row.mse.r) << ',' << fmt17(row.mse.g) << ','
            << fmt17(row.mse.b) << '\n';
    }
}

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
    out << "order,baseline_s,proposed_s,ratio\n";
    for (const auto& row : rows) {
        out << fmt17(row.order) << ',' << fmt17(row.baseline_seconds) << ','
            << fmt17(row.proposed_seconds) << ',' << fmt17(row.ratio) << '\n';
    }
}

void write_mse_csv(std::ostream& out, const MseTriple& mse) {
    out << "mse_r,mse_g,mse_b\n"
        << fmt17(mse.r) << ',' << fmt17(mse.g) << ',' << fmt17(mse.b) << '\n';
}

}  // namespace frtc
