#pragma once

#include <algorithm>
#include <iosfwd>
#include <vector>

#include "frtc/pipeline.hpp"
#include "frtc/types.hpp"

namespace frtc {

/// Per-channel mean squared error on 0-255-scale intensities.
struct MseTriple {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    double max_channel() const { return std::max(r, std::max(g, b)); }
};

/// Mean over all pixels of |a - b|^2, per channel. Complex differences use
/// the squared modulus.
MseTriple mse_channels(const ComplexChannels& a, const ComplexChannels& b);
MseTriple mse_channels(const PlainImage& a, const ComplexChannels& b);
MseTriple mse_channels(const PlainImage& a, const PlainImage& b);

struct SweepRow {
    double order = 0.0;
    MseTriple mse;
};

enum class SweepMode {
    DecryptOrder,  // encrypt once with the key, decrypt each row at order v
    BothOrders,    // encrypt and decrypt both at order v
};

std::vector<SweepRow> sweep_orders(const PlainImage& image, const EncryptionKey& key,
                                   const std::vector<double>& orders, SweepMode mode,
                                   const PipelineOptions& options = {});

/// Median wall-clock seconds of a full encrypt+decrypt, over `repeats`
/// timed runs after one discarded warm-up. Strictly serial; the cache flag
/// decides whether plan construction is charged to every run.
double time_pipeline(const PlainImage& image, const EncryptionKey& key, int repeats,
                     bool cache_enabled);

struct TimingRow {
    double order = 0.0;
    double baseline_seconds = 0.0;
    double proposed_seconds = 0.0;
    double ratio = 0.0;
};

/// Throws InvalidArgument unless the keys differ only in algorithm, with a
/// matching baseline/proposed family pair (A31:A41, A32:A42, A33:A43).
void validate_bench_pair(const EncryptionKey& baseline, const EncryptionKey& proposed);

/// One TimingRow per order: both keys re-timed with all four orders set to
/// that value.
std::vector<TimingRow> speedup_report(const PlainImage& image, const EncryptionKey& baseline,
                                      const EncryptionKey& proposed,
                                      const std::vector<double>& orders, int repeats,
                                      bool cache_enabled);

// CSV schemas; floating point is printed with 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows);
void write_mse_csv(std::ostream& out, const MseTriple& mse);

}  // namespace frtc
