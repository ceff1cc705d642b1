#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "frtc/chaos.hpp"
#include "frtc/frft.hpp"
#include "frtc/types.hpp"

namespace frtc {

/// The six encryption/decryption schemes. A3x work on full-resolution
/// channels; A4x encrypt only the LL subband of a single-level Haar
/// decomposition. The second digit selects the mask family: 1 = seeded
/// uniform phases, 2 = logistic-map CRPM, 3 = Kaplan-Yorke CRPM.
enum class Algorithm : std::uint8_t {
    A31 = 0x31,
    A32 = 0x32,
    A33 = 0x33,
    A41 = 0x41,
    A42 = 0x42,
    A43 = 0x43,
};

std::string to_string(Algorithm alg);
std::optional<Algorithm> algorithm_from_string(std::string_view name);
std::optional<Algorithm> algorithm_from_code(std::uint8_t code);

bool is_dwt_variant(Algorithm alg);
MaskKind mask_kind_for(Algorithm alg);

/// The entire secret: scheme id, the four fractional orders, and the two
/// mask generators. Masks are stored as generator parameters, not
/// materialized matrices, so one key serves full- and half-resolution use.
struct EncryptionKey {
    Algorithm algorithm = Algorithm::A31;
    double alpha = 0.5;
    double beta = 0.5;
    double gamma = 0.5;
    double delta = 0.5;
    MaskSpec mask1;
    MaskSpec mask2;

    /// Checks mask kinds against the algorithm family, mask parameter
    /// bounds, finite orders, and that the two masks differ.
    void validate() const;

    EncryptionKey with_orders(double a, double b, double g, double d) const;

    friend bool operator==(const EncryptionKey&, const EncryptionKey&) = default;
};

/// Builds mask1/mask2 specs with documented default parameters for the
/// given algorithm family (used by keygen and the bench harness).
std::pair<MaskSpec, MaskSpec> default_mask_pair(Algorithm alg);

struct PlainImage {
    std::array<RMatrix, 3> channels;  // R, G, B in [0, 255]

    Index rows() const { return channels[0].rows(); }
    Index cols() const { return channels[0].cols(); }
};

using ComplexChannels = std::array<CMatrix, 3>;

struct EncryptedImage {
    Algorithm algorithm = Algorithm::A31;
    ComplexChannels channels;

    Index rows() const { return channels[0].rows(); }
    Index cols() const { return channels[0].cols(); }
};

struct PipelineOptions {
    PlanSource plans{};
    bool parallel_channels = true;
};

ComplexChannels to_complex(const PlainImage& image);
/// Real parts, for display/save paths. Imaginary residue is discarded.
PlainImage to_plain(const ComplexChannels& channels);

/// Materialize the key's two masks at the resolution the algorithm needs:
/// image-sized for A3x, half-sized (LL subband) for A4x.
std::pair<PhaseMask, PhaseMask> masks_for(const EncryptionKey& key, Index rows, Index cols);

/// Double random phase encoding of one channel:
///   g = F_{gamma,delta}( F_{alpha,beta}( ch .* m1 ) .* m2 )
CMatrix encrypt_channel_baseline(const CMatrix& channel, const PhaseMask& m1,
                                 const PhaseMask& m2, const EncryptionKey& key,
                                 const PlanSource& plans);
CMatrix decrypt_channel_baseline(const CMatrix& channel, const PhaseMask& m1,
                                 const PhaseMask& m2, const EncryptionKey& key,
                                 const PlanSource& plans);

/// DWT-accelerated variant: the FRFT chain touches only the LL subband,
///   ll' = F_{alpha,beta}( F_{gamma,delta}( ll .* m1 ) .* m2 )
/// and LH/HL/HH pass through untouched.
CMatrix encrypt_channel_dwt(const CMatrix& channel, const PhaseMask& m1,
                            const PhaseMask& m2, const EncryptionKey& key,
                            const PlanSource& plans);
CMatrix decrypt_channel_dwt(const CMatrix& channel, const PhaseMask& m1,
                            const PhaseMask& m2, const EncryptionKey& key,
                            const PlanSource& plans);

EncryptedImage encrypt(const PlainImage& image, const EncryptionKey& key,
                       const PipelineOptions& options = {});

/// Inverse chain. Returns complex channels; callers take the real part for
/// display while MSE is evaluated on the complex difference.
ComplexChannels decrypt(const EncryptedImage& encrypted, const EncryptionKey& key,
                        const PipelineOptions& options = {});

}  // namespace frtc
