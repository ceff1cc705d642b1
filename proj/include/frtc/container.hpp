#pragma once

#include <filesystem>

#include "frtc/pipeline.hpp"
#include "frtc/types.hpp"

namespace frtc {

/// On-disk format for encrypted images ("FRTC" container):
///
///   offset  size  field
///        0     4  magic "FRTC"
///        4     2  version, little-endian u16, currently 1
///        6     1  algorithm code (0x31,0x32,0x33,0x41,0x42,0x43)
///        7     4  width  (columns), little-endian u32
///       11     4  height (rows),    little-endian u32
///       15     1  channel count, 3
///       16     .  payload: channels R,G,B, each row-major, each element as
///                 little-endian IEEE-754 float64 real part then float64
///                 imaginary part
///
/// Total size is 16 + 3*width*height*16 bytes. Containers never hold key
/// material. Round trips are bit-exact.
inline constexpr char kContainerMagic[4] = {'F', 'R', 'T', 'C'};
inline constexpr std::uint16_t kContainerVersion = 1;

void save_container(const EncryptedImage& image, const std::filesystem::path& path);
EncryptedImage load_container(const std::filesystem::path& path);

/// True when the file starts with the container magic.
bool is_container_file(const std::filesystem::path& path);

/// 8-bit PNG or TIFF, RGB or grayscale (grayscale is promoted to three
/// identical channels). Values come back as real matrices in [0, 255].
PlainImage load_image(const std::filesystem::path& path);

/// Clamps to [0, 255], rounds, writes 8-bit RGB.
void save_image(const PlainImage& image, const std::filesystem::path& path);

/// Per channel: magnitude, min-max normalized to [0, 255], written 8-bit RGB.
void export_preview(const EncryptedImage& image, const std::filesystem::path& path);

/// Plain-text key files: `key=value` lines, `#` comments, UTF-8.
/// Keys: algorithm, alpha, beta, gamma, delta, burn_in, and per mask
/// (prefix mask1./mask2.): kind, then the generator parameters the kind
/// needs (logistic: p,x0; tent: a,x0; kaplan-yorke: a,b,x0,y0;
/// uniform-random: seed), plus an optional per-mask burn_in override.
/// Orders and mask parameters are printed with 17 significant digits, so a
/// write/read round trip reproduces the key exactly.
EncryptionKey read_key(const std::filesystem::path& path);
void write_key(const EncryptionKey& key, const std::filesystem::path& path);

}  // namespace frtc
