#include "frtc/dwt.hpp"

namespace frtc {

SubbandSet dwt2_haar(const CMatrix& channel) {
    const Index rows = channel.rows();
    const Index cols = channel.cols();
    if (rows < 2 || cols < 2) {
        throw DimensionError("dwt2_haar needs at least a 2x2 input");
    }
    if (rows % 2 != 0 || cols % 2 != 0) {
        throw DimensionError("dwt2_haar requires even dimensions (odd input is not padded)");
    }
    const Index hr = rows / 2;
    const Index hc = cols / 2;
    SubbandSet sb{CMatrix(hr, hc), CMatrix(hr, hc), CMatrix(hr, hc), CMatrix(hr, hc)};
    for (Index i = 0; i < hr; ++i) {
        for (Index j = 0; j < hc; ++j) {
            const Complex a = channel(2 * i, 2 * j);
            const Complex b = channel(2 * i, 2 * j + 1);
            const Complex c = channel(2 * i + 1, 2 * j);
            const Complex d = channel(2 * i + 1, 2 * j + 1);
            sb.ll(i, j) = 0.5 * (a + b + c + d);
            sb.lh(i, j) = 0.5 * (a - b + c - d);
            sb.hl(i, j) = 0.5 * (a + b - c - d);
            sb.hh(i, j) = 0.5 * (a - b - c + d);
        }
    }
    return sb;
}

CMatrix idwt2_haar(const SubbandSet& sb) {
    const Index hr = sb.ll.rows();
    const Index hc = sb.ll.cols();
    if (sb.lh.rows() != hr || sb.lh.cols() != hc ||
        sb.hl.rows() != hr || sb.hl.cols() != hc ||
        sb.hh.rows() != hr || sb.hh.cols() != hc) {
        throw DimensionError("idwt2_haar: subband dimensions disagree");
    }
    if (hr < 1 || hc < 1) {
        throw DimensionError("idwt2_haar: empty subbands");
    }
    CMatrix out(2 * hr, 2 * hc);
    for (Index i = 0; i < hr; ++i) {
        for (Index j = 0; j < hc; ++j) {
            const Complex ll = sb.ll(i, j);
            const Complex lh = sb.lh(i, j);
            const Complex hl = sb.hl(i, j);
            const Complex hh = sb.hh(i, j);
            out(2 * i, 2 * j) = 0.5 * (ll + lh + hl + hh);
            out(2 * i, 2 * j + 1) = 0.5 * (ll - lh + hl - hh);
            out(2 * i + 1, 2 * j) = 0.5 * (ll + lh - hl - hh);
            out(2 * i + 1, 2 * j + 1) = 0.5 * (ll - lh - hl + hh);
        }
    }
    return out;
}

}  // namespace frtc
