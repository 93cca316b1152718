#pragma once

#include "hcseq/curves.hpp"
#include "hcseq/error.hpp"
#include "hcseq/kmer.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hcseq {

/// How the k-mer list was placed: along a 2D curve, or as a single row.
struct ImageProvenance {
    std::optional<CurveKind> curve; ///< nullopt for the flat 1 x N layout
    unsigned order = 0;
    std::uint32_t crop_begin = 0; ///< first retained row of the uncropped grid
    std::uint32_t crop_end = 0;   ///< one past the last retained row
    unsigned k = 1;
    std::size_t sequence_length = 0;

    friend bool operator==(const ImageProvenance&, const ImageProvenance&) = default;
};

/// H x W grid of k-mer codes. Empty pixels hold sentinel() == 4^k. The
/// one-hot H x W x 4^k tensor is never stored; see expand_one_hot().
struct SequenceImage {
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::vector<KmerCode> pixels; ///< row-major
    ImageProvenance provenance;

    KmerCode sentinel() const noexcept { return static_cast<KmerCode>(kmer_space(provenance.k)); }
    std::uint64_t channels() const noexcept { return kmer_space(provenance.k); }

    KmerCode at(std::uint32_t row, std::uint32_t col) const {
        return pixels.at(std::size_t{row} * width + col);
    }

    std::size_t filled() const noexcept {
        std::size_t n = 0;
        for (auto p : pixels) n += p != sentinel();
        return n;
    }
};

/// Smallest n with 4^n >= num_kmers.
inline unsigned required_order(std::size_t num_kmers) {
    unsigned n = 0;
    while ((std::uint64_t{1} << (2 * n)) < num_kmers) ++n;
    return n;
}

/// Places codes[i] at the cell the curve visits at step i. The curve must be
/// large enough to hold every code.
inline SequenceImage layout(const KmerIndexList& codes, const CurveMapping& curve) {
    if (codes.size() > curve.size())
        throw usage_error(std::to_string(codes.size()) + " k-mers do not fit a curve of order " +
                          std::to_string(curve.order()));
    SequenceImage img;
    img.height = img.width = curve.side();
    img.provenance = {curve.kind(), curve.order(), 0, curve.side(), codes.k,
                      codes.size() + codes.k - 1};
    img.pixels.assign(curve.size(), img.sentinel());
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const auto p = curve.index_to_point(static_cast<CurveIndex>(i));
        img.pixels[std::size_t{p.row} * img.width + p.col] = codes.codes[i];
    }
    return img;
}

/// Lays codes on a freshly built curve of order required_order(|codes|).
inline SequenceImage layout(const KmerIndexList& codes, CurveKind kind) {
    return layout(codes, generate_curve(kind, required_order(codes.size())));
}

/// Keeps the smallest contiguous row band that holds every filled pixel.
/// Width is never changed.
inline SequenceImage crop(const SequenceImage& img) {
    std::optional<std::uint32_t> first, last;
    for (std::uint32_t r = 0; r < img.height; ++r)
        for (std::uint32_t c = 0; c < img.width; ++c)
            if (img.at(r, c) != img.sentinel()) {
                if (!first) first = r;
                last = r;
                break;
            }
    if (!first) throw data_error("cannot crop an image with no filled pixels");

    SequenceImage out;
    out.width = img.width;
    out.height = *last - *first + 1;
    out.provenance = img.provenance;
    out.provenance.crop_begin = img.provenance.crop_begin + *first;
    out.provenance.crop_end = out.provenance.crop_begin + out.height;
    const auto begin = img.pixels.begin() + std::ptrdiff_t{*first} * img.width;
    out.pixels.assign(begin, begin + std::ptrdiff_t{out.height} * img.width);
    return out;
}

/// The 1 x (L - k + 1) layout used by the sequential network variant.
inline SequenceImage flatten_1d(const KmerIndexList& codes) {
    SequenceImage img;
    img.height = 1;
    img.width = static_cast<std::uint32_t>(codes.size());
    img.provenance = {std::nullopt, 0, 0, 1, codes.k, codes.size() + codes.k - 1};
    img.pixels = codes.codes;
    return img;
}

/// Recovers the k-mer list from the filled pixels of a (possibly cropped)
/// curve image or a flat image. Throws data_error if the filled pixels are
/// not exactly the first N positions of the curve.
inline KmerIndexList decode_image(const SequenceImage& img) {
    KmerIndexList out{img.provenance.k, {}};
    if (!img.provenance.curve) {
        for (auto p : img.pixels) {
            if (p == img.sentinel()) break;
            out.codes.push_back(p);
        }
        if (out.size() != img.filled()) throw data_error("flat image has interior gaps");
        return out;
    }

    const auto curve = generate_curve(*img.provenance.curve, img.provenance.order);
    const std::size_t filled = img.filled();
    constexpr KmerCode unset = ~KmerCode{0};
    out.codes.assign(filled, unset);
    for (std::uint32_t r = 0; r < img.height; ++r)
        for (std::uint32_t c = 0; c < img.width; ++c) {
            const auto code = img.at(r, c);
            if (code == img.sentinel()) continue;
            if (code > img.sentinel()) throw data_error("pixel code exceeds 4^k");
            const auto idx = curve.point_to_index({r + img.provenance.crop_begin, c});
            if (idx >= filled || out.codes[idx] != unset)
                throw data_error("filled pixels are not a prefix of the curve");
            out.codes[idx] = code;
        }
    return out;
}

/// Dense H x W x C one-hot tensor (row-major, channel fastest). Empty pixels
/// are all-zero.
inline std::vector<std::uint8_t> expand_one_hot(const SequenceImage& img) {
    const std::size_t channels = img.channels();
    std::vector<std::uint8_t> dense(img.pixels.size() * channels, 0);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        if (img.pixels[i] != img.sentinel()) dense[i * channels + img.pixels[i]] = 1;
    return dense;
}

} // namespace hcseq
