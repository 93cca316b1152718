#pragma once

#include "hcseq/curves.hpp"
#include "hcseq/datasets.hpp"
#include "hcseq/error.hpp"
#include "hcseq/imaging.hpp"
#include "hcseq/parallel.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hcseq {

// Binary tensor archive, version 1. All integers little-endian.
//
//   offset size  field
//        0    8  magic "HCSQTNSR"
//        8    4  version (1)
//       12    4  layout: 0 hilbert, 1 reshape, 2 snake, 3 diagsnake, 4 flat
//       16    4  curve order (0 for flat)
//       20    4  k
//       24    4  height H
//       28    4  width W
//       32    4  channels C = 4^k
//       36    4  crop_begin (first kept row of the uncropped grid)
//       40    4  crop_end (one past the last kept row)
//       44    4  sequence length in bases
//       48    4  code width in bytes (2 when 4^k < 65536, else 4)
//       52    4  number of classes
//       56    8  record count N
//       64       N records of: label (u32), H*W codes (code width each, row-major)
//
// Empty pixels hold the sentinel code C. One-hot channels are expanded by the
// reader, never stored.

inline constexpr std::array<char, 8> archive_magic{'H', 'C', 'S', 'Q', 'T', 'N', 'S', 'R'};
inline constexpr std::uint32_t archive_version = 1;
inline constexpr std::uint32_t flat_layout_code = 4;
inline constexpr std::size_t archive_header_size = 64;

struct ArchiveHeader {
    std::optional<CurveKind> curve; ///< nullopt for the flat layout
    std::uint32_t order = 0;
    std::uint32_t k = 1;
    std::uint32_t height = 0;
    std::uint32_t width = 0;
    std::uint32_t crop_begin = 0;
    std::uint32_t crop_end = 0;
    std::uint32_t sequence_length = 0;
    std::uint32_t num_classes = 0;

    std::uint32_t channels() const noexcept { return static_cast<std::uint32_t>(kmer_space(k)); }
    std::uint32_t sentinel() const noexcept { return channels(); }
    std::uint32_t code_width() const noexcept { return sentinel() < 0x10000u ? 2 : 4; }
    std::size_t pixel_count() const noexcept { return std::size_t{height} * width; }

    friend bool operator==(const ArchiveHeader&, const ArchiveHeader&) = default;
};

struct ArchiveRecord {
    std::uint32_t label = 0;
    std::vector<KmerCode> pixels;
};

struct TensorArchive {
    ArchiveHeader header;
    std::vector<ArchiveRecord> records;

    /// Rebuilds the image of record i with its provenance.
    SequenceImage image(std::size_t i) const {
        const auto& h = header;
        SequenceImage img;
        img.height = h.height;
        img.width = h.width;
        img.pixels = records.at(i).pixels;
        img.provenance = {h.curve, h.order, h.crop_begin, h.crop_end, h.k, h.sequence_length};
        return img;
    }
};

inline ArchiveHeader header_for(const SequenceImage& img, std::uint32_t num_classes) {
    const auto& p = img.provenance;
    return {p.curve, p.order, p.k, img.height, img.width, p.crop_begin, p.crop_end,
            static_cast<std::uint32_t>(p.sequence_length), num_classes};
}

namespace detail {

template <class T>
void put_le(std::ostream& out, T value) {
    std::array<char, sizeof(T)> bytes{};
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
        throw data_error("truncated tensor archive");
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(T{bytes[i]} << (8 * i));
    return value;
}

} // namespace detail

inline void write_archive(std::ostream& out, const TensorArchive& archive) {
    const auto& h = archive.header;
    out.write(archive_magic.data(), archive_magic.size());
    detail::put_le<std::uint32_t>(out, archive_version);
    detail::put_le<std::uint32_t>(out, h.curve ? static_cast<std::uint32_t>(*h.curve) : flat_layout_code);
    detail::put_le<std::uint32_t>(out, h.order);
    detail::put_le<std::uint32_t>(out, h.k);
    detail::put_le<std::uint32_t>(out, h.height);
    detail::put_le<std::uint32_t>(out, h.width);
    detail::put_le<std::uint32_t>(out, h.channels());
    detail::put_le<std::uint32_t>(out, h.crop_begin);
    detail::put_le<std::uint32_t>(out, h.crop_end);
    detail::put_le<std::uint32_t>(out, h.sequence_length);
    detail::put_le<std::uint32_t>(out, h.code_width());
    detail::put_le<std::uint32_t>(out, h.num_classes);
    detail::put_le<std::uint64_t>(out, archive.records.size());
    const bool narrow = h.code_width() == 2;
    for (const auto& rec : archive.records) {
        if (rec.pixels.size() != h.pixel_count())
            throw std::logic_error("record dims do not match the archive header");
        detail::put_le<std::uint32_t>(out, rec.label);
        for (auto code : rec.pixels) {
            if (narrow) detail::put_le<std::uint16_t>(out, static_cast<std::uint16_t>(code));
            else detail::put_le<std::uint32_t>(out, code);
        }
    }
    if (!out) throw data_error("failed writing tensor archive");
}

inline TensorArchive read_archive(std::istream& in) {
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != archive_magic)
        throw data_error("not a tensor archive (bad magic)");
    const auto version = detail::get_le<std::uint32_t>(in);
    if (version != archive_version)
        throw data_error("unsupported tensor archive version " + std::to_string(version));

    TensorArchive a;
    auto& h = a.header;
    const auto layout_code = detail::get_le<std::uint32_t>(in);
    if (layout_code < flat_layout_code) h.curve = static_cast<CurveKind>(layout_code);
    else if (layout_code != flat_layout_code)
        throw data_error("unknown layout code " + std::to_string(layout_code));
    h.order = detail::get_le<std::uint32_t>(in);
    h.k = detail::get_le<std::uint32_t>(in);
    if (h.k < 1 || h.k > max_k) throw data_error("archive k out of range");
    h.height = detail::get_le<std::uint32_t>(in);
    h.width = detail::get_le<std::uint32_t>(in);
    if (detail::get_le<std::uint32_t>(in) != h.channels())
        throw data_error("archive channel count disagrees with k");
    h.crop_begin = detail::get_le<std::uint32_t>(in);
    h.crop_end = detail::get_le<std::uint32_t>(in);
    h.sequence_length = detail::get_le<std::uint32_t>(in);
    if (detail::get_le<std::uint32_t>(in) != h.code_width())
        throw data_error("archive code width disagrees with k");
    h.num_classes = detail::get_le<std::uint32_t>(in);
    if (h.crop_end - h.crop_begin != h.height) throw data_error("archive crop range disagrees with height");
    const auto count = detail::get_le<std::uint64_t>(in);

    const bool narrow = h.code_width() == 2;
    a.records.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 20)));
    for (std::uint64_t r = 0; r < count; ++r) {
        ArchiveRecord rec;
        rec.label = detail::get_le<std::uint32_t>(in);
        if (rec.label >= h.num_classes) throw data_error("record label exceeds class count");
        rec.pixels.resize(h.pixel_count());
        for (auto& code : rec.pixels) {
            code = narrow ? detail::get_le<std::uint16_t>(in) : detail::get_le<std::uint32_t>(in);
            if (code > h.sentinel()) throw data_error("pixel code exceeds sentinel");
        }
        a.records.push_back(std::move(rec));
    }
    if (in.peek() != std::char_traits<char>::eof()) throw data_error("trailing bytes after last record");
    return a;
}

inline void write_archive(const std::string& path, const TensorArchive& archive) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot create " + path);
    write_archive(out, archive);
}

inline TensorArchive read_archive(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open " + path);
    return read_archive(in);
}

/// Where the encoded records came from; copied into the JSON manifest.
struct ArchiveSource {
    std::string path;
    std::size_t skipped = 0;
    std::size_t replaced_bases = 0;
    std::optional<std::string> split_manifest;
};

/// JSON sidecar mirroring the header, plus class names and dataset provenance.
inline nlohmann::ordered_json archive_manifest(const TensorArchive& a,
                                               const std::vector<std::string>& class_names,
                                               const ArchiveSource& source) {
    const auto& h = a.header;
    nlohmann::ordered_json j;
    j["format"] = "hcseq-tensor-archive";
    j["version"] = archive_version;
    j["records"] = a.records.size();
    j["layout"] = h.curve ? std::string(to_string(*h.curve)) : std::string("flat");
    j["order"] = h.order;
    j["k"] = h.k;
    j["height"] = h.height;
    j["width"] = h.width;
    j["channels"] = h.channels();
    j["crop"] = {h.crop_begin, h.crop_end};
    j["sequence_length"] = h.sequence_length;
    j["code_width"] = h.code_width();
    j["sentinel"] = h.sentinel();
    j["byte_order"] = "little";
    j["classes"] = class_names;
    j["source"] = {{"path", source.path},
                   {"skipped", source.skipped},
                   {"replaced_bases", source.replaced_bases}};
    j["split"] = source.split_manifest ? nlohmann::ordered_json(*source.split_manifest) : nullptr;
    return j;
}

struct EncodeOptions {
    std::optional<CurveKind> curve = CurveKind::Hilbert; ///< nullopt for the flat layout
    unsigned k = 4;
    unsigned threads = 1;
};

/// Encodes every record of a dataset into one archive. All records must share
/// a sequence length; otherwise data_error lists the offenders. Records keep
/// their input order whatever the thread count.
inline TensorArchive encode_dataset(const Dataset& ds, const EncodeOptions& opts) {
    if (ds.records.empty()) throw data_error("no records to encode");
    const std::size_t length = ds.records.front().sequence.length();
    std::vector<std::string> offenders;
    std::size_t offender_count = 0;
    for (const auto& r : ds.records)
        if (r.sequence.length() != length && offender_count++ < 10)
            offenders.push_back(r.id + " (" + std::to_string(r.sequence.length()) + ")");
    if (offender_count) {
        std::string msg = "records must share one sequence length (first record has " +
                          std::to_string(length) + "); " + std::to_string(offender_count) +
                          " differ:";
        for (const auto& o : offenders) msg += " " + o;
        if (offender_count > offenders.size()) msg += " ...";
        throw data_error(msg);
    }
    detail::check_k(opts.k);
    if (length < opts.k)
        throw data_error("sequence length " + std::to_string(length) + " is shorter than k");

    const std::size_t num_kmers = length - opts.k + 1;
    std::optional<CurveMapping> curve;
    if (opts.curve) curve.emplace(generate_curve(*opts.curve, required_order(num_kmers)));

    auto encode_one = [&](const LabeledRecord& r) {
        const auto codes = sequence_to_kmers(r.sequence, opts.k);
        return curve ? crop(layout(codes, *curve)) : flatten_1d(codes);
    };

    TensorArchive archive;
    const auto first = encode_one(ds.records.front());
    archive.header = header_for(first, static_cast<std::uint32_t>(ds.class_names.size()));
    archive.records.resize(ds.records.size());
    parallel_blocks(ds.records.size(), opts.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto img = encode_one(ds.records[i]);
            if (img.height != archive.header.height || img.provenance.crop_begin != archive.header.crop_begin)
                throw std::logic_error("record " + ds.records[i].id + " encoded to different dims");
            archive.records[i] = {static_cast<std::uint32_t>(ds.records[i].label), std::move(img.pixels)};
        }
    });
    return archive;
}

/// Recovers the sanitized base sequence of record i.
inline std::string decode_record(const TensorArchive& archive, std::size_t i) {
    return kmers_to_sequence(decode_image(archive.image(i)));
}

} // namespace hcseq
