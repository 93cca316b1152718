#pragma once

// Implementations behind the `hcseq` command-line subcommands. Each takes a
// plain options struct and writes human-readable output to `out`, so the
// commands can be driven from tests without spawning a process.

#include "hcseq/archive.hpp"
#include "hcseq/curve_analysis.hpp"
#include "hcseq/datasets.hpp"
#include "hcseq/error.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hcseq::cli {

inline std::string format_fill(std::size_t filled, std::size_t total) {
    std::ostringstream os;
    os << "fill " << filled << '/' << total << " (";
    if (filled == total) {
        os << "100%";
    } else {
        os << std::fixed << std::setprecision(1) << 100.0 * static_cast<double>(filled) / static_cast<double>(total)
           << '%';
    }
    os << ')';
    return os.str();
}

inline std::string manifest_path_for(const std::string& archive_path) { return archive_path + ".json"; }

inline void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw data_error("cannot create " + path);
    f << contents;
    if (!f) throw data_error("failed writing " + path);
}

struct EncodeArgs {
    std::string input;
    std::string output;
    std::optional<CurveKind> curve = CurveKind::Hilbert; ///< nullopt: --flat
    unsigned k = 4;
    unsigned threads = 1;
    std::optional<std::string> split_manifest;
};

/// Writes `<output>` and its `<output>.json` manifest.
inline TensorArchive cmd_encode(const EncodeArgs& args, std::ostream& out) {
    const auto ds = read_tsv(args.input);
    for (const auto& w : ds.warnings) out << "warning: " << w << '\n';
    const auto archive = encode_dataset(ds, {args.curve, args.k, args.threads});

    std::ostringstream bytes(std::ios::binary);
    write_archive(bytes, archive);
    write_text_file(args.output, bytes.str());
    const auto manifest = archive_manifest(
        archive, ds.class_names, {args.input, ds.skipped, ds.replaced_bases(), args.split_manifest});
    write_text_file(manifest_path_for(args.output), manifest.dump(2) + "\n");

    const auto& h = archive.header;
    std::size_t filled = 0;
    for (const auto& r : archive.records)
        for (auto p : r.pixels) filled += p != h.sentinel();
    out << "records " << archive.records.size() << '\n'
        << "layout " << (h.curve ? std::string(to_string(*h.curve)) : std::string("flat")) << " order "
        << h.order << " k " << h.k << '\n'
        << "dims " << h.height << 'x' << h.width << 'x' << h.channels() << '\n'
        << format_fill(filled, h.pixel_count() * archive.records.size()) << '\n'
        << "replaced bases " << ds.replaced_bases() << '\n';
    return archive;
}

struct GammaArgs {
    std::vector<std::size_t> lengths{16, 64, 256, 1024, 4096};
    std::vector<CurveKind> kinds{all_curve_kinds.begin(), all_curve_kinds.end()};
    bool include_sequence = false;
    std::optional<std::string> csv_output;
    unsigned threads = 1;
};

inline std::vector<GammaReport> cmd_gamma(const GammaArgs& args, std::ostream& out) {
    auto reports = gamma_table(args.lengths, args.kinds, args.threads);
    if (args.include_sequence)
        for (auto len : args.lengths) reports.push_back(gamma_sequence(len, args.threads));
    write_gamma_text(out, reports);
    if (args.csv_output) {
        std::ostringstream csv;
        write_gamma_csv(csv, reports);
        write_text_file(*args.csv_output, csv.str());
    }
    return reports;
}

struct SplitArgs {
    std::string input;
    std::uint64_t seed = 0;
    std::string output;
};

inline DatasetSplit cmd_split(const SplitArgs& args, std::ostream& out) {
    const auto ds = read_tsv(args.input);
    const auto s = split(ds, args.seed);
    std::ostringstream manifest;
    write_split_manifest(manifest, s);
    write_text_file(args.output, manifest.str());
    out << "records " << s.records << " train " << s.train.size() << " validation "
        << s.validation.size() << " test " << s.test.size() << " seed " << s.seed << '\n';
    return s;
}

struct InspectArgs {
    std::string archive;
    std::size_t record = 0;
    std::optional<std::string> verify_tsv;
};

/// Glyph per occupied pixel scaled by k-mer code; '.' marks empty pixels.
inline void render_ascii(std::ostream& out, const SequenceImage& img, std::uint32_t wrap = 64) {
    static constexpr std::string_view ramp = ":-=+*#%@";
    for (std::uint32_t r = 0; r < img.height; ++r) {
        for (std::uint32_t c = 0; c < img.width; ++c) {
            if (c != 0 && c % wrap == 0) out << '\n';
            const auto code = img.at(r, c);
            if (code == img.sentinel()) {
                out << '.';
            } else {
                out << ramp[static_cast<std::size_t>(std::uint64_t{code} * ramp.size() / img.channels())];
            }
        }
        out << '\n';
    }
}

/// Returns false when --verify was given and the decoded record differs.
inline bool cmd_inspect(const InspectArgs& args, std::ostream& out) {
    const auto archive = read_archive(args.archive);
    const auto& h = archive.header;
    if (args.record >= archive.records.size())
        throw usage_error("record " + std::to_string(args.record) + " out of range; archive has " +
                          std::to_string(archive.records.size()));
    const auto img = archive.image(args.record);
    out << "records " << archive.records.size() << '\n'
        << "layout " << (h.curve ? std::string(to_string(*h.curve)) : std::string("flat")) << " order "
        << h.order << " k " << h.k << '\n'
        << "dims " << h.height << 'x' << h.width << 'x' << h.channels() << '\n'
        << "crop rows [" << h.crop_begin << ", " << h.crop_end << ")\n"
        << "record " << args.record << " label " << archive.records[args.record].label << '\n'
        << format_fill(img.filled(), h.pixel_count()) << '\n';
    render_ascii(out, img);
    const auto decoded = decode_record(archive, args.record);
    out << "sequence " << decoded << '\n';

    if (!args.verify_tsv) return true;
    const auto ds = read_tsv(*args.verify_tsv);
    if (args.record >= ds.records.size()) {
        out << "verify FAILED: " << *args.verify_tsv << " has only " << ds.records.size() << " records\n";
        return false;
    }
    const auto& expected = ds.records[args.record].sequence.bases;
    if (expected == decoded) {
        out << "verify OK\n";
        return true;
    }
    std::size_t pos = 0;
    while (pos < expected.size() && pos < decoded.size() && expected[pos] == decoded[pos]) ++pos;
    out << "verify FAILED: record " << args.record << " ('" << ds.records[args.record].id
        << "') differs at base " << pos << " (expected length " << expected.size() << ", decoded length "
        << decoded.size() << ")\n";
    return false;
}

enum class RawFormat { UciSplice, Fasta };

struct ConvertArgs {
    std::string input;
    RawFormat format = RawFormat::UciSplice;
    std::string output;
};

inline Dataset cmd_convert(const ConvertArgs& args, std::ostream& out) {
    Dataset ds;
    if (args.format == RawFormat::UciSplice) {
        ds = load_splice(args.input);
    } else {
        auto in = detail::open_input(args.input);
        ds = load_labeled_fasta(in);
    }
    for (const auto& w : ds.warnings) out << "warning: " << w << '\n';
    std::ostringstream tsv;
    tsv << "# id\tlabel\tsequence\n";
    write_tsv(tsv, ds);
    write_text_file(args.output, tsv.str());
    out << "records " << ds.records.size() << " skipped " << ds.skipped << " replaced bases "
        << ds.replaced_bases() << '\n';
    return ds;
}

} // namespace hcseq::cli
