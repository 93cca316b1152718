#pragma once

#include "hcseq/error.hpp"
#include "hcseq/kmer.hpp"
#include "hcseq/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hcseq {

struct LabeledRecord {
    std::string id;
    DnaSequence sequence;
    std::size_t label = 0; ///< index into Dataset::class_names
};

struct Dataset {
    std::vector<LabeledRecord> records;
    std::vector<std::string> class_names;
    std::size_t skipped = 0;
    std::vector<std::string> warnings;

    std::size_t replaced_bases() const noexcept {
        std::size_t n = 0;
        for (const auto& r : records) n += r.sequence.replaced;
        return n;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path);
    return in;
}

inline std::string at_line(std::size_t line_no, const std::string& msg) {
    return "line " + std::to_string(line_no) + ": " + msg;
}

// Sanitizes a sequence, re-raising errors with the line number attached.
inline DnaSequence sanitize_at(std::string_view raw, std::size_t line_no) {
    try {
        return sanitize(raw);
    } catch (const data_error& e) {
        throw data_error(at_line(line_no, e.what()));
    }
}

struct RawRecord {
    std::string id;
    std::string label;
    DnaSequence sequence;
};

inline Dataset index_labels(std::vector<RawRecord> raw, std::vector<std::string> vocabulary) {
    Dataset ds;
    if (vocabulary.empty()) {
        for (const auto& r : raw) vocabulary.push_back(r.label);
        std::sort(vocabulary.begin(), vocabulary.end());
        vocabulary.erase(std::unique(vocabulary.begin(), vocabulary.end()), vocabulary.end());
    }
    ds.class_names = std::move(vocabulary);
    ds.records.reserve(raw.size());
    for (auto& r : raw) {
        const auto it = std::find(ds.class_names.begin(), ds.class_names.end(), r.label);
        if (it == ds.class_names.end()) throw data_error("unknown label '" + r.label + "'");
        ds.records.push_back({std::move(r.id), std::move(r.sequence),
                              static_cast<std::size_t>(it - ds.class_names.begin())});
    }
    return ds;
}

// Drops records whose length differs from `expected`, with one summary warning.
inline void drop_wrong_length(Dataset& ds, std::size_t expected) {
    const auto before = ds.records.size();
    std::erase_if(ds.records, [&](const LabeledRecord& r) { return r.sequence.length() != expected; });
    const auto dropped = before - ds.records.size();
    if (dropped) {
        ds.skipped += dropped;
        ds.warnings.push_back("skipped " + std::to_string(dropped) + " records whose length is not " +
                              std::to_string(expected));
    }
}

} // namespace detail

/// Canonical format: `id<TAB>label<TAB>sequence` per line; blank lines and
/// lines starting with '#' are ignored. Class names are the distinct labels in
/// sorted order.
inline Dataset read_tsv(std::istream& in) {
    std::vector<detail::RawRecord> raw;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty() || line.front() == '#') continue;
        const auto fields = detail::split_fields(line, '\t');
        if (fields.size() != 3)
            throw data_error(detail::at_line(line_no, "expected 3 tab-separated fields, found " +
                                                          std::to_string(fields.size())));
        if (fields[0].empty() || fields[1].empty() || fields[2].empty())
            throw data_error(detail::at_line(line_no, "empty field"));
        raw.push_back({std::string(fields[0]), std::string(fields[1]),
                       detail::sanitize_at(fields[2], line_no)});
    }
    auto ds = detail::index_labels(std::move(raw), {});
    if (ds.records.empty()) ds.warnings.push_back("no records");
    return ds;
}

inline Dataset read_tsv(const std::string& path) {
    auto in = detail::open_input(path);
    return read_tsv(in);
}

inline void write_tsv(std::ostream& out, const Dataset& ds) {
    for (const auto& r : ds.records)
        out << r.id << '\t' << ds.class_names.at(r.label) << '\t' << r.sequence.bases << '\n';
}

inline constexpr std::size_t chromatin_sequence_length = 500;

/// Canonical TSV with binary labels. `0`/`negative` and `1`/`positive` are
/// accepted; class names are always {negative, positive}. Records whose
/// length differs from `expected_length` are skipped with a warning.
inline Dataset load_chromatin(std::istream& in, std::size_t expected_length = chromatin_sequence_length) {
    auto ds = read_tsv(in);
    const std::vector<std::string> names{"negative", "positive"};
    for (auto& r : ds.records) {
        const auto& label = ds.class_names[r.label];
        if (label == "0" || label == "negative") r.label = 0;
        else if (label == "1" || label == "positive") r.label = 1;
        else throw data_error("record '" + r.id + "': label '" + label + "' is not binary");
    }
    ds.class_names = names;
    detail::drop_wrong_length(ds, expected_length);
    return ds;
}

inline Dataset load_chromatin(const std::string& path,
                              std::size_t expected_length = chromatin_sequence_length) {
    auto in = detail::open_input(path);
    return load_chromatin(in, expected_length);
}

inline constexpr std::size_t splice_reference_length = 61;

/// UCI splice-junction format: `class, identifier, sequence` per line with
/// classes EI, IE and N. The first record fixes the expected length; records
/// of any other length are skipped with a warning.
inline Dataset load_splice(std::istream& in) {
    std::vector<detail::RawRecord> raw;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_fields(line, ',');
        if (fields.size() != 3)
            throw data_error(detail::at_line(line_no, "expected 3 comma-separated fields, found " +
                                                          std::to_string(fields.size())));
        const auto label = detail::trim(fields[0]);
        const auto id = detail::trim(fields[1]);
        const auto seq = detail::trim(fields[2]);
        if (label.empty() || id.empty() || seq.empty())
            throw data_error(detail::at_line(line_no, "empty field"));
        if (label != "EI" && label != "IE" && label != "N")
            throw data_error(detail::at_line(line_no, "unknown splice class '" + std::string(label) + "'"));
        raw.push_back({std::string(id), std::string(label), detail::sanitize_at(seq, line_no)});
    }
    auto ds = detail::index_labels(std::move(raw), {"EI", "IE", "N"});
    if (ds.records.empty()) {
        ds.warnings.push_back("no records");
        return ds;
    }
    const auto expected = ds.records.front().sequence.length();
    detail::drop_wrong_length(ds, expected);
    if (expected != splice_reference_length)
        ds.warnings.push_back("splice sequences have length " + std::to_string(expected) +
                              ", not the reference length " + std::to_string(splice_reference_length));
    return ds;
}

inline Dataset load_splice(const std::string& path) {
    auto in = detail::open_input(path);
    return load_splice(in);
}

/// FASTA where each header is `>id label`; sequence lines are concatenated.
inline Dataset load_labeled_fasta(std::istream& in) {
    std::vector<detail::RawRecord> raw;
    std::optional<std::pair<std::string, std::string>> header;
    std::string seq;
    std::size_t header_line = 0;
    auto flush = [&] {
        if (!header) return;
        if (seq.empty()) throw data_error(detail::at_line(header_line, "record has no sequence"));
        raw.push_back({header->first, header->second, detail::sanitize_at(seq, header_line)});
        seq.clear();
    };
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == ';') continue;
        if (t.front() == '>') {
            flush();
            const auto body = detail::trim(t.substr(1));
            const auto sp = body.find_first_of(" \t");
            if (sp == std::string_view::npos)
                throw data_error(detail::at_line(line_no, "FASTA header needs '>id label'"));
            header = {std::string(body.substr(0, sp)), std::string(detail::trim(body.substr(sp)))};
            header_line = line_no;
        } else {
            if (!header) throw data_error(detail::at_line(line_no, "sequence before first header"));
            seq.append(t);
        }
    }
    flush();
    auto ds = detail::index_labels(std::move(raw), {});
    if (ds.records.empty()) ds.warnings.push_back("no records");
    return ds;
}

/// Index lists of a 90/5/5 partition.
struct DatasetSplit {
    std::uint64_t seed = 0;
    std::size_t records = 0;
    std::vector<std::size_t> train, validation, test;

    static constexpr std::array<double, 3> fractions{0.90, 0.05, 0.05};
};

inline constexpr std::size_t min_split_records = 20;

/// Shuffles [0, n) with a Fisher-Yates pass driven by SplitMix64(seed)
/// (for i = n-1 down to 1: swap(perm[i], perm[uniform(i + 1)])), then takes
/// train = floor(0.90 n), validation = floor(0.05 n), test = the rest.
/// Each part is returned in ascending index order.
inline DatasetSplit split(std::size_t n, std::uint64_t seed) {
    if (n < min_split_records)
        throw data_error("need at least " + std::to_string(min_split_records) +
                         " records to split, got " + std::to_string(n));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    SplitMix64 rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform(i + 1)]);

    const std::size_t n_train = n * 90 / 100, n_val = n * 5 / 100;
    DatasetSplit out;
    out.seed = seed;
    out.records = n;
    const auto b = perm.begin();
    out.train.assign(b, b + static_cast<std::ptrdiff_t>(n_train));
    out.validation.assign(b + static_cast<std::ptrdiff_t>(n_train),
                          b + static_cast<std::ptrdiff_t>(n_train + n_val));
    out.test.assign(b + static_cast<std::ptrdiff_t>(n_train + n_val), perm.end());
    for (auto* part : {&out.train, &out.validation, &out.test}) std::sort(part->begin(), part->end());
    return out;
}

inline DatasetSplit split(const Dataset& ds, std::uint64_t seed) { return split(ds.records.size(), seed); }

inline nlohmann::ordered_json split_to_json(const DatasetSplit& s) {
    nlohmann::ordered_json j;
    j["seed"] = s.seed;
    j["records"] = s.records;
    j["fractions"] = DatasetSplit::fractions;
    j["train"] = s.train;
    j["validation"] = s.validation;
    j["test"] = s.test;
    return j;
}

inline DatasetSplit split_from_json(const nlohmann::json& j) {
    DatasetSplit s;
    try {
        s.seed = j.at("seed").get<std::uint64_t>();
        s.records = j.at("records").get<std::size_t>();
        s.train = j.at("train").get<std::vector<std::size_t>>();
        s.validation = j.at("validation").get<std::vector<std::size_t>>();
        s.test = j.at("test").get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw data_error(std::string("malformed split manifest: ") + e.what());
    }
    return s;
}

/// Written as two-space indented JSON with a trailing newline.
inline void write_split_manifest(std::ostream& out, const DatasetSplit& s) {
    out << split_to_json(s).dump(2) << '\n';
}

} // namespace hcseq
