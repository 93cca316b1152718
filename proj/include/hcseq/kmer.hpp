#pragma once

#include "hcseq/error.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hcseq {

/// A sanitized DNA sequence: only A, C, G, T.
struct DnaSequence {
    std::string bases;
    std::size_t replaced = 0; ///< ambiguity codes rewritten to 'A' during sanitization

    std::size_t length() const noexcept { return bases.size(); }
};

using KmerCode = std::uint32_t;

/// Longest word whose 4^k codes (plus the empty-pixel sentinel) fit a KmerCode.
inline constexpr unsigned max_k = 15;

/// Overlapping k-mer codes of a sequence, each in [0, 4^k).
struct KmerIndexList {
    unsigned k = 1;
    std::vector<KmerCode> codes;

    std::size_t size() const noexcept { return codes.size(); }
};

/// Number of distinct k-mers, which is also the one-hot channel count.
inline constexpr std::uint64_t kmer_space(unsigned k) noexcept { return std::uint64_t{1} << (2 * k); }

namespace detail {

inline constexpr int base_digit(char c) noexcept {
    switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    default: return -1;
    }
}

inline constexpr char digit_base(unsigned d) noexcept { return "ACGT"[d & 3u]; }

inline constexpr bool is_iupac_ambiguity(char c) noexcept {
    switch (c) {
    case 'R': case 'Y': case 'S': case 'W': case 'K': case 'M':
    case 'B': case 'D': case 'H': case 'V': case 'N':
        return true;
    default:
        return false;
    }
}

inline void check_k(unsigned k) {
    if (k < 1 || k > max_k)
        throw usage_error("k must be in [1, " + std::to_string(max_k) + "], got " + std::to_string(k));
}

} // namespace detail

/// Uppercases `raw` and rewrites IUPAC ambiguity codes (N, R, Y, ...) to 'A'.
/// Throws data_error on any character that is not an IUPAC nucleotide code.
inline DnaSequence sanitize(std::string_view raw) {
    DnaSequence out;
    out.bases.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        char c = raw[i];
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
        if (detail::base_digit(c) >= 0) {
            out.bases.push_back(c);
        } else if (detail::is_iupac_ambiguity(c)) {
            out.bases.push_back('A');
            ++out.replaced;
        } else {
            throw data_error("invalid nucleotide '" + std::string(1, raw[i]) + "' at position " +
                             std::to_string(i));
        }
    }
    return out;
}

/// Base-4 code of a word with A=0, C=1, G=2, T=3; the leftmost base is most significant.
inline KmerCode kmer_to_index(std::string_view word) {
    detail::check_k(static_cast<unsigned>(word.size()));
    KmerCode code = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        const int d = detail::base_digit(word[i]);
        if (d < 0)
            throw data_error("invalid base '" + std::string(1, word[i]) + "' at position " +
                             std::to_string(i) + " of k-mer");
        code = (code << 2) | static_cast<KmerCode>(d);
    }
    return code;
}

inline std::string index_to_kmer(KmerCode code, unsigned k) {
    detail::check_k(k);
    if (code >= kmer_space(k))
        throw std::out_of_range("k-mer code " + std::to_string(code) + " >= 4^" + std::to_string(k));
    std::string word(k, 'A');
    for (unsigned i = k; i-- > 0; code >>= 2) word[i] = detail::digit_base(code);
    return word;
}

/// Sliding window of width k and stride 1; yields L - k + 1 codes.
inline KmerIndexList sequence_to_kmers(std::string_view bases, unsigned k) {
    detail::check_k(k);
    if (bases.size() < k)
        throw data_error("sequence of length " + std::to_string(bases.size()) +
                         " is shorter than k = " + std::to_string(k));
    KmerIndexList out{k, {}};
    out.codes.reserve(bases.size() - k + 1);
    const KmerCode mask = static_cast<KmerCode>(kmer_space(k) - 1);
    KmerCode code = 0;
    for (std::size_t i = 0; i < bases.size(); ++i) {
        const int d = detail::base_digit(bases[i]);
        if (d < 0)
            throw data_error("unsanitized base '" + std::string(1, bases[i]) + "' at position " +
                             std::to_string(i));
        code = ((code << 2) | static_cast<KmerCode>(d)) & mask;
        if (i + 1 >= k) out.codes.push_back(code);
    }
    return out;
}

inline KmerIndexList sequence_to_kmers(const DnaSequence& seq, unsigned k) {
    return sequence_to_kmers(seq.bases, k);
}

/// Overlap-merges the words back into the sequence they were cut from.
/// Throws data_error if neighbouring words disagree on their shared bases.
inline std::string kmers_to_sequence(const KmerIndexList& list) {
    if (list.codes.empty()) return {};
    std::string out = index_to_kmer(list.codes.front(), list.k);
    const KmerCode overlap_mask = static_cast<KmerCode>(kmer_space(list.k - 1) - 1);
    for (std::size_t i = 1; i < list.codes.size(); ++i) {
        const KmerCode prev = list.codes[i - 1], cur = list.codes[i];
        if (cur >= kmer_space(list.k))
            throw data_error("k-mer code " + std::to_string(cur) + " out of range");
        if ((prev & overlap_mask) != (cur >> 2))
            throw data_error("k-mers " + std::to_string(i - 1) + " and " + std::to_string(i) +
                             " do not overlap");
        out.push_back(detail::digit_base(cur));
    }
    return out;
}

} // namespace hcseq
