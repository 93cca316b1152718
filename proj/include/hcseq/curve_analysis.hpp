#pragma once

#include "hcseq/curves.hpp"
#include "hcseq/error.hpp"
#include "hcseq/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hcseq {

/// Distance between two positions of the unmapped sequence.
inline double seq_distance(std::size_t x, std::size_t y) {
    if (x == y) throw usage_error("sequence distance needs two distinct positions");
    return x > y ? static_cast<double>(x - y) : static_cast<double>(y - x);
}

/// Euclidean distance between the cells the curve visits at steps x and y.
inline double curve_distance(const CurveMapping& m, CurveIndex x, CurveIndex y) {
    if (x == y) throw usage_error("curve distance needs two distinct positions");
    const auto a = m.index_to_point(x), b = m.index_to_point(y);
    const double dr = static_cast<double>(a.row) - b.row;
    const double dc = static_cast<double>(a.col) - b.col;
    return std::hypot(dr, dc);
}

/// Statistics of the weighted distance set
///   { seq_distance(x, y) * image_distance(x, y) : x < y }.
struct WeightedDistanceStats {
    double sum = 0;
    double max = 0;
    std::uint64_t count = 0;

    double mean() const noexcept { return count ? sum / static_cast<double>(count) : 0.0; }
};

/// Streams over all unordered pairs of [0, length) grouped by lag; O(1) memory
/// per thread. `image_distance(x, y)` must be symmetric and defined for x < y.
template <class Distance>
WeightedDistanceStats weighted_distance_stats(std::size_t length, Distance&& image_distance,
                                              unsigned threads = 1) {
    if (length < 2) throw usage_error("need at least two elements to form a pair");
    const std::size_t lags = length - 1;
    std::vector<WeightedDistanceStats> partial(std::max(1u, threads));
    parallel_blocks(lags, threads, [&](std::size_t block, std::size_t begin, std::size_t end) {
        WeightedDistanceStats acc;
        for (std::size_t lag = begin + 1; lag <= end; ++lag) {
            const double w = static_cast<double>(lag);
            for (std::size_t x = 0; x + lag < length; ++x) {
                const double v = w * image_distance(x, x + lag);
                acc.sum += v;
                acc.max = std::max(acc.max, v);
            }
            acc.count += length - lag;
        }
        partial[block] = acc;
    });
    WeightedDistanceStats total;
    for (const auto& p : partial) {
        total.sum += p.sum;
        total.max = std::max(total.max, p.max);
        total.count += p.count;
    }
    return total;
}

/// Gamma for one layout: the curve kind, or nullopt for the plain 1-D sequence.
struct GammaReport {
    std::optional<CurveKind> kind;
    std::size_t length = 0;
    double gamma = 0;
    double mean_delta = 0;
    double max_delta = 0;
    std::uint64_t pair_count = 0;

    std::string name() const { return kind ? std::string(to_string(*kind)) : "sequence"; }
};

inline bool is_power_of_four(std::size_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0 && (std::countr_zero(n) % 2 == 0);
}

namespace detail {
inline GammaReport make_report(std::optional<CurveKind> kind, std::size_t length,
                               const WeightedDistanceStats& s) {
    return {kind, length, s.mean() / s.max, s.mean(), s.max, s.count};
}
} // namespace detail

/// mean/max of the weighted distance set over every element pair of a fully
/// occupied curve. `length` must be 4^n.
inline GammaReport gamma(CurveKind kind, std::size_t length, unsigned threads = 1) {
    if (!is_power_of_four(length) || length < 4)
        throw usage_error("gamma length " + std::to_string(length) +
                          " must be a power of 4 (at least 4) for 2D curves");
    const auto curve = generate_curve(kind, static_cast<unsigned>(std::countr_zero(length) / 2));
    const auto& pts = curve.points();
    const auto stats = weighted_distance_stats(
        length,
        [&](std::size_t x, std::size_t y) {
            const double dr = static_cast<double>(pts[x].row) - pts[y].row;
            const double dc = static_cast<double>(pts[x].col) - pts[y].col;
            return std::sqrt(dr * dr + dc * dc);
        },
        threads);
    return detail::make_report(kind, length, stats);
}

/// Baseline with no 2D mapping: the image distance is the sequence distance.
inline GammaReport gamma_sequence(std::size_t length, unsigned threads = 1) {
    const auto stats = weighted_distance_stats(
        length, [](std::size_t x, std::size_t y) { return static_cast<double>(y - x); }, threads);
    return detail::make_report(std::nullopt, length, stats);
}

/// Every kind crossed with every length, kinds outer.
inline std::vector<GammaReport> gamma_table(const std::vector<std::size_t>& lengths,
                                            const std::vector<CurveKind>& kinds = {
                                                all_curve_kinds.begin(), all_curve_kinds.end()},
                                            unsigned threads = 1) {
    for (auto len : lengths)
        if (!is_power_of_four(len) || len < 4)
            throw usage_error("gamma length " + std::to_string(len) + " is not a power of 4");
    std::vector<GammaReport> out;
    out.reserve(lengths.size() * kinds.size());
    for (auto kind : kinds)
        for (auto len : lengths) out.push_back(gamma(kind, len, threads));
    return out;
}

/// Aligned text with one row per layout and one column per length.
inline void write_gamma_text(std::ostream& os, const std::vector<GammaReport>& reports) {
    std::vector<std::size_t> lengths;
    std::vector<std::string> names;
    for (const auto& r : reports) {
        if (std::find(lengths.begin(), lengths.end(), r.length) == lengths.end())
            lengths.push_back(r.length);
        if (std::find(names.begin(), names.end(), r.name()) == names.end())
            names.push_back(r.name());
    }
    os << std::left << std::setw(12) << "curve";
    for (auto len : lengths) os << std::right << std::setw(8) << len;
    os << '\n';
    for (const auto& name : names) {
        os << std::left << std::setw(12) << name;
        for (auto len : lengths) {
            auto it = std::find_if(reports.begin(), reports.end(),
                                   [&](const GammaReport& r) { return r.name() == name && r.length == len; });
            std::ostringstream cell;
            if (it != reports.end()) cell << std::fixed << std::setprecision(2) << it->gamma;
            else cell << "-";
            os << std::right << std::setw(8) << cell.str();
        }
        os << '\n';
    }
}

inline void write_gamma_csv(std::ostream& os, const std::vector<GammaReport>& reports) {
    os << "kind,length,gamma,mean_delta,max_delta\n";
    for (const auto& r : reports) {
        std::ostringstream line;
        line << std::setprecision(17) << r.name() << ',' << r.length << ',' << r.gamma << ','
             << r.mean_delta << ',' << r.max_delta << '\n';
        os << line.str();
    }
}

} // namespace hcseq
