#pragma once

#include "hcseq/error.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hcseq {

/// The four space-filling curves compared by the locality analysis.
enum class CurveKind : std::uint8_t { Hilbert = 0, Reshape = 1, Snake = 2, DiagSnake = 3 };

inline constexpr std::array<CurveKind, 4> all_curve_kinds{
    CurveKind::Hilbert, CurveKind::Reshape, CurveKind::Snake, CurveKind::DiagSnake};

inline constexpr std::string_view to_string(CurveKind kind) {
    switch (kind) {
    case CurveKind::Hilbert: return "hilbert";
    case CurveKind::Reshape: return "reshape";
    case CurveKind::Snake: return "snake";
    case CurveKind::DiagSnake: return "diagsnake";
    }
    return "unknown";
}

inline std::optional<CurveKind> parse_curve_kind(std::string_view name) {
    for (auto kind : all_curve_kinds)
        if (to_string(kind) == name) return kind;
    return std::nullopt;
}

using CurveIndex = std::uint32_t;

/// Grid cell; row grows downward, col grows rightward.
struct GridPoint {
    std::uint32_t row = 0;
    std::uint32_t col = 0;

    friend constexpr bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// Largest order whose 4^n cells still fit in a CurveIndex.
inline constexpr unsigned max_curve_order = 15;

/// Explicit index <-> cell bijection for one curve kind at one order.
///
/// The grid side is 2^order, so the curve visits 4^order cells. Both
/// directions are lookup tables built once; the object is immutable after
/// construction and may be shared freely between threads.
class CurveMapping {
public:
    CurveMapping(CurveKind kind, unsigned order, std::vector<GridPoint> forward);

    CurveKind kind() const noexcept { return kind_; }
    unsigned order() const noexcept { return order_; }
    std::uint32_t side() const noexcept { return std::uint32_t{1} << order_; }
    std::size_t size() const noexcept { return forward_.size(); }

    /// Throws std::out_of_range for i >= size().
    GridPoint index_to_point(CurveIndex i) const {
        if (i >= forward_.size())
            throw std::out_of_range("curve index " + std::to_string(i) + " outside [0, " +
                                    std::to_string(forward_.size()) + ")");
        return forward_[i];
    }

    /// Throws std::out_of_range for a point outside the grid.
    CurveIndex point_to_index(GridPoint p) const {
        if (p.row >= side() || p.col >= side())
            throw std::out_of_range("grid point (" + std::to_string(p.row) + "," +
                                    std::to_string(p.col) + ") outside " +
                                    std::to_string(side()) + "x" + std::to_string(side()) +
                                    " grid");
        return inverse_[std::size_t{p.row} * side() + p.col];
    }

    const std::vector<GridPoint>& points() const& noexcept { return forward_; }
    std::vector<GridPoint> points() && noexcept { return std::move(forward_); }

private:
    CurveKind kind_;
    unsigned order_;
    std::vector<GridPoint> forward_;
    std::vector<CurveIndex> inverse_;
};

inline CurveMapping::CurveMapping(CurveKind kind, unsigned order, std::vector<GridPoint> forward)
    : kind_(kind), order_(order), forward_(std::move(forward)) {
    const std::size_t side = std::size_t{1} << order_;
    if (forward_.size() != side * side)
        throw std::logic_error("curve table does not cover the grid");
    constexpr auto unset = ~CurveIndex{0};
    inverse_.assign(forward_.size(), unset);
    for (std::size_t i = 0; i < forward_.size(); ++i) {
        const auto& p = forward_[i];
        auto& slot = inverse_.at(std::size_t{p.row} * side + p.col);
        if (slot != unset) throw std::logic_error("curve table visits a cell twice");
        slot = static_cast<CurveIndex>(i);
    }
}

namespace detail {

// Recursive construction. Order n is four copies of order n-1 placed in the
// quadrants top-left, top-right, bottom-right, bottom-left; the first copy is
// transposed and the last anti-transposed so the pieces join up. This fixes the
// curve to start at (0,0), end at (side-1, 0) and fill the top half first.
inline std::vector<GridPoint> hilbert_points(unsigned order) {
    std::vector<GridPoint> pts{GridPoint{0, 0}};
    for (unsigned level = 1; level <= order; ++level) {
        const std::uint32_t half = std::uint32_t{1} << (level - 1);
        std::vector<GridPoint> next;
        next.reserve(pts.size() * 4);
        for (auto p : pts) next.push_back({p.col, p.row});
        for (auto p : pts) next.push_back({p.row, p.col + half});
        for (auto p : pts) next.push_back({p.row + half, p.col + half});
        for (auto p : pts) next.push_back({2 * half - 1 - p.col, half - 1 - p.row});
        pts = std::move(next);
    }
    return pts;
}

inline std::vector<GridPoint> reshape_points(unsigned order) {
    const std::uint32_t side = std::uint32_t{1} << order;
    std::vector<GridPoint> pts;
    pts.reserve(std::size_t{side} * side);
    for (std::uint32_t r = 0; r < side; ++r)
        for (std::uint32_t c = 0; c < side; ++c) pts.push_back({r, c});
    return pts;
}

// Boustrophedon rows: even rows left-to-right, odd rows right-to-left.
inline std::vector<GridPoint> snake_points(unsigned order) {
    const std::uint32_t side = std::uint32_t{1} << order;
    std::vector<GridPoint> pts;
    pts.reserve(std::size_t{side} * side);
    for (std::uint32_t r = 0; r < side; ++r)
        for (std::uint32_t c = 0; c < side; ++c) pts.push_back({r, r % 2 == 0 ? c : side - 1 - c});
    return pts;
}

// Anti-diagonals r + c = s in turn. Odd s runs top-right to bottom-left,
// even s runs bottom-left to top-right.
inline std::vector<GridPoint> diag_snake_points(unsigned order) {
    const std::uint32_t side = std::uint32_t{1} << order;
    std::vector<GridPoint> pts;
    pts.reserve(std::size_t{side} * side);
    for (std::uint32_t s = 0; s + 1 < 2 * side; ++s) {
        const std::uint32_t r_lo = s < side ? 0 : s - side + 1;
        const std::uint32_t r_hi = s < side ? s : side - 1;
        if (s % 2 == 1)
            for (std::uint32_t r = r_lo; r <= r_hi; ++r) pts.push_back({r, s - r});
        else
            for (std::uint32_t r = r_hi + 1; r-- > r_lo;) pts.push_back({r, s - r});
    }
    return pts;
}

} // namespace detail

/// Builds the full lookup tables for `kind` at `order`. Deterministic.
inline CurveMapping generate_curve(CurveKind kind, unsigned order) {
    if (order > max_curve_order)
        throw usage_error("curve order " + std::to_string(order) +
                          " exceeds the supported maximum " + std::to_string(max_curve_order) +
                          " (4^order cells must fit a 32-bit index)");
    switch (kind) {
    case CurveKind::Hilbert: return {kind, order, detail::hilbert_points(order)};
    case CurveKind::Reshape: return {kind, order, detail::reshape_points(order)};
    case CurveKind::Snake: return {kind, order, detail::snake_points(order)};
    case CurveKind::DiagSnake: return {kind, order, detail::diag_snake_points(order)};
    }
    throw usage_error("unknown curve kind");
}

inline GridPoint index_to_point(const CurveMapping& m, CurveIndex i) { return m.index_to_point(i); }
inline CurveIndex point_to_index(const CurveMapping& m, GridPoint p) { return m.point_to_index(p); }

} // namespace hcseq
