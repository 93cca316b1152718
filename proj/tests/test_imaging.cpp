#include "hcseq/imaging.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

using namespace hcseq;

namespace {
std::string random_bases(std::mt19937_64& rng, std::size_t n) {
    std::string s(n, 'A');
    for (auto& c : s) c = "ACGT"[rng() % 4];
    return s;
}

KmerIndexList iota_codes(std::size_t n, unsigned k) {
    KmerIndexList l{k, std::vector<KmerCode>(n)};
    for (std::size_t i = 0; i < n; ++i) l.codes[i] = static_cast<KmerCode>(i % kmer_space(k));
    return l;
}
} // namespace

TEST_CASE("required_order picks the smallest sufficient square") {
    CHECK(required_order(497) == 5);
    CHECK(required_order(61) == 3);
    CHECK(required_order(1) == 0);
    CHECK(required_order(4) == 1);
    CHECK(required_order(5) == 2);
    CHECK(required_order(1024) == 5);
    CHECK(required_order(1025) == 6);
}

TEST_CASE("layout of 497 4-mers on Hilbert") {
    std::mt19937_64 rng(1);
    const auto codes = sequence_to_kmers(random_bases(rng, 500), 4);
    const auto img = layout(codes, CurveKind::Hilbert);
    CHECK(img.height == 32);
    CHECK(img.width == 32);
    CHECK(img.filled() == 497);
    CHECK(img.pixels.size() - img.filled() == 527);
    CHECK(img.provenance.order == 5);
    CHECK(img.sentinel() == 256);
}

TEST_CASE("layout with an exact fit leaves no sentinels") {
    const auto img = layout(iota_codes(16, 2), CurveKind::Reshape);
    CHECK(img.height == 4);
    CHECK(img.filled() == 16);
    for (std::uint32_t i = 0; i < 16; ++i) CHECK(img.at(i / 4, i % 4) == i);
    const auto cropped = crop(img);
    CHECK(cropped.height == 4);
    CHECK(cropped.pixels == img.pixels);
}

TEST_CASE("61 1-mers on Hilbert fill an 8x8 grid that cannot be cropped") {
    std::mt19937_64 rng(2);
    const auto img = layout(sequence_to_kmers(random_bases(rng, 61), 1), CurveKind::Hilbert);
    CHECK(img.height == 8);
    CHECK(img.width == 8);
    CHECK(img.filled() == 61);
    const auto cropped = crop(img);
    CHECK(cropped.height == 8);
    CHECK(cropped.width == 8);
    CHECK(cropped.channels() == 4);
}

TEST_CASE("crop removes the empty half for 497 Hilbert k-mers") {
    std::mt19937_64 rng(3);
    const auto codes = sequence_to_kmers(random_bases(rng, 500), 4);
    const auto img = crop(layout(codes, CurveKind::Hilbert));
    CHECK(img.height == 16);
    CHECK(img.width == 32);
    CHECK(img.channels() == 256);
    CHECK(img.provenance.crop_begin == 0);
    CHECK(img.provenance.crop_end == 16);
    CHECK(img.filled() == 497);
}

TEST_CASE("Hilbert crop height is half the grid whenever a quarter < L <= half") {
    for (unsigned n = 1; n <= 6; ++n) {
        const std::size_t cells = std::size_t{1} << (2 * n);
        for (std::size_t len : {cells / 4 + 1, cells / 2}) {
            if (len <= cells / 4 || required_order(len) != n) continue;
            const auto img = crop(layout(iota_codes(len, 3), generate_curve(CurveKind::Hilbert, n)));
            INFO("order " << n << " length " << len);
            CHECK(img.height == (1u << (n - 1)));
        }
    }
}

TEST_CASE("crop of an empty image is an error") {
    SequenceImage empty;
    empty.height = empty.width = 2;
    empty.provenance.k = 1;
    empty.pixels.assign(4, empty.sentinel());
    CHECK_THROWS_AS(crop(empty), data_error);
}

TEST_CASE("flatten_1d produces a single row and is a fixed point of crop") {
    const auto flat = flatten_1d(iota_codes(497, 4));
    CHECK(flat.height == 1);
    CHECK(flat.width == 497);
    const auto again = crop(flat);
    CHECK(again.height == flat.height);
    CHECK(again.width == flat.width);
    CHECK(again.pixels == flat.pixels);
    CHECK(again.provenance == flat.provenance);

    const auto one = flatten_1d(iota_codes(1, 1));
    CHECK(one.height == 1);
    CHECK(one.width == 1);
}

TEST_CASE("layout + crop is lossless for every kind and random lengths") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned k = 1 + static_cast<unsigned>(rng() % 4);
        const std::size_t len = k + rng() % 700;
        const auto codes = sequence_to_kmers(random_bases(rng, len), k);
        for (auto kind : all_curve_kinds) {
            const auto img = crop(layout(codes, kind));
            REQUIRE(img.filled() == codes.size());
            REQUIRE(img.width == (1u << img.provenance.order));
            REQUIRE(img.height <= img.width);
            REQUIRE(decode_image(img).codes == codes.codes);
        }
        REQUIRE(decode_image(flatten_1d(codes)).codes == codes.codes);
    }
}

TEST_CASE("one-hot expansion: one channel per filled pixel, zeros elsewhere") {
    std::mt19937_64 rng(5);
    const auto codes = sequence_to_kmers(random_bases(rng, 200), 3);
    const auto img = crop(layout(codes, CurveKind::Snake));
    const auto dense = expand_one_hot(img);
    REQUIRE(dense.size() == img.pixels.size() * img.channels());
    CHECK(std::accumulate(dense.begin(), dense.end(), std::size_t{0}) == codes.size());
    for (std::size_t p = 0; p < img.pixels.size(); ++p) {
        const auto first = dense.begin() + static_cast<std::ptrdiff_t>(p * img.channels());
        const auto sum = std::accumulate(first, first + static_cast<std::ptrdiff_t>(img.channels()), 0);
        REQUIRE(sum == (img.pixels[p] == img.sentinel() ? 0 : 1));
        if (sum) REQUIRE(first[img.pixels[p]] == 1);
    }
}

TEST_CASE("decode_image rejects pixels that are not a curve prefix") {
    auto img = layout(iota_codes(5, 2), CurveKind::Hilbert);
    const auto curve = generate_curve(CurveKind::Hilbert, img.provenance.order);
    const auto p = curve.index_to_point(10);
    img.pixels[std::size_t{p.row} * img.width + p.col] = 0;
    CHECK_THROWS_AS(decode_image(img), data_error);
}

TEST_CASE("layout rejects lists larger than the curve") {
    CHECK_THROWS_AS(layout(iota_codes(17, 2), generate_curve(CurveKind::Hilbert, 2)), usage_error);
}
