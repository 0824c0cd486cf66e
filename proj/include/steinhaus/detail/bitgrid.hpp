#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace steinhaus::detail {

/// Dense bit image of a cell set over its bounding box (d <= 3).
/// x is packed into 64-bit words; (y, z) select rows.
struct BitGrid {
    int dim = 1;
    std::array<std::int64_t, 3> lo{0, 0, 0};
    std::array<int, 3> n{1, 1, 1};
    int wpr = 1; // words per x-row
    std::vector<std::uint64_t> w;

    void init(int d, std::array<std::int64_t, 3> lo_, std::array<int, 3> n_) {
        dim = d;
        lo = lo_;
        n = n_;
        for (int i = dim; i < 3; ++i) n[i] = 1;
        wpr = (n[0] + 63) / 64;
        w.assign(static_cast<std::size_t>(wpr) * n[1] * n[2], 0);
    }

    std::uint64_t* row(int y, int z) { return w.data() + (static_cast<std::size_t>(z) * n[1] + y) * wpr; }
    const std::uint64_t* row(int y, int z) const {
        return w.data() + (static_cast<std::size_t>(z) * n[1] + y) * wpr;
    }

    bool in_range(std::int64_t x, std::int64_t y, std::int64_t z) const {
        return x >= lo[0] && x < lo[0] + n[0] && y >= lo[1] && y < lo[1] + n[1] && z >= lo[2] &&
               z < lo[2] + n[2];
    }

    bool test(std::int64_t x, std::int64_t y, std::int64_t z) const {
        if (!in_range(x, y, z)) return false;
        int ix = static_cast<int>(x - lo[0]);
        const std::uint64_t* r = row(static_cast<int>(y - lo[1]), static_cast<int>(z - lo[2]));
        return (r[ix >> 6] >> (ix & 63)) & 1u;
    }

    void set(std::int64_t x, std::int64_t y, std::int64_t z) {
        int ix = static_cast<int>(x - lo[0]);
        std::uint64_t* r = row(static_cast<int>(y - lo[1]), static_cast<int>(z - lo[2]));
        r[ix >> 6] |= std::uint64_t{1} << (ix & 63);
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto word : w) c += static_cast<std::size_t>(std::popcount(word));
        return c;
    }
};

/// dst |= src << shift (bitwise, shift >= 0), both rows of `words` words.
inline void or_shl(std::uint64_t* dst, const std::uint64_t* src, int words, int shift) {
    const int ws = shift >> 6, bs = shift & 63;
    if (bs == 0) {
        for (int i = words - 1; i >= ws; --i) dst[i] |= src[i - ws];
        return;
    }
    for (int i = words - 1; i >= ws; --i) {
        std::uint64_t v = src[i - ws] << bs;
        if (i - ws - 1 >= 0) v |= src[i - ws - 1] >> (64 - bs);
        dst[i] |= v;
    }
}

/// popcount(a & (b << shift)) for rows of `words` words, shift may be negative.
inline std::size_t and_shifted_popcount(const std::uint64_t* a, const std::uint64_t* b, int words,
                                        int shift) {
    std::size_t c = 0;
    if (shift >= 0) {
        const int ws = shift >> 6, bs = shift & 63;
        for (int i = ws; i < words; ++i) {
            std::uint64_t v = b[i - ws] << bs;
            if (bs && i - ws - 1 >= 0) v |= b[i - ws - 1] >> (64 - bs);
            c += static_cast<std::size_t>(std::popcount(a[i] & v));
        }
    } else {
        const int s = -shift;
        const int ws = s >> 6, bs = s & 63;
        for (int i = 0; i + ws < words; ++i) {
            std::uint64_t v = b[i + ws] >> bs;
            if (bs && i + ws + 1 < words) v |= b[i + ws + 1] << (64 - bs);
            c += static_cast<std::size_t>(std::popcount(a[i] & v));
        }
    }
    return c;
}

constexpr std::int64_t kEdtInf = std::int64_t{1} << 60;

/// Exact squared Euclidean distance transform on an integer lattice.
/// sites: flattened (x fastest) booleans; returns squared distances (kEdtInf
/// where no site exists). Felzenszwalb-Huttenlocher per axis.
std::vector<std::int64_t> edt_sq(std::array<int, 3> n, int dim, const std::vector<std::uint8_t>& sites);

} // namespace steinhaus::detail
