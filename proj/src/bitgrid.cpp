#include "steinhaus/detail/bitgrid.hpp"

namespace steinhaus::detail {

namespace {

// 1D lower-envelope pass: f -> squared distance to the parabola family.
void dt1d(const std::int64_t* f, std::int64_t* out, int n, int* v, double* z) {
    int k = 0;
    v[0] = 0;
    z[0] = -1e30;
    z[1] = 1e30;
    for (int q = 1; q < n; ++q) {
        if (f[q] >= kEdtInf) continue;
        if (f[v[0]] >= kEdtInf && k == 0) {
            v[0] = q;
            continue;
        }
        double s;
        while (true) {
            int p = v[k];
            s = (static_cast<double>(f[q] - f[p]) + static_cast<double>(q) * q -
                 static_cast<double>(p) * p) /
                (2.0 * (q - p));
            if (s <= z[k]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = 1e30;
    }
    int k2 = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k2 + 1] < q) ++k2;
        int p = v[k2];
        if (f[p] >= kEdtInf) {
            out[q] = kEdtInf;
        } else {
            std::int64_t d = q - p;
            out[q] = d * d + f[p];
        }
    }
}

} // namespace

std::vector<std::int64_t> edt_sq(std::array<int, 3> n, int dim, const std::vector<std::uint8_t>& sites) {
    for (int i = dim; i < 3; ++i) n[i] = 1;
    const std::size_t total = static_cast<std::size_t>(n[0]) * n[1] * n[2];
    std::vector<std::int64_t> d(total);
    for (std::size_t i = 0; i < total; ++i) d[i] = sites[i] ? 0 : kEdtInf;

    const int maxn = std::max(n[0], std::max(n[1], n[2]));
    std::vector<std::int64_t> f(maxn), g(maxn);
    std::vector<int> v(maxn);
    std::vector<double> z(maxn + 1);

    auto at = [&](int x, int y, int zz) -> std::int64_t& {
        return d[(static_cast<std::size_t>(zz) * n[1] + y) * n[0] + x];
    };

    // pass along x
    for (int zz = 0; zz < n[2]; ++zz)
        for (int y = 0; y < n[1]; ++y) {
            for (int x = 0; x < n[0]; ++x) f[x] = at(x, y, zz);
            dt1d(f.data(), g.data(), n[0], v.data(), z.data());
            for (int x = 0; x < n[0]; ++x) at(x, y, zz) = g[x];
        }
    if (dim >= 2) {
        for (int zz = 0; zz < n[2]; ++zz)
            for (int x = 0; x < n[0]; ++x) {
                for (int y = 0; y < n[1]; ++y) f[y] = at(x, y, zz);
                dt1d(f.data(), g.data(), n[1], v.data(), z.data());
                for (int y = 0; y < n[1]; ++y) at(x, y, zz) = g[y];
            }
    }
    if (dim >= 3) {
        for (int y = 0; y < n[1]; ++y)
            for (int x = 0; x < n[0]; ++x) {
                for (int zz = 0; zz < n[2]; ++zz) f[zz] = at(x, y, zz);
                dt1d(f.data(), g.data(), n[2], v.data(), z.data());
                for (int zz = 0; zz < n[2]; ++zz) at(x, y, zz) = g[zz];
            }
    }
    return d;
}

} // namespace steinhaus::detail
