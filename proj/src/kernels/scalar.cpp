#include "kernels_impl.hpp"

#include "eutsp/geom.hpp"

namespace eutsp::kernels::detail {

namespace {

inline int orient_sign(double px, double py, double qx, double qy, double rx, double ry) {
    const auto ux = static_cast<std::int64_t>(qx) - static_cast<std::int64_t>(px);
    const auto uy = static_cast<std::int64_t>(qy) - static_cast<std::int64_t>(py);
    const auto vx = static_cast<std::int64_t>(rx) - static_cast<std::int64_t>(px);
    const auto vy = static_cast<std::int64_t>(ry) - static_cast<std::int64_t>(py);
    const __int128 cross = static_cast<__int128>(ux) * vy - static_cast<__int128>(uy) * vx;
    return (cross > 0) - (cross < 0);
}

inline bool crosses(const double* xs, const double* ys, std::size_t e, std::size_t t) {
    const int o1 = orient_sign(xs[e], ys[e], xs[e + 1], ys[e + 1], xs[t], ys[t]);
    const int o2 = orient_sign(xs[e], ys[e], xs[e + 1], ys[e + 1], xs[t + 1], ys[t + 1]);
    const int o3 = orient_sign(xs[t], ys[t], xs[t + 1], ys[t + 1], xs[e], ys[e]);
    const int o4 = orient_sign(xs[t], ys[t], xs[t + 1], ys[t + 1], xs[e + 1], ys[e + 1]);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace

void scalar_edge_lengths(const double* xs, const double* ys, std::size_t count, double* out) {
    for (std::size_t p = 0; p < count; ++p) {
        out[p] = edge_length(xs[p], ys[p], xs[p + 1], ys[p + 1]);
    }
}

std::ptrdiff_t scalar_first_inversion_below(const double* xs, const double* ys, std::size_t i,
                                            std::size_t j_begin, std::size_t j_end,
                                            Compare cmp) {
    const double ax = xs[i - 1], ay = ys[i - 1];
    const double bx = xs[i], by = ys[i];
    const double d_ab = edge_length(ax, ay, bx, by);
    for (std::size_t j = j_begin; j < j_end; ++j) {
        const double d_ac = edge_length(ax, ay, xs[j], ys[j]);
        const double d_bd = edge_length(bx, by, xs[j + 1], ys[j + 1]);
        const double d_cd = edge_length(xs[j], ys[j], xs[j + 1], ys[j + 1]);
        const double delta = (d_ac + d_bd) - (d_ab + d_cd);
        if (cmp == Compare::less ? delta < 0.0 : delta <= 0.0) {
            return static_cast<std::ptrdiff_t>(j);
        }
    }
    return -1;
}

std::size_t scalar_crossing_row(const double* xs, const double* ys, std::size_t edge,
                                std::size_t begin, std::size_t end, std::uint32_t* hits) {
    std::size_t count = 0;
    for (std::size_t t = begin; t < end; ++t) {
        if (crosses(xs, ys, edge, t)) hits[count++] = static_cast<std::uint32_t>(t);
    }
    return count;
}

bool scalar_any_crossing_row(const double* xs, const double* ys, std::size_t edge,
                             std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
        if (crosses(xs, ys, edge, t)) return true;
    }
    return false;
}

}  // namespace eutsp::kernels::detail
