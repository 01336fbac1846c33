// Compiled with -mavx2 only; reached through the runtime dispatcher.
#include <immintrin.h>

#include "eutsp/geom.hpp"
#include "kernels_impl.hpp"

namespace eutsp::kernels::detail {

namespace {

inline __m256d lengths(__m256d x1, __m256d y1, __m256d x2, __m256d y2) {
    const __m256d dx = _mm256_sub_pd(x2, x1);
    const __m256d dy = _mm256_sub_pd(y2, y1);
    return _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
}

// (q - p) x (r - p); exact while |coordinates| < 2^25.
inline __m256d cross(__m256d px, __m256d py, __m256d qx, __m256d qy, __m256d rx, __m256d ry) {
    const __m256d lhs = _mm256_mul_pd(_mm256_sub_pd(qx, px), _mm256_sub_pd(ry, py));
    const __m256d rhs = _mm256_mul_pd(_mm256_sub_pd(qy, py), _mm256_sub_pd(rx, px));
    return _mm256_sub_pd(lhs, rhs);
}

// Bit l set iff lane l's edge (t + l, t + l + 1) properly crosses edge e.
inline int crossing_mask(const double* xs, const double* ys, std::size_t e, std::size_t t) {
    const __m256d ax = _mm256_set1_pd(xs[e]);
    const __m256d ay = _mm256_set1_pd(ys[e]);
    const __m256d bx = _mm256_set1_pd(xs[e + 1]);
    const __m256d by = _mm256_set1_pd(ys[e + 1]);
    const __m256d cx = _mm256_loadu_pd(xs + t);
    const __m256d cy = _mm256_loadu_pd(ys + t);
    const __m256d dx = _mm256_loadu_pd(xs + t + 1);
    const __m256d dy = _mm256_loadu_pd(ys + t + 1);

    const __m256d zero = _mm256_setzero_pd();
    const __m256d o1 = cross(ax, ay, bx, by, cx, cy);
    const __m256d o2 = cross(ax, ay, bx, by, dx, dy);
    const __m256d o3 = cross(cx, cy, dx, dy, ax, ay);
    const __m256d o4 = cross(cx, cy, dx, dy, bx, by);
    const __m256d straddle_ab = _mm256_cmp_pd(_mm256_mul_pd(o1, o2), zero, _CMP_LT_OQ);
    const __m256d straddle_cd = _mm256_cmp_pd(_mm256_mul_pd(o3, o4), zero, _CMP_LT_OQ);
    return _mm256_movemask_pd(_mm256_and_pd(straddle_ab, straddle_cd));
}

}  // namespace

void avx2_edge_lengths(const double* xs, const double* ys, std::size_t count, double* out) {
    std::size_t p = 0;
    for (; p + 4 <= count; p += 4) {
        const __m256d len = lengths(_mm256_loadu_pd(xs + p), _mm256_loadu_pd(ys + p),
                                    _mm256_loadu_pd(xs + p + 1), _mm256_loadu_pd(ys + p + 1));
        _mm256_storeu_pd(out + p, len);
    }
    for (; p < count; ++p) out[p] = edge_length(xs[p], ys[p], xs[p + 1], ys[p + 1]);
}

std::ptrdiff_t avx2_first_inversion_below(const double* xs, const double* ys, std::size_t i,
                                          std::size_t j_begin, std::size_t j_end, Compare cmp) {
    const double d_ab_scalar = edge_length(xs[i - 1], ys[i - 1], xs[i], ys[i]);
    const __m256d ax = _mm256_set1_pd(xs[i - 1]);
    const __m256d ay = _mm256_set1_pd(ys[i - 1]);
    const __m256d bx = _mm256_set1_pd(xs[i]);
    const __m256d by = _mm256_set1_pd(ys[i]);
    const __m256d d_ab = _mm256_set1_pd(d_ab_scalar);
    const __m256d zero = _mm256_setzero_pd();

    std::size_t j = j_begin;
    for (; j + 4 <= j_end; j += 4) {
        const __m256d cx = _mm256_loadu_pd(xs + j);
        const __m256d cy = _mm256_loadu_pd(ys + j);
        const __m256d dx = _mm256_loadu_pd(xs + j + 1);
        const __m256d dy = _mm256_loadu_pd(ys + j + 1);
        const __m256d d_ac = lengths(ax, ay, cx, cy);
        const __m256d d_bd = lengths(bx, by, dx, dy);
        const __m256d d_cd = lengths(cx, cy, dx, dy);
        const __m256d delta =
            _mm256_sub_pd(_mm256_add_pd(d_ac, d_bd), _mm256_add_pd(d_ab, d_cd));
        const __m256d hit = cmp == Compare::less ? _mm256_cmp_pd(delta, zero, _CMP_LT_OQ)
                                                 : _mm256_cmp_pd(delta, zero, _CMP_LE_OQ);
        const int mask = _mm256_movemask_pd(hit);
        if (mask != 0) return static_cast<std::ptrdiff_t>(j) + __builtin_ctz(mask);
    }
    if (j < j_end) return scalar_first_inversion_below(xs, ys, i, j, j_end, cmp);
    return -1;
}

std::size_t avx2_crossing_row(const double* xs, const double* ys, std::size_t edge,
                              std::size_t begin, std::size_t end, std::uint32_t* hits) {
    std::size_t count = 0;
    std::size_t t = begin;
    for (; t + 4 <= end; t += 4) {
        int mask = crossing_mask(xs, ys, edge, t);
        while (mask != 0) {
            const int lane = __builtin_ctz(mask);
            hits[count++] = static_cast<std::uint32_t>(t + lane);
            mask &= mask - 1;
        }
    }
    if (t < end) count += scalar_crossing_row(xs, ys, edge, t, end, hits + count);
    return count;
}

bool avx2_any_crossing_row(const double* xs, const double* ys, std::size_t edge,
                           std::size_t begin, std::size_t end) {
    std::size_t t = begin;
    for (; t + 4 <= end; t += 4) {
        if (crossing_mask(xs, ys, edge, t) != 0) return true;
    }
    return t < end && scalar_any_crossing_row(xs, ys, edge, t, end);
}

}  // namespace eutsp::kernels::detail
