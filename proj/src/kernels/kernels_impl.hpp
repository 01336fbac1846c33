#pragma once

#include "eutsp/kernels.hpp"

namespace eutsp::kernels::detail {

void scalar_edge_lengths(const double* xs, const double* ys, std::size_t count, double* out);
std::ptrdiff_t scalar_first_inversion_below(const double* xs, const double* ys, std::size_t i,
                                            std::size_t j_begin, std::size_t j_end, Compare cmp);
std::size_t scalar_crossing_row(const double* xs, const double* ys, std::size_t edge,
                                std::size_t begin, std::size_t end, std::uint32_t* hits);
bool scalar_any_crossing_row(const double* xs, const double* ys, std::size_t edge,
                             std::size_t begin, std::size_t end);

#if defined(EUTSP_HAVE_AVX2)
void avx2_edge_lengths(const double* xs, const double* ys, std::size_t count, double* out);
std::ptrdiff_t avx2_first_inversion_below(const double* xs, const double* ys, std::size_t i,
                                          std::size_t j_begin, std::size_t j_end, Compare cmp);
std::size_t avx2_crossing_row(const double* xs, const double* ys, std::size_t edge,
                              std::size_t begin, std::size_t end, std::uint32_t* hits);
bool avx2_any_crossing_row(const double* xs, const double* ys, std::size_t edge,
                           std::size_t begin, std::size_t end);
#endif

}  // namespace eutsp::kernels::detail
