#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace eutsp::kernels {

namespace {

constexpr KernelSet kScalar{
    "scalar",
    detail::scalar_edge_lengths,
    detail::scalar_first_inversion_below,
    detail::scalar_crossing_row,
    detail::scalar_any_crossing_row,
};

#if defined(EUTSP_HAVE_AVX2)
constexpr KernelSet kAvx2{
    "avx2",
    detail::avx2_edge_lengths,
    detail::avx2_first_inversion_below,
    detail::avx2_crossing_row,
    detail::avx2_any_crossing_row,
};
#endif

const KernelSet& select_active() {
    const KernelSet* wide = avx2();
    if (const char* env = std::getenv("EUTSP_KERNELS")) {
        const std::string_view choice{env};
        if (choice == "scalar") return kScalar;
        if (choice == "avx2" && wide != nullptr) return *wide;
    }
    return wide != nullptr ? *wide : kScalar;
}

}  // namespace

const KernelSet& scalar() { return kScalar; }

const KernelSet* avx2() {
#if defined(EUTSP_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet& active() {
    static const KernelSet& chosen = select_active();
    return chosen;
}

const KernelSet& for_coordinates(std::int64_t max_abs_coord) {
    return max_abs_coord < kExactCoordinateLimit ? active() : kScalar;
}

}  // namespace eutsp::kernels
