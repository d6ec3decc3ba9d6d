#include "offscreen/extreme_cases.hpp"

namespace offscreen {

int axis_index(int corner_x, int corner_y, bool horizontal) {
    int corner = 0;
    if (corner_y < 0) corner = corner_x < 0 ? 0 : 1;
    else corner = corner_x > 0 ? 2 : 3;
    return 2 * corner + (horizontal ? 0 : 1);
}

namespace {

// Signed permutation matrices of the square, as (a, b, c, d) for [[a, b], [c, d]].
constexpr std::array<std::array<int, 4>, 8> kSymmetries{{
    {1, 0, 0, 1},    // identity
    {0, -1, 1, 0},   // rotate 90
    {-1, 0, 0, -1},  // rotate 180
    {0, 1, -1, 0},   // rotate 270
    {1, 0, 0, -1},   // mirror y
    {-1, 0, 0, 1},   // mirror x
    {0, 1, 1, 0},    // main diagonal
    {0, -1, -1, 0},  // anti-diagonal
}};

std::array<AxisPermutation, 8> build_group() {
    std::array<AxisPermutation, 8> group{};
    for (std::size_t g = 0; g < kSymmetries.size(); ++g) {
        const auto& m = kSymmetries[g];
        for (int i = 0; i < kAxisCount; ++i) {
            const AxisLabel l = axis_label(i);
            const int dx = l.horizontal ? l.corner_x : 0;
            const int dy = l.horizontal ? 0 : l.corner_y;
            const int cx = m[0] * l.corner_x + m[1] * l.corner_y;
            const int cy = m[2] * l.corner_x + m[3] * l.corner_y;
            const int ndx = m[0] * dx + m[1] * dy;
            group[g][static_cast<std::size_t>(i)] = axis_index(cx, cy, ndx != 0);
        }
    }
    return group;
}

}  // namespace

const std::array<AxisPermutation, 8>& dihedral_group() {
    static const std::array<AxisPermutation, 8> group = build_group();
    return group;
}

}  // namespace offscreen
