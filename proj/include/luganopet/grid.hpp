#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace luganopet {

/// Anatomical direction of increasing voxel index along one grid axis.
/// World frame is RAS+ (mm): +x right, +y anterior, +z superior.
enum class AxisCode : std::uint8_t { R, L, A, P, S, I };

constexpr int world_axis(AxisCode c) {
    switch (c) {
        case AxisCode::R: case AxisCode::L: return 0;
        case AxisCode::A: case AxisCode::P: return 1;
        default: return 2;
    }
}

constexpr double axis_sign(AxisCode c) {
    return (c == AxisCode::R || c == AxisCode::A || c == AxisCode::S) ? 1.0 : -1.0;
}

char axis_code_letter(AxisCode c);
AxisCode axis_code_from_letter(char ch);

/// Regular 3D voxel grid. Voxel (i,j,k) has its *center* at
/// origin + i*spacing[0]*dir(axes[0]) + j*spacing[1]*dir(axes[1]) + k*spacing[2]*dir(axes[2]).
struct Grid3 {
    std::array<int, 3> dims{1, 1, 1};
    std::array<double, 3> spacing{1.0, 1.0, 1.0};   // mm per voxel
    std::array<double, 3> origin{0.0, 0.0, 0.0};    // world mm of voxel (0,0,0) center
    std::array<AxisCode, 3> axes{AxisCode::R, AxisCode::A, AxisCode::S};

    std::int64_t voxel_count() const {
        return static_cast<std::int64_t>(dims[0]) * dims[1] * dims[2];
    }

    double voxel_volume_ml() const {
        return spacing[0] * spacing[1] * spacing[2] / 1000.0;
    }

    std::int64_t linear_index(int i, int j, int k) const {
        return static_cast<std::int64_t>(i) +
               static_cast<std::int64_t>(dims[0]) * (j + static_cast<std::int64_t>(dims[1]) * k);
    }

    void unravel(std::int64_t idx, int& i, int& j, int& k) const {
        i = static_cast<int>(idx % dims[0]);
        idx /= dims[0];
        j = static_cast<int>(idx % dims[1]);
        k = static_cast<int>(idx / dims[1]);
    }

    bool in_bounds(int i, int j, int k) const {
        return i >= 0 && i < dims[0] && j >= 0 && j < dims[1] && k >= 0 && k < dims[2];
    }

    /// World coordinate (mm, RAS) of the voxel center.
    std::array<double, 3> world(int i, int j, int k) const {
        std::array<double, 3> w = origin;
        const std::array<double, 3> idx{static_cast<double>(i), static_cast<double>(j),
                                        static_cast<double>(k)};
        for (int a = 0; a < 3; ++a)
            w[world_axis(axes[a])] += axis_sign(axes[a]) * idx[a] * spacing[a];
        return w;
    }

    /// Continuous (fractional) voxel index of a world point; integer values land on centers.
    std::array<double, 3> continuous_index(const std::array<double, 3>& w) const {
        std::array<double, 3> ci{};
        for (int a = 0; a < 3; ++a) {
            const int wa = world_axis(axes[a]);
            ci[a] = (w[wa] - origin[wa]) * axis_sign(axes[a]) / spacing[a];
        }
        return ci;
    }

    std::string orientation_string() const;

    bool operator==(const Grid3& o) const {
        return dims == o.dims && spacing == o.spacing && origin == o.origin && axes == o.axes;
    }
    bool operator!=(const Grid3& o) const { return !(*this == o); }

    /// Throws std::invalid_argument if dims/spacing are non-positive or the
    /// axis codes do not cover all three world axes.
    void validate() const;
};

}  // namespace luganopet
