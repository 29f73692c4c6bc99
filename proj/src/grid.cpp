#include "luganopet/grid.hpp"

namespace luganopet {

char axis_code_letter(AxisCode c) {
    switch (c) {
        case AxisCode::R: return 'R';
        case AxisCode::L: return 'L';
        case AxisCode::A: return 'A';
        case AxisCode::P: return 'P';
        case AxisCode::S: return 'S';
        case AxisCode::I: return 'I';
    }
    return '?';
}

AxisCode axis_code_from_letter(char ch) {
    switch (ch) {
        case 'R': return AxisCode::R;
        case 'L': return AxisCode::L;
        case 'A': return AxisCode::A;
        case 'P': return AxisCode::P;
        case 'S': return AxisCode::S;
        case 'I': return AxisCode::I;
    }
    throw std::invalid_argument(std::string("unknown axis code letter '") + ch + "'");
}

std::string Grid3::orientation_string() const {
    std::string s(3, '?');
    for (int a = 0; a < 3; ++a) s[a] = axis_code_letter(axes[a]);
    return s;
}

void Grid3::validate() const {
    for (int a = 0; a < 3; ++a) {
        if (dims[a] < 1)
            throw std::invalid_argument("Grid3: dims must be >= 1");
        if (!(spacing[a] > 0.0))
            throw std::invalid_argument("Grid3: spacing must be > 0");
    }
    bool seen[3] = {false, false, false};
    for (int a = 0; a < 3; ++a) seen[world_axis(axes[a])] = true;
    if (!(seen[0] && seen[1] && seen[2]))
        throw std::invalid_argument("Grid3: axis codes must cover R/L, A/P and S/I");
}

}  // namespace luganopet
