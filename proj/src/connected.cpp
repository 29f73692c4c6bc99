#include "luganopet/connected.hpp"

#include <algorithm>

namespace luganopet {

Connectivity connectivity_from_int(int c) {
    switch (c) {
        case 6: return Connectivity::Six;
        case 18: return Connectivity::Eighteen;
        case 26: return Connectivity::TwentySix;
    }
    throw std::invalid_argument("connectivity must be 6, 18 or 26");
}

namespace {

struct Offset { int di, dj, dk; };

std::vector<Offset> neighbor_offsets(Connectivity conn) {
    std::vector<Offset> offs;
    for (int dk = -1; dk <= 1; ++dk)
        for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) {
                const int m = std::abs(di) + std::abs(dj) + std::abs(dk);
                if (m == 0) continue;
                if (conn == Connectivity::Six && m > 1) continue;
                if (conn == Connectivity::Eighteen && m > 2) continue;
                offs.push_back({di, dj, dk});
            }
    return offs;
}

}  // namespace

std::vector<VoxelSet> connected_components(const LabelVolume& mask, Connectivity conn) {
    if (!mask.is_binary())
        throw std::invalid_argument("connected_components: input mask must be binary {0,1}");

    const Grid3& g = mask.grid;
    const auto offs = neighbor_offsets(conn);
    std::vector<std::uint8_t> visited(mask.labels.size(), 0);
    std::vector<VoxelSet> comps;
    std::vector<std::int64_t> stack;

    for (std::int64_t seed = 0; seed < static_cast<std::int64_t>(mask.labels.size()); ++seed) {
        if (mask.labels[seed] == 0 || visited[seed]) continue;
        VoxelSet comp;
        comp.grid = g;
        stack.clear();
        stack.push_back(seed);
        visited[seed] = 1;
        while (!stack.empty()) {
            const std::int64_t cur = stack.back();
            stack.pop_back();
            comp.idx.push_back(cur);
            int i, j, k;
            g.unravel(cur, i, j, k);
            for (const auto& o : offs) {
                const int ni = i + o.di, nj = j + o.dj, nk = k + o.dk;
                if (!g.in_bounds(ni, nj, nk)) continue;
                const std::int64_t n = g.linear_index(ni, nj, nk);
                if (mask.labels[n] == 0 || visited[n]) continue;
                visited[n] = 1;
                stack.push_back(n);
            }
        }
        std::sort(comp.idx.begin(), comp.idx.end());
        comps.push_back(std::move(comp));
    }

    std::sort(comps.begin(), comps.end(), [](const VoxelSet& a, const VoxelSet& b) {
        if (a.idx.size() != b.idx.size()) return a.idx.size() > b.idx.size();
        return a.idx.front() < b.idx.front();
    });
    return comps;
}

}  // namespace luganopet
