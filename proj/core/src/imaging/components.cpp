#include "safegate/imaging/components.hpp"

#include <algorithm>
#include <numeric>

namespace safegate::imaging {

namespace {

struct DisjointSet {
    std::vector<std::int32_t> parent;

    std::int32_t make() {
        parent.push_back(static_cast<std::int32_t>(parent.size()));
        return parent.back();
    }
    std::int32_t find(std::int32_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    // Keeps the smaller root so that provisional labels stay in raster order.
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent[b] = a; else parent[a] = b;
    }
};

}  // namespace

LabelMap connected_components(const Frame& binary) {
    require_gray(binary, "connected_components");
    const int w = binary.width();
    const int h = binary.height();
    const auto src = binary.data();

    LabelMap map;
    map.width = w;
    map.height = h;
    map.labels.assign(src.size(), 0);

    DisjointSet sets;
    sets.make();  // slot 0 = background

    // First pass: provisional labels from the already-visited 8-neighbours (W, NW, N, NE).
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const auto idx = static_cast<std::size_t>(y) * w + x;
            if (src[idx] == 0) continue;
            std::int32_t found = 0;
            auto visit = [&](int nx, int ny) {
                if (nx < 0 || ny < 0 || nx >= w) return;
                const std::int32_t l = map.labels[static_cast<std::size_t>(ny) * w + nx];
                if (l == 0) return;
                if (found == 0) found = l; else sets.unite(found, l);
            };
            visit(x - 1, y);
            visit(x - 1, y - 1);
            visit(x, y - 1);
            visit(x + 1, y - 1);
            map.labels[idx] = found != 0 ? found : sets.make();
        }
    }

    // Second pass: resolve roots and renumber in order of first appearance.
    std::vector<std::int32_t> final_label(sets.parent.size(), 0);
    std::int32_t next = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const auto idx = static_cast<std::size_t>(y) * w + x;
            if (map.labels[idx] == 0) continue;
            const std::int32_t root = sets.find(map.labels[idx]);
            if (final_label[root] == 0) {
                final_label[root] = ++next;
                map.regions.push_back({next, 0, {x, y, 1, 1}});
            }
            const std::int32_t l = final_label[root];
            map.labels[idx] = l;
            auto& r = map.regions[static_cast<std::size_t>(l - 1)];
            ++r.area;
            const int x0 = std::min(r.bbox.x, x);
            const int x1 = std::max(r.bbox.x + r.bbox.width, x + 1);
            r.bbox.x = x0;
            r.bbox.width = x1 - x0;
            r.bbox.height = y + 1 - r.bbox.y;
        }
    }
    return map;
}

}  // namespace safegate::imaging
