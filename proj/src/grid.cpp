#include "cauchy/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cauchy {

Grid::Grid(const std::vector<AxisSpec>& spec) {
    if (spec.empty() || spec.size() > 2)
        throw std::invalid_argument("grid dimension must be 1 or 2");
    axes_.reserve(spec.size());
    for (size_t a = 0; a < spec.size(); ++a) {
        const AxisSpec& s = spec[a];
        if (s.n < 4)
            throw std::invalid_argument("axis " + std::to_string(a) + ": need at least 4 nodes");
        if (!(s.hi > s.lo))
            throw std::invalid_argument("axis " + std::to_string(a) + ": non-positive extent");
        Axis ax;
        ax.n = s.n;
        ax.lo = s.lo;
        ax.hi = s.hi;
        ax.periodic = s.periodic;
        ax.lo_kind = s.lo_kind;
        ax.hi_kind = s.hi_kind;
        ax.lo_target = s.lo_target;
        ax.hi_target = s.hi_target;
        if (s.periodic) {
            ax.dx = (s.hi - s.lo) / s.n;
            // A periodic axis wraps; it has no ends.
            ax.lo_kind = ax.hi_kind = EndKind::truncated;
        } else {
            ax.dx = (s.hi - s.lo) / (s.n - 1);
            if (s.lo_kind == EndKind::open_end && std::isfinite(s.lo_target) && s.lo_target > s.lo)
                throw std::invalid_argument("axis " + std::to_string(a) +
                                            ": open-end target must lie at or beyond the low edge");
            if (s.hi_kind == EndKind::open_end && std::isfinite(s.hi_target) && s.hi_target < s.hi)
                throw std::invalid_argument("axis " + std::to_string(a) +
                                            ": open-end target must lie at or beyond the high edge");
        }
        ax.coords.resize(s.n);
        for (int i = 0; i < s.n; ++i) ax.coords[i] = s.lo + i * ax.dx;
        cell_volume_ *= ax.dx;
        axes_.push_back(std::move(ax));
    }
    size_ = 1;
    for (const Axis& ax : axes_) size_ *= ax.n;
    stride0_ = axes_.size() == 2 ? axes_[1].n : 1;
}

bool Grid::compact() const {
    for (const Axis& ax : axes_)
        if (!ax.periodic) return false;
    return true;
}

void Grid::node(std::int64_t idx, double& x, double& y) const {
    int i0, i1;
    unpack(idx, i0, i1);
    x = axes_[0].coords[i0];
    y = dim() == 2 ? axes_[1].coords[i1] : 0.0;
}

std::int64_t Grid::neighbor(std::int64_t idx, int a, int dir) const {
    int i[2];
    unpack(idx, i[0], i[1]);
    const Axis& ax = axes_[a];
    int j = i[a] + dir;
    if (ax.periodic) {
        j = (j + ax.n) % ax.n;
    } else if (j < 0 || j >= ax.n) {
        return -1;
    }
    i[a] = j;
    return index(i[0], i[1]);
}

bool Grid::operator==(const Grid& o) const {
    if (dim() != o.dim() || size_ != o.size_) return false;
    for (int a = 0; a < dim(); ++a) {
        const Axis &x = axes_[a], &y = o.axes_[a];
        if (x.n != y.n || x.lo != y.lo || x.hi != y.hi || x.periodic != y.periodic) return false;
    }
    return true;
}

GridPtr build_grid(const std::vector<AxisSpec>& spec) { return std::make_shared<const Grid>(spec); }

}  // namespace cauchy
