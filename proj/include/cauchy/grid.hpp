#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace cauchy {

enum class EndKind { truncated, open_end };

// One axis of a uniform tensor grid. Periodic axes cover [lo, hi) with the
// last node one spacing short of hi; non-periodic axes include both
// endpoints. Open ends carry the coordinate of the end they stand for
// (possibly +/-infinity), which is where length integrals are driven.
struct AxisSpec {
    int n = 0;
    double lo = 0.0, hi = 1.0;
    bool periodic = false;
    EndKind lo_kind = EndKind::truncated;
    EndKind hi_kind = EndKind::truncated;
    double lo_target = -std::numeric_limits<double>::infinity();
    double hi_target = std::numeric_limits<double>::infinity();
};

struct Axis {
    int n;
    double lo, hi, dx;
    bool periodic;
    EndKind lo_kind, hi_kind;
    double lo_target, hi_target;
    std::vector<double> coords;
};

class Grid {
public:
    explicit Grid(const std::vector<AxisSpec>& spec);

    int dim() const { return static_cast<int>(axes_.size()); }
    const Axis& axis(int a) const { return axes_[a]; }
    std::int64_t size() const { return size_; }
    double cell_volume() const { return cell_volume_; }
    bool compact() const;  // all axes periodic

    std::int64_t index(int i0, int i1 = 0) const {
        return static_cast<std::int64_t>(i0) * stride0_ + i1;
    }
    void unpack(std::int64_t idx, int& i0, int& i1) const {
        i0 = static_cast<int>(idx / stride0_);
        i1 = static_cast<int>(idx % stride0_);
    }
    // Node coordinates; y = 0 for 1D grids.
    void node(std::int64_t idx, double& x, double& y) const;

    // Neighbor along axis a in direction dir (+1/-1); -1 when the node sits
    // on a non-periodic edge.
    std::int64_t neighbor(std::int64_t idx, int a, int dir) const;

    bool operator==(const Grid& o) const;

private:
    std::vector<Axis> axes_;
    std::int64_t size_ = 0;
    std::int64_t stride0_ = 1;
    double cell_volume_ = 1.0;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const std::vector<AxisSpec>& spec);

}  // namespace cauchy
