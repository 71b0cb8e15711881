#include "forge/singular_set.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace forge {

size_t SingularCurve::vertex_count() const {
    size_t n = 0;
    for (const auto& p : polylines) n += p.size();
    return n;
}

namespace {

using P2 = std::array<double, 2>;

struct Seg {
    P2 a, b;
};

using Key = std::pair<long long, long long>;

Key key_of(const P2& p, double snap) {
    return {llround(p[0] / snap), llround(p[1] / snap)};
}

std::vector<std::vector<P2>> chain_segments(std::vector<Seg> segs, double snap) {
    std::multimap<Key, size_t> by_end;
    for (size_t i = 0; i < segs.size(); ++i) {
        by_end.insert({key_of(segs[i].a, snap), i});
        by_end.insert({key_of(segs[i].b, snap), i});
    }
    std::vector<bool> used(segs.size(), false);
    std::vector<std::vector<P2>> out;
    auto near = [snap](const P2& p, const P2& q) {
        return std::abs(p[0] - q[0]) < snap && std::abs(p[1] - q[1]) < snap;
    };
    // A point near a bucket boundary snaps into a neighboring cell, so every
    // lookup must probe the 3x3 block of buckets around the tip.
    auto find_next = [&](const P2& tip) -> size_t {
        Key k = key_of(tip, snap);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto range = by_end.equal_range({k.first + dx, k.second + dy});
                for (auto it = range.first; it != range.second; ++it) {
                    size_t j = it->second;
                    if (used[j]) continue;
                    if (near(segs[j].a, tip) || near(segs[j].b, tip)) return j;
                }
            }
        return segs.size();
    };
    for (size_t i = 0; i < segs.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        std::vector<P2> line = {segs[i].a, segs[i].b};
        // grow forward then backward
        for (int dirpass = 0; dirpass < 2; ++dirpass) {
            size_t j;
            while ((j = find_next(line.back())) < segs.size()) {
                line.push_back(near(segs[j].a, line.back()) ? segs[j].b
                                                            : segs[j].a);
                used[j] = true;
            }
            std::reverse(line.begin(), line.end());
        }
        out.push_back(std::move(line));
    }
    return out;
}

SingularCurve extract_once(const std::function<double(double, double)>& indicator,
                           double x0, double x1, double y0, double y1, int n,
                           double hole) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double dx = (x1 - x0) / n, dy = (y1 - y0) / n;
    std::vector<double> val(static_cast<size_t>(n + 1) * (n + 1), nan);
    auto at = [&](int i, int j) -> double& {
        return val[static_cast<size_t>(i) * (n + 1) + j];
    };
    for (int i = 0; i <= n; ++i) {
        double x = x0 + i * dx;
        for (int j = 0; j <= n; ++j) {
            double y = y0 + j * dy;
            if (hole > 0 && std::hypot(x, y) < hole) continue;
            try {
                at(i, j) = indicator(x, y);
            } catch (const Error&) {
            }
        }
    }
    std::vector<Seg> segs;
    auto lerp = [](double xa, double xb, double va, double vb) {
        return xa + (xb - xa) * (va / (va - vb));
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double v00 = at(i, j), v10 = at(i + 1, j);
            double v01 = at(i, j + 1), v11 = at(i + 1, j + 1);
            if (std::isnan(v00) || std::isnan(v10) || std::isnan(v01) ||
                std::isnan(v11))
                continue;
            double xa = x0 + i * dx, xb = x0 + (i + 1) * dx;
            double ya = y0 + j * dy, yb = y0 + (j + 1) * dy;
            std::vector<P2> crossings;
            if ((v00 < 0) != (v10 < 0))
                crossings.push_back({lerp(xa, xb, v00, v10), ya});
            if ((v01 < 0) != (v11 < 0))
                crossings.push_back({lerp(xa, xb, v01, v11), yb});
            if ((v00 < 0) != (v01 < 0))
                crossings.push_back({xa, lerp(ya, yb, v00, v01)});
            if ((v10 < 0) != (v11 < 0))
                crossings.push_back({xb, lerp(ya, yb, v10, v11)});
            if (crossings.size() == 2) {
                segs.push_back({crossings[0], crossings[1]});
            } else if (crossings.size() == 4) {
                // ambiguous saddle; split by pairing along x
                segs.push_back({crossings[0], crossings[2]});
                segs.push_back({crossings[1], crossings[3]});
            }
        }
    }
    SingularCurve c;
    c.grid_n = n;
    c.cell = std::max(dx, dy);
    double snap = 0.25 * std::min(dx, dy);
    // Corner-grazing cells emit sliver segments (both endpoints next to the
    // same grid node); they duplicate the contour and can only attach to the
    // middle of an existing polyline. Dropping anything shorter than the snap
    // tolerance leaves gaps the chainer still bridges.
    std::erase_if(segs, [snap](const Seg& s) {
        return std::abs(s.b[0] - s.a[0]) < snap &&
               std::abs(s.b[1] - s.a[1]) < snap;
    });
    c.polylines = chain_segments(std::move(segs), snap);
    return c;
}

}  // namespace

SingularCurve singular_set_extract(
    const std::function<double(double, double)>& indicator, double x0, double x1,
    double y0, double y1, const ExtractOptions& opt) {
    SingularCurve c = extract_once(indicator, x0, x1, y0, y1, opt.grid_n,
                                   opt.puncture_radius);
    if (opt.refine_check) {
        SingularCurve fine = extract_once(indicator, x0, x1, y0, y1,
                                          2 * opt.grid_n, opt.puncture_radius);
        if (fine.polylines.size() != c.polylines.size())
            throw GridTooCoarse("contour topology changed on refinement (" +
                                std::to_string(c.polylines.size()) + " vs " +
                                std::to_string(fine.polylines.size()) + ")");
    }
    return c;
}

bool singular_set_compact(const SingularCurve& c, double r_check) {
    for (const auto& line : c.polylines)
        for (const auto& p : line)
            if (std::hypot(p[0], p[1]) < r_check) return false;
    return true;
}

}  // namespace forge
