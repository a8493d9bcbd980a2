#include "hyperlay/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hyperlay/error.hpp"

namespace hyperlay {

double norm(Point p) noexcept { return std::hypot(p.x, p.y); }
double squared_norm(Point p) noexcept { return p.x * p.x + p.y * p.y; }

Oval::Oval(Point center, double semi_axis_x, double semi_axis_y)
    : center_(center), semi_axis_x_(semi_axis_x), semi_axis_y_(semi_axis_y) {
    if (!(semi_axis_x > 0.0) || !(semi_axis_y > 0.0) || !std::isfinite(semi_axis_x) ||
        !std::isfinite(semi_axis_y)) {
        throw ArgumentError("oval semi-axes must be finite and strictly positive");
    }
}

double Oval::implicit(Point p) const noexcept {
    double u = (p.x - center_.x) / semi_axis_x_;
    double v = (p.y - center_.y) / semi_axis_y_;
    return u * u + v * v - 1.0;
}

Oval Oval::scaled(double factor) const { return Oval(center_, semi_axis_x_ * factor, semi_axis_y_ * factor); }

std::vector<Point> oval_slots(std::size_t m, const Oval& oval, double angle_offset) {
    if (m == 0) throw ArgumentError("oval_slots needs at least one slot");
    std::vector<Point> slots;
    slots.reserve(m);
    const Point c = oval.center();
    for (std::size_t i = 0; i < m; ++i) {
        double theta = angle_offset + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
        slots.push_back({c.x + oval.semi_axis_x() * std::cos(theta), c.y + oval.semi_axis_y() * std::sin(theta)});
    }
    return slots;
}

OvalSide point_oval_class(Point p, const Oval& oval) {
    double v = oval.implicit(p);
    if (std::abs(v) <= geometry_epsilon) return OvalSide::on;
    return v < 0.0 ? OvalSide::inside : OvalSide::outside;
}

namespace {

// Twice the signed area of (a, b, c), snapped to zero within epsilon.
int orientation(Point a, Point b, Point c) {
    double det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (std::abs(det) <= geometry_epsilon) return 0;
    return det > 0.0 ? 1 : -1;
}

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

bool segments_cross(Point p1, Point p2, Point q1, Point q2) {
    if (p1 == q1 || p1 == q2 || p2 == q1 || p2 == q2) return false;
    int o1 = orientation(p1, p2, q1);
    int o2 = orientation(p1, p2, q2);
    int o3 = orientation(q1, q2, p1);
    int o4 = orientation(q1, q2, p2);
    // Any zero means touching or collinear; neither is a proper crossing.
    return o1 * o2 < 0 && o3 * o4 < 0;
}

bool links_may_cross(const LinkSegment& a, const LinkSegment& b) noexcept {
    return a.author != b.author && a.paper != b.paper;
}

CrossingReport count_crossings(std::span<const LinkSegment> links, std::size_t paper_count) {
    for (const auto& l : links) {
        if (!finite(l.author_pos) || !finite(l.paper_pos)) {
            throw ArgumentError("link coordinates must be finite");
        }
        if (l.paper >= paper_count) {
            throw ArgumentError("link references paper " + std::to_string(l.paper) + " out of range");
        }
    }
    CrossingReport report;
    report.per_paper.assign(paper_count, 0);
    for (std::size_t i = 0; i < links.size(); ++i) {
        for (std::size_t j = i + 1; j < links.size(); ++j) {
            const auto& a = links[i];
            const auto& b = links[j];
            if (!links_may_cross(a, b)) continue;
            if (!segments_cross(a.author_pos, a.paper_pos, b.author_pos, b.paper_pos)) continue;
            ++report.total;
            ++report.per_paper[a.paper];
            if (b.paper != a.paper) ++report.per_paper[b.paper];
        }
    }
    return report;
}

}  // namespace hyperlay
