#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hyperlay {

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point& operator+=(Point o) noexcept { x += o.x; y += o.y; return *this; }
    Point& operator-=(Point o) noexcept { x -= o.x; y -= o.y; return *this; }
    friend Point operator+(Point a, Point b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point p) noexcept { return {s * p.x, s * p.y}; }
    friend Point operator-(Point p) noexcept { return {-p.x, -p.y}; }
    friend bool operator==(Point, Point) = default;
};

double norm(Point p) noexcept;
double squared_norm(Point p) noexcept;

/// Axis-aligned ellipse. Semi-axes must be strictly positive.
class Oval {
public:
    Oval() = default;
    Oval(Point center, double semi_axis_x, double semi_axis_y);

    Point center() const noexcept { return center_; }
    double semi_axis_x() const noexcept { return semi_axis_x_; }
    double semi_axis_y() const noexcept { return semi_axis_y_; }

    /// ((x-cx)/a)^2 + ((y-cy)/b)^2 - 1
    double implicit(Point p) const noexcept;
    Oval scaled(double factor) const;

private:
    Point center_{};
    double semi_axis_x_ = 1.0;
    double semi_axis_y_ = 1.0;
};

/// Absolute tolerance on orientation determinants and the oval equation.
inline constexpr double geometry_epsilon = 1e-9;

/// m equally spaced (in angle) points: slot i sits at angle offset + 2*pi*i/m.
std::vector<Point> oval_slots(std::size_t m, const Oval& oval, double angle_offset);

enum class OvalSide { inside, on, outside };

OvalSide point_oval_class(Point p, const Oval& oval);

/// Proper interior intersection. Shared endpoints and collinear overlap do
/// not count.
bool segments_cross(Point p1, Point p2, Point q1, Point q2);

/// A drawn link between an author-node and a paper-node.
struct LinkSegment {
    Point author_pos;
    Point paper_pos;
    std::size_t author = 0;
    std::size_t paper = 0;
};

struct CrossingReport {
    std::size_t total = 0;
    /// Indexed by paper-node. A crossing between links of two paper-nodes
    /// counts once for each of them.
    std::vector<std::size_t> per_paper;

    friend bool operator==(const CrossingReport&, const CrossingReport&) = default;
};

/// Links incident to a common author or paper never cross each other.
bool links_may_cross(const LinkSegment& a, const LinkSegment& b) noexcept;

/// Exact all-pairs count. Throws ArgumentError on non-finite coordinates or a
/// paper index >= paper_count.
CrossingReport count_crossings(std::span<const LinkSegment> links, std::size_t paper_count);

}  // namespace hyperlay
