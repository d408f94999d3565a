#pragma once

#include <cstddef>
#include <vector>

namespace arakelov::convex {

using Point = std::vector<double>;

inline constexpr double geometric_tolerance = 1e-9;

// normal . x <= offset, with a unit normal
struct Halfspace {
    Point normal;
    double offset = 0.0;

    double slack(const Point& x) const;
    bool satisfied(const Point& x, double tol = geometric_tolerance) const;
};

Halfspace make_halfspace(Point normal, double offset);

/// Convex polytope in R^1 or R^2 with vertex and halfspace representations
/// kept in sync. Vertices of a two-dimensional polytope are stored
/// counter-clockwise starting from the lexicographically smallest one.
/// Lower-dimensional hulls keep the equations of their affine span among
/// the halfspaces (as opposite pairs) and have zero volume.
class Polytope {
public:
    Polytope() = default;

    static Polytope empty(std::size_t dimension);
    static Polytope from_vertices(std::size_t dimension, const std::vector<Point>& points);
    static Polytope from_halfspaces(std::size_t dimension, const std::vector<Halfspace>& halfspaces);
    static Polytope box(const Point& lower, const Point& upper);
    // {x : x_i >= lower_i, sum x_i <= upper_sum}
    static Polytope simplex(const Point& lower, double upper_sum);

    std::size_t dimension() const { return dimension_; }
    int affine_dimension() const { return affine_dimension_; }
    bool is_empty() const { return affine_dimension_ < 0; }
    bool is_full_dimensional() const
    {
        return !is_empty() && affine_dimension_ == static_cast<int>(dimension_);
    }

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

    bool contains(const Point& x, double tol = geometric_tolerance) const;
    double volume() const;
    double lower(std::size_t axis) const;
    double upper(std::size_t axis) const;
    Point centroid() const;

    Polytope intersect(const std::vector<Halfspace>& extra) const;
    Polytope scaled(double factor) const;

    // same vertex set up to permutation
    bool same_as(const Polytope& other, double tol = geometric_tolerance) const;

private:
    friend Polytope convex_hull(const std::vector<Point>& points);

    std::size_t dimension_ = 0;
    int affine_dimension_ = -1;
    std::vector<Point> vertices_;
    std::vector<Halfspace> halfspaces_;
};

/// Smallest polytope containing the points. Supports R^1 and R^2.
Polytope convex_hull(const std::vector<Point>& points);

} // namespace arakelov::convex
