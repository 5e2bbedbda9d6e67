#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cfp {

enum class SpaceKind { finite, box };

/// An element of X. Finite spaces address points by index; box spaces by
/// coordinates. A finite point has empty `coords`.
struct Point {
    std::size_t index = 0;
    std::vector<double> coords;

    static Point at(std::size_t i) { return Point{i, {}}; }
    static Point box(std::vector<double> c) { return Point{0, std::move(c)}; }
    static Point scalar(double v) { return Point{0, {v}}; }

    bool is_indexed() const noexcept { return coords.empty(); }

    bool operator==(const Point&) const = default;
    auto operator<=>(const Point&) const = default;
};

/// An element (first, second) of X x X.
struct ProductPair {
    Point first;
    Point second;

    bool operator==(const ProductPair&) const = default;
    auto operator<=>(const ProductPair&) const = default;
};

/// A partially ordered metric space, either a validated finite table or an
/// axis-aligned box in R^k with the sum-of-absolute-differences metric and
/// the componentwise order. Immutable once built.
class OrderedMetricSpace {
public:
    /// Validates every metric and order axiom; throws AxiomError naming the
    /// first violating pair or triple (row-major).
    static OrderedMetricSpace finite(std::vector<std::string> labels,
                                     std::vector<std::vector<double>> distances,
                                     std::vector<std::vector<bool>> order);

    /// Order given as (p, q) pairs meaning p <= q; reflexive-transitive
    /// closure is taken before validation.
    static OrderedMetricSpace finite_from_pairs(
        std::vector<std::string> labels,
        std::vector<std::vector<double>> distances,
        const std::vector<std::pair<std::size_t, std::size_t>>& order_pairs);

    static OrderedMetricSpace box(std::vector<double> lower, std::vector<double> upper);

    SpaceKind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == SpaceKind::finite; }

    /// Number of points (finite spaces only).
    std::size_t size() const noexcept { return size_; }
    /// Coordinate count (box spaces only).
    std::size_t dimension() const noexcept { return lower_.size(); }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::span<const double> lower() const noexcept { return lower_; }
    std::span<const double> upper() const noexcept { return upper_; }

    // Raw table access for finite spaces; no bounds checking.
    double table_distance(std::size_t i, std::size_t j) const noexcept { return dist_[i * size_ + j]; }
    bool table_leq(std::size_t i, std::size_t j) const noexcept { return order_[i * size_ + j] != 0; }

    std::vector<Point> points() const;

    bool contains(const Point& p) const noexcept;
    /// Throws DomainError when p is not a valid point of this space.
    void require(const Point& p) const;

    /// Largest distance between two points (finite), or between box corners.
    double diameter() const;

    bool operator==(const OrderedMetricSpace&) const = default;

private:
    OrderedMetricSpace() = default;

    SpaceKind kind_ = SpaceKind::finite;
    std::size_t size_ = 0;
    std::vector<std::string> labels_;
    std::vector<double> dist_;
    std::vector<unsigned char> order_;
    std::vector<double> lower_;
    std::vector<double> upper_;
};

double distance(const OrderedMetricSpace& space, const Point& p, const Point& q);
bool leq(const OrderedMetricSpace& space, const Point& p, const Point& q);

inline bool comparable(const OrderedMetricSpace& space, const Point& p, const Point& q)
{
    return leq(space, p, q) || leq(space, q, p);
}

/// (u, v) <= (x, y) in X x X iff u <= x and y <= v.
bool product_leq(const OrderedMetricSpace& space, const ProductPair& lower, const ProductPair& upper);

inline bool product_comparable(const OrderedMetricSpace& space, const ProductPair& a, const ProductPair& b)
{
    return product_leq(space, a, b) || product_leq(space, b, a);
}

/// eta((x, y), (u, v)) = d(x, u) + d(y, v).
double product_eta(const OrderedMetricSpace& space, const ProductPair& a, const ProductPair& b);

std::string describe(const OrderedMetricSpace& space, const Point& p);

} // namespace cfp
