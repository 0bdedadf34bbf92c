#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sm {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kDefaultJmax = 14;

// Integer ticks per unit length: S = 2^(jmax+4).
inline constexpr std::int64_t scale_for(int jmax) { return std::int64_t{1} << (jmax + 4); }

// [k 2^-j, (k+1) 2^-j) on T.
struct DyadicInterval {
    int level = 0;
    std::int64_t index = 0;

    bool operator==(const DyadicInterval&) const = default;
};

// Equal-level product of dyadic intervals; dim = index.size().
struct DyadicCube {
    int level = 0;
    std::vector<std::int64_t> index;

    int dim() const { return static_cast<int>(index.size()); }
    DyadicInterval axis(int i) const { return {level, index[static_cast<std::size_t>(i)]}; }
    bool operator==(const DyadicCube&) const = default;
};

// Arc [lo/S, hi/S) of T, lo in [0, S), 0 < hi - lo <= S. hi > S means the arc wraps.
struct ScaledInterval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::int64_t scale = scale_for(kDefaultJmax);

    std::int64_t length() const { return hi - lo; }
    bool full() const { return hi - lo >= scale; }
    bool operator==(const ScaledInterval&) const = default;
};

struct ScaledBox {
    std::vector<ScaledInterval> axes;

    int dim() const { return static_cast<int>(axes.size()); }
};

// Dilation factor num/den.
struct Factor {
    int num = 1;
    int den = 1;

    Rational value() const { return Rational(num, den); }
    bool operator==(const Factor&) const = default;
};

inline constexpr Factor kNineEighths{9, 8};

bool supported_factor(Factor c);

void check_interval(const DyadicInterval& I, int jmax = kDefaultJmax);
std::pair<DyadicInterval, DyadicInterval> children(const DyadicInterval& I, int jmax = kDefaultJmax);
std::vector<DyadicCube> children(const DyadicCube& Q, int jmax = kDefaultJmax);

DyadicInterval parent(const DyadicInterval& I);
bool contains(const DyadicInterval& outer, const DyadicInterval& inner);
bool overlaps(const DyadicInterval& a, const DyadicInterval& b);
bool overlaps(const DyadicCube& a, const DyadicCube& b);

ScaledInterval make_arc(std::int64_t lo, std::int64_t len, std::int64_t scale);
ScaledInterval to_arc(const DyadicInterval& I, int jmax = kDefaultJmax);
ScaledBox to_box(const DyadicCube& Q, int jmax = kDefaultJmax);

ScaledInterval dilate(const DyadicInterval& I, Factor c, int jmax = kDefaultJmax);
ScaledBox dilate(const DyadicCube& Q, Factor c, int jmax = kDefaultJmax);

// Same-center dilation of an arc by num/den; length must stay an integer.
ScaledInterval dilate_arc(const ScaledInterval& A, Factor c);

bool intersects(const ScaledInterval& a, const ScaledInterval& b);
bool intersects(const ScaledBox& a, const ScaledBox& b);
bool arc_contains(const ScaledInterval& outer, const ScaledInterval& inner);
bool box_contains(const ScaledBox& outer, const ScaledBox& inner);

std::int64_t torus_distance_ticks(const ScaledInterval& a, const ScaledInterval& b);
Rational torus_distance(const ScaledInterval& a, const ScaledInterval& b);

// Closed boxes meet iff every axis projection is at distance 0.
bool boxes_touch(const ScaledBox& a, const ScaledBox& b);

bool adjacent(const DyadicInterval& a, const DyadicInterval& b, int jmax = kDefaultJmax);
bool adjacent(const DyadicCube& a, const DyadicCube& b, int jmax = kDefaultJmax);

// Disjoint, sorted, non-touching [lo, hi) pieces inside [0, S).
std::vector<std::pair<std::int64_t, std::int64_t>> union_pieces(const std::vector<ScaledInterval>& arcs);
std::int64_t union_ticks(const std::vector<ScaledInterval>& arcs);
Rational union_measure(const std::vector<ScaledInterval>& arcs);

struct Rect {
    std::int64_t x0, x1, y0, y1;
};
// Disjoint rectangles covering the union of 2-d boxes, in [0, S)^2.
std::vector<Rect> union_rects(const std::vector<ScaledBox>& boxes);
Rational union_measure(const std::vector<ScaledBox>& boxes);

Rational ticks_to_rational(std::int64_t ticks, std::int64_t scale);
std::string to_string(const Rational& r);

}  // namespace sm
