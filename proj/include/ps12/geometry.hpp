#pragma once

/// \file geometry.hpp
/// Macrotriangle geometry for the Powell-Sabin 12-split: split sites,
/// subtriangles, barycentric coordinates, point location and the S3
/// relabeling action on knot multiplicities.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ps12
{

struct Point
{
  double x = 0.0;
  double y = 0.0;

  constexpr Point& operator+=(Point o)
  {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Point& operator-=(Point o)
  {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Point& operator*=(double s)
  {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Point operator+(Point a, Point b) { return a += b; }
  friend constexpr Point operator-(Point a, Point b) { return a -= b; }
  friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
  friend constexpr Point operator*(double s, Point a) { return a *= s; }
  friend constexpr Point operator*(Point a, double s) { return a *= s; }
  friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point, Point) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

/// Twice the signed area of (a, b, c); positive when counterclockwise.
constexpr double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

/// Barycentric coordinates with respect to a macrotriangle.
struct Barycentric
{
  std::array<double, 3> b{};

  double operator[](int i) const { return b[i]; }
  double& operator[](int i) { return b[i]; }
};

/// Nondegenerate triangle [v1, v2, v3]. Vertex labels are kept exactly as
/// given; the orientation sign is stored so that every predicate is
/// orientation independent.
class MacroTriangle
{
public:
  MacroTriangle(Point v1, Point v2, Point v3);

  Point vertex(int i) const { return v_[i]; }
  const std::array<Point, 3>& vertices() const { return v_; }
  double area() const { return std::abs(signed_area_); }
  double signed_area() const { return signed_area_; }
  bool counterclockwise() const { return signed_area_ > 0; }
  double diameter() const;

  Point from_barycentric(const Barycentric& b) const;

private:
  std::array<Point, 3> v_;
  double signed_area_;
};

/// Site indices are 0-based: 0..2 corners, 3 = mid(v1,v2), 4 = mid(v2,v3),
/// 5 = mid(v3,v1), 6 = mid(3,4), 7 = mid(4,5), 8 = mid(5,3), 9 = barycenter.
inline constexpr int kNumSites = 10;
inline constexpr int kNumSubtriangles = 12;

struct SplitSites
{
  MacroTriangle triangle;
  std::array<Point, kNumSites> v;
  /// Each subtriangle as a counterclockwise-or-clockwise index triple into v,
  /// wound like the macrotriangle.
  std::array<std::array<int, 3>, kNumSubtriangles> sub;

  /// Absolute tolerance on orient() used to decide incidence with a line.
  double orient_tol() const;
};

/// Builds the 10 sites and 12 subtriangles. Throws std::invalid_argument for a
/// degenerate triangle.
SplitSites build_sites(const MacroTriangle& t);

Barycentric barycentric(const MacroTriangle& t, Point p);

/// A point approached along p + e*primary + e^2*secondary, e -> 0+. Used to
/// give well-defined one-sided values on lines where a spline may jump.
struct Approach
{
  Point primary;
  Point secondary;
};

/// Approach toward the barycenter (at the barycenter itself, along a fixed
/// direction); ties on a line through the approach are broken by rotating the
/// primary direction counterclockwise.
Approach approach_from_inside(const SplitSites& s, Point p);

/// Approach along a given direction with the counterclockwise tie-break.
Approach approach_along(Point dir);

/// True when p approached along `a` lies in the open triangle (p0, p1, p2).
bool inside_open(Point p0, Point p1, Point p2, Point p, const Approach& a,
                 double tol);

/// Index (0..11) of the subtriangle containing p, resolved by approaching p
/// from inside the macrotriangle. Throws std::out_of_range when p lies outside
/// the closed macrotriangle.
int locate(const SplitSites& s, Point p);

/// Knot multiplicities at the six primary sites v1..v6, written as a 6-digit
/// label such as "600101".
struct MultiplicityVector
{
  std::array<int, 6> m{};

  int total() const;
  std::string label() const;
  static MultiplicityVector parse(std::string_view label);

  int operator[](int i) const { return m[i]; }
  int& operator[](int i) { return m[i]; }
  friend auto operator<=>(const MultiplicityVector&,
                          const MultiplicityVector&) = default;
};

/// Knot multiplicities over all 10 sites.
using SiteCounts = std::array<int, kNumSites>;
SiteCounts to_site_counts(const MultiplicityVector& m);

/// A relabeling sigma of the corners {0,1,2}.
class Permutation
{
public:
  constexpr Permutation() : p_{0, 1, 2} {}
  constexpr explicit Permutation(std::array<int, 3> p) : p_(p) {}

  int operator()(int corner) const { return p_[corner]; }
  /// Induced action on the 10 site indices.
  int site(int s) const;
  Permutation inverse() const;
  /// (this * other)(i) = this(other(i)).
  Permutation operator*(const Permutation& other) const;
  friend bool operator==(const Permutation&, const Permutation&) = default;

  /// All six elements, identity first.
  static const std::array<Permutation, 6>& all();

private:
  std::array<int, 3> p_;
};

/// m' with m'(sigma(i)) = m(i).
MultiplicityVector act(const Permutation& sigma, const MultiplicityVector& m);

/// Point with barycentric coordinates b'_{sigma(i)} = b_i.
Point act(const Permutation& sigma, const MacroTriangle& t, Point p);

} // namespace ps12
