#ifndef FRILAB_GEOMETRY_HPP
#define FRILAB_GEOMETRY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <vector>

#include "frilab/common.hpp"

namespace frilab {

/**
 * Lattice point of Z^d, d <= 8. Coordinates beyond the active dimension stay
 * zero, so equality, hashing, norms and arithmetic never need d.
 */
struct Point {
  std::array<int32_t, kMaxDim> c{};

  int32_t& operator[](int i) { return c[static_cast<size_t>(i)]; }
  int32_t operator[](int i) const { return c[static_cast<size_t>(i)]; }

  bool operator==(const Point& o) const = default;
  // Plain lexicographic order on coordinates.
  auto operator<=>(const Point& o) const = default;

  Point operator+(const Point& o) const {
    Point r;
    for (int i = 0; i < kMaxDim; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  Point operator-(const Point& o) const {
    Point r;
    for (int i = 0; i < kMaxDim; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }

  int64_t norm_linf() const {
    int64_t m = 0;
    for (int i = 0; i < kMaxDim; ++i) {
      int64_t a = c[i] < 0 ? -static_cast<int64_t>(c[i]) : c[i];
      m = std::max(m, a);
    }
    return m;
  }
  int64_t norm_l1() const {
    int64_t s = 0;
    for (int i = 0; i < kMaxDim; ++i) s += c[i] < 0 ? -static_cast<int64_t>(c[i]) : c[i];
    return s;
  }

  uint64_t hash() const {
    uint64_t w[4];
    std::memcpy(w, c.data(), sizeof w);
    uint64_t h = 0x243F6A8885A308D3ULL;
    for (uint64_t x : w) h = mix64(h ^ (x + kGolden));
    return h;
  }
};

inline Point make_point(std::initializer_list<int32_t> coords) {
  Point p;
  int i = 0;
  for (int32_t v : coords) p.c[static_cast<size_t>(i++)] = v;
  return p;
}

inline Point unit_vector(int axis, int32_t sign = 1) {
  Point p;
  p[axis] = sign;
  return p;
}

inline int64_t dist_linf(const Point& a, const Point& b) { return (a - b).norm_linf(); }
inline int64_t dist_l1(const Point& a, const Point& b) { return (a - b).norm_l1(); }

// Step codes: code k in [0, 2d) moves along axis k/2 with sign +1 for even k.
inline Point step_offset(int code) {
  return unit_vector(code >> 1, (code & 1) ? -1 : 1);
}

inline Point neighbor(const Point& p, int code) { return p + step_offset(code); }

/**
 * Axis-aligned box: either B(x,r) = {y : |x-y|_inf <= r} (centered) or the
 * corner-anchored x + [0,R)^d.
 */
struct Box {
  enum class Kind { centered, corner };
  Point anchor;          // center or corner
  int64_t extent = 0;    // radius (centered) or side R (corner)
  Kind kind = Kind::centered;
  int dim = 4;

  static Box centered(Point center, int64_t radius, int d) {
    check_dimension(d);
    if (radius < 0) throw ValidationError("box radius must be >= 0");
    return Box{center, radius, Kind::centered, d};
  }
  static Box corner(Point corner_pt, int64_t side, int d) {
    check_dimension(d);
    if (side < 0) throw ValidationError("box side must be >= 0");
    return Box{corner_pt, side, Kind::corner, d};
  }

  bool contains(const Point& p) const {
    if (kind == Kind::centered) {
      for (int i = 0; i < dim; ++i) {
        int64_t off = static_cast<int64_t>(p[i]) - anchor[i];
        if (off > extent || off < -extent) return false;
      }
      return true;
    }
    for (int i = 0; i < dim; ++i) {
      int64_t off = static_cast<int64_t>(p[i]) - anchor[i];
      if (off < 0 || off >= extent) return false;
    }
    return true;
  }

  int64_t side_length() const { return kind == Kind::centered ? 2 * extent + 1 : extent; }

  uint64_t volume() const {
    uint64_t v = 1;
    for (int i = 0; i < dim; ++i) v *= static_cast<uint64_t>(side_length());
    return v;
  }

  Point low_corner() const {
    if (kind == Kind::corner) return anchor;
    Point p = anchor;
    for (int i = 0; i < dim; ++i) p[i] = static_cast<int32_t>(p[i] - extent);
    return p;
  }

  // Row-major linear index of p inside the box; p must be contained.
  uint64_t index_of(const Point& p) const {
    Point lo = low_corner();
    uint64_t idx = 0;
    for (int i = 0; i < dim; ++i)
      idx = idx * static_cast<uint64_t>(side_length()) +
            static_cast<uint64_t>(p[i] - lo[i]);
    return idx;
  }

  Point point_at(uint64_t idx) const {
    Point lo = low_corner();
    Point p;
    for (int i = dim - 1; i >= 0; --i) {
      uint64_t s = static_cast<uint64_t>(side_length());
      p[i] = static_cast<int32_t>(lo[i] + static_cast<int64_t>(idx % s));
      idx /= s;
    }
    return p;
  }

  template <class F>
  void for_each_point(F&& f) const {
    Point lo = low_corner();
    int64_t side = side_length();
    if (side == 0) return;
    Point p = lo;
    while (true) {
      f(static_cast<const Point&>(p));
      int i = dim - 1;
      for (; i >= 0; --i) {
        if (p[i] - lo[i] + 1 < side) {
          ++p[i];
          break;
        }
        p[i] = lo[i];
      }
      if (i < 0) break;
    }
  }
};

/**
 * Open-addressing hash set of lattice points. Insertion order is preserved
 * in items() so iteration and subsampling are deterministic.
 */
class PointSet {
 public:
  PointSet() { rehash(16); }
  explicit PointSet(size_t expected) { rehash(table_size_for(expected)); }

  void reserve(size_t n) {
    size_t want = table_size_for(n);
    if (want > slots_.size()) rehash(want);
  }

  bool insert(const Point& p) {
    if ((items_.size() + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
    size_t pos = probe(p);
    if (index_[pos] != kEmpty) return false;
    slots_[pos] = p;
    index_[pos] = static_cast<uint32_t>(items_.size());
    items_.push_back(p);
    return true;
  }

  bool contains(const Point& p) const { return index_[probe(p)] != kEmpty; }

  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<Point>& items() const { return items_; }

  void clear() {
    items_.clear();
    std::fill(index_.begin(), index_.end(), kEmpty);
  }

 private:
  static constexpr uint32_t kEmpty = 0xFFFFFFFFu;

  static size_t table_size_for(size_t n) {
    size_t s = 16;
    while (s < 2 * n + 2) s <<= 1;
    return s;
  }

  size_t probe(const Point& p) const {
    size_t mask = slots_.size() - 1;
    size_t pos = p.hash() & mask;
    while (index_[pos] != kEmpty && !(slots_[pos] == p)) pos = (pos + 1) & mask;
    return pos;
  }

  void rehash(size_t n) {
    slots_.assign(n, Point{});
    index_.assign(n, kEmpty);
    for (size_t i = 0; i < items_.size(); ++i) {
      size_t pos = probe(items_[i]);
      slots_[pos] = items_[i];
      index_[pos] = static_cast<uint32_t>(i);
    }
  }

  std::vector<Point> slots_;
  std::vector<uint32_t> index_;
  std::vector<Point> items_;
};

// Union of point sets as a flat copy.
inline PointSet set_union(const PointSet& a, const PointSet& b) {
  PointSet r(a.size() + b.size());
  for (const Point& p : a.items()) r.insert(p);
  for (const Point& p : b.items()) r.insert(p);
  return r;
}

// d(x, A) in the linf metric; A must be nonempty.
inline int64_t dist_linf(const Point& x, const PointSet& a) {
  int64_t best = INT64_MAX;
  for (const Point& p : a.items()) best = std::min(best, dist_linf(x, p));
  return best;
}

// Membership in B(A, r) = union of B(p, r) over p in A.
inline bool in_neighborhood(const Point& x, const PointSet& a, int64_t r) {
  for (const Point& p : a.items())
    if (dist_linf(x, p) <= r) return true;
  return false;
}

inline int64_t diameter_linf(const std::vector<Point>& pts) {
  if (pts.empty()) return 0;
  int64_t d = 0;
  for (int i = 0; i < kMaxDim; ++i) {
    int32_t lo = pts[0][i], hi = pts[0][i];
    for (const Point& p : pts) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
    d = std::max<int64_t>(d, static_cast<int64_t>(hi) - lo);
  }
  return d;
}

}  // namespace frilab

#endif  // FRILAB_GEOMETRY_HPP
