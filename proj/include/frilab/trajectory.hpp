#ifndef FRILAB_TRAJECTORY_HPP
#define FRILAB_TRAJECTORY_HPP

#include <cassert>
#include <optional>
#include <string>
#include <vector>

#include "frilab/geometry.hpp"
#include "frilab/rng.hpp"

namespace frilab {

/**
 * Finite nearest-neighbor path on Z^d, stored as a start point plus one step
 * code per step (1 byte each), so million-step walks stay compact. The
 * visited point sequence is decoded on demand.
 */
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(Point start, std::vector<uint8_t> steps, int d)
      : start_(start), steps_(std::move(steps)), dim_(static_cast<uint8_t>(d)) {
    check_dimension(d);
#ifndef NDEBUG
    for (uint8_t s : steps_) assert(s < 2 * d);
#endif
    end_ = start_;
    for (uint8_t s : steps_) end_ = neighbor(end_, s);
  }

  int dim() const { return dim_; }
  int64_t length() const { return static_cast<int64_t>(steps_.size()); }  // T(eta)
  const Point& start() const { return start_; }
  const Point& end() const { return end_; }
  const std::vector<uint8_t>& steps() const { return steps_; }

  Point point_at(int64_t t) const {
    if (t < 0 || t > length()) throw ValidationError("trajectory time out of range");
    Point p = start_;
    for (int64_t i = 0; i < t; ++i) p = neighbor(p, steps_[static_cast<size_t>(i)]);
    return p;
  }

  template <class F>
  void for_each_point(F&& f) const {
    Point p = start_;
    f(static_cast<const Point&>(p), int64_t{0});
    for (int64_t i = 0; i < length(); ++i) {
      p = neighbor(p, steps_[static_cast<size_t>(i)]);
      f(static_cast<const Point&>(p), i + 1);
    }
  }

  std::vector<Point> points() const {
    std::vector<Point> v;
    v.reserve(static_cast<size_t>(length()) + 1);
    for_each_point([&](const Point& p, int64_t) { v.push_back(p); });
    return v;
  }

  // range(eta) as a deduplicated set.
  PointSet range() const {
    PointSet s(static_cast<size_t>(length()) + 1);
    for_each_point([&](const Point& p, int64_t) { s.insert(p); });
    return s;
  }

  bool visits(const Point& q) const {
    bool hit = false;
    Point p = start_;
    if (p == q) return true;
    for (uint8_t s : steps_) {
      p = neighbor(p, s);
      if (p == q) {
        hit = true;
        break;
      }
    }
    return hit;
  }

  // linf diameter of the range.
  int64_t diam() const {
    int32_t lo[kMaxDim], hi[kMaxDim];
    for (int i = 0; i < kMaxDim; ++i) lo[i] = hi[i] = start_[i];
    Point p = start_;
    for (uint8_t s : steps_) {
      p = neighbor(p, s);
      for (int i = 0; i < dim_; ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    }
    int64_t d = 0;
    for (int i = 0; i < kMaxDim; ++i)
      d = std::max<int64_t>(d, static_cast<int64_t>(hi[i]) - lo[i]);
    return d;
  }

  bool operator==(const Trajectory& o) const {
    return dim_ == o.dim_ && start_ == o.start_ && steps_ == o.steps_;
  }

  // Canonical order: (length, start coords, step codes); fixes "first"/"next"
  // wherever a deterministic choice among trajectories is needed.
  bool canonical_less(const Trajectory& o) const {
    if (length() != o.length()) return length() < o.length();
    if (!(start_ == o.start_)) return start_ < o.start_;
    return steps_ < o.steps_;
  }

 private:
  Point start_{};
  std::vector<uint8_t> steps_;
  Point end_{};
  uint8_t dim_ = 4;
};

// Simple random walk of the given length: steps uniform over the 2d unit moves.
inline Trajectory sample_srw(const Point& start, int64_t length, int d, RngStream& rng) {
  check_dimension(d);
  if (length < 0) throw ValidationError("sample_srw: length must be >= 0");
  std::vector<uint8_t> steps(static_cast<size_t>(length));
  for (auto& s : steps)
    s = static_cast<uint8_t>(rng.uniform_below(static_cast<uint64_t>(2 * d)));
  return Trajectory(start, std::move(steps), d);
}

// Concatenation: second path translated so its start meets the first's end.
inline Trajectory concatenate(const Trajectory& a, const Trajectory& b) {
  if (a.dim() != b.dim()) throw ValidationError("concatenate: dimension mismatch");
  std::vector<uint8_t> steps;
  steps.reserve(a.steps().size() + b.steps().size());
  steps.insert(steps.end(), a.steps().begin(), a.steps().end());
  steps.insert(steps.end(), b.steps().begin(), b.steps().end());
  return Trajectory(a.start(), std::move(steps), a.dim());
}

// eta[a,b] = (eta(a+s))_{0<=s<=b-a}.
inline Trajectory sub_path(const Trajectory& eta, int64_t a, int64_t b) {
  if (a < 0 || a > b || b > eta.length())
    throw ValidationError("sub_path: need 0 <= a <= b <= T");
  std::vector<uint8_t> steps(eta.steps().begin() + a, eta.steps().begin() + b);
  return Trajectory(eta.point_at(a), std::move(steps), eta.dim());
}

// Smallest t with eta(t) in A, if any.
template <class SetLike>
std::optional<int64_t> hitting_time(const Trajectory& eta, const SetLike& a) {
  std::optional<int64_t> out;
  Point p = eta.start();
  if (a.contains(p)) return 0;
  int64_t t = 0;
  for (uint8_t s : eta.steps()) {
    p = neighbor(p, s);
    ++t;
    if (a.contains(p)) return t;
  }
  return out;
}

// Smallest t >= 1 with eta(t) in A (return/entrance time after time zero).
template <class SetLike>
std::optional<int64_t> return_time(const Trajectory& eta, const SetLike& a) {
  Point p = eta.start();
  int64_t t = 0;
  for (uint8_t s : eta.steps()) {
    p = neighbor(p, s);
    ++t;
    if (a.contains(p)) return t;
  }
  return std::nullopt;
}

// True iff the two paths are spatial translations of each other.
inline bool translation_equivalent(const Trajectory& a, const Trajectory& b) {
  return a.dim() == b.dim() && a.steps() == b.steps();
}

namespace detail_b64 {
inline const char* alphabet() {
  return "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}
}  // namespace detail_b64

inline std::string base64_encode(const std::vector<uint8_t>& data) {
  const char* tab = detail_b64::alphabet();
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 3 <= data.size(); i += 3) {
    uint32_t v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
    out += tab[(v >> 18) & 63];
    out += tab[(v >> 12) & 63];
    out += tab[(v >> 6) & 63];
    out += tab[v & 63];
  }
  if (i + 1 == data.size()) {
    uint32_t v = data[i] << 16;
    out += tab[(v >> 18) & 63];
    out += tab[(v >> 12) & 63];
    out += "==";
  } else if (i + 2 == data.size()) {
    uint32_t v = (data[i] << 16) | (data[i + 1] << 8);
    out += tab[(v >> 18) & 63];
    out += tab[(v >> 12) & 63];
    out += tab[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

inline std::vector<uint8_t> base64_decode(const std::string& s) {
  int8_t rev[256];
  std::fill(rev, rev + 256, int8_t{-1});
  const char* tab = detail_b64::alphabet();
  for (int i = 0; i < 64; ++i) rev[static_cast<uint8_t>(tab[i])] = static_cast<int8_t>(i);
  std::vector<uint8_t> out;
  uint32_t buf = 0;
  int bits = 0;
  for (char ch : s) {
    if (ch == '=') break;
    int8_t v = rev[static_cast<uint8_t>(ch)];
    if (v < 0) throw ValidationError("base64: invalid character");
    buf = (buf << 6) | static_cast<uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<uint8_t>((buf >> bits) & 0xFF));
    }
  }
  return out;
}

}  // namespace frilab

#endif  // FRILAB_TRAJECTORY_HPP
