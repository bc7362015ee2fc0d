#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hlim {

/// A permutation of {0,...,degree-1}. Products compose right to left:
/// (a*b)(i) = a(b(i)).
class Perm {
 public:
  using Point = std::uint16_t;

  Perm() = default;
  /// Throws ValidationError unless images is a bijection.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  /// Disjoint-cycle text such as "(0 1)(2 3 4)"; "()" or "" is the identity.
  static Perm from_cycles(const std::string& text, std::size_t degree);
  static Perm from_cycle_list(const std::vector<std::vector<std::size_t>>& cycles, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  Perm pow(long long e) const;
  std::size_t order() const;
  bool is_identity() const;
  /// Smallest moved point, or degree() for the identity.
  std::size_t first_moved() const;

  std::string to_cycles() const;

  /// Lexicographic order on image tuples; the identity is the least element.
  auto operator<=>(const Perm& rhs) const = default;
  bool operator==(const Perm& rhs) const = default;

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace hlim
