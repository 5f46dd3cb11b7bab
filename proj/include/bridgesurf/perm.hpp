#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>

namespace bsurf {

// Permutation of the four vertex labels of a tetrahedron.
class Perm4 {
 public:
  constexpr Perm4() : image_{0, 1, 2, 3} {}
  constexpr Perm4(int a, int b, int c, int d) : image_{std::uint8_t(a), std::uint8_t(b), std::uint8_t(c), std::uint8_t(d)} {}

  constexpr int operator[](int i) const { return image_[i]; }

  constexpr Perm4 inverse() const {
    Perm4 out;
    for (int i = 0; i < 4; ++i) out.image_[image_[i]] = std::uint8_t(i);
    return out;
  }

  // (this * other)[i] == this[other[i]]
  constexpr Perm4 operator*(const Perm4& other) const {
    Perm4 out;
    for (int i = 0; i < 4; ++i) out.image_[i] = image_[other.image_[i]];
    return out;
  }

  constexpr bool operator==(const Perm4&) const = default;

  constexpr bool is_bijection() const {
    int seen = 0;
    for (auto v : image_) {
      if (v > 3) return false;
      seen |= 1 << v;
    }
    return seen == 0xF;
  }

  // Rank in the lexicographic ordering of all 24 permutations.
  int index() const {
    int idx = 0;
    for (int i = 0; i < 4; ++i) {
      int smaller = 0;
      for (int j = i + 1; j < 4; ++j)
        if (image_[j] < image_[i]) ++smaller;
      idx = idx * (4 - i) + smaller;
    }
    return idx;
  }

  static const std::array<Perm4, 24>& all();

  std::string str() const {
    return {char('0' + image_[0]), char('0' + image_[1]), char('0' + image_[2]), char('0' + image_[3])};
  }

 private:
  std::array<std::uint8_t, 4> image_;
};

inline const std::array<Perm4, 24>& Perm4::all() {
  static const std::array<Perm4, 24> perms = [] {
    std::array<Perm4, 24> out;
    std::array<int, 4> p{0, 1, 2, 3};
    int k = 0;
    do {
      out[k++] = Perm4(p[0], p[1], p[2], p[3]);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

}  // namespace bsurf
