#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace forge
{

using point = std::uint16_t;

/// A permutation of {0, ..., degree-1}, stored as its image array.
///
/// Products act on the right: (p * q)(i) = q(p(i)). Conjugation follows the
/// same convention, x^g = g^-1 x g.
class Perm
{
public:
  Perm() = default;

  explicit Perm(std::size_t degree) : images_(degree)
  {
    std::iota(images_.begin(), images_.end(), point{0});
  }

  explicit Perm(std::vector<point> images) : images_(std::move(images))
  {
    std::vector<bool> seen(images_.size());
    for (auto x : images_) {
      if (x >= images_.size() || seen[x])
        throw InvalidArgument("Perm: image array is not a bijection");
      seen[x] = true;
    }
  }

  static Perm identity(std::size_t degree) { return Perm(degree); }

  std::size_t degree() const { return images_.size(); }
  point operator[](std::size_t i) const { return images_[i]; }
  std::vector<point> const &images() const { return images_; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Perm operator*(Perm const &other) const
  {
    Perm r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      r.images_[i] = other.images_[images_[i]];
    return r;
  }

  Perm &operator*=(Perm const &other) { return *this = *this * other; }

  Perm inverse() const
  {
    Perm r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      r.images_[images_[i]] = static_cast<point>(i);
    return r;
  }

  Perm pow(long long e) const
  {
    Perm base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? -static_cast<unsigned long long>(e) : e;
    Perm r(images_.size());
    while (k) {
      if (k & 1)
        r *= base;
      base *= base;
      k >>= 1;
    }
    return r;
  }

  /// g^-1 * this * g
  Perm conjugate(Perm const &g) const
  {
    Perm r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      r.images_[g.images_[i]] = g.images_[images_[i]];
    return r;
  }

  std::size_t order() const
  {
    std::size_t result = 1;
    std::vector<bool> seen(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i])
        continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  bool operator==(Perm const &) const = default;
  auto operator<=>(Perm const &other) const { return images_ <=> other.images_; }

  std::size_t hash() const
  {
    // FNV-1a over the image array.
    std::size_t h = 1469598103934665603ull;
    for (auto x : images_) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }

  /// Cycle notation with 1-based points; each cycle starts at its least
  /// point and cycles are ordered by that point. Identity prints as "()".
  std::string to_cycles() const
  {
    std::string out;
    std::vector<bool> seen(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i)
        continue;
      out += '(';
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        if (j != i)
          out += ' ';
        out += std::to_string(j + 1);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  /// Parses cycle notation. Cycles are composed left to right, so
  /// "(1 2)(2 3)" first applies (1 2) then (2 3).
  static Perm from_cycles(std::string_view text, std::size_t degree)
  {
    Perm result(degree);
    std::size_t pos = 0;
    auto skip_space = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',' || text[pos] == '\t'))
        ++pos;
    };
    skip_space();
    while (pos < text.size()) {
      if (text[pos] != '(')
        throw ParseError("cycle notation: expected '(' at offset " + std::to_string(pos));
      ++pos;
      std::vector<point> cycle;
      std::vector<bool> used(degree);
      while (true) {
        skip_space();
        if (pos >= text.size())
          throw ParseError("cycle notation: unterminated cycle");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        std::size_t value = 0;
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
          value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
          if (value > 1'000'000)
            throw ParseError("cycle notation: point too large");
          ++pos;
        }
        if (pos == start)
          throw ParseError("cycle notation: unexpected character at offset " + std::to_string(pos));
        if (value == 0 || value > degree)
          throw ParseError("cycle notation: point " + std::to_string(value) +
                           " out of range 1.." + std::to_string(degree));
        if (used[value - 1])
          throw ParseError("cycle notation: point " + std::to_string(value) + " repeated in a cycle");
        used[value - 1] = true;
        cycle.push_back(static_cast<point>(value - 1));
      }
      if (cycle.size() > 1) {
        Perm c(degree);
        for (std::size_t i = 0; i < cycle.size(); ++i)
          c.images_[cycle[i]] = cycle[(i + 1) % cycle.size()];
        result *= c;
      }
      skip_space();
    }
    return result;
  }

private:
  std::vector<point> images_;
};

struct PermHash
{
  std::size_t operator()(Perm const &p) const { return p.hash(); }
};

inline Perm commutator(Perm const &a, Perm const &b)
{
  return a.inverse() * b.inverse() * a * b;
}

} // namespace forge
