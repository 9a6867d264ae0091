#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace medianlab {

/// Index of a vertex in a finite graph, 0..n-1.
using Vertex = std::uint32_t;

/// Graph distance at integer scale.
using Distance = std::int32_t;

inline constexpr Distance kUnreachable = -1;

enum class ErrorCode {
  kParseError,
  kSizeCapExceeded,
  kDisconnectedGraph,
  kInvalidEdge,
  kNotATree,
  kNotMedianGraph,
  kArityMismatch,
  kM0Violated,
  kEmptySubset,
  kNoChain,
  kEmptyCorpus,
  kNoBarycentre,
  kSpaceMismatch,
  kWindowOverflow,
  kInvalidParams,
  kVerificationFailed,
};

std::string_view error_name(ErrorCode code);

/// Process exit code the CLI uses for each error; 0 is success, 1 is reserved
/// for unexpected failures.
int exit_code_for(ErrorCode code);

/// The single exception type thrown by the library. `tuple` carries the
/// offending vertices when the error is about a specific tuple.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<Vertex> tuple = {})
      : std::runtime_error(message), code_(code), tuple_(std::move(tuple)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<Vertex>& tuple() const noexcept { return tuple_; }

 private:
  ErrorCode code_;
  std::vector<Vertex> tuple_;
};

/// Nonnegative exact rational num/den with den > 0, kept in lowest terms.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Ratio() = default;
  constexpr Ratio(std::int64_t n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
  Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::int64_t floor() const { return num >= 0 ? num / den : -((-num + den - 1) / den); }
  std::int64_t ceil() const { return num >= 0 ? (num + den - 1) / den : -((-num) / den); }
  std::string str() const;

  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    return a.num * b.den <=> b.num * a.den;
  }
  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    return Ratio(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Ratio operator*(const Ratio& a, const Ratio& b) {
    return Ratio(a.num * b.num, a.den * b.den);
  }

  /// Parses "p/q" or "p".
  static Ratio parse(std::string_view text);

 private:
  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
};

/// Exact half-integer, stored as twice its value. Gromov products and
/// four-point deltas live here.
struct HalfInteger {
  std::int64_t twice = 0;

  double value() const { return static_cast<double>(twice) / 2.0; }
  std::string str() const;
  friend auto operator<=>(const HalfInteger&, const HalfInteger&) = default;
};

/// Fixed-size bitset over the vertices of one space.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static VertexSet of(std::size_t n, const std::vector<Vertex>& members) {
    VertexSet s(n);
    for (auto v : members) s.insert(v);
    return s;
  }

  std::size_t universe() const { return n_; }
  void insert(Vertex v) { words_[v >> 6] |= (std::uint64_t{1} << (v & 63)); }
  void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }

  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  bool is_subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  /// Smallest member, or n when empty.
  Vertex first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<Vertex>(i * 64 + std::countr_zero(words_[i]));
    return static_cast<Vertex>(n_);
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        const auto bit = std::countr_zero(w);
        f(static_cast<Vertex>(i * 64 + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace medianlab
