#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace kcompound {

/// Largest ambient dimension accepted by the enumeration routines unless the
/// caller raises it. Compound dimensions grow like C(n, n/2).
inline constexpr std::size_t kDefaultMaxDimension = 20;

/// C(n, k). Throws DomainError if the result does not fit in 64 bits.
std::uint64_t binomial(std::size_t n, std::size_t k);

/// A strictly increasing k-tuple drawn from {1, ..., n}: an element of Q(k, n).
/// Element values are 1-based; positions and ranks are 0-based.
class IndexSet {
 public:
  IndexSet(std::vector<std::size_t> elements, std::size_t n);

  std::size_t k() const noexcept { return elements_.size(); }
  std::size_t n() const noexcept { return n_; }
  std::span<const std::size_t> elements() const noexcept { return elements_; }
  std::size_t operator[](std::size_t pos) const { return elements_[pos]; }
  bool contains(std::size_t value) const noexcept;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend std::strong_ordering operator<=>(const IndexSet& a, const IndexSet& b) {
    return a.elements_ <=> b.elements_;
  }

 private:
  std::vector<std::size_t> elements_;
  std::size_t n_;
};

std::ostream& operator<<(std::ostream& os, const IndexSet& s);

/// All of Q(k, n) in lexicographic order.
std::vector<IndexSet> lex_sequences(std::size_t k, std::size_t n,
                                    std::size_t max_n = kDefaultMaxDimension);

/// 0-based lexicographic position of s within Q(s.k(), s.n()).
std::uint64_t rank(const IndexSet& s);

/// Inverse of rank.
IndexSet unrank(std::uint64_t r, std::size_t k, std::size_t n,
                std::size_t max_n = kDefaultMaxDimension);

/// Advances a strictly increasing 1-based tuple to its lexicographic successor
/// in Q(k, n). Returns false (leaving the tuple unchanged) at the last element.
bool next_lex(std::span<std::size_t> elements, std::size_t n) noexcept;

/// Throws DomainError unless 1 <= k <= n <= max_n.
void check_k_range(std::size_t k, std::size_t n, std::size_t max_n = kDefaultMaxDimension);

}  // namespace kcompound
