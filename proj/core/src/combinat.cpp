#include "kcompound/combinat.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "kcompound/errors.hpp"

namespace kcompound {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // c * (n - k + i) / i stays integral at every step; divide by the gcd first
    // so the overflow check is not triggered by an intermediate.
    std::uint64_t num = n - k + i;
    std::uint64_t den = i;
    const std::uint64_t g1 = std::gcd(c, den);
    c /= g1;
    den /= g1;
    num /= den;
    if (c > std::numeric_limits<std::uint64_t>::max() / num) {
      throw DomainError("binomial: C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows 64 bits");
    }
    c *= num;
  }
  return c;
}

void check_k_range(std::size_t k, std::size_t n, std::size_t max_n) {
  if (n > max_n) {
    throw DomainError("dimension n=" + std::to_string(n) + " exceeds the limit " + std::to_string(max_n));
  }
  if (k < 1 || k > n) {
    throw DomainError("k=" + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
}

IndexSet::IndexSet(std::vector<std::size_t> elements, std::size_t n) : elements_(std::move(elements)), n_(n) {
  if (elements_.empty()) throw DomainError("IndexSet: empty");
  if (elements_.front() < 1 || elements_.back() > n_) throw DomainError("IndexSet: element outside 1..n");
  for (std::size_t i = 1; i < elements_.size(); ++i) {
    if (elements_[i] <= elements_[i - 1]) throw DomainError("IndexSet: elements must be strictly increasing");
  }
}

bool IndexSet::contains(std::size_t value) const noexcept {
  return std::binary_search(elements_.begin(), elements_.end(), value);
}

std::ostream& operator<<(std::ostream& os, const IndexSet& s) {
  os << '{';
  for (std::size_t i = 0; i < s.k(); ++i) os << (i ? "," : "") << s[i];
  return os << '}';
}

bool next_lex(std::span<std::size_t> elements, std::size_t n) noexcept {
  const std::size_t k = elements.size();
  // Rightmost position that can still move up.
  std::size_t i = k;
  while (i > 0 && elements[i - 1] == n - k + i) --i;
  if (i == 0) return false;
  ++elements[i - 1];
  for (std::size_t j = i; j < k; ++j) elements[j] = elements[j - 1] + 1;
  return true;
}

std::vector<IndexSet> lex_sequences(std::size_t k, std::size_t n, std::size_t max_n) {
  check_k_range(k, n, max_n);
  std::vector<IndexSet> out;
  out.reserve(binomial(n, k));
  std::vector<std::size_t> cur(k);
  std::iota(cur.begin(), cur.end(), std::size_t{1});
  do {
    out.emplace_back(cur, n);
  } while (next_lex(cur, n));
  return out;
}

std::uint64_t rank(const IndexSet& s) {
  const std::size_t k = s.k();
  const std::size_t n = s.n();
  std::uint64_t r = 0;
  std::size_t prev = 0;
  for (std::size_t i = 0; i < k; ++i) {
    // Count the sets that agree on positions < i and have a smaller value at i.
    for (std::size_t v = prev + 1; v < s[i]; ++v) r += binomial(n - v, k - i - 1);
    prev = s[i];
  }
  return r;
}

IndexSet unrank(std::uint64_t r, std::size_t k, std::size_t n, std::size_t max_n) {
  check_k_range(k, n, max_n);
  if (r >= binomial(n, k)) {
    throw DomainError("unrank: rank " + std::to_string(r) + " outside 0.." + std::to_string(binomial(n, k) - 1));
  }
  std::vector<std::size_t> el(k);
  std::size_t v = 1;
  for (std::size_t i = 0; i < k; ++i) {
    for (;; ++v) {
      const std::uint64_t block = binomial(n - v, k - i - 1);
      if (r < block) break;
      r -= block;
    }
    el[i] = v++;
  }
  return IndexSet(std::move(el), n);
}

}  // namespace kcompound
