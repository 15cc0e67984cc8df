#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hypercover {

/// Fixed-length bitset with runtime size. Unused high bits of the last word stay zero.
class DynamicBitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  DynamicBitset() = default;
  explicit DynamicBitset(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

  static DynamicBitset full(std::size_t size) {
    DynamicBitset b(size);
    std::fill(b.words_.begin(), b.words_.end(), ~Word{0});
    b.trim();
    return b;
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const std::vector<Word>& words() const noexcept { return words_; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }
  bool any() const noexcept { return !none(); }
  bool all() const noexcept { return count() == size_; }

  /// Index of the lowest set bit, or size() if none.
  std::size_t find_first() const noexcept { return find_next_from(0); }

  std::size_t find_next_from(std::size_t from) const noexcept {
    if (from >= size_) return size_;
    std::size_t wi = from / kWordBits;
    Word w = words_[wi] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (w != 0) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size()) return size_;
      w = words_[wi];
    }
  }

  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w != 0) {
        f(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  bool is_subset_of(const DynamicBitset& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  bool intersects(const DynamicBitset& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }
  std::size_t intersection_count(const DynamicBitset& other) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return c;
  }

  DynamicBitset& operator|=(const DynamicBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  DynamicBitset& operator&=(const DynamicBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// this := this \ o
  DynamicBitset& subtract(const DynamicBitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend DynamicBitset operator|(DynamicBitset a, const DynamicBitset& b) { return a |= b; }
  friend DynamicBitset operator&(DynamicBitset a, const DynamicBitset& b) { return a &= b; }

  friend bool operator==(const DynamicBitset&, const DynamicBitset&) = default;
  friend auto operator<=>(const DynamicBitset& a, const DynamicBitset& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ULL ^ size_;
    for (Word w : words_) h = (h ^ w) * 1099511628211ULL + (h >> 29);
    return h;
  }

 private:
  void trim() noexcept {
    if (size_ % kWordBits != 0 && !words_.empty()) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

struct DynamicBitsetHash {
  std::size_t operator()(const DynamicBitset& b) const noexcept { return b.hash(); }
};

}  // namespace hypercover
