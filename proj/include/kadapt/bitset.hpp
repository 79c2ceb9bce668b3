#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kadapt {

// Fixed-width bitset over scenario indices, sized at runtime.
class CoverageSet {
public:
  CoverageSet() : size_(0) {}
  explicit CoverageSet(int size)
      : size_(size), words_((size + 63) / 64, 0) {
    if (size < 0) throw std::invalid_argument("negative bitset size");
  }

  int size() const { return size_; }

  void set(int i) { at(i) |= bit(i); }
  void reset(int i) { at(i) &= ~bit(i); }
  bool test(int i) const { return (word(i) & bit(i)) != 0; }

  void set_all() {
    for (auto& w : words_) w = ~0ULL;
    trim();
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }
  bool all() const { return count() == size_; }

  CoverageSet& operator|=(const CoverageSet& o) {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  CoverageSet& operator&=(const CoverageSet& o) {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // this \ o
  CoverageSet& subtract(const CoverageSet& o) {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  bool is_subset_of(const CoverageSet& o) const {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  int intersection_count(const CoverageSet& o) const {
    check(o);
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }

  friend bool operator==(const CoverageSet& a, const CoverageSet& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < size_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  std::string str() const {
    std::string s(size_, '0');
    for (int i = 0; i < size_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

private:
  uint64_t bit(int i) const { return 1ULL << (i % 64); }
  uint64_t& at(int i) {
    if (i < 0 || i >= size_) throw std::out_of_range("bitset index");
    return words_[i / 64];
  }
  uint64_t word(int i) const {
    if (i < 0 || i >= size_) throw std::out_of_range("bitset index");
    return words_[i / 64];
  }
  void check(const CoverageSet& o) const {
    if (o.size_ != size_) throw std::invalid_argument("bitset size mismatch");
  }
  void trim() {
    if (size_ % 64 && !words_.empty())
      words_.back() &= (1ULL << (size_ % 64)) - 1;
  }

  int size_;
  std::vector<uint64_t> words_;
};

}  // namespace kadapt
