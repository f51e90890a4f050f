#include "tagmap/class_set.hpp"

#include <bit>
#include <cassert>

namespace tagmap {

ClassSet::ClassSet(std::size_t universe_size, bool full)
    : size_(universe_size), words_((universe_size + 63) / 64, full ? ~std::uint64_t{0} : 0) {
  trim();
}

void ClassSet::trim() {
  if (size_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
}

std::size_t ClassSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool ClassSet::empty() const {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

bool ClassSet::contains(std::size_t id) const {
  return id < size_ && ((words_[id / 64] >> (id % 64)) & 1U) != 0;
}

void ClassSet::insert(std::size_t id) {
  assert(id < size_);
  words_[id / 64] |= std::uint64_t{1} << (id % 64);
}

void ClassSet::erase(std::size_t id) {
  assert(id < size_);
  words_[id / 64] &= ~(std::uint64_t{1} << (id % 64));
}

bool ClassSet::intersects(const ClassSet& other) const {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & other.words_[i]) != 0) return true;
  return false;
}

bool ClassSet::is_subset_of(const ClassSet& other) const {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

ClassSet& ClassSet::operator&=(const ClassSet& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

ClassSet& ClassSet::operator|=(const ClassSet& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

ClassSet& ClassSet::operator-=(const ClassSet& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

ClassSet ClassSet::complement() const {
  ClassSet out = *this;
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

std::vector<std::size_t> ClassSet::ids() const {
  std::vector<std::size_t> out;
  for_each([&](std::size_t id) { out.push_back(id); });
  return out;
}

}  // namespace tagmap
