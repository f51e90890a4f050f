#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tagmap {

/// Set of terminal-class ids over a fixed universe, stored as a bitset.
/// Binary operations require both operands to share the same universe size.
class ClassSet {
 public:
  ClassSet() = default;
  explicit ClassSet(std::size_t universe_size, bool full = false);

  static ClassSet full(std::size_t universe_size) { return ClassSet(universe_size, true); }

  std::size_t universe_size() const { return size_; }
  std::size_t count() const;
  bool empty() const;
  bool contains(std::size_t id) const;
  void insert(std::size_t id);
  void erase(std::size_t id);

  bool intersects(const ClassSet& other) const;
  bool is_subset_of(const ClassSet& other) const;

  ClassSet& operator&=(const ClassSet& other);
  ClassSet& operator|=(const ClassSet& other);
  ClassSet& operator-=(const ClassSet& other);

  friend ClassSet operator&(ClassSet a, const ClassSet& b) { return a &= b; }
  friend ClassSet operator|(ClassSet a, const ClassSet& b) { return a |= b; }
  friend ClassSet operator-(ClassSet a, const ClassSet& b) { return a -= b; }
  friend bool operator==(const ClassSet&, const ClassSet&) = default;

  /// Complement within the universe.
  ClassSet complement() const;

  /// Member ids in increasing order.
  std::vector<std::size_t> ids() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        auto bit = static_cast<std::size_t>(__builtin_ctzll(bits));
        f(w * 64 + bit);
        bits &= bits - 1;
      }
    }
  }

 private:
  void trim();

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace tagmap
