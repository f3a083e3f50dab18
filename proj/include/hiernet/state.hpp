#pragma once
// Flat state vector (X, x^1, ..., x^N) and the block offsets addressing it.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hiernet/error.hpp"
#include "hiernet/hierarchy.hpp"

namespace hiernet {

using HierState = std::vector<double>;

class BlockLayout {
 public:
  BlockLayout() = default;

  explicit BlockLayout(const Hierarchy& h) {
    n_super_ = h.size();
    std::size_t off = n_super_;
    for (const auto& g : h.substructures()) {
      offsets_.push_back(off);
      sizes_.push_back(g.size());
      off += g.size();
    }
    dim_ = off;
  }

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t super_size() const noexcept { return n_super_; }
  [[nodiscard]] std::size_t block_count() const noexcept { return sizes_.size(); }
  [[nodiscard]] std::size_t block_size(std::size_t j) const { return sizes_.at(j); }
  [[nodiscard]] std::size_t block_offset(std::size_t j) const { return offsets_.at(j); }

  /// Index of X_j.
  [[nodiscard]] std::size_t super(std::size_t j) const {
    if (j >= n_super_) throw Error(ErrorKind::IndexOutOfRange, "superstructure index " + std::to_string(j + 1));
    return j;
  }

  /// Index of x^j_i.
  [[nodiscard]] std::size_t sub(std::size_t j, std::size_t i) const {
    if (j >= sizes_.size() || i >= sizes_[j]) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "substructure coordinate (" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ")");
    }
    return offsets_[j] + i;
  }

  /// Block owning flat coordinate c: -1 for the superstructure, else j.
  [[nodiscard]] int block_of(std::size_t c) const {
    if (c < n_super_) return -1;
    for (std::size_t j = 0; j < sizes_.size(); ++j)
      if (c < offsets_[j] + sizes_[j]) return static_cast<int>(j);
    throw Error(ErrorKind::IndexOutOfRange, "coordinate " + std::to_string(c));
  }

  /// "X2", "x3_4" (1-based), matching the CSV column names.
  [[nodiscard]] std::string name(std::size_t c) const {
    const int b = block_of(c);
    if (b < 0) return "X" + std::to_string(c + 1);
    return "x" + std::to_string(b + 1) + "_" + std::to_string(c - offsets_[b] + 1);
  }

  template <class T>
  [[nodiscard]] std::span<T> super_block(std::span<T> s) const {
    return s.subspan(0, n_super_);
  }
  template <class T>
  [[nodiscard]] std::span<T> sub_block(std::span<T> s, std::size_t j) const {
    return s.subspan(offsets_.at(j), sizes_.at(j));
  }

  [[nodiscard]] HierState zeros() const { return HierState(dim_, 0.0); }

  void check(std::span<const double> s) const {
    if (s.size() != dim_) {
      throw Error(ErrorKind::DimensionMismatch,
                  "state has " + std::to_string(s.size()) + " entries, expected " + std::to_string(dim_));
    }
  }

  friend bool operator==(const BlockLayout&, const BlockLayout&) = default;

 private:
  std::size_t n_super_ = 0;
  std::size_t dim_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> sizes_;
};

inline void require_finite(std::span<const double> s, const char* what) {
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (!std::isfinite(s[c])) {
      throw Error(ErrorKind::NonFiniteInput, std::string(what) + " entry " + std::to_string(c) + " is not finite");
    }
  }
}

}  // namespace hiernet
