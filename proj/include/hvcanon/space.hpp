#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hvcanon {

// A finite measurable space given by the ordered list of its atoms.
// Labels must be nonempty, pairwise distinct, and free of ',' (which is
// reserved as the tuple separator in product labels and table keys).
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t index) const { return labels_.at(index); }

  // Index of a label; throws std::invalid_argument if absent.
  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.labels_ == b.labels_;
  }

 private:
  struct tuple_tag {};
  FiniteSpace(tuple_tag, std::vector<std::string> labels);
  friend FiniteSpace product(const std::vector<FiniteSpace>& factors);

  void build_index();

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Product space: labels are the factor labels joined by ',' in factor order.
// Throws on an empty factor list.
FiniteSpace product(const std::vector<FiniteSpace>& factors);

// A partition of a FiniteSpace into disjoint nonempty blocks covering it.
// Each block is named by its members joined with '+' in base label order.
class Partition {
 public:
  Partition(FiniteSpace base, std::vector<std::vector<std::string>> blocks);

  const FiniteSpace& base() const { return base_; }
  std::size_t block_count() const { return blocks_.size(); }
  // Block members as base label indices, sorted ascending.
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  const std::string& block_name(std::size_t block) const { return names_[block]; }
  std::size_t block_of(std::size_t label_index) const { return owner_.at(label_index); }

  // The quotient space, one label per block, in block order.
  FiniteSpace block_space() const;

  static Partition singletons(const FiniteSpace& base);
  static Partition single_block(const FiniteSpace& base);

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.base_ == b.base_ && a.blocks_ == b.blocks_;
  }

 private:
  FiniteSpace base_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::string> names_;
  std::vector<std::size_t> owner_;
};

}  // namespace hvcanon
