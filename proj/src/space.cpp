#include "hvcanon/space.hpp"

#include <algorithm>
#include <stdexcept>

namespace hvcanon {

FiniteSpace::FiniteSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  for (const std::string& label : labels_) {
    if (label.find(',') != std::string::npos) {
      throw std::invalid_argument("FiniteSpace label contains ',': '" + label + "'");
    }
  }
  build_index();
}

FiniteSpace::FiniteSpace(tuple_tag, std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  build_index();
}

void FiniteSpace::build_index() {
  if (labels_.empty()) {
    throw std::invalid_argument("FiniteSpace requires at least one label");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const std::string& label = labels_[i];
    if (label.empty()) {
      throw std::invalid_argument("FiniteSpace labels must be nonempty");
    }
    if (!index_.emplace(label, i).second) {
      throw std::invalid_argument("duplicate FiniteSpace label: '" + label + "'");
    }
  }
}

std::size_t FiniteSpace::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) {
    throw std::invalid_argument("unknown label: '" + std::string(label) + "'");
  }
  return it->second;
}

bool FiniteSpace::contains(std::string_view label) const {
  return index_.count(std::string(label)) > 0;
}

FiniteSpace product(const std::vector<FiniteSpace>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("product of an empty factor list");
  }
  std::vector<std::string> labels{""};
  for (std::size_t f = 0; f < factors.size(); ++f) {
    std::vector<std::string> next;
    next.reserve(labels.size() * factors[f].size());
    for (const std::string& prefix : labels) {
      for (const std::string& atom : factors[f].labels()) {
        next.push_back(f == 0 ? atom : prefix + "," + atom);
      }
    }
    labels = std::move(next);
  }
  return FiniteSpace(FiniteSpace::tuple_tag{}, std::move(labels));
}

Partition::Partition(FiniteSpace base, std::vector<std::vector<std::string>> blocks)
    : base_(std::move(base)) {
  if (blocks.empty()) {
    throw std::invalid_argument("Partition requires at least one block");
  }
  owner_.assign(base_.size(), blocks.size());
  for (const auto& block : blocks) {
    if (block.empty()) {
      throw std::invalid_argument("Partition block is empty");
    }
    std::vector<std::size_t> indices;
    indices.reserve(block.size());
    for (const std::string& label : block) {
      std::size_t idx = base_.index_of(label);
      if (owner_[idx] != blocks.size()) {
        throw std::invalid_argument("Partition blocks overlap at '" + label + "'");
      }
      owner_[idx] = blocks_.size();
      indices.push_back(idx);
    }
    std::sort(indices.begin(), indices.end());
    blocks_.push_back(std::move(indices));
  }
  for (std::size_t i = 0; i < base_.size(); ++i) {
    if (owner_[i] == blocks.size()) {
      throw std::invalid_argument("Partition does not cover '" + base_.label(i) + "'");
    }
  }
  names_.reserve(blocks_.size());
  for (const auto& block : blocks_) {
    std::string name;
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i > 0) name += '+';
      name += base_.label(block[i]);
    }
    names_.push_back(std::move(name));
  }
}

FiniteSpace Partition::block_space() const {
  return FiniteSpace(names_);
}

Partition Partition::singletons(const FiniteSpace& base) {
  std::vector<std::vector<std::string>> blocks;
  blocks.reserve(base.size());
  for (const std::string& label : base.labels()) {
    blocks.push_back({label});
  }
  return Partition(base, std::move(blocks));
}

Partition Partition::single_block(const FiniteSpace& base) {
  return Partition(base, {base.labels()});
}

}  // namespace hvcanon
