#ifndef MOSP_SRC_LOAD_VECTOR_HPP
#define MOSP_SRC_LOAD_VECTOR_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <span>
#include <unordered_map>
#include <vector>

#include "mosp/instance.hpp"

namespace mosp::detail {

struct KeyHash {
  std::size_t operator()(const std::vector<Time>& key) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ key.size();
    for (Time v : key) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Restores ascending order of `loads` after loads[slot] grew.
inline void resort_after_increase(std::span<Time> loads, int slot) {
  for (std::size_t k = slot; k + 1 < loads.size() && loads[k] > loads[k + 1]; ++k) std::swap(loads[k], loads[k + 1]);
}

/// Lowest machine index currently at `load`.
inline int machine_with_load(const std::vector<Time>& physical, Time load) {
  return static_cast<int>(std::find(physical.begin(), physical.end(), load) - physical.begin());
}

/// Reachable-state sets of a layered DP. Each distinct key is stored once per
/// layer together with the first predecessor that produced it, so
/// reconstruction follows insertion order.
class LayeredStates {
 public:
  struct Link {
    std::size_t parent;
    int slot;
    int tag;
  };

  void start(std::vector<Time> key) {
    keys_.clear();
    links_.clear();
    layers_.assign(1, {});
    index_.clear();
    keys_.push_back(std::move(key));
    links_.push_back({0, -1, -1});
    layers_[0].push_back(0);
  }

  void next_layer() {
    layers_.emplace_back();
    index_.clear();
  }

  /// Adds `key` to the newest layer unless present.
  bool insert(std::vector<Time> key, std::size_t parent, int slot, int tag) {
    auto [it, fresh] = index_.try_emplace(std::move(key), keys_.size());
    if (!fresh) return false;
    keys_.push_back(it->first);
    links_.push_back({parent, slot, tag});
    layers_.back().push_back(keys_.size() - 1);
    return true;
  }

  const std::vector<std::size_t>& layer(std::size_t j) const { return layers_[j]; }
  std::size_t layer_count() const { return layers_.size(); }
  const std::vector<Time>& loads(std::size_t id) const { return keys_[id]; }
  std::size_t total() const { return keys_.size(); }

  /// Links from the root to `id`: element k describes the step from layer k.
  std::vector<Link> path_to(std::size_t id) const {
    std::vector<Link> path;
    while (id != 0) {
      path.push_back(links_[id]);
      id = links_[id].parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  std::deque<std::vector<Time>> keys_;  // stable references across inserts
  std::vector<Link> links_;
  std::vector<std::vector<std::size_t>> layers_;
  std::unordered_map<std::vector<Time>, std::size_t, KeyHash> index_;
};

}  // namespace mosp::detail

#endif  // MOSP_SRC_LOAD_VECTOR_HPP
