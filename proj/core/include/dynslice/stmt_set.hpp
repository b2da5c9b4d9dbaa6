#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "dynslice/ast.hpp"

namespace dynslice {

/// Sorted set of statement ids. Slices are small (bounded by the program's
/// statement count), so a flat sorted vector beats node-based sets.
class StmtSet {
 public:
  StmtSet() = default;
  StmtSet(std::initializer_list<StmtId> ids) : ids_(ids) { normalize(); }
  explicit StmtSet(std::vector<StmtId> ids) : ids_(std::move(ids)) { normalize(); }

  void insert(StmtId id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) ids_.insert(it, id);
  }

  /// In-place union.
  StmtSet& merge(const StmtSet& other) {
    if (other.ids_.empty()) return *this;
    if (ids_.empty()) {
      ids_ = other.ids_;
      return *this;
    }
    std::vector<StmtId> out;
    out.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out));
    ids_ = std::move(out);
    return *this;
  }

  bool contains(StmtId id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }
  bool includes(const StmtSet& other) const {
    return std::includes(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end());
  }
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<StmtId>& ids() const { return ids_; }

  /// "{2,4,5}"
  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(ids_[i]);
    }
    return out + "}";
  }

  friend bool operator==(const StmtSet&, const StmtSet&) = default;

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  std::vector<StmtId> ids_;
};

inline StmtSet operator|(StmtSet a, const StmtSet& b) { return std::move(a.merge(b)); }

}  // namespace dynslice
