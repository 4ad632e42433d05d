#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "vpplab/errors.hpp"

namespace vpplab {

// Logical-to-physical row permutation within a bank. Aggressor selection and
// blast-radius propagation operate in physical row space.
class AdjacencyMapping {
 public:
  enum class Kind { Identity, LowBitInversion, BlockSwizzle, Table };

  AdjacencyMapping() = default;

  static AdjacencyMapping identity() { return AdjacencyMapping(); }

  // Inverts the three low address bits: rows come out of the decoder in
  // reversed order within each 8-row group.
  static AdjacencyMapping low_bit_inversion() {
    AdjacencyMapping m;
    m.kind_ = Kind::LowBitInversion;
    return m;
  }

  // Swaps adjacent blocks of `block` rows (block must be a power of two).
  static AdjacencyMapping block_swizzle(uint32_t block) {
    if (block == 0 || (block & (block - 1)) != 0)
      throw ProfileError("block_swizzle block size must be a power of two");
    AdjacencyMapping m;
    m.kind_ = Kind::BlockSwizzle;
    m.block_ = block;
    return m;
  }

  static AdjacencyMapping table(std::vector<uint32_t> logical_to_physical) {
    AdjacencyMapping m;
    m.kind_ = Kind::Table;
    m.table_ = std::move(logical_to_physical);
    std::vector<bool> seen(m.table_.size(), false);
    for (uint32_t p : m.table_) {
      if (p >= m.table_.size() || seen[p])
        throw ProfileError("adjacency table is not a bijection");
      seen[p] = true;
    }
    return m;
  }

  uint32_t to_physical(uint32_t logical) const {
    switch (kind_) {
      case Kind::Identity: return logical;
      case Kind::LowBitInversion: return logical ^ 0x7u;
      case Kind::BlockSwizzle: return logical ^ block_;
      case Kind::Table: return table_.at(logical);
    }
    return logical;
  }

  uint32_t to_logical(uint32_t physical) const {
    switch (kind_) {
      case Kind::Identity: return physical;
      case Kind::LowBitInversion: return physical ^ 0x7u;
      case Kind::BlockSwizzle: return physical ^ block_;
      case Kind::Table: {
        if (inverse_.size() != table_.size()) {
          inverse_.assign(table_.size(), 0);
          for (uint32_t l = 0; l < table_.size(); ++l) inverse_[table_[l]] = l;
        }
        return inverse_.at(physical);
      }
    }
    return physical;
  }

  Kind kind() const { return kind_; }
  uint32_t block() const { return block_; }

  bool operator==(const AdjacencyMapping& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::BlockSwizzle) return block_ == o.block_;
    if (kind_ == Kind::Table) return table_ == o.table_;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    switch (kind_) {
      case Kind::Identity: j["kind"] = "identity"; break;
      case Kind::LowBitInversion: j["kind"] = "low_bit_inversion"; break;
      case Kind::BlockSwizzle:
        j["kind"] = "block_swizzle";
        j["block"] = block_;
        break;
      case Kind::Table:
        j["kind"] = "table";
        j["logical_to_physical"] = table_;
        break;
    }
    return j;
  }

  static AdjacencyMapping from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") return identity();
    if (kind == "low_bit_inversion") return low_bit_inversion();
    if (kind == "block_swizzle") return block_swizzle(j.at("block").get<uint32_t>());
    if (kind == "table")
      return table(j.at("logical_to_physical").get<std::vector<uint32_t>>());
    throw ProfileError("unknown adjacency mapping kind: " + kind);
  }

 private:
  Kind kind_ = Kind::Identity;
  uint32_t block_ = 0;
  std::vector<uint32_t> table_;
  mutable std::vector<uint32_t> inverse_;
};

}  // namespace vpplab
