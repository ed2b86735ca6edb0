// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace pandora {

/// A set of box indices (0-based), stored as a growable bitset so the same
/// type serves the 3-box examples and the 100000-box hardness family.
class BoxSet {
 public:
  BoxSet() = default;
  BoxSet(std::initializer_list<int> boxes);
  explicit BoxSet(std::span<const int> boxes);

  /// Bits of `mask` become boxes 0..63.
  static BoxSet from_mask(std::uint64_t mask);

  void insert(int box);
  void erase(int box);
  bool contains(int box) const;
  bool empty() const;
  int size() const;

  /// Largest index + 1, or 0 for the empty set.
  int bound() const;

  bool is_subset_of(const BoxSet& other) const;
  bool intersects(const BoxSet& other) const;

  BoxSet operator|(const BoxSet& other) const;
  BoxSet operator&(const BoxSet& other) const;
  BoxSet operator-(const BoxSet& other) const;
  BoxSet& operator|=(const BoxSet& other);

  bool operator==(const BoxSet& other) const;

  std::vector<int> elements() const;

  /// Low 64 bits; only meaningful when bound() <= 64.
  std::uint64_t to_mask() const;

  /// Sorted comma-joined indices: "", "0", "0,2".
  std::string key() const;
  static BoxSet from_key(const std::string& key);

  std::span<const std::uint64_t> words() const { return words_; }

 private:
  void trim();

  std::vector<std::uint64_t> words_;
};

}  // namespace pandora
