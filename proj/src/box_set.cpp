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

#include "pandora/box_set.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "pandora/rational.hpp"

namespace pandora {

BoxSet::BoxSet(std::initializer_list<int> boxes) {
  for (int b : boxes) insert(b);
}

BoxSet::BoxSet(std::span<const int> boxes) {
  for (int b : boxes) insert(b);
}

BoxSet BoxSet::from_mask(std::uint64_t mask) {
  BoxSet s;
  if (mask != 0) s.words_.push_back(mask);
  return s;
}

void BoxSet::insert(int box) {
  if (box < 0) throw DomainError("negative box index");
  auto word = static_cast<std::size_t>(box) / 64;
  if (words_.size() <= word) words_.resize(word + 1, 0);
  words_[word] |= std::uint64_t{1} << (box % 64);
}

void BoxSet::erase(int box) {
  if (box < 0) return;
  auto word = static_cast<std::size_t>(box) / 64;
  if (word >= words_.size()) return;
  words_[word] &= ~(std::uint64_t{1} << (box % 64));
  trim();
}

bool BoxSet::contains(int box) const {
  if (box < 0) return false;
  auto word = static_cast<std::size_t>(box) / 64;
  return word < words_.size() && ((words_[word] >> (box % 64)) & 1U);
}

bool BoxSet::empty() const { return words_.empty(); }

int BoxSet::size() const {
  int total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

int BoxSet::bound() const {
  if (words_.empty()) return 0;
  auto top = words_.back();
  return static_cast<int>((words_.size() - 1) * 64) + 64 - std::countl_zero(top);
}

bool BoxSet::is_subset_of(const BoxSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t theirs = i < other.words_.size() ? other.words_[i] : 0;
    if (words_[i] & ~theirs) return false;
  }
  return true;
}

bool BoxSet::intersects(const BoxSet& other) const {
  auto n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

BoxSet BoxSet::operator|(const BoxSet& other) const {
  BoxSet out = *this;
  out |= other;
  return out;
}

BoxSet& BoxSet::operator|=(const BoxSet& other) {
  if (words_.size() < other.words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BoxSet BoxSet::operator&(const BoxSet& other) const {
  BoxSet out;
  auto n = std::min(words_.size(), other.words_.size());
  out.words_.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.words_[i] = words_[i] & other.words_[i];
  out.trim();
  return out;
}

BoxSet BoxSet::operator-(const BoxSet& other) const {
  BoxSet out = *this;
  auto n = std::min(out.words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) out.words_[i] &= ~other.words_[i];
  out.trim();
  return out;
}

bool BoxSet::operator==(const BoxSet& other) const { return words_ == other.words_; }

std::vector<int> BoxSet::elements() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w) {
      int bit = std::countr_zero(w);
      out.push_back(static_cast<int>(i * 64) + bit);
      w &= w - 1;
    }
  }
  return out;
}

std::uint64_t BoxSet::to_mask() const { return words_.empty() ? 0 : words_[0]; }

std::string BoxSet::key() const {
  std::ostringstream os;
  bool first = true;
  for (int b : elements()) {
    if (!first) os << ',';
    os << b;
    first = false;
  }
  return os.str();
}

BoxSet BoxSet::from_key(const std::string& key) {
  BoxSet s;
  if (key.empty()) return s;
  std::size_t start = 0;
  while (start <= key.size()) {
    auto comma = key.find(',', start);
    auto token = key.substr(start, comma == std::string::npos ? std::string::npos
                                                              : comma - start);
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
      throw DomainError("malformed subset key: '" + key + "'");
    }
    s.insert(std::stoi(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return s;
}

void BoxSet::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

}  // namespace pandora
