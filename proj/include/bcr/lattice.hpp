#pragma once

// Subset-inclusion lattice over receivers [1:K] and set families on it.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bcr {

using Mask = std::uint32_t;
inline constexpr int kMaxReceivers = 16;
inline constexpr std::size_t kDownSetGroundLimit = 20;

class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_receiver_count(int K) {
  if (K < 1 || K > kMaxReceivers)
    throw std::invalid_argument("receiver count K=" + std::to_string(K) + " outside 1.." +
                                std::to_string(kMaxReceivers));
}

constexpr Mask full_mask(int K) { return K >= 32 ? ~Mask{0} : ((Mask{1} << K) - 1); }

// A set of receivers stored as a bitmask (bit i-1 <-> receiver i). The empty
// set is representable for bookkeeping; families only ever hold nonempty sets.
class ReceiverSet {
 public:
  constexpr ReceiverSet() = default;
  constexpr explicit ReceiverSet(Mask bits) : bits_(bits) {}
  ReceiverSet(std::initializer_list<int> members) {
    for (int i : members) {
      if (i < 1 || i > kMaxReceivers) throw std::invalid_argument("receiver index out of range");
      bits_ |= Mask{1} << (i - 1);
    }
  }

  constexpr Mask bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return i >= 1 && i <= 32 && ((bits_ >> (i - 1)) & 1U); }
  constexpr bool subset_of(ReceiverSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool within(int K) const { return (bits_ & ~full_mask(K)) == 0; }

  std::vector<int> members() const {
    std::vector<int> out;
    for (Mask b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  constexpr ReceiverSet operator|(ReceiverSet o) const { return ReceiverSet(bits_ | o.bits_); }
  constexpr ReceiverSet operator&(ReceiverSet o) const { return ReceiverSet(bits_ & o.bits_); }
  constexpr ReceiverSet operator-(ReceiverSet o) const { return ReceiverSet(bits_ & ~o.bits_); }
  ReceiverSet with(int i) const { return ReceiverSet(bits_ | (Mask{1} << (i - 1))); }

  friend constexpr bool operator==(ReceiverSet a, ReceiverSet b) { return a.bits_ == b.bits_; }

  // Cardinality first, then lexicographic on the sorted member lists.
  friend std::strong_ordering operator<=>(ReceiverSet a, ReceiverSet b) {
    if (a.bits_ == b.bits_) return std::strong_ordering::equal;
    int ca = a.size(), cb = b.size();
    if (ca != cb) return ca <=> cb;
    Mask low = (a.bits_ ^ b.bits_) & (~(a.bits_ ^ b.bits_) + 1);
    return (a.bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  Mask bits_ = 0;
};

inline ReceiverSet full_set(int K) { return ReceiverSet(full_mask(K)); }

inline ReceiverSet complement_set(ReceiverSet S, int K, bool allow_empty = false) {
  require_receiver_count(K);
  if (!S.within(K)) throw std::invalid_argument("set has members beyond K");
  ReceiverSet c(full_mask(K) & ~S.bits());
  if (c.empty() && !allow_empty) throw std::invalid_argument("complement of [1:K] is empty");
  return c;
}

inline std::string to_string(ReceiverSet S, int K) {
  auto m = S.members();
  std::string out;
  if (K <= 9) {
    for (int i : m) out += static_cast<char>('0' + i);
    return out.empty() ? std::string("{}") : out;
  }
  out = "{";
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(m[k]);
  }
  return out + "}";
}

// "124", "{1,2,12}", or a leading '~' for the complement in [1:K].
inline ReceiverSet parse_receiver_set(std::string_view text, int K) {
  require_receiver_count(K);
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad receiver set '" + std::string(text) + "': " + why);
  };
  std::string_view s = text;
  bool complement = false;
  if (!s.empty() && s.front() == '~') {
    complement = true;
    s.remove_prefix(1);
  }
  Mask bits = 0;
  auto add = [&](int i) {
    if (i < 1 || i > K) fail("member " + std::to_string(i) + " outside 1.." + std::to_string(K));
    bits |= Mask{1} << (i - 1);
  };
  if (!s.empty() && s.front() == '{') {
    if (s.back() != '}') fail("unbalanced braces");
    s = s.substr(1, s.size() - 2);
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t comma = s.find(',', pos);
      auto tok = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string_view::npos)
        fail("expected integer members");
      add(std::stoi(std::string(tok)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  } else {
    if (K > 9 && !s.empty()) fail("digit strings need K <= 9; use {a,b,...}");
    for (char c : s) {
      if (c < '1' || c > '9') fail("expected digits 1-9");
      add(c - '0');
    }
  }
  ReceiverSet S(bits);
  if (complement) S = complement_set(S, K, true);
  if (S.empty()) fail("empty set");
  return S;
}

// Duplicate-free collection of nonempty receiver sets, kept in canonical order.
class SetFamily {
 public:
  SetFamily() = default;
  explicit SetFamily(int K) : K_(K) { require_receiver_count(K); }
  SetFamily(int K, std::vector<ReceiverSet> sets) : K_(K), sets_(std::move(sets)) {
    require_receiver_count(K);
    for (auto S : sets_)
      if (S.empty() || !S.within(K)) throw std::invalid_argument("family member outside P(K)");
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
  }

  int K() const { return K_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  auto begin() const { return sets_.begin(); }
  auto end() const { return sets_.end(); }
  const ReceiverSet& operator[](std::size_t i) const { return sets_[i]; }
  const std::vector<ReceiverSet>& sets() const { return sets_; }

  bool contains(ReceiverSet S) const { return std::binary_search(sets_.begin(), sets_.end(), S); }
  bool includes(const SetFamily& o) const {
    return std::includes(sets_.begin(), sets_.end(), o.sets_.begin(), o.sets_.end());
  }

  void insert(ReceiverSet S) {
    if (S.empty() || !S.within(K_)) throw std::invalid_argument("family member outside P(K)");
    auto it = std::lower_bound(sets_.begin(), sets_.end(), S);
    if (it == sets_.end() || *it != S) sets_.insert(it, S);
  }

  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.K_ == b.K_ && a.sets_ == b.sets_;
  }
  // Size first, then lexicographic over members.
  friend std::strong_ordering operator<=>(const SetFamily& a, const SetFamily& b) {
    if (a.sets_.size() != b.sets_.size()) return a.sets_.size() <=> b.sets_.size();
    for (std::size_t i = 0; i < a.sets_.size(); ++i)
      if (auto c = a.sets_[i] <=> b.sets_[i]; c != 0) return c;
    return a.K_ <=> b.K_;
  }

 private:
  int K_ = 1;
  std::vector<ReceiverSet> sets_;
};

inline SetFamily family_union(const SetFamily& a, const SetFamily& b) {
  std::vector<ReceiverSet> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return SetFamily(a.K(), std::move(out));
}
inline SetFamily family_intersection(const SetFamily& a, const SetFamily& b) {
  std::vector<ReceiverSet> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return SetFamily(a.K(), std::move(out));
}
inline SetFamily family_difference(const SetFamily& a, const SetFamily& b) {
  std::vector<ReceiverSet> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return SetFamily(a.K(), std::move(out));
}

inline std::string to_string(const SetFamily& F) {
  std::string out = "{";
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (i) out += ',';
    out += to_string(F[i], F.K());
  }
  return out + "}";
}

inline SetFamily power_family(int K) {
  require_receiver_count(K);
  std::vector<ReceiverSet> sets;
  sets.reserve(full_mask(K));
  for (Mask m = 1; m <= full_mask(K); ++m) sets.emplace_back(m);
  return SetFamily(K, std::move(sets));
}

inline SetFamily messages_for_receiver(const SetFamily& F, int i) {
  if (i < 1 || i > F.K()) throw std::invalid_argument("receiver index out of range");
  std::vector<ReceiverSet> out;
  for (auto S : F)
    if (S.contains(i)) out.push_back(S);
  return SetFamily(F.K(), std::move(out));
}

inline SetFamily down_set(const SetFamily& ground, const std::vector<ReceiverSet>& seeds) {
  std::vector<ReceiverSet> out;
  for (auto y : ground)
    for (auto x : seeds)
      if (y.subset_of(x)) {
        out.push_back(y);
        break;
      }
  return SetFamily(ground.K(), std::move(out));
}
inline SetFamily down_set(const SetFamily& ground, const SetFamily& seeds) {
  return down_set(ground, seeds.sets());
}

inline SetFamily up_set(const SetFamily& ground, const std::vector<ReceiverSet>& seeds) {
  std::vector<ReceiverSet> out;
  for (auto y : ground)
    for (auto x : seeds)
      if (x.subset_of(y)) {
        out.push_back(y);
        break;
      }
  return SetFamily(ground.K(), std::move(out));
}
inline SetFamily up_set(const SetFamily& ground, const SetFamily& seeds) {
  return up_set(ground, seeds.sets());
}

inline bool is_down_closed(const SetFamily& ground, const SetFamily& B) {
  for (auto y : ground)
    if (!B.contains(y))
      for (auto x : B)
        if (y.subset_of(x)) return false;
  return true;
}

// All nonempty down-sets of `ground`, ordered by size then lexicographically.
inline std::vector<SetFamily> family_of_down_sets(const SetFamily& ground) {
  const std::size_t n = ground.size();
  if (n > kDownSetGroundLimit)
    throw GuardError("down-set enumeration over " + std::to_string(n) + " sets exceeds limit " +
                     std::to_string(kDownSetGroundLimit));
  // Canonical order lists every proper subset before its supersets.
  std::vector<Mask> below(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (ground[k].subset_of(ground[i])) below[i] |= Mask{1} << k;

  std::vector<Mask> chosen;
  auto walk = [&](auto&& self, std::size_t i, Mask picked) -> void {
    if (i == n) {
      if (picked) chosen.push_back(picked);
      return;
    }
    self(self, i + 1, picked);
    if ((below[i] & ~picked) == 0) self(self, i + 1, picked | (Mask{1} << i));
  };
  walk(walk, 0, 0);

  std::vector<SetFamily> out;
  out.reserve(chosen.size());
  for (Mask pick : chosen) {
    std::vector<ReceiverSet> sets;
    for (Mask b = pick; b; b &= b - 1) sets.push_back(ground[std::countr_zero(b)]);
    out.emplace_back(ground.K(), std::move(sets));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<SetFamily> family_of_down_sets_containing(const SetFamily& ground,
                                                             const SetFamily& required) {
  if (!ground.includes(required)) throw std::invalid_argument("required sets not inside ground");
  std::vector<SetFamily> out;
  for (auto& B : family_of_down_sets(ground))
    if (B.includes(required)) out.push_back(std::move(B));
  return out;
}

}  // namespace bcr
