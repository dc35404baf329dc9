#pragma once

// Brute-force counts over a finite pool of atom indices 0..n-1, where the
// first s indices play the role of S. Nothing here uses the library.

#include <cstdint>
#include <vector>

namespace oracle {

// Transpositions of the fresh part of the pool.
inline std::vector<std::pair<int, int>> fresh_swaps(int s, int n) {
  std::vector<std::pair<int, int>> out;
  for (int c = s; c < n; ++c)
    for (int d = c + 1; d < n; ++d) out.emplace_back(c, d);
  return out;
}

inline int swap_point(std::pair<int, int> t, int x) {
  if (x == t.first) return t.second;
  if (x == t.second) return t.first;
  return x;
}

// Subsets of the pool fixed by every fresh transposition.
inline std::uint64_t invariant_subsets(int s, int n) {
  std::uint64_t count = 0;
  auto swaps = fresh_swaps(s, n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (auto t : swaps) {
      bool a = (mask >> t.first) & 1, b = (mask >> t.second) & 1;
      if (a != b) {
        ok = false;
        break;
      }
    }
    count += ok;
  }
  return count;
}

// Self-maps of the pool commuting with every fresh transposition.
inline std::uint64_t commuting_maps(int s, int n) {
  auto swaps = fresh_swaps(s, n);
  std::vector<int> f(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool ok = true;
    for (auto t : swaps) {
      for (int x = 0; x < n && ok; ++x)
        if (f[swap_point(t, x)] != swap_point(t, f[x])) ok = false;
      if (!ok) break;
    }
    count += ok;
    int i = 0;
    while (i < n && ++f[i] == n) f[i++] = 0;
    if (i == n) break;
  }
  return count;
}

// Injective tuples over the pool fixed by every fresh transposition.
inline std::uint64_t invariant_injective_tuples(int s, int n) {
  auto swaps = fresh_swaps(s, n);
  std::uint64_t count = 0;
  std::vector<int> cur;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> void {
    bool fixed = true;
    for (auto t : swaps)
      for (int x : cur)
        if (swap_point(t, x) != x) fixed = false;
    count += fixed;
    for (int x = 0; x < n; ++x) {
      if (used[x]) continue;
      used[x] = true;
      cur.push_back(x);
      self(self);
      cur.pop_back();
      used[x] = false;
    }
  };
  rec(rec);
  return count;
}

// n-element subsets of the pool fixed by every fresh transposition.
inline std::uint64_t invariant_sized_subsets(int s, int n, int size) {
  std::uint64_t count = 0;
  auto swaps = fresh_swaps(s, n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != size) continue;
    bool ok = true;
    for (auto t : swaps)
      if (((mask >> t.first) & 1) != ((mask >> t.second) & 1)) ok = false;
    count += ok;
  }
  return count;
}

}  // namespace oracle
