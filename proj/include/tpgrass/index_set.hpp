#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpgrass {

// A strictly increasing subset of [1, N]. Indexes basis wedges e_I and coordinate
// subspaces V_I. Sets of size k index Plucker coordinates; their complements of
// size N-k index the coordinate subspaces tested for transversality.
using IndexSet = std::vector<int>;

inline bool is_valid_index_set(const IndexSet& I, int N) {
  int prev = 0;
  for (int i : I) {
    if (i <= prev || i > N) return false;
    prev = i;
  }
  return true;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (int j = 1; j <= k; ++j) c = c * static_cast<std::uint64_t>(n - k + j) / j;
  return c;
}

// All k-subsets of [1, N] in lexicographic order. This order fixes the coordinate
// layout of every Plucker vector and compound matrix in the library.
inline std::vector<IndexSet> enumerate_index_sets(int N, int k) {
  if (N < 0 || k < 0 || k > N) throw std::invalid_argument("enumerate_index_sets: need 0 <= k <= N");
  std::vector<IndexSet> out;
  out.reserve(static_cast<std::size_t>(binomial(N, k)));
  IndexSet cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == N - (k - 1 - pos)) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int i = pos + 1; i < k; ++i) cur[i] = cur[i - 1] + 1;
  }
  return out;
}

// Position of I among the lexicographically ordered |I|-subsets of [1, N].
inline std::size_t lex_rank(const IndexSet& I, int N) {
  if (!is_valid_index_set(I, N)) throw std::invalid_argument("lex_rank: invalid index set");
  const int k = static_cast<int>(I.size());
  std::uint64_t rank = 0;
  int prev = 0;
  for (int j = 0; j < k; ++j) {
    for (int v = prev + 1; v < I[j]; ++v) rank += binomial(N - v, k - 1 - j);
    prev = I[j];
  }
  return static_cast<std::size_t>(rank);
}

inline IndexSet complement(const IndexSet& I, int N) {
  IndexSet out;
  out.reserve(static_cast<std::size_t>(N) - I.size());
  std::size_t pos = 0;
  for (int v = 1; v <= N; ++v) {
    if (pos < I.size() && I[pos] == v) {
      ++pos;
    } else {
      out.push_back(v);
    }
  }
  return out;
}

// Compact digit form "134" for N <= 9, comma form "{1,10,13}" otherwise.
inline std::string format_index_set(const IndexSet& I, int N) {
  std::string s;
  if (N <= 9) {
    for (int i : I) s += static_cast<char>('0' + i);
    if (s.empty()) s = "{}";
    return s;
  }
  s = "{";
  for (std::size_t j = 0; j < I.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(I[j]);
  }
  s += "}";
  return s;
}

}  // namespace tpgrass
