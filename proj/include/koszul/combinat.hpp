#pragma once

// Increasing index tuples, their lexicographic ranking, selection matrices
// and the insertion sign of e_j ^ e_sigma.
//
// Tuples are 1-based at the public surface. Internally the entries are stored
// 0-based; only this header converts between the two.

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "errors.hpp"

namespace koszul {

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

inline double factorial(std::size_t n) {
  double r = 1.0;
  for (std::size_t i = 2; i <= n; ++i)
    r *= static_cast<double>(i);
  return r;
}

/// A strictly increasing tuple (i_1 < ... < i_k) drawn from {1, ..., m}.
class IndexTuple {
public:
  IndexTuple() = default;

  /// Builds from 1-based entries; throws std::invalid_argument unless the
  /// entries are strictly increasing and lie in [1, bound].
  IndexTuple(std::initializer_list<int> one_based, int bound)
      : IndexTuple(std::vector<int>(one_based), bound) {}

  IndexTuple(const std::vector<int> &one_based, int bound) : bound_(bound) {
    if (bound < 0)
      detail::invalid("IndexTuple: negative ambient bound");
    entries_.reserve(one_based.size());
    for (std::size_t i = 0; i < one_based.size(); ++i) {
      const int e = one_based[i];
      if (e < 1 || e > bound)
        detail::invalid("IndexTuple: entry " + std::to_string(e) +
                        " outside [1, " + std::to_string(bound) + "]");
      if (i > 0 && e <= one_based[i - 1])
        detail::invalid("IndexTuple: entries must be strictly increasing");
      entries_.push_back(e - 1);
    }
  }

  static IndexTuple from_zero_based(std::vector<int> zero_based, int bound) {
    IndexTuple t;
    t.bound_ = bound;
    t.entries_ = std::move(zero_based);
    return t;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int bound() const { return bound_; }

  /// 1-based entry at position pos.
  int operator[](std::size_t pos) const { return entries_[pos] + 1; }
  /// 0-based entry at position pos.
  int index(std::size_t pos) const { return entries_[pos]; }
  const std::vector<int> &zero_based() const { return entries_; }

  std::vector<int> one_based() const {
    std::vector<int> out(entries_);
    for (int &e : out)
      ++e;
    return out;
  }

  bool contains_index(int zero_based_entry) const {
    return std::binary_search(entries_.begin(), entries_.end(),
                              zero_based_entry);
  }
  bool contains(int one_based_entry) const {
    return contains_index(one_based_entry - 1);
  }

  /// Position of a 0-based entry, or -1.
  int position_of_index(int zero_based_entry) const {
    auto it =
        std::lower_bound(entries_.begin(), entries_.end(), zero_based_entry);
    if (it == entries_.end() || *it != zero_based_entry)
      return -1;
    return static_cast<int>(it - entries_.begin());
  }

  /// The tuple with the entry at `pos` removed.
  IndexTuple without_position(std::size_t pos) const {
    std::vector<int> rest;
    rest.reserve(entries_.size() - 1);
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (i != pos)
        rest.push_back(entries_[i]);
    return from_zero_based(std::move(rest), bound_);
  }

  /// sort({j} u this) for a 0-based j not already present.
  IndexTuple inserted_index(int zero_based_entry) const {
    std::vector<int> out(entries_);
    out.insert(std::lower_bound(out.begin(), out.end(), zero_based_entry),
               zero_based_entry);
    return from_zero_based(std::move(out), bound_);
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i)
        s += ",";
      s += std::to_string(entries_[i] + 1);
    }
    return s + ")";
  }

  friend bool operator==(const IndexTuple &a, const IndexTuple &b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator<(const IndexTuple &a, const IndexTuple &b) {
    return a.entries_ < b.entries_;
  }

private:
  int bound_ = 0;
  std::vector<int> entries_;
};

/// All increasing k-tuples of {1..m} in lexicographic order. This ordering is
/// the basis order used by every exterior power and stacked vector.
inline std::vector<IndexTuple> enumerate_tuples(int m, int k) {
  if (m <= 0)
    detail::invalid("enumerate_tuples: m must be positive");
  if (k < 0 || k > m)
    detail::invalid("enumerate_tuples: need 0 <= k <= m");
  std::vector<IndexTuple> out;
  out.reserve(binomial(m, k));
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i)
    cur[i] = i;
  while (true) {
    out.push_back(IndexTuple::from_zero_based(cur, m));
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == m - k + pos)
      --pos;
    if (pos < 0)
      break;
    ++cur[pos];
    for (int j = pos + 1; j < k; ++j)
      cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Zero-based position of `t` in enumerate_tuples(m, t.size()).
inline std::size_t tuple_rank(const IndexTuple &t, int m) {
  const int k = static_cast<int>(t.size());
  std::size_t r = 0;
  int prev = -1;
  for (int pos = 0; pos < k; ++pos) {
    for (int v = prev + 1; v < t.index(pos); ++v)
      r += binomial(m - 1 - v, k - 1 - pos);
    prev = t.index(pos);
  }
  return r;
}

inline IndexTuple tuple_unrank(std::size_t rank, int m, int k) {
  if (k < 0 || k > m || rank >= binomial(m, k))
    detail::invalid("tuple_unrank: rank out of range");
  std::vector<int> out;
  out.reserve(k);
  int v = 0;
  for (int pos = 0; pos < k; ++pos) {
    while (true) {
      const std::size_t block = binomial(m - 1 - v, k - 1 - pos);
      if (rank < block)
        break;
      rank -= block;
      ++v;
    }
    out.push_back(v);
    ++v;
  }
  return IndexTuple::from_zero_based(std::move(out), m);
}

/// Sign of sorting e_j ^ e_sigma into increasing order: 0 if j is already in
/// sigma, otherwise (-1)^(number of entries of sigma smaller than j).
/// `j` is 1-based.
inline int insertion_sign(int j, const IndexTuple &sigma) {
  if (sigma.contains(j))
    return 0;
#ifdef KOSZUL_MUTATE_DROP_INSERTION_SIGN
  // Deliberately broken variant, compiled only into the mutation test.
  return 1;
#else
  const auto &e = sigma.zero_based();
  const auto smaller = std::lower_bound(e.begin(), e.end(), j - 1) - e.begin();
  return (smaller % 2 == 0) ? 1 : -1;
#endif
}

/// Diagonal 0/1 matrix with ones at the (1-based) positions in pi.
inline Eigen::MatrixXd selection_matrix(const IndexTuple &pi, int m) {
  if (m <= 0)
    detail::invalid("selection_matrix: m must be positive");
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi[i] > m)
      detail::invalid("selection_matrix: entry out of range");
    e(pi.index(i), pi.index(i)) = 1.0;
  }
  return e;
}

/// The principal submatrix B[pi, pi]; equals E_pi B E_pi with the zero rows
/// and columns deleted.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
compress(const Eigen::MatrixBase<Derived> &b, const IndexTuple &pi) {
  const auto k = static_cast<Eigen::Index>(pi.size());
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) {
      if (pi.index(r) >= b.rows() || pi.index(c) >= b.cols())
        detail::invalid("compress: tuple entry exceeds matrix size");
      out(r, c) = b(pi.index(r), pi.index(c));
    }
  return out;
}

} // namespace koszul
