// Verification backends: exact integer Smith normal form for
// abelianizations, over a small arbitrary-precision integer so pivots can
// grow freely, and HLT-style Todd-Coxeter coset enumeration with a fixed
// systematic strategy (scan relators coset by coset, define new cosets in
// first-gap order, no lookahead) so tables are reproducible.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "singer/error.hpp"
#include "singer/presentation.hpp"

namespace singer {

// Sign-magnitude big integer, base 2^32 limbs, little-endian.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v) {  // implicit conversion intended
    if (v < 0) {
      sign_ = -1;
      store(static_cast<unsigned long long>(-(v + 1)) + 1);
    } else if (v > 0) {
      sign_ = 1;
      store(static_cast<unsigned long long>(v));
    }
  }

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }

  BigInt operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  BigInt abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  friend bool operator==(BigInt const& a, BigInt const& b) {
    return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(BigInt const& a, BigInt const& b) { return !(a == b); }
  friend bool operator<(BigInt const& a, BigInt const& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = cmp_mag(a.limbs_, b.limbs_);
    return a.sign_ >= 0 ? c < 0 : c > 0;
  }

  friend BigInt operator+(BigInt const& a, BigInt const& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.sign_ = a.sign_;
    } else {
      int c = cmp_mag(a.limbs_, b.limbs_);
      if (c == 0) return BigInt();
      if (c > 0) {
        r.limbs_ = sub_mag(a.limbs_, b.limbs_);
        r.sign_ = a.sign_;
      } else {
        r.limbs_ = sub_mag(b.limbs_, a.limbs_);
        r.sign_ = b.sign_;
      }
    }
    return r;
  }

  friend BigInt operator-(BigInt const& a, BigInt const& b) { return a + (-b); }

  friend BigInt operator*(BigInt const& a, BigInt const& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                            r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
      r.limbs_[i + b.limbs_.size()] += static_cast<std::uint32_t>(carry);
    }
    r.trim();
    r.sign_ = a.sign_ * b.sign_;
    return r;
  }

  // Truncated division: quotient rounds toward zero, |remainder| < |b|,
  // remainder carries the sign of a.
  static std::pair<BigInt, BigInt> divmod(BigInt const& a, BigInt const& b) {
    if (b.sign_ == 0) throw Error("DivideByZero", "division by zero");
    if (cmp_mag(a.limbs_, b.limbs_) < 0) return {BigInt(), a};
    // Bitwise long division of magnitudes.
    BigInt q, r;
    int total_bits = static_cast<int>(a.limbs_.size()) * 32;
    q.limbs_.assign(a.limbs_.size(), 0);
    for (int bit = total_bits - 1; bit >= 0; --bit) {
      r.shift_left_one();
      if ((a.limbs_[bit / 32] >> (bit % 32)) & 1u) r.set_low_bit();
      if (cmp_mag(r.limbs_, b.limbs_) >= 0) {
        r.limbs_ = sub_mag(r.limbs_, b.limbs_);
        q.limbs_[bit / 32] |= 1u << (bit % 32);
      }
    }
    q.trim();
    r.trim();
    q.sign_ = q.limbs_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.limbs_.empty() ? 0 : a.sign_;
    return {q, r};
  }

  friend BigInt operator/(BigInt const& a, BigInt const& b) { return divmod(a, b).first; }
  friend BigInt operator%(BigInt const& a, BigInt const& b) { return divmod(a, b).second; }

  std::string to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> mag = limbs_;
    std::string digits;
    while (!mag.empty()) {
      std::uint64_t rem = 0;
      for (std::size_t i = mag.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | mag[i];
        mag[i] = static_cast<std::uint32_t>(cur / 10);
        rem = cur % 10;
      }
      digits.push_back(static_cast<char>('0' + rem));
      while (!mag.empty() && mag.back() == 0) mag.pop_back();
    }
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
  }

 private:
  void store(unsigned long long v) {
    while (v > 0) {
      limbs_.push_back(static_cast<std::uint32_t>(v));
      v >>= 32;
    }
  }

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
  }

  void shift_left_one() {
    std::uint32_t carry = 0;
    for (auto& limb : limbs_) {
      std::uint32_t next = limb >> 31;
      limb = (limb << 1) | carry;
      carry = next;
    }
    if (carry) limbs_.push_back(carry);
  }

  void set_low_bit() {
    if (limbs_.empty()) limbs_.push_back(1);
    else limbs_[0] |= 1u;
  }

  static int cmp_mag(std::vector<std::uint32_t> const& a,
                     std::vector<std::uint32_t> const& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  static std::vector<std::uint32_t> add_mag(std::vector<std::uint32_t> const& a,
                                            std::vector<std::uint32_t> const& b) {
    std::vector<std::uint32_t> r;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
      std::uint64_t cur = carry;
      if (i < a.size()) cur += a[i];
      if (i < b.size()) cur += b[i];
      r.push_back(static_cast<std::uint32_t>(cur));
      carry = cur >> 32;
    }
    if (carry) r.push_back(static_cast<std::uint32_t>(carry));
    return r;
  }

  // Requires |a| >= |b|.
  static std::vector<std::uint32_t> sub_mag(std::vector<std::uint32_t> const& a,
                                            std::vector<std::uint32_t> const& b) {
    std::vector<std::uint32_t> r = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow -
                         (i < b.size() ? b[i] : 0);
      borrow = cur < 0 ? 1 : 0;
      if (cur < 0) cur += (1LL << 32);
      r[i] = static_cast<std::uint32_t>(cur);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  int sign_ = 0;
  std::vector<std::uint32_t> limbs_;
};

// Diagonal of the Smith normal form (nonnegative, divisibility chain),
// padded with zeros up to min(rows, cols). Pivot: smallest nonzero absolute
// value in the remaining submatrix, ties by (row, col).
inline std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> m) {
  std::size_t rows = m.size();
  std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t rank_bound = std::min(rows, cols);
  std::vector<BigInt> diag(rank_bound, BigInt(0));
  for (std::size_t t = 0; t < rank_bound; ++t) {
    while (true) {
      // Locate the pivot.
      std::size_t pi = t, pj = t;
      bool found = false;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (m[i][j].is_zero()) continue;
          if (!found || m[i][j].abs() < m[pi][pj].abs()) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) return diag;  // remaining submatrix is zero
      std::swap(m[t], m[pi]);
      if (pj != t)
        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t].is_zero()) continue;
        BigInt q = m[i][t] / m[t][t];
        if (!q.is_zero())
          for (std::size_t j = t; j < cols; ++j) m[i][j] = m[i][j] - q * m[t][j];
        if (!m[i][t].is_zero()) dirty = true;  // remainder smaller than pivot
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j].is_zero()) continue;
        BigInt q = m[t][j] / m[t][t];
        if (!q.is_zero())
          for (std::size_t i = t; i < rows; ++i) m[i][j] = m[i][j] - q * m[i][t];
        if (!m[t][j].is_zero()) dirty = true;
      }
      if (dirty) continue;

      // Divisibility: every remaining entry must be divisible by the pivot.
      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols && !fixed; ++j)
          if (!(m[i][j] % m[t][t]).is_zero()) {
            for (std::size_t jj = t; jj < cols; ++jj)
              m[t][jj] = m[t][jj] + m[i][jj];
            fixed = true;
          }
      if (!fixed) break;
    }
    diag[t] = m[t][t].abs();
  }
  return diag;
}

struct AbelianInvariants {
  std::vector<BigInt> torsion;  // elementary divisors > 1, each dividing the next
  int free_rank = 0;

  friend bool operator==(AbelianInvariants const& a, AbelianInvariants const& b) {
    return a.torsion == b.torsion && a.free_rank == b.free_rank;
  }
};

// Abelianization from the relator exponent-sum matrix.
inline AbelianInvariants abelianization(GroupPresentation const& p) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < p.generators.size(); ++i) index[p.generators[i]] = i;
  std::vector<std::vector<BigInt>> m(
      p.relators.size(), std::vector<BigInt>(p.generators.size(), BigInt(0)));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (auto const& s : p.relators[r].syllables) {
      auto it = index.find(s.gen);
      if (it == index.end()) throw Error("UnknownGenerator", s.gen);
      m[r][it->second] = m[r][it->second] + BigInt(s.exp);
    }
  AbelianInvariants inv;
  int rank = 0;
  if (!p.relators.empty() && !p.generators.empty()) {
    for (auto const& d : smith_normal_form(std::move(m))) {
      if (d.is_zero()) continue;
      ++rank;
      if (!(d == BigInt(1))) inv.torsion.push_back(d);
    }
  }
  inv.free_rank = static_cast<int>(p.generators.size()) - rank;
  return inv;
}

inline std::string to_string(AbelianInvariants const& inv) {
  std::ostringstream os;
  os << "abelianization rank=" << inv.free_rank << " torsion=[";
  for (std::size_t i = 0; i < inv.torsion.size(); ++i)
    os << (i ? "," : "") << inv.torsion[i].to_string();
  os << "]";
  return os.str();
}

// --- Todd-Coxeter ----------------------------------------------------------

struct CosetTable {
  bool complete = false;
  long long index = 0;           // live cosets when complete
  long long cosets_defined = 0;  // total ever defined
};

namespace detail {

class CosetEnumerator {
 public:
  CosetEnumerator(GroupPresentation const& p, std::vector<Word> const& subgroup,
                  long long max_cosets)
      : max_cosets_(max_cosets) {
    if (max_cosets < 1) throw Error("OutOfRange", "max_cosets must be >= 1");
    for (std::size_t i = 0; i < p.generators.size(); ++i) gen_index_[p.generators[i]] = i;
    ncols_ = 2 * p.generators.size();
    for (auto const& r : p.relators) relators_.push_back(columns_of(r));
    for (auto const& w : subgroup) subgroup_.push_back(columns_of(w));
    table_.push_back(std::vector<int>(ncols_, -1));
    parent_.push_back(0);
    ++defined_;
  }

  CosetTable run() {
    for (auto const& w : subgroup_) {
      if (exceeded_) break;
      scan_and_fill(0, w);
    }
    for (int alpha = 0; alpha < static_cast<int>(table_.size()) && !exceeded_; ++alpha) {
      if (rep(alpha) != alpha) continue;
      for (auto const& w : relators_) {
        if (exceeded_ || rep(alpha) != alpha) break;
        scan_and_fill(alpha, w);
      }
      if (exceeded_ || rep(alpha) != alpha) continue;
      for (std::size_t x = 0; x < ncols_ && !exceeded_; ++x)
        if (table_[alpha][x] < 0) define(alpha, x);
    }
    CosetTable result;
    result.cosets_defined = defined_;
    if (exceeded_) return result;
    result.complete = true;
    for (std::size_t i = 0; i < table_.size(); ++i)
      if (rep(static_cast<int>(i)) == static_cast<int>(i)) ++result.index;
    return result;
  }

 private:
  std::vector<std::size_t> columns_of(Word const& w) const {
    std::vector<std::size_t> cols;
    for (auto const& s : w.syllables) {
      auto it = gen_index_.find(s.gen);
      if (it == gen_index_.end()) throw Error("UnknownGenerator", s.gen);
      std::size_t col = 2 * it->second + (s.exp < 0 ? 1 : 0);
      for (int i = 0; i < std::abs(s.exp); ++i) cols.push_back(col);
    }
    return cols;
  }

  static std::size_t inv_col(std::size_t x) { return x ^ 1u; }

  int rep(int c) {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }

  void define(int alpha, std::size_t x) {
    if (defined_ >= max_cosets_) {
      exceeded_ = true;
      return;
    }
    int nu = static_cast<int>(table_.size());
    table_.push_back(std::vector<int>(ncols_, -1));
    parent_.push_back(nu);
    ++defined_;
    table_[alpha][x] = nu;
    table_[nu][inv_col(x)] = alpha;
  }

  void merge(int a, int b, std::deque<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      int y = queue.front();
      queue.pop_front();
      for (std::size_t x = 0; x < ncols_; ++x) {
        int delta = table_[y][x];
        if (delta < 0) continue;
        table_[y][x] = -1;
        if (table_[delta][inv_col(x)] == y) table_[delta][inv_col(x)] = -1;
        int mu = rep(y);
        int nu = rep(delta);
        if (table_[mu][x] >= 0)
          merge(nu, table_[mu][x], queue);
        else if (table_[nu][inv_col(x)] >= 0)
          merge(mu, table_[nu][inv_col(x)], queue);
        else {
          table_[mu][x] = nu;
          table_[nu][inv_col(x)] = mu;
        }
      }
    }
  }

  void scan_and_fill(int alpha, std::vector<std::size_t> const& w) {
    if (w.empty()) return;
    int i = 0;
    int j = static_cast<int>(w.size()) - 1;
    int f = alpha;
    int b = alpha;
    while (true) {
      while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[b][inv_col(w[j])] >= 0) b = table_[b][inv_col(w[j--])];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (j == i) {
        table_[f][w[i]] = b;
        table_[b][inv_col(w[i])] = f;
        return;
      }
      define(f, w[i]);
      if (exceeded_) return;
    }
  }

  std::map<std::string, std::size_t> gen_index_;
  std::size_t ncols_ = 0;
  std::vector<std::vector<std::size_t>> relators_;
  std::vector<std::vector<std::size_t>> subgroup_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
  long long defined_ = 0;
  long long max_cosets_ = 0;
  bool exceeded_ = false;
};

}  // namespace detail

inline CosetTable coset_enumerate(GroupPresentation const& p,
                                  std::vector<Word> const& subgroup,
                                  long long max_cosets = 100000) {
  detail::CosetEnumerator en(p, subgroup, max_cosets);
  return en.run();
}

}  // namespace singer
