#pragma once

// Integer self-maps of NS(X) preserving Q_k (and optionally K_X).

#include <cstdlib>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nslattice/integer.hpp"
#include "nslattice/lattice.hpp"
#include "nslattice/matrix.hpp"

namespace nslattice {

inline constexpr long kDefaultNodeBudget = 10'000'000;

/// Node budget, overridable through NSLATTICE_NODE_BUDGET.
inline long node_budget_from_env(long fallback = kDefaultNodeBudget) {
  const char* s = std::getenv("NSLATTICE_NODE_BUDGET");
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v <= 0)
    throw ValidationError("NSLATTICE_NODE_BUDGET must be a positive integer");
  return v;
}

namespace detail {

/// Calls visit(multiset) for every nondecreasing index sequence of length len
/// over [0, n).
inline void for_each_multiset(int n, int len, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> idx(static_cast<std::size_t>(len), 0);
  if (len == 0) {
    visit(idx);
    return;
  }
  while (true) {
    visit(idx);
    int p = len - 1;
    while (p >= 0 && idx[p] == n - 1) --p;
    if (p < 0) return;
    ++idx[p];
    for (int q = p + 1; q < len; ++q) idx[q] = idx[p];
  }
}

}  // namespace detail

/// Q_k(Mu_1, ..., Mu_k) = Q_k(u_1, ..., u_k) on every basis multiset (enough by
/// multilinearity and symmetry), det M = +-1, and M K_X = K_X when fix_canonical.
inline bool is_isometry(const IntegerMatrix& m, const BlowupLattice& lat, bool fix_canonical) {
  const int n = lat.rank();
  if (static_cast<int>(m.size()) != n) throw ValidationError("is_isometry: matrix size must equal lattice rank");
  if (!m.is_unimodular()) return false;
  if (fix_canonical) {
    NSClass kx = canonical_class(lat);
    if (!(m * kx == kx)) return false;
  }
  std::vector<NSClass> columns;
  for (int j = 0; j < n; ++j) columns.push_back(m.column(j));
  bool ok = true;
  detail::for_each_multiset(n, lat.k, [&](const std::vector<int>& idx) {
    if (!ok) return;
    std::vector<NSClass> before, after;
    for (int i : idx) {
      before.push_back(NSClass::basis(n, i));
      after.push_back(columns[i]);
    }
    if (q_d(lat, lat.k, std::span<const NSClass>(after)) != q_d(lat, lat.k, std::span<const NSClass>(before)))
      ok = false;
  });
  return ok;
}

struct EnumerationOptions {
  long entry_bound = 1;
  bool fix_canonical = true;
  long node_budget = kDefaultNodeBudget;
};

struct EnumerationResult {
  std::vector<IntegerMatrix> matrices;  // lexicographic on flattened entries
  long nodes = 0;                       // partial assignments tested
};

/// All isometries with entries in [-bound, bound]. The top form is diagonal in
/// the standard basis, Q_k(e_s^k) = c_s with every mixed basis product zero, so
/// column j must satisfy sum_s c_s v_s^k = c_j, and each new column is checked
/// against every mixed product with the columns already placed.
inline EnumerationResult enumerate_isometries(const BlowupLattice& lat, const EnumerationOptions& opt) {
  if (opt.entry_bound < 1) throw ValidationError("enumerate_isometries: entry_bound must be >= 1");
  const int n = lat.rank();
  const int k = lat.k;
  const long b = opt.entry_bound;

  std::vector<Integer> diag(n);
  for (int s = 0; s < n; ++s) diag[s] = q_d_diagonal(lat, k, NSClass::basis(n, s));

  auto top_value = [&](const NSClass& v) {
    Integer t = 0;
    for (int s = 0; s < n; ++s)
      if (v[s] != 0) t += diag[s] * ipow(v[s], static_cast<unsigned long>(k));
    return t;
  };

  EnumerationResult out;
  auto tick = [&] {
    if (++out.nodes > opt.node_budget) {
      std::ostringstream msg;
      msg << "isometry enumeration exceeded node budget of " << opt.node_budget;
      throw BudgetExceeded(msg.str());
    }
  };

  // Candidate columns grouped by the diagonal value they must hit.
  std::vector<std::vector<NSClass>> candidates(n);
  {
    std::vector<long> x(n, -b);
    while (true) {
      NSClass v = NSClass::zero(n);
      for (int s = 0; s < n; ++s) v[s] = x[s];
      Integer t = top_value(v);
      for (int j = 0; j < n; ++j)
        if (t == diag[j]) candidates[j].push_back(v);
      int p = n - 1;
      while (p >= 0 && x[p] == b) x[p--] = -b;
      if (p < 0) break;
      ++x[p];
    }
  }

  // Mixed multisets of size k over columns [0, j] that contain j and are not pure.
  std::vector<std::vector<std::vector<int>>> mixed(n);
  for (int j = 0; j < n; ++j) {
    detail::for_each_multiset(j + 1, k, [&](const std::vector<int>& idx) {
      if (idx.back() != j || idx.front() == j) return;
      mixed[j].push_back(idx);
    });
  }

  std::vector<NSClass> cols;
  cols.reserve(n);
  const NSClass kx = canonical_class(lat);
  std::set<IntegerMatrix> found;

  std::function<void(int)> extend = [&](int j) {
    if (j == n) {
      IntegerMatrix m = IntegerMatrix::from_columns(cols);
      if (!m.is_unimodular()) return;
      if (opt.fix_canonical && !(m * kx == kx)) return;
      found.insert(std::move(m));
      return;
    }
    for (const auto& v : candidates[j]) {
      tick();
      cols.push_back(v);
      bool ok = true;
      for (const auto& idx : mixed[j]) {
        Integer t = 0;
        for (int s = 0; s < n && ok; ++s) {
          Integer p = diag[s];
          for (int c : idx) {
            p *= cols[c][s];
            if (p == 0) break;
          }
          t += p;
        }
        if (t != 0) {
          ok = false;
          break;
        }
      }
      if (ok) extend(j + 1);
      cols.pop_back();
    }
  };
  extend(0);

  for (const auto& m : found) {
    if (!is_isometry(m, lat, opt.fix_canonical))
      throw std::logic_error("enumerate_isometries: self-check failed for " + m.to_string());
    out.matrices.push_back(m);
  }
  return out;
}

struct ClosureResult {
  bool closed = false;
  std::size_t size = 0;  // group order when closed; elements seen when not
  std::size_t cap = 0;

  std::string describe() const {
    std::ostringstream out;
    if (closed)
      out << "closed, order " << size;
    else
      out << "exceeds cap " << cap;
    return out.str();
  }
};

/// Breadth-first closure of the group generated by gens (with inverses).
inline ClosureResult group_closure_probe(const std::vector<IntegerMatrix>& gens, std::size_t cap) {
  if (gens.empty()) return ClosureResult{true, 1, cap};
  const std::size_t n = gens.front().size();
  std::vector<IntegerMatrix> moves;
  for (const auto& g : gens) {
    if (g.size() != n) throw ValidationError("group_closure_probe: generators differ in size");
    auto inv = g.inverse();
    if (!inv) throw ValidationError("group_closure_probe: generator is not invertible over the integers");
    moves.push_back(g);
    moves.push_back(*inv);
  }
  std::set<IntegerMatrix> seen{IntegerMatrix::identity(n)};
  std::deque<IntegerMatrix> queue{IntegerMatrix::identity(n)};
  while (!queue.empty()) {
    IntegerMatrix x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : moves) {
      IntegerMatrix y = g * x;
      if (seen.insert(y).second) {
        if (seen.size() > cap) return ClosureResult{false, seen.size(), cap};
        queue.push_back(std::move(y));
      }
    }
  }
  return ClosureResult{true, seen.size(), cap};
}

}  // namespace nslattice
