#include "qgl/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "qgl/error.hpp"

namespace qgl {

namespace {

int lookup(const std::map<std::string, int>& ids, const std::string& id, const std::string& what) {
  auto it = ids.find(id);
  if (it == ids.end()) throw Error(ErrorKind::Parse, what + ": unknown element \"" + id + "\"");
  return it->second;
}

}  // namespace

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> elements, std::vector<std::string> units,
                               const std::map<std::string, std::string>& source,
                               const std::map<std::string, std::string>& target,
                               const std::vector<Entry>& mult,
                               const std::map<std::string, std::string>& inverse)
    : names_(std::move(elements)) {
  if (names_.empty()) throw Error(ErrorKind::Parse, "groupoid has no elements");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!ids_.emplace(names_[i], static_cast<int>(i)).second) {
      throw Error(ErrorKind::Parse, "duplicate element \"" + names_[i] + "\"");
    }
  }
  const int n = size();
  unit_flag_.assign(n, false);
  for (const auto& u : units) {
    const int k = lookup(ids_, u, "units");
    if (unit_flag_[k]) throw Error(ErrorKind::Parse, "duplicate unit \"" + u + "\"");
    unit_flag_[k] = true;
    units_.push_back(k);
  }
  if (units_.empty()) throw Error(ErrorKind::Parse, "groupoid has no units");

  auto total_map = [&](const std::map<std::string, std::string>& m, const std::string& what,
                       bool to_units) {
    std::vector<int> out(n, -1);
    for (const auto& [key, value] : m) {
      const int p = lookup(ids_, key, what);
      const int v = lookup(ids_, value, what + " of \"" + key + "\"");
      if (to_units && !unit_flag_[v]) {
        throw Error(ErrorKind::Parse,
                    what + " of \"" + key + "\" is \"" + value + "\", which is not a unit");
      }
      out[p] = v;
    }
    for (int p = 0; p < n; ++p) {
      if (out[p] < 0) {
        throw Error(ErrorKind::Parse, "missing " + what + " entry for element \"" + names_[p] + "\"");
      }
    }
    return out;
  };
  source_ = total_map(source, "source", true);
  target_ = total_map(target, "target", true);
  inverse_ = total_map(inverse, "inverse", false);

  product_.assign(static_cast<std::size_t>(n) * n, -1);
  for (const auto& e : mult) {
    const int p = lookup(ids_, e[0], "mult");
    const int q = lookup(ids_, e[1], "mult");
    const int r = lookup(ids_, e[2], "mult");
    if (!composable(p, q)) {
      throw Error(ErrorKind::Parse,
                  "mult entry (" + e[0] + ", " + e[1] + ") is not a composable pair");
    }
    int& slot = product_[static_cast<std::size_t>(p) * n + q];
    if (slot >= 0) {
      throw Error(ErrorKind::Parse, "duplicate mult entry (" + e[0] + ", " + e[1] + ")");
    }
    slot = r;
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (composable(p, q) && product(p, q) < 0) {
        throw Error(ErrorKind::Parse, "missing mult entry for composable pair (" + names_[p] +
                                          ", " + names_[q] + ")");
      }
    }
  }
}

int FiniteGroupoid::index(const std::string& id) const {
  auto it = ids_.find(id);
  if (it == ids_.end()) throw Error(ErrorKind::InvalidInput, "unknown element \"" + id + "\"");
  return it->second;
}

std::vector<FiniteGroupoid::Entry> FiniteGroupoid::mult_entries() const {
  std::vector<Entry> out;
  for (int p = 0; p < size(); ++p) {
    for (int q = 0; q < size(); ++q) {
      if (composable(p, q)) out.push_back({names_[p], names_[q], names_[product(p, q)]});
    }
  }
  return out;
}

std::map<std::string, std::string> FiniteGroupoid::source_map() const {
  std::map<std::string, std::string> m;
  for (int p = 0; p < size(); ++p) m[names_[p]] = names_[source_[p]];
  return m;
}

std::map<std::string, std::string> FiniteGroupoid::target_map() const {
  std::map<std::string, std::string> m;
  for (int p = 0; p < size(); ++p) m[names_[p]] = names_[target_[p]];
  return m;
}

std::map<std::string, std::string> FiniteGroupoid::inverse_map() const {
  std::map<std::string, std::string> m;
  for (int p = 0; p < size(); ++p) m[names_[p]] = names_[inverse_[p]];
  return m;
}

std::vector<std::string> FiniteGroupoid::unit_names() const {
  std::vector<std::string> out;
  for (int u : units_) out.push_back(names_[u]);
  return out;
}

FiniteGroupoid FiniteGroupoid::with_product(const std::string& p, const std::string& q,
                                            const std::string& result) const {
  std::vector<Entry> mult = mult_entries();
  bool found = false;
  for (auto& e : mult) {
    if (e[0] == p && e[1] == q) {
      e[2] = result;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::InvalidInput, "(" + p + ", " + q + ") is not composable");
  return FiniteGroupoid(names_, unit_names(), source_map(), target_map(), mult, inverse_map());
}

// ---------------------------------------------------------------------------

VerificationReport validate_groupoid(const FiniteGroupoid& g) {
  VerificationReport r;
  const int n = g.size();
  auto nm = [&](int p) { return g.name(p); };

  auto record = [&](const std::string& id, const std::string& anchor, int violations,
                    const std::string& witness) {
    r.add(make_verdict(id, anchor, violations == 0, violations, 0.0,
                       violations == 0 ? std::string() : witness));
  };

  {
    int bad = 0;
    std::string w;
    for (int u : g.units()) {
      if (g.source(u) != u || g.target(u) != u) {
        if (bad++ == 0) w = "unit " + nm(u) + " has source " + nm(g.source(u)) + " and target " +
                            nm(g.target(u));
      }
    }
    record("groupoid.units", "s(u) = t(u) = u for units", bad, w);
  }
  {
    int bad = 0;
    std::string w;
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        if (!g.composable(p, q)) continue;
        const int pq = g.product(p, q);
        if (g.source(pq) != g.source(q) || g.target(pq) != g.target(p)) {
          if (bad++ == 0) {
            w = "(" + nm(p) + ", " + nm(q) + ") -> " + nm(pq) + " with s = " +
                nm(g.source(pq)) + ", t = " + nm(g.target(pq));
          }
        }
      }
    }
    record("groupoid.composable", "s(pq) = s(q), t(pq) = t(p) on composable pairs", bad, w);
  }
  {
    int bad = 0;
    std::string w;
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        if (!g.composable(p, q)) continue;
        const int pq = g.product(p, q);
        for (int s = 0; s < n; ++s) {
          if (!g.composable(q, s)) continue;
          const int qs = g.product(q, s);
          const int left = g.composable(pq, s) ? g.product(pq, s) : -1;
          const int right = g.composable(p, qs) ? g.product(p, qs) : -1;
          if (left != right || left < 0) {
            if (bad++ == 0) {
              w = "(" + nm(p) + ", " + nm(q) + ", " + nm(s) + "): (pq)r = " +
                  (left < 0 ? std::string("undefined") : nm(left)) + " but p(qr) = " +
                  (right < 0 ? std::string("undefined") : nm(right));
            }
          }
        }
      }
    }
    record("groupoid.associativity", "(pq)r = p(qr) on composable triples", bad, w);
  }
  {
    int bad = 0;
    std::string w;
    for (int p = 0; p < n; ++p) {
      const int l = g.product(g.target(p), p);
      const int rr = g.product(p, g.source(p));
      if (l != p || rr != p) {
        if (bad++ == 0) w = "t(p)p or p s(p) differs from p for p = " + nm(p);
      }
    }
    record("groupoid.unit_law", "t(p)p = p = p s(p)", bad, w);
  }
  {
    int bad = 0;
    std::string w;
    for (int p = 0; p < n; ++p) {
      const int inv = g.inverse(p);
      const int a = g.composable(inv, p) ? g.product(inv, p) : -1;
      const int b = g.composable(p, inv) ? g.product(p, inv) : -1;
      if (a != g.source(p) || b != g.target(p)) {
        if (bad++ == 0) w = "p = " + nm(p) + ", p^-1 = " + nm(inv);
      }
    }
    record("groupoid.inverse", "p^-1 p = s(p), p p^-1 = t(p)", bad, w);
  }
  {
    int bad = 0;
    std::string w;
    for (int p = 0; p < n; ++p) {
      const int inv = g.inverse(p);
      if (g.source(inv) != g.target(p) || g.target(inv) != g.source(p)) {
        if (bad++ == 0) w = "p = " + nm(p) + ", p^-1 = " + nm(inv);
      }
    }
    record("groupoid.inverse_source", "s(p^-1) = t(p), t(p^-1) = s(p)", bad, w);
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

/// Builds a groupoid from a closed-form description over arrows 0..n-1.
template <typename Src, typename Tgt, typename Mul, typename Inv>
FiniteGroupoid tabulate(const std::vector<std::string>& names, const std::vector<int>& units,
                        Src src, Tgt tgt, Mul mul, Inv inv) {
  const int n = static_cast<int>(names.size());
  std::map<std::string, std::string> s, t, i;
  std::vector<FiniteGroupoid::Entry> mult;
  for (int p = 0; p < n; ++p) {
    s[names[p]] = names[src(p)];
    t[names[p]] = names[tgt(p)];
    i[names[p]] = names[inv(p)];
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (src(p) == tgt(q)) mult.push_back({names[p], names[q], names[mul(p, q)]});
    }
  }
  std::vector<std::string> unit_names;
  for (int u : units) unit_names.push_back(names[u]);
  return FiniteGroupoid(names, unit_names, s, t, mult, i);
}

}  // namespace

FiniteGroupoid pair_times_cyclic(int k, int m) {
  if (k < 1 || m < 1) throw Error(ErrorKind::InvalidInput, "pair_times_cyclic needs k, m >= 1");
  // Arrow (i, j, a) sits at (i * k + j) * m + a.
  auto id = [k, m](int i, int j, int a) { return (i * k + j) * m + a; };
  std::vector<std::string> names;
  std::vector<int> units;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      for (int a = 0; a < m; ++a) {
        std::string s = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (m > 1) s += "g" + std::to_string(a);
        names.push_back(s);
        if (i == j && a == 0) units.push_back(id(i, j, a));
      }
    }
  }
  auto split = [k, m](int p) { return std::array<int, 3>{p / m / k, (p / m) % k, p % m}; };
  return tabulate(
      names, units, [&](int p) { auto x = split(p); return id(x[1], x[1], 0); },
      [&](int p) { auto x = split(p); return id(x[0], x[0], 0); },
      [&](int p, int q) {
        auto x = split(p);
        auto y = split(q);
        return id(x[0], y[1], (x[2] + y[2]) % m);
      },
      [&](int p) { auto x = split(p); return id(x[1], x[0], (m - x[2]) % m); });
}

FiniteGroupoid pair_groupoid(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "pair groupoid needs n >= 1");
  return pair_times_cyclic(n, 1);
}

FiniteGroupoid cyclic_group(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "cyclic group needs n >= 1");
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) names.push_back("g" + std::to_string(a));
  return tabulate(
      names, {0}, [](int) { return 0; }, [](int) { return 0; },
      [n](int p, int q) { return (p + q) % n; }, [n](int p) { return (n - p) % n; });
}

FiniteGroupoid symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (const auto& q : perms) {
    names.push_back(std::to_string(q[0] + 1) + std::to_string(q[1] + 1) + std::to_string(q[2] + 1));
  }
  auto find = [&](const std::array<int, 3>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  return tabulate(
      names, {0}, [](int) { return 0; }, [](int) { return 0; },
      [&](int a, int b) {
        std::array<int, 3> c{};
        for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
        return find(c);
      },
      [&](int a) {
        std::array<int, 3> c{};
        for (int i = 0; i < 3; ++i) c[perms[a][i]] = i;
        return find(c);
      });
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& g1, const FiniteGroupoid& g2,
                              const std::string& prefix1, const std::string& prefix2) {
  std::vector<std::string> names, units;
  std::map<std::string, std::string> s, t, i;
  std::vector<FiniteGroupoid::Entry> mult;
  auto add = [&](const FiniteGroupoid& g, const std::string& pre) {
    for (int p = 0; p < g.size(); ++p) {
      names.push_back(pre + g.name(p));
      s[pre + g.name(p)] = pre + g.name(g.source(p));
      t[pre + g.name(p)] = pre + g.name(g.target(p));
      i[pre + g.name(p)] = pre + g.name(g.inverse(p));
    }
    for (const auto& u : g.unit_names()) units.push_back(pre + u);
    for (const auto& e : g.mult_entries()) mult.push_back({pre + e[0], pre + e[1], pre + e[2]});
  };
  add(g1, prefix1);
  add(g2, prefix2);
  return FiniteGroupoid(names, units, s, t, mult, i);
}

FiniteGroupoid random_groupoid(int n_components, int max_objects,
                               const std::vector<int>& isotropy_orders, std::uint64_t seed) {
  if (n_components < 1 || max_objects < 1 || isotropy_orders.empty()) {
    throw Error(ErrorKind::InvalidInput, "random_groupoid needs positive bounds");
  }
  for (int m : isotropy_orders) {
    if (m < 1) throw Error(ErrorKind::InvalidInput, "isotropy orders must be positive");
  }
  constexpr int kMaxElements = 30;
  std::mt19937_64 rng(seed);
  std::vector<std::string> names, units;
  std::map<std::string, std::string> s, t, inv;
  std::vector<FiniteGroupoid::Entry> mult;
  int used = 0;
  for (int c = 0; c < n_components; ++c) {
    int k = std::uniform_int_distribution<int>(1, max_objects)(rng);
    int m = isotropy_orders[std::uniform_int_distribution<std::size_t>(
        0, isotropy_orders.size() - 1)(rng)];
    while (k > 1 && used + k * k * m > kMaxElements) --k;
    if (used + k * k * m > kMaxElements) {
      m = *std::min_element(isotropy_orders.begin(), isotropy_orders.end());
      if (used + m > kMaxElements) break;
    }
    const FiniteGroupoid piece = pair_times_cyclic(k, m);
    const std::string pre = n_components > 1 ? "c" + std::to_string(c) + "." : "";
    for (int p = 0; p < piece.size(); ++p) {
      names.push_back(pre + piece.name(p));
      s[pre + piece.name(p)] = pre + piece.name(piece.source(p));
      t[pre + piece.name(p)] = pre + piece.name(piece.target(p));
      inv[pre + piece.name(p)] = pre + piece.name(piece.inverse(p));
    }
    for (const auto& u : piece.unit_names()) units.push_back(pre + u);
    for (const auto& e : piece.mult_entries()) mult.push_back({pre + e[0], pre + e[1], pre + e[2]});
    used += piece.size();
  }
  std::shuffle(names.begin(), names.end(), rng);
  std::shuffle(units.begin(), units.end(), rng);
  return FiniteGroupoid(names, units, s, t, mult, inv);
}

}  // namespace qgl
