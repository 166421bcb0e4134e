#include "dzeta/verify.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <random>

#include <json.hpp>

#include "dzeta/shintani.hpp"
#include "dzeta/trees.hpp"
#include "dzeta/zeta.hpp"

namespace dzeta {

Tolerances load_tolerances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open tolerance file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig("malformed tolerance file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw InvalidConfig("tolerance file must hold a JSON object");
  Tolerances t;
  const std::map<std::string, double*> reals{
      {"zeta2_tail_bound_max", &t.zeta2_tail_bound_max},
      {"kontsevich_xy", &t.kontsevich_xy},
      {"kontsevich_xyy", &t.kontsevich_xyy},
      {"worked_relation", &t.worked_relation},
      {"stuffle_slack", &t.stuffle_slack},
      {"shuffle_quad", &t.shuffle_quad},
      {"shintani", &t.shintani},
      {"azv_direct", &t.azv_direct},
  };
  const std::map<std::string, std::size_t*> counts{
      {"series_cutoff", &t.series_cutoff},
      {"shintani_cutoff", &t.shintani_cutoff},
      {"direct_cutoff", &t.direct_cutoff},
      {"quad_nodes", &t.quad_nodes},
  };
  for (const auto& [key, value] : j.items()) {
    if (key.starts_with("_")) continue;  // comments
    if (auto it = reals.find(key); it != reals.end() && value.is_number()) {
      *it->second = value.get<double>();
    } else if (auto jt = counts.find(key); jt != counts.end() && value.is_number_unsigned()) {
      *jt->second = value.get<std::size_t>();
    } else {
      throw InvalidConfig("unknown or mistyped tolerance key '" + key + "'");
    }
  }
  return t;
}

std::vector<CheckReport> run_concurrently(const std::vector<std::function<CheckReport()>>& jobs) {
  std::vector<std::future<CheckReport>> futures;
  futures.reserve(jobs.size());
  for (const auto& job : jobs) futures.push_back(std::async(std::launch::async, job));
  std::vector<CheckReport> out;
  out.reserve(jobs.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

namespace {

using Job = std::function<CheckReport()>;

template <class Body>
Job timed(std::string name, Body body) {
  return [name = std::move(name), body]() {
    CheckReport r;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.passed = true;
      body(r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  };
}

void fail(CheckReport& r, std::string detail) {
  r.passed = false;
  r.detail = std::move(detail);
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

template <class B>
std::string basis_text(const B& b) {
  return BasisText<B>::term(b);
}

// ---------------------------------------------------------------------------
// Axioms

struct Relation {
  const char* name;
  Piece inner_left;
  Piece outer_left;
  Piece outer_right;
  Piece inner_right;
};

// (x ∘1 y) ∘2 z = x ∘3 (y ∘4 z)
constexpr Relation kRelations[7] = {
    {"tri1", Piece::Left, Piece::Left, Piece::Left, Piece::Full},
    {"tri2", Piece::Right, Piece::Left, Piece::Right, Piece::Left},
    {"tri3", Piece::Full, Piece::Right, Piece::Right, Piece::Right},
    {"tri4", Piece::Right, Piece::Middle, Piece::Right, Piece::Middle},
    {"tri5", Piece::Left, Piece::Middle, Piece::Middle, Piece::Right},
    {"tri6", Piece::Middle, Piece::Left, Piece::Middle, Piece::Left},
    {"tri7", Piece::Middle, Piece::Middle, Piece::Middle, Piece::Middle},
};

template <TridendriformAlgebra A>
Job relation_job(std::string family, const Relation& rel, std::shared_ptr<const std::vector<typename A::Basis>> basis,
                 std::string vacuous_note) {
  std::string name = family + "/" + rel.name;
  if (!A::has_middle) name = family + "/dend" + std::string(rel.name).substr(3);
  return timed(name, [rel, basis, vacuous_note](CheckReport& r) {
    using B = typename A::Basis;
    for (const auto& x : *basis) {
      const LinComb<B> lx(x);
      for (const auto& y : *basis) {
        const LinComb<B> ly(y);
        const auto xy = product<A>(rel.inner_left, lx, ly);
        for (const auto& z : *basis) {
          const LinComb<B> lz(z);
          const auto lhs = product<A>(rel.outer_left, xy, lz);
          const auto rhs = product<A>(rel.outer_right, lx, product<A>(rel.inner_right, ly, lz));
          ++r.cases;
          if (lhs != rhs) {
            fail(r, "x = " + basis_text(x) + ", y = " + basis_text(y) + ", z = " + basis_text(z) + ": lhs = " +
                        to_string(lhs) + ", rhs = " + to_string(rhs));
            return;
          }
        }
      }
    }
    r.detail = std::to_string(r.cases) + " triples";
    if (r.cases == 0 && !vacuous_note.empty()) r.detail += " (vacuous: " + vacuous_note + ")";
  });
}

std::vector<SeriesWord> series_words(std::size_t max_len, const std::vector<Letter>& letters, bool include_empty) {
  std::vector<SeriesWord> out;
  std::vector<std::vector<Letter>> layer{{}};
  if (include_empty) out.emplace_back();
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& p : layer) {
      for (Letter a : letters) {
        auto w = p;
        w.push_back(a);
        out.emplace_back(w);
        next.push_back(std::move(w));
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::vector<IntegralWord> integral_words(std::size_t max_len, bool include_empty) {
  std::vector<IntegralWord> out;
  std::vector<std::vector<Bin>> layer{{}};
  if (include_empty) out.emplace_back();
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Bin>> next;
    for (const auto& p : layer) {
      for (Bin a : {Bin::x, Bin::y}) {
        auto w = p;
        w.push_back(a);
        out.emplace_back(w);
        next.push_back(std::move(w));
      }
    }
    layer = std::move(next);
  }
  return out;
}

void check_leaf_budget(std::size_t max_leaves) {
  if (max_leaves < 2 || max_leaves > 4) throw InvalidConfig("max_leaves must lie in 2..4");
}

}  // namespace

std::vector<CheckReport> run_axiom_suite(std::size_t max_leaves, const std::vector<Letter>& decorations) {
  check_leaf_budget(max_leaves);
  const std::string note = decorations.empty() ? "empty decoration set" : "";
  auto words = std::make_shared<const std::vector<SeriesWord>>(series_words(max_leaves - 1, decorations, false));
  auto bin_words = std::make_shared<const std::vector<IntegralWord>>(integral_words(max_leaves - 1, false));
  auto angle = std::make_shared<const std::vector<AngleTree>>(enumerate_angle_trees(max_leaves, decorations));
  auto vertex = std::make_shared<const std::vector<VertexTree>>(enumerate_vertex_trees(max_leaves, decorations));
  auto binary = std::make_shared<const std::vector<BinaryTree>>(enumerate_binary_trees(max_leaves));

  std::vector<Job> jobs;
  for (const auto& rel : kRelations) jobs.push_back(relation_job<QuasiShuffleAlgebra>("words-qsh", rel, words, note));
  for (const auto& rel : kRelations) jobs.push_back(relation_job<TreeAlgebra<AngleTraits>>("angle-trees", rel, angle, note));
  for (const auto& rel : kRelations) jobs.push_back(relation_job<TreeAlgebra<VertexTraits>>("vertex-trees", rel, vertex, note));
  for (std::size_t i = 0; i < 3; ++i) {
    jobs.push_back(relation_job<ShuffleAlgebra<Bin>>("words-sh", kRelations[i], bin_words, ""));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    jobs.push_back(relation_job<TreeAlgebra<BinaryTraits>>("binary-trees", kRelations[i], binary, ""));
  }
  return run_concurrently(jobs);
}

// ---------------------------------------------------------------------------
// Morphisms

namespace {

constexpr Piece kTriPieces[4] = {Piece::Left, Piece::Right, Piece::Middle, Piece::Full};
constexpr Piece kDendPieces[3] = {Piece::Left, Piece::Right, Piece::Full};

std::string rerun_product(const std::string& kind, Piece p, const std::string& a, const std::string& b) {
  return " [rerun: dzeta product " + kind + " " + std::string(to_string(p)) + " " + quote(a) + " " + quote(b) + "]";
}

template <class Tree>
std::vector<Tree> convergent_only(const std::vector<Tree>& trees, bool (*pred)(const Tree&)) {
  std::vector<Tree> out;
  for (const auto& t : trees) {
    if (pred(t)) out.push_back(t);
  }
  return out;
}

template <class Traits>
bool all_terms_convergent(const std::vector<PlanarTree<Traits>>& trees, bool (*pred)(const PlanarTree<Traits>&),
                          const std::string& kind, CheckReport& r) {
  for (const auto& t : trees) {
    for (const auto& s : trees) {
      for (Piece p : kTriPieces) {
        if (!Traits::has_merge && p == Piece::Middle) continue;
        for (const auto& [u, c] : tree_product(t, s, p)) {
          if (!pred(u)) {
            fail(r, "term " + u.text() + " is not convergent" + rerun_product(kind, p, t.text(), s.text()));
            return false;
          }
        }
        ++r.cases;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<CheckReport> run_morphism_suite(std::size_t max_leaves) {
  check_leaf_budget(max_leaves);
  auto angle = std::make_shared<const std::vector<AngleTree>>(enumerate_angle_trees(max_leaves, {1, 2}));
  auto vertex = std::make_shared<const std::vector<VertexTree>>(enumerate_vertex_trees(max_leaves, {1, 2, 3}));
  auto binary = std::make_shared<const std::vector<BinaryTree>>(enumerate_binary_trees(max_leaves));

  std::vector<Job> jobs;
  jobs.push_back(timed("morphism/iota", [angle](CheckReport& r) {
    for (const auto& t : *angle) {
      for (const auto& s : *angle) {
        for (Piece p : kTriPieces) {
          const auto lhs = iota(tree_product(t, s, p));
          const auto rhs = tree_product(iota(t), iota(s), p);
          ++r.cases;
          if (lhs != rhs) {
            return fail(r, "iota(t " + std::string(to_string(p)) + " s) = " + to_string(lhs) + " but iota(t) " +
                               std::string(to_string(p)) + " iota(s) = " + to_string(rhs) +
                               rerun_product("angle-tree", p, t.text(), s.text()));
          }
        }
      }
    }
    r.detail = std::to_string(r.cases) + " (pair, piece) cases";
  }));
  jobs.push_back(timed("morphism/flatten-series", [vertex](CheckReport& r) {
    for (const auto& t : *vertex) {
      for (const auto& s : *vertex) {
        for (Piece p : kTriPieces) {
          const auto lhs = flatten_series(tree_product(t, s, p));
          const auto rhs = product<QuasiShuffleAlgebra>(p, flatten_series(t), flatten_series(s));
          ++r.cases;
          if (lhs != rhs) {
            return fail(r, "flat(t " + std::string(to_string(p)) + " s) = " + to_string(lhs) + " but " +
                               to_string(rhs) + " from the word side" +
                               rerun_product("vertex-tree", p, t.text(), s.text()));
          }
        }
      }
    }
    r.detail = std::to_string(r.cases) + " (pair, piece) cases";
  }));
  jobs.push_back(timed("morphism/flatten-int", [binary](CheckReport& r) {
    for (const auto& t : *binary) {
      for (const auto& s : *binary) {
        for (Piece p : kDendPieces) {
          const auto lhs = flatten_int(tree_product(t, s, p));
          const auto rhs = product<ShuffleAlgebra<Bin>>(p, flatten_int(t), flatten_int(s));
          ++r.cases;
          if (lhs != rhs) {
            return fail(r, "flat(t " + std::string(to_string(p)) + " s) = " + to_string(lhs) + " but " +
                               to_string(rhs) + " from the word side" +
                               rerun_product("binary-tree", p, t.text(), s.text()));
          }
        }
      }
    }
    r.detail = std::to_string(r.cases) + " (pair, piece) cases";
  }));
  jobs.push_back(timed("morphism/psi-factorization", [angle](CheckReport& r) {
    for (const auto& t : *angle) {
      const auto via_iota = flatten_series(iota(t));
      const auto psi = psi_words(t);
      ++r.cases;
      if (!psi.unit.is_zero() || psi.body != via_iota) {
        return fail(r, "tree " + t.text() + ": flatten(iota) = " + to_string(via_iota) + ", free morphism = " +
                           to_string(psi.body));
      }
    }
    r.detail = std::to_string(r.cases) + " trees";
  }));
  jobs.push_back(timed("morphism/psi-dendriform", [binary](CheckReport& r) {
    for (const auto& t : *binary) {
      const auto flat = flatten_int(t);
      const auto psi = psi_words(t);
      ++r.cases;
      if (!psi.unit.is_zero() || psi.body != flat) {
        return fail(r, "tree " + t.text() + ": flatten_int = " + to_string(flat) + ", free morphism = " +
                           to_string(psi.body));
      }
    }
    r.detail = std::to_string(r.cases) + " trees";
  }));
  jobs.push_back(timed("morphism/sigma-iota", [angle](CheckReport& r) {
    for (const auto& t : *angle) {
      const int k = static_cast<int>(comb_decompose(t, CombSide::Right).parts.size());
      for (const auto& s : *angle) {
        const int l = static_cast<int>(comb_decompose(s, CombSide::Left).parts.size());
        if (k + l > 4) continue;
        for (const auto& sigma : enumerate_quasi_shuffles(k, l)) {
          ++r.cases;
          const auto lhs = iota(sigma_action(sigma, t, s));
          const auto rhs = sigma_action(sigma, iota(t), iota(s));
          if (lhs != rhs) return fail(r, "t = " + t.text() + ", s = " + s.text() + ": " + lhs.text() + " vs " + rhs.text());
        }
      }
    }
    r.detail = std::to_string(r.cases) + " (sigma, t, s) cases";
  }));
  jobs.push_back(timed("morphism/convergence-preserved", [angle, vertex, binary](CheckReport& r) {
    if (!all_terms_convergent(convergent_only(*angle, is_convergent_angle_tree), is_convergent_angle_tree,
                              "angle-tree", r)) {
      return;
    }
    if (!all_terms_convergent(convergent_only(*vertex, is_convergent_vertex_tree), is_convergent_vertex_tree,
                              "vertex-tree", r)) {
      return;
    }
    if (!all_terms_convergent(convergent_only(*binary, is_convergent_binary_tree), is_convergent_binary_tree,
                              "binary-tree", r)) {
      return;
    }
    r.detail = std::to_string(r.cases) + " products checked term by term";
  }));
  return run_concurrently(jobs);
}

// ---------------------------------------------------------------------------
// Oracles

namespace {

template <class Traits>
Job tree_oracle_job(std::string name, std::string kind, std::shared_ptr<const std::vector<PlanarTree<Traits>>> trees) {
  return timed(std::move(name), [kind, trees](CheckReport& r) {
    for (const auto& t : *trees) {
      for (const auto& s : *trees) {
        for (Piece p : kTriPieces) {
          if (!Traits::has_merge && p == Piece::Middle) continue;
          const auto a = tree_product(t, s, p);
          const auto b = tree_product_inductive(t, s, p);
          ++r.cases;
          if (a != b) {
            return fail(r, "surjection formula " + to_string(a) + " vs recursion " + to_string(b) +
                               rerun_product(kind, p, t.text(), s.text()));
          }
        }
      }
    }
    r.detail = std::to_string(r.cases) + " (pair, piece) cases";
  });
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Every map {1..k+l} -> {1..n}, filtered by monotonicity on both blocks and surjectivity.
std::vector<std::vector<int>> brute_force_quasi_shuffles(int k, int l) {
  std::vector<std::vector<int>> out;
  const int total = k + l;
  for (int n = std::max(k, l); n <= total; ++n) {
    std::vector<int> v(static_cast<std::size_t>(total), 1);
    while (true) {
      bool ok = true;
      for (int i = 1; i < total && ok; ++i) {
        if (i != k && v[static_cast<std::size_t>(i - 1)] >= v[static_cast<std::size_t>(i)]) ok = false;
      }
      if (ok) {
        std::vector<bool> hit(static_cast<std::size_t>(n) + 1, false);
        for (int x : v) hit[static_cast<std::size_t>(x)] = true;
        for (int m = 1; m <= n && ok; ++m) ok = hit[static_cast<std::size_t>(m)];
      }
      if (ok) out.push_back(v);
      int pos = total - 1;
      while (pos >= 0 && v[static_cast<std::size_t>(pos)] == n) v[static_cast<std::size_t>(pos--)] = 1;
      if (pos < 0) break;
      ++v[static_cast<std::size_t>(pos)];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<CheckReport> run_oracle_suite(std::size_t max_leaves) {
  check_leaf_budget(max_leaves);
  auto angle = std::make_shared<const std::vector<AngleTree>>(enumerate_angle_trees(max_leaves, {1, 2}));
  auto vertex = std::make_shared<const std::vector<VertexTree>>(enumerate_vertex_trees(max_leaves, {1, 2}));
  auto binary = std::make_shared<const std::vector<BinaryTree>>(enumerate_binary_trees(max_leaves));

  std::vector<Job> jobs;
  jobs.push_back(tree_oracle_job<AngleTraits>("oracle/angle-trees", "angle-tree", angle));
  jobs.push_back(tree_oracle_job<VertexTraits>("oracle/vertex-trees", "vertex-tree", vertex));
  jobs.push_back(tree_oracle_job<BinaryTraits>("oracle/binary-trees", "binary-tree", binary));
  jobs.push_back(timed("oracle/qshuffle-maps", [](CheckReport& r) {
    const auto words = series_words(3, {1, 2}, false);
    for (const auto& u : words) {
      for (const auto& v : words) {
        const LinComb<SeriesWord> rec[4] = {qshuffle_left(u, v), qshuffle_right(u, v), qshuffle_mid(u, v),
                                            qshuffle(u, v)};
        for (std::size_t i = 0; i < 4; ++i) {
          ++r.cases;
          const auto maps = qshuffle_by_maps(u, v, kTriPieces[i]);
          if (maps != rec[i]) {
            return fail(r, "(" + to_string(u) + ") " + std::string(to_string(kTriPieces[i])) + " (" + to_string(v) +
                               "): recursion " + to_string(rec[i]) + ", maps " + to_string(maps));
          }
        }
        if (rec[0] + rec[1] + rec[2] != rec[3]) return fail(r, "split pieces do not add up for " + to_string(u));
      }
    }
    r.detail = std::to_string(r.cases) + " cases";
  }));
  jobs.push_back(timed("oracle/shuffle-maps", [](CheckReport& r) {
    const auto words = integral_words(3, false);
    for (const auto& u : words) {
      for (const auto& v : words) {
        const LinComb<IntegralWord> rec[3] = {shuffle_left(u, v), shuffle_right(u, v), shuffle(u, v)};
        for (std::size_t i = 0; i < 3; ++i) {
          ++r.cases;
          const auto maps = shuffle_by_maps(u, v, kDendPieces[i]);
          if (maps != rec[i]) {
            return fail(r, to_string(u) + " " + std::string(to_string(kDendPieces[i])) + " " + to_string(v) +
                               ": recursion " + to_string(rec[i]) + ", maps " + to_string(maps));
          }
        }
        if (rec[0] + rec[1] != rec[2]) return fail(r, "split pieces do not add up for " + to_string(u));
      }
    }
    r.detail = std::to_string(r.cases) + " cases";
  }));
  jobs.push_back(timed("oracle/enumeration", [](CheckReport& r) {
    for (int k = 1; k <= 4; ++k) {
      for (int l = 1; l <= 4; ++l) {
        ++r.cases;
        const auto sh = enumerate_shuffles(k, l);
        if (sh.size() != binomial(static_cast<std::size_t>(k + l), static_cast<std::size_t>(k))) {
          return fail(r, "|Sh(" + std::to_string(k) + "," + std::to_string(l) + ")| = " + std::to_string(sh.size()));
        }
        std::vector<std::vector<int>> qsh;
        for (const auto& s : enumerate_quasi_shuffles(k, l)) qsh.push_back(s.values);
        if (qsh != brute_force_quasi_shuffles(k, l)) {
          return fail(r, "QSh(" + std::to_string(k) + "," + std::to_string(l) + ") differs from brute force");
        }
      }
    }
    r.detail = std::to_string(r.cases) + " (k,l) signatures";
  }));
  jobs.push_back(timed("oracle/binarization", [](CheckReport& r) {
    for (const auto& w : series_words(4, {1, 2, 3}, true)) {
      ++r.cases;
      const auto b = binarize(w);
      if (unbinarize(b) != w) return fail(r, "round trip fails on (" + to_string(w) + ")");
      if (is_convergent_series_word(w) != is_convergent_integral_word(b)) {
        return fail(r, "convergence not preserved on (" + to_string(w) + ")");
      }
    }
    r.detail = std::to_string(r.cases) + " words";
  }));
  return run_concurrently(jobs);
}

// ---------------------------------------------------------------------------
// Numerics

std::vector<std::string> shintani_sample_trees() {
  std::vector<std::string> pool;
  for (const auto& t : enumerate_binary_trees(4)) {
    if (is_convergent_binary_tree(t) && t.text() != "B{x}(B{y}(|,|),B{y}(|,|))") pool.push_back(t.text());
  }
  std::mt19937 rng(20240617u);
  std::vector<std::string> out;
  while (out.size() < 2) {
    const auto& pick = pool[rng() % pool.size()];
    if (std::find(out.begin(), out.end(), pick) == out.end()) out.push_back(pick);
  }
  return out;
}

namespace {

std::string gap_detail(double a, double b, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.12g vs %.12g, gap %.3e, tolerance %.3e", a, b, std::abs(a - b), tol);
  return buf;
}

}  // namespace

std::vector<CheckReport> run_numeric_suite(const Tolerances& tol) {
  const SeriesEvalConfig series{tol.series_cutoff, true};
  const QuadEvalConfig quad{tol.quad_nodes, 4};
  std::vector<Job> jobs;

  jobs.push_back(timed("numeric/zeta2", [series, tol](CheckReport& r) {
    const double target = std::numbers::pi * std::numbers::pi / 6.0;
    const auto z = mzv_series(parse_series_word("2"), series);
    r.cases = 1;
    r.detail = gap_detail(z.value, target, *z.tail_bound) + ", bound cap " + std::to_string(tol.zeta2_tail_bound_max);
    r.passed = std::abs(z.value - target) <= *z.tail_bound && *z.tail_bound <= tol.zeta2_tail_bound_max;
  }));
  jobs.push_back(timed("numeric/tail-soundness", [](CheckReport& r) {
    for (const char* text : {"2", "3", "2 1"}) {
      const auto w = parse_series_word(text);
      const auto lo = mzv_series(w, {1000, true});
      const auto hi = mzv_series(w, {1000000, false});
      ++r.cases;
      if (hi.value - lo.value > *lo.tail_bound || hi.value < lo.value) {
        return fail(r, std::string("(") + text + "): " + gap_detail(hi.value, lo.value, *lo.tail_bound));
      }
    }
    r.detail = "gap between N = 1e3 and N = 1e6 within the N = 1e3 bound for (2), (3), (2 1)";
  }));
  jobs.push_back(timed("numeric/kontsevich", [series, quad, tol](CheckReport& r) {
    const auto a = mzv_integral_quad(parse_integral_word("xy"), quad).value;
    const auto b = mzv_series(parse_series_word("2"), series).value;
    const auto c = mzv_integral_quad(parse_integral_word("xyy"), quad).value;
    const auto d = mzv_series(parse_series_word("2 1"), series).value;
    r.cases = 2;
    r.passed = std::abs(a - b) < tol.kontsevich_xy && std::abs(c - d) < tol.kontsevich_xyy;
    r.detail = "xy: " + gap_detail(a, b, tol.kontsevich_xy) + "; xyy: " + gap_detail(c, d, tol.kontsevich_xyy);
  }));
  jobs.push_back(timed("numeric/worked-relation", [series, tol](CheckReport& r) {
    const auto t1 = parse_vertex_tree("N{2}(N{1},N{1})");
    const auto t2 = parse_vertex_tree("N{2}");
    const double lhs = eval_lincomb_words(flatten_series(t1), series).value *
                       eval_lincomb_words(flatten_series(t2), series).value;
    const double rhs = eval_lincomb_words(flatten_series(tree_product(t1, t2, Piece::Full)), series).value;
    r.cases = 1;
    r.passed = std::abs(lhs - rhs) < tol.worked_relation;
    r.detail = gap_detail(lhs, rhs, tol.worked_relation);
  }));
  jobs.push_back(timed("numeric/stuffle", [series, tol](CheckReport& r) {
    std::vector<SeriesWord> words;
    for (const auto& w : series_words(2, {1, 2, 3}, false)) {
      if (is_convergent_series_word(w)) words.push_back(w);
    }
    std::map<SeriesWord, EvalResult> cache;
    auto eval = [&](const SeriesWord& w) -> const EvalResult& {
      auto it = cache.find(w);
      if (it == cache.end()) it = cache.emplace(w, mzv_series(w, series)).first;
      return it->second;
    };
    auto eval_comb = [&](const LinComb<SeriesWord>& c) {
      double v = 0.0;
      double t = 0.0;
      for (const auto& [w, coeff] : c) {
        v += coeff.to_double() * eval(w).value;
        t += std::abs(coeff.to_double()) * *eval(w).tail_bound;
      }
      return std::pair{v, t};
    };
    for (const auto& u : words) {
      for (const auto& v : words) {
        const auto [lhs, lhs_tail] = eval_comb(qshuffle(u, v));
        const auto& eu = eval(u);
        const auto& ev = eval(v);
        const double rhs = eu.value * ev.value;
        const double allowed = lhs_tail + *eu.tail_bound + *ev.tail_bound + tol.stuffle_slack;
        ++r.cases;
        if (std::abs(lhs - rhs) > allowed) {
          return fail(r, "(" + to_string(u) + ") * (" + to_string(v) + "): " + gap_detail(lhs, rhs, allowed));
        }
      }
    }
    r.detail = std::to_string(r.cases) + " word pairs";
  }));
  jobs.push_back(timed("numeric/shuffle-quadrature", [quad, tol](CheckReport& r) {
    const auto xy = parse_integral_word("xy");
    double lhs = 0.0;
    for (const auto& [w, c] : shuffle(xy, xy)) lhs += c.to_double() * mzv_integral_quad(w, quad).value;
    const double single = mzv_integral_quad(xy, quad).value;
    r.cases = 1;
    r.passed = std::abs(lhs - single * single) <= tol.shuffle_quad;
    r.detail = gap_detail(lhs, single * single, tol.shuffle_quad);
  }));
  jobs.push_back(timed("numeric/integral-product-rule", [series, quad](CheckReport& r) {
    // The truncated shuffle identity is not exact, so the tolerance is built
    // from the rigorous tails: |Z(ab) - Z_N(ab)| + |Z(a)Z(b) - Z_N(a)Z_N(b)|.
    const auto t1 = parse_binary_tree("B{x}(|,B{y})");
    const auto t2 = parse_binary_tree("B{x}(B{y},B{y})");
    const auto a = azv_integral(t1, series, quad);
    const auto b = azv_integral(t2, series, quad);
    const auto ab = eval_lincomb_integral(flatten_int(tree_product(t1, t2, Piece::Full)), series, quad,
                                          IntegralPath::Series);
    const double allowed = *ab.tail_bound + *a.tail_bound * (b.value + *b.tail_bound) + a.value * *b.tail_bound;
    r.cases = 1;
    r.passed = std::abs(ab.value - a.value * b.value) <= allowed;
    r.detail = gap_detail(ab.value, a.value * b.value, allowed);
  }));
  jobs.push_back(timed("numeric/azv-direct", [series, tol](CheckReport& r) {
    const auto t = parse_vertex_tree("N{2}(N{2},N{1})");
    const double direct = azv_direct(t, tol.direct_cutoff);
    const double flat = azv_series(t, {tol.direct_cutoff, false}).value;
    const double full = azv_series(t, series).value;
    r.cases = 2;
    r.passed = std::abs(direct - flat) <= 1e-9 && std::abs(direct - full) <= tol.azv_direct;
    r.detail = "same cutoff: " + gap_detail(direct, flat, 1e-9) + "; against N = " + std::to_string(series.cutoff) +
               ": " + gap_detail(direct, full, tol.azv_direct);
  }));
  jobs.push_back(timed("numeric/monotone-truncation", [](CheckReport& r) {
    for (const char* text : {"2", "2 1", "3 1 1"}) {
      double prev = 0.0;
      for (std::size_t n : {2, 10, 100, 1000, 10000}) {
        const double v = mzv_series(parse_series_word(text), {n, false}).value;
        ++r.cases;
        if (v < prev) return fail(r, std::string("(") + text + ") decreases at N = " + std::to_string(n));
        prev = v;
      }
    }
    r.detail = std::to_string(r.cases) + " cutoffs";
  }));
  std::vector<std::string> shintani_trees{"B{x}(B{y}(|,|),B{y}(|,|))"};
  for (auto& t : shintani_sample_trees()) shintani_trees.push_back(t);
  for (const auto& text : shintani_trees) {
    jobs.push_back(timed("numeric/shintani " + text, [text, series, quad, tol](CheckReport& r) {
      const auto t = parse_binary_tree(text);
      const double a = shintani_eval(shintani_datum(t), tol.shintani_cutoff);
      const double b = azv_integral(t, series, quad).value;
      r.cases = 1;
      r.passed = std::abs(a - b) < tol.shintani;
      r.detail = gap_detail(a, b, tol.shintani) + " [rerun: dzeta eval shintani " + quote(text) + "]";
    }));
  }
  return run_concurrently(jobs);
}

}  // namespace dzeta
