// dzeta: products, structural maps, evaluators and the verification suites.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dzeta/shintani.hpp"
#include "dzeta/trees.hpp"
#include "dzeta/verify.hpp"
#include "dzeta/words.hpp"
#include "dzeta/zeta.hpp"

#ifndef DZETA_DEFAULT_TOLERANCES
#define DZETA_DEFAULT_TOLERANCES "config/tolerances.json"
#endif

using namespace dzeta;
using nlohmann::json;

namespace {

struct Globals {
  bool json = false;
  std::optional<std::size_t> cutoff;
  std::optional<std::size_t> quad_nodes;
};

template <class B>
json lincomb_json(const LinComb<B>& a) {
  json out = json::array();
  for (const auto& [b, c] : a) out.push_back({{"coeff", c.to_string()}, {"basis", BasisText<B>::term(b)}});
  return out;
}

template <class B>
void print_lincomb(const Globals& g, const LinComb<B>& a) {
  if (g.json) {
    std::cout << lincomb_json(a).dump() << "\n";
  } else {
    std::cout << to_string(a) << "\n";
  }
}

/// A single basis element, or a combination when the text contains `*`.
template <class B, class ParseBasis>
LinComb<B> read_operand(const std::string& text, ParseBasis parse_basis) {
  if (text.find('*') != std::string::npos) return parse_lincomb<B>(text);
  return LinComb<B>(parse_basis(text));
}

template <class A, class ParseBasis>
void run_product(const Globals& g, Piece piece, const std::string& a, const std::string& b, ParseBasis parse_basis) {
  using B = typename A::Basis;
  const auto lhs = read_operand<B>(a, parse_basis);
  const auto rhs = read_operand<B>(b, parse_basis);
  print_lincomb(g, product<A>(piece, lhs, rhs));
}

void cmd_product(const Globals& g, const std::string& kind, const std::string& piece_text, const std::string& a,
                 const std::string& b) {
  const Piece piece = parse_piece(piece_text);
  if (kind == "word") {
    run_product<QuasiShuffleAlgebra>(g, piece, a, b, parse_series_word);
  } else if (kind == "bin-word") {
    run_product<ShuffleAlgebra<Bin>>(g, piece, a, b, parse_integral_word);
  } else if (kind == "angle-tree") {
    run_product<TreeAlgebra<AngleTraits>>(g, piece, a, b, parse_angle_tree);
  } else if (kind == "vertex-tree") {
    run_product<TreeAlgebra<VertexTraits>>(g, piece, a, b, parse_vertex_tree);
  } else if (kind == "binary-tree") {
    run_product<TreeAlgebra<BinaryTraits>>(g, piece, a, b, parse_binary_tree);
  } else {
    throw InvalidConfig("unknown kind '" + kind + "' (word|bin-word|angle-tree|vertex-tree|binary-tree)");
  }
}

void cmd_flatten(const Globals& g, const std::string& kind, const std::string& tree) {
  if (kind == "vertex-tree") {
    print_lincomb(g, flatten_series(parse_vertex_tree(tree)));
  } else if (kind == "angle-tree") {
    print_lincomb(g, flatten_series(iota(parse_angle_tree(tree))));
  } else if (kind == "binary-tree") {
    print_lincomb(g, flatten_int(parse_binary_tree(tree)));
  } else {
    throw InvalidConfig("unknown kind '" + kind + "' (angle-tree|vertex-tree|binary-tree)");
  }
}

void print_result(const Globals& g, const std::string& target, const std::string& evaluated, const EvalResult& r) {
  if (g.json) {
    json out{{"target", target}, {"evaluated", evaluated}, {"value", r.value}};
    out["tail_bound"] = r.tail_bound ? json(*r.tail_bound) : json(nullptr);
    std::cout << out.dump() << "\n";
    return;
  }
  std::printf("value      %.15g\n", r.value);
  if (r.tail_bound) {
    std::printf("tail_bound %.6e\n", *r.tail_bound);
  } else {
    std::printf("tail_bound none\n");
  }
  std::printf("evaluated  %s\n", evaluated.c_str());
}

void cmd_eval(const Globals& g, const std::string& target, const std::string& input, const std::string& path_text) {
  SeriesEvalConfig series;
  QuadEvalConfig quad;
  if (g.cutoff) series.cutoff = *g.cutoff;
  if (g.quad_nodes) quad.nodes_per_axis = *g.quad_nodes;
  IntegralPath path;
  if (path_text == "series") {
    path = IntegralPath::Series;
  } else if (path_text == "quad") {
    path = IntegralPath::Quadrature;
  } else {
    throw InvalidConfig("--path must be series or quad");
  }

  if (target == "word-series") {
    const auto c = read_operand<SeriesWord>(input, parse_series_word);
    print_result(g, target, to_string(c), eval_lincomb_words(c, series));
  } else if (target == "word-integral") {
    const auto c = read_operand<IntegralWord>(input, parse_integral_word);
    print_result(g, target, to_string(c), eval_lincomb_integral(c, series, quad, path));
  } else if (target == "tree-series") {
    const auto t = parse_vertex_tree(input);
    print_result(g, target, to_string(flatten_series(t)), azv_series(t, series));
  } else if (target == "tree-integral") {
    const auto t = parse_binary_tree(input);
    print_result(g, target, to_string(flatten_int(t)), azv_integral(t, series, quad, path));
  } else if (target == "shintani") {
    const auto t = parse_binary_tree(input);
    const auto d = shintani_datum(t);
    const std::size_t n = g.cutoff.value_or(2000);
    std::string evaluated = "matrix";
    for (const auto& row : d.matrix) {
      evaluated += ' ';
      for (int a : row) evaluated += std::to_string(a);
    }
    evaluated += ", omega " + to_string(d.exponents) + ", N = " + std::to_string(n);
    print_result(g, target, evaluated, {shintani_eval(d, n), std::nullopt});
  } else {
    throw InvalidConfig("unknown eval target '" + target +
                        "' (word-series|word-integral|tree-series|tree-integral|shintani)");
  }
}

void cmd_shintani_matrix(const Globals& g, const std::string& tree) {
  const auto d = shintani_datum(parse_binary_tree(tree));
  if (g.json) {
    json out{{"matrix", d.matrix},
             {"exponents", to_string(d.exponents)},
             {"row_labels", d.row_labels},
             {"col_labels", d.col_labels}};
    std::cout << out.dump() << "\n";
    return;
  }
  for (std::size_t i = 0; i < d.rows(); ++i) {
    std::string row;
    for (int a : d.matrix[i]) row += std::to_string(a);
    std::printf("%s  %llu  %s\n", row.c_str(), static_cast<unsigned long long>(d.exponents[i]),
                d.row_labels[i].c_str());
  }
  std::string omega;
  for (Letter e : d.exponents.letters()) omega += std::to_string(e);
  std::printf("omega %s\ncolumns", omega.c_str());
  for (const auto& c : d.col_labels) std::printf(" %s", c.c_str());
  std::printf("\n");
}

struct VerifyOptions {
  bool axioms = false;
  bool morphisms = false;
  bool oracles = false;
  bool numeric = false;
  bool all = false;
  std::size_t max_leaves = 3;
  std::vector<Letter> decorations{1, 2};
  std::string tolerances = DZETA_DEFAULT_TOLERANCES;
};

int cmd_verify(const Globals& g, const VerifyOptions& opt) {
  const bool everything = opt.all || !(opt.axioms || opt.morphisms || opt.oracles || opt.numeric);
  Tolerances tol = load_tolerances(opt.tolerances);
  if (g.cutoff) tol.series_cutoff = *g.cutoff;
  if (g.quad_nodes) tol.quad_nodes = *g.quad_nodes;

  std::vector<CheckReport> reports;
  auto append = [&](std::vector<CheckReport> more) {
    for (auto& r : more) {
      if (!g.json) {
        std::printf("%s  %-44s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
      }
      reports.push_back(std::move(r));
    }
  };
  if (everything || opt.axioms) append(run_axiom_suite(opt.max_leaves, opt.decorations));
  if (everything || opt.morphisms) append(run_morphism_suite(opt.max_leaves));
  if (everything || opt.oracles) append(run_oracle_suite(opt.all ? 4 : opt.max_leaves));
  if (everything || opt.numeric) append(run_numeric_suite(tol));

  int failures = 0;
  for (const auto& r : reports) failures += r.passed ? 0 : 1;
  if (g.json) {
    json out = json::array();
    for (const auto& r : reports) {
      out.push_back({{"check", r.name},
                     {"status", r.passed ? "pass" : "fail"},
                     {"detail", r.detail},
                     {"cases", r.cases},
                     {"seconds", r.seconds}});
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("%zu checks, %d failed\n", reports.size(), failures);
  }
  return std::min(failures, 125);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dendriform and tridendriform algebras on words and trees, with zeta-value evaluators"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--cutoff", g.cutoff, "Outer summation bound N for series evaluation")->check(CLI::PositiveNumber);
  app.add_option("--quad-nodes", g.quad_nodes, "Gauss-Legendre nodes per axis")->check(CLI::PositiveNumber);

  std::string kind, piece, a, b, target, input, path = "series";
  bool inverse = false;
  VerifyOptions vopt;

  auto* product = app.add_subcommand("product", "Exact product of two words or trees");
  product->add_option("kind", kind, "word|bin-word|angle-tree|vertex-tree|binary-tree")->required();
  product->add_option("piece", piece, "left|right|mid|full")->required();
  product->add_option("a", a, "Left operand (basis element or combination)")->required();
  product->add_option("b", b, "Right operand (basis element or combination)")->required();

  auto* flatten = app.add_subcommand("flatten", "Flatten a tree into a combination of words");
  flatten->add_option("kind", kind, "angle-tree|vertex-tree|binary-tree")->required();
  flatten->add_option("tree", a)->required();

  auto* iota_cmd = app.add_subcommand("iota", "Sum the angle decorations of an angle tree");
  iota_cmd->add_option("tree", a)->required();

  auto* binarize_cmd = app.add_subcommand("binarize", "Map a positive-integer word to an {x,y} word");
  binarize_cmd->add_option("word", a)->required();
  binarize_cmd->add_flag("--inverse", inverse, "Map an {x,y} word back to a positive-integer word");

  auto* eval = app.add_subcommand("eval", "Numerical evaluation");
  eval->add_option("target", target, "word-series|word-integral|tree-series|tree-integral|shintani")->required();
  eval->add_option("input", input)->required();
  eval->add_option("--path", path, "series|quad for integral targets");

  auto* matrix = app.add_subcommand("shintani-matrix", "Shintani datum of a convergent binary tree");
  matrix->add_option("tree", a)->required();

  auto* verify = app.add_subcommand("verify", "Run the identity checks; exit code = number of failures");
  verify->add_flag("--all", vopt.all, "Every suite; oracle suite at 4 leaves");
  verify->add_flag("--axioms", vopt.axioms);
  verify->add_flag("--morphisms", vopt.morphisms);
  verify->add_flag("--oracles", vopt.oracles);
  verify->add_flag("--numeric", vopt.numeric);
  verify->add_option("--max-leaves", vopt.max_leaves)->check(CLI::Range(2, 4));
  verify->add_option("--decorations", vopt.decorations, "Letters used by the axiom suite")->delimiter(',');
  verify->add_option("--tolerances", vopt.tolerances, "Tolerance file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*product) {
      cmd_product(g, kind, piece, a, b);
    } else if (*flatten) {
      cmd_flatten(g, kind, a);
    } else if (*iota_cmd) {
      const auto t = iota(parse_angle_tree(a));
      std::cout << (g.json ? json(t.text()).dump() : t.text()) << "\n";
    } else if (*binarize_cmd) {
      const std::string out = inverse ? to_string(unbinarize(parse_integral_word(a))) : to_string(binarize(parse_series_word(a)));
      std::cout << (g.json ? json(out).dump() : out) << "\n";
    } else if (*eval) {
      cmd_eval(g, target, input, path);
    } else if (*matrix) {
      cmd_shintani_matrix(g, a);
    } else if (*verify) {
      return cmd_verify(g, vopt);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
