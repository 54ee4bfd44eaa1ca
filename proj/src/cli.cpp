#include "thompson/cli.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "thompson/cantor.hpp"
#include "thompson/errors.hpp"
#include "thompson/geometry.hpp"
#include "thompson/pantstree.hpp"
#include "thompson/theta.hpp"
#include "thompson/treepair.hpp"

namespace thompson::cli {

namespace {

using nlohmann::json;

std::string fmt(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

template <class T>
std::vector<T> parse_list(const std::string& text, T (*conv)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ParseError("empty entry in list '" + text + "'");
    out.push_back(conv(item));
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

std::uint64_t to_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18) {
    throw ParseError("expected a nonnegative integer, got '" + s + "'");
  }
  return std::stoull(s);
}

int to_int(const std::string& s) { return static_cast<int>(to_u64(s)); }

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw ParseError("expected a number, got '" + s + "'");
  return v;
}

Rational to_rational(const std::string& s) {
  Rational r;
  if (s.empty() || s.find_first_not_of("0123456789/-") != std::string::npos || r.set_str(s, 10) != 0 ||
      r.get_den() == 0) {
    throw ParseError("expected a rational like 3/2, got '" + s + "'");
  }
  r.canonicalize();
  return r;
}

std::string perm_string(const std::vector<std::size_t>& perm) {
  std::string s;
  for (std::size_t i = 0; i < perm.size(); ++i) s += (i ? " " : "") + std::to_string(perm[i] + 1);
  return s;
}

json pieces_json(const PLMap& m) {
  json a = json::array();
  for (const auto& p : m.pieces()) {
    a.push_back({{"lo", p.lo.to_string()}, {"hi", p.hi.to_string()}, {"formula", p.formula()},
                 {"slope_log2", p.slope_log2}, {"offset", p.offset.to_string()}});
  }
  return a;
}

void print_pair(std::ostream& out, const TreePair& p) {
  out << "domain: " << p.domain().to_string() << "\n";
  out << "range:  " << p.range().to_string() << "\n";
  out << "perm:   " << perm_string(p.perm()) << "\n";
  out << "class:  " << to_string(classify(p)) << "\n";
}

json pair_json(const TreePair& p) {
  json j = p;
  j["class"] = to_string(classify(p));
  j["leaves"] = p.leaf_count();
  return j;
}

void print_class(std::ostream& out, const CombinatorialMappingClass& mc) {
  auto curves = [](const PantsSubtree& s) {
    std::string r;
    for (const auto& c : s.boundary()) r += (r.empty() ? "" : " ") + c.to_string();
    return r;
  };
  out << "depth:  " << mc.depth() << "\n";
  out << "domain: " << curves(mc.domain()) << "\n";
  out << "range:  " << curves(mc.range()) << "\n";
  out << "perm:   " << perm_string(mc.perm()) << "\n";
  out << "tag:    " << to_string(mc.tag()) << "\n";
}

CombinatorialMappingClass parse_class(const std::string& text) {
  if (text.rfind("Phi", 0) == 0) return witness(text);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("class must be Phi0..Phi3 or JSON: ") + e.what());
  }
  return class_from_json(j);
}

struct Options {
  bool json = false;
  std::string omega = "omega_k:1";
  std::string word;
  std::string point;
  std::string klass;
  std::size_t depth = 3;
  std::uint64_t horizon = 40;
  std::string K = "1.1,1.5,2";
  std::string M = "1";
  std::size_t grid = 128;
  std::string n_list = "5,10,20,40";
  std::string depths = "10,100,1000,10000";
  std::string k_pair = "1,2";
};

int cmd_word(const Options& o, std::ostream& out) {
  auto g = word_eval(parse_word(o.word));
  auto m = to_pl_map(g);
  if (o.json) {
    json j = {{"word", o.word}, {"pair", pair_json(g)}, {"pieces", pieces_json(m)}};
    out << j.dump(2) << "\n";
    return 0;
  }
  print_pair(out, g);
  out << "identity: " << (g.is_identity() ? "yes" : "no") << "\n";
  out << "pieces:\n";
  for (const auto& p : m.pieces()) {
    out << "  [" << p.lo.to_string() << ", " << p.hi.to_string() << ") -> " << p.formula() << "\n";
  }
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out) {
  auto g = word_eval(parse_word(o.word));
  auto y = g(Dyadic::parse(o.point));
  if (o.json) {
    out << json{{"word", o.word}, {"x", Dyadic::parse(o.point).to_string()}, {"image", y.to_string()}}.dump(2) << "\n";
  } else {
    out << y.to_string() << "\n";
  }
  return 0;
}

int cmd_cantor(const Options& o, std::ostream& out) {
  auto w = CantorParams::parse(o.omega);
  if (o.depth > 12) throw Malformed("cantor output is limited to depth 12");
  json intervals = json::array(), gaps = json::array(), circles = json::array();
  bool disjoint = true;
  std::vector<Circle> all;
  std::ostringstream human;
  human << "omega: " << w.describe() << "\n";
  human << "intervals (k j lo hi)\n";
  for (std::uint64_t k = 0; k <= o.depth; ++k) {
    for (const auto& I : intervals_at_depth(w, k)) {
      intervals.push_back({{"k", k}, {"j", I.index}, {"lo", I.lo.get_str()}, {"hi", I.hi.get_str()}});
      human << "  " << k << " " << I.index << " " << I.lo.get_str() << " " << I.hi.get_str() << "\n";
    }
  }
  human << "gaps (k j lo hi)\n";
  for (std::uint64_t k = 1; k <= o.depth; ++k) {
    for (std::uint64_t j = 1; j <= (std::uint64_t{1} << (k - 1)); ++j) {
      auto J = gap(w, k, j);
      gaps.push_back({{"k", k}, {"j", 2 * j - 1}, {"lo", J.lo.get_str()}, {"hi", J.hi.get_str()}});
      human << "  " << k << " " << 2 * j - 1 << " " << J.lo.get_str() << " " << J.hi.get_str() << "\n";
    }
  }
  human << "circles (k i center radius)\n";
  for (std::uint64_t k = 1; k <= o.depth; ++k) {
    for (std::uint64_t i = 1; i <= (std::uint64_t{1} << k); ++i) {
      auto C = circle(w, k, i);
      for (const auto& prev : all) disjoint = disjoint && circles_disjoint(prev, C);
      all.push_back(C);
      circles.push_back({{"k", k}, {"i", i}, {"center", C.center.get_str()}, {"radius", C.radius.get_str()}});
      human << "  " << k << " " << i << " " << C.center.get_str() << " " << C.radius.get_str() << "\n";
    }
  }
  human << "circles pairwise disjoint: " << (disjoint ? "yes" : "no") << "\n";
  if (o.json) {
    json j = {{"omega", w}, {"depth", o.depth}, {"intervals", intervals}, {"gaps", gaps},
              {"circles", circles}, {"circles_disjoint", disjoint}};
    out << j.dump(2) << "\n";
  } else {
    out << human.str();
  }
  return 0;
}

int cmd_brd(const Options& o, std::ostream& out) {
  auto w = CantorParams::parse(o.omega);
  auto M = to_rational(o.M);
  auto r = brd_check(w, o.horizon, M);
  if (o.json) {
    json j = {{"omega", w},
              {"horizon", r.horizon},
              {"M", M.get_str()},
              {"verdict", to_string(r.verdict)},
              {"witness", r.witness},
              {"max_abs_log_ratio", r.max_abs_log_ratio}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "omega:   " << w.describe() << "\n";
  out << "horizon: " << r.horizon << "\n";
  out << "M:       " << M.get_str() << "\n";
  out << "verdict: " << to_string(r.verdict);
  if (r.verdict != BrdVerdict::HoldsUpToHorizon) out << " (n = " << r.witness << ")";
  out << "\n";
  out << "max |log ratio|: " << fmt(r.max_abs_log_ratio) << "\n";
  if (r.verdict == BrdVerdict::HoldsUpToHorizon) out << "note: the limit q_n -> 1 is only checked up to the horizon\n";
  return 0;
}

int cmd_theta(const Options& o, std::ostream& out) {
  auto mc = parse_class(o.klass);
  auto g = theta(mc);
  if (o.json) {
    out << json{{"class", mc}, {"theta", pair_json(g)}}.dump(2) << "\n";
  } else {
    print_pair(out, g);
  }
  return 0;
}

int cmd_realize(const Options& o, std::ostream& out) {
  auto g = word_eval(parse_word(o.word));
  auto mc = realize(g);
  if (o.json) {
    out << json(mc).dump(2) << "\n";
  } else {
    print_class(out, mc);
  }
  return 0;
}

int cmd_kernel(const Options& o, std::ostream& out) {
  auto mc = parse_class(o.klass);
  bool k = kernel_test(mc);
  if (o.json) {
    out << json{{"class", mc}, {"in_kernel", k}}.dump(2) << "\n";
  } else {
    out << (k ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_length(const Options& o, std::ostream& out) {
  auto w = CantorParams::parse(o.omega);
  auto ds = parse_list<std::uint64_t>(o.depths, to_u64);
  json rows = json::array();
  std::ostringstream human;
  human << "omega: " << w.describe() << "\n";
  human << "C(delta): " << fmt(c_delta(w)) << "\n";
  human << std::left << std::setw(10) << "d" << std::setw(18) << "q_d" << std::setw(18) << "L(d)"
        << "W(L(d))\n";
  for (auto d : ds) {
    double l = length_upper_bound(w, d);
    double q = w.q_double(d);
    double W = collar_width(l);
    rows.push_back({{"d", d}, {"q_d", q}, {"length_bound", l}, {"collar_width", W}});
    human << std::left << std::setw(10) << d << std::setw(18) << fmt(q) << std::setw(18) << fmt(l) << fmt(W)
          << "\n";
  }
  if (o.json) {
    out << json{{"omega", w}, {"c_delta", c_delta(w)}, {"rows", rows}}.dump(2) << "\n";
  } else {
    out << human.str();
  }
  return 0;
}

int cmd_nk(const Options& o, std::ostream& out) {
  auto w = CantorParams::parse(o.omega);
  auto Ks = parse_list<double>(o.K, to_double);
  json rows = json::array();
  std::ostringstream human;
  human << "omega: " << w.describe() << "  horizon: " << o.horizon << "  (proxy length model)\n";
  human << std::left << std::setw(8) << "K" << std::setw(8) << "d(K)" << std::setw(16) << "band_lo"
        << std::setw(16) << "band_hi" << "N(K)\n";
  for (double K : Ks) {
    auto r = count_NK(w, K, o.horizon);
    json per = json::array();
    for (const auto& [d, n] : r.per_depth) per.push_back({{"d", d}, {"curves", n.get_str()}});
    rows.push_back({{"K", K},
                    {"d_K", r.depth.d},
                    {"L_dK", r.depth.L_d},
                    {"delta_omega", r.depth.delta_omega},
                    {"band_lo", r.band_lo},
                    {"band_hi", r.band_hi},
                    {"N_K", r.count.get_str()},
                    {"per_depth", per},
                    {"tail_bound", r.tail_bound},
                    {"tail_empty", true}});
    human << std::left << std::setw(8) << fmt(K, 6) << std::setw(8) << r.depth.d << std::setw(16)
          << fmt(r.band_lo) << std::setw(16) << fmt(r.band_hi) << r.count.get_str() << "\n";
  }
  if (o.json) {
    out << json{{"omega", w}, {"horizon", o.horizon}, {"rows", rows}}.dump(2) << "\n";
  } else {
    out << human.str() << "tail past the horizon certified empty\n";
  }
  return 0;
}

int cmd_twist(const Options& o, std::ostream& out) {
  auto w = CantorParams::parse(o.omega);
  auto ns = parse_list<std::uint64_t>(o.n_list, to_u64);
  json rows = json::array();
  std::ostringstream human;
  human << "n,q_n,K_Psi0,K_Psi1,K_Psi,mod_U0,mod_U1,mod_U2\n";
  for (auto n : ns) {
    auto r = twist_row(w, n, o.grid);
    rows.push_back({{"n", n}, {"q_n", r.q}, {"K_Psi0", r.K0}, {"K_Psi1", r.K1}, {"K_Psi", r.K},
                    {"mod_U0", r.mod_U0}, {"mod_U1", r.mod_U1}, {"mod_U2", r.mod_U2}});
    human << n << "," << fmt(r.q) << "," << fmt(r.K0, 8) << "," << fmt(r.K1, 8) << "," << fmt(r.K, 8) << ","
          << fmt(r.mod_U0) << "," << fmt(r.mod_U1) << "," << fmt(r.mod_U2) << "\n";
  }
  if (o.json) {
    out << json{{"omega", w}, {"grid", o.grid}, {"rows", rows}}.dump(2) << "\n";
  } else {
    out << human.str();
  }
  return 0;
}

int cmd_omega_ratio(const Options& o, std::ostream& out) {
  auto ks = parse_list<int>(o.k_pair, to_int);
  if (ks.size() != 2 || ks[0] < 1 || ks[1] <= ks[0]) throw Malformed("--k needs two levels k < k'");
  auto ns = parse_list<std::uint64_t>(o.n_list, to_u64);
  json rows = json::array();
  std::ostringstream human;
  human << "n,ratio,asymptotic\n";
  for (auto n : ns) {
    auto r = omega_ratio(ks[0], ks[1], n);
    rows.push_back({{"n", n}, {"ratio", r.ratio}, {"asymptotic", r.asymptotic}});
    human << n << "," << fmt(r.ratio) << "," << fmt(r.asymptotic) << "\n";
  }
  if (o.json) {
    out << json{{"k", ks[0]}, {"k_prime", ks[1]}, {"rows", rows}}.dump(2) << "\n";
  } else {
    out << human.str();
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thompson groups, Cantor sets and pants trees", "tcantor"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable JSON output");

  auto* word = app.add_subcommand("word", "Reduced tree pair, class and PL pieces of a word");
  word->add_option("word", o.word, "Word such as \"f0 f1^-1\"")->required();
  auto* eval = app.add_subcommand("eval", "Image of a dyadic point under a word");
  eval->add_option("word", o.word)->required();
  eval->add_option("x", o.point, "Point in [0,1) such as 3/4 or 3/2^2")->required();
  auto* cantor = app.add_subcommand("cantor", "Intervals, gaps and circles of E(omega)");
  cantor->add_option("--omega", o.omega);
  cantor->add_option("--depth", o.depth);
  auto* brd = app.add_subcommand("brd-check", "Bounded rate divergence up to a horizon");
  brd->add_option("--omega", o.omega);
  brd->add_option("--horizon", o.horizon);
  brd->add_option("--M", o.M, "Rational bound M");
  auto* th = app.add_subcommand("theta", "Tree pair of a combinatorial mapping class");
  th->add_option("class", o.klass, "Phi0..Phi3 or class JSON")->required();
  auto* re = app.add_subcommand("realize", "Combinatorial mapping class of a word");
  re->add_option("word", o.word)->required();
  auto* ker = app.add_subcommand("kernel-test", "Whether a class lies in the kernel of theta");
  ker->add_option("class", o.klass)->required();
  auto* len = app.add_subcommand("length-table", "Length bound and collar width per depth");
  len->add_option("--omega", o.omega);
  len->add_option("--depths", o.depths, "Comma-separated depths");
  auto* nk = app.add_subcommand("nk-count", "d(K) and N(K) under the proxy length model");
  nk->add_option("--omega", o.omega);
  nk->add_option("--K", o.K, "Comma-separated dilatations");
  nk->add_option("--horizon", o.horizon);
  auto* tw = app.add_subcommand("twist-table", "Dilatation estimates and annulus moduli");
  tw->add_option("--omega", o.omega);
  tw->add_option("--n", o.n_list, "Comma-separated indices");
  tw->add_option("--grid", o.grid);
  auto* ratio = app.add_subcommand("omega-ratio", "log(1-q^(k'))/log(1-q^(k)) table");
  ratio->add_option("--k", o.k_pair, "Two levels k,k'");
  ratio->add_option("--n", o.n_list);

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->add_flag("--json", o.json, "Machine-readable JSON output");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (word->parsed()) return cmd_word(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (cantor->parsed()) return cmd_cantor(o, out);
    if (brd->parsed()) return cmd_brd(o, out);
    if (th->parsed()) return cmd_theta(o, out);
    if (re->parsed()) return cmd_realize(o, out);
    if (ker->parsed()) return cmd_kernel(o, out);
    if (len->parsed()) return cmd_length(o, out);
    if (nk->parsed()) return cmd_nk(o, out);
    if (tw->parsed()) return cmd_twist(o, out);
    if (ratio->parsed()) return cmd_omega_ratio(o, out);
  } catch (const HorizonError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace thompson::cli
