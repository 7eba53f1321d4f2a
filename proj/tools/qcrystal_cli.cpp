// Command-line front end: crystal exploration, filtration reports, cell
// censuses and the rank-1 structure-constant tables, with deterministic
// JSON/DOT/CSV artifacts that embed their run configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qcrystal/cartan.hpp"
#include "qcrystal/cells.hpp"
#include "qcrystal/element.hpp"
#include "qcrystal/errors.hpp"
#include "qcrystal/filtration.hpp"
#include "qcrystal/graph.hpp"
#include "qcrystal/sl2.hpp"

namespace {

using nlohmann::json;
using namespace qcrystal;

struct RunConfig {
  std::string type = "A1";
  std::string cartan_json;  // inline matrix spec, overrides the preset
  std::string lambda = "0", mu = "0", xi = "0", eta = "0", eta2 = "0", cutoff = "0";
  std::string b_str, c_str, a_str;
  long long depth = 6;
  long long max_length = 8;
  bool max_length_set = false;
  long long vertex_cap = 200000;
  int theta_steps = 3;
  int max_power = 2;
  std::string out;            // output path; empty means stdout
  std::string format = "json";  // json | dot | csv
  std::string index_order;      // comma-separated permutation of 0..n-1
  std::string convention = "kashiwara";  // kashiwara | reversed

  json to_json() const {
    return json{{"type", type},         {"cartan", cartan_json},
                {"lambda", lambda},     {"mu", mu},
                {"xi", xi},             {"eta", eta},
                {"eta2", eta2},         {"cutoff", cutoff},
                {"depth", depth},       {"max_length", max_length},
                {"vertex_cap", vertex_cap}, {"theta_steps", theta_steps},
                {"format", format},     {"index_order", index_order},
                {"convention", convention}};
  }
};

RootDatum make_datum(const RunConfig& cfg) {
  if (!cfg.cartan_json.empty()) {
    json j = json::parse(cfg.cartan_json);
    CartanSpec s;
    s.a = j.at("cartan").get<std::vector<std::vector<long long>>>();
    s.n = (int)s.a.size();
    s.corank = j.value("corank", 0);
    if (j.contains("root_d"))
      s.root_d = j.at("root_d").get<std::vector<std::vector<long long>>>();
    return validate(s);
  }
  return preset(cfg.type);
}

Weight parse_weight(const RootDatum& rd, const std::string& s) {
  if (s == "0" || s == "zero") return rd.zero_weight();
  if (s == "theta") {
    if (rd.type != AlgType::Finite) throw ParseFailure("theta needs finite type");
    // highest root: maximal root height
    size_t best = 0;
    long long besth = -1;
    for (size_t r = 0; r < rd.positive_roots.size(); ++r) {
      long long h = 0;
      for (auto c : rd.positive_root_coords[r]) h += c;
      if (h > besth) {
        besth = h;
        best = r;
      }
    }
    return rd.positive_roots[best];
  }
  if (s.rfind("Lambda", 0) == 0 || s.rfind("L", 0) == 0) {
    size_t at = s.rfind("Lambda", 0) == 0 ? 6 : 1;
    bool digits = at < s.size();
    for (size_t i = at; i < s.size(); ++i)
      if (!std::isdigit((unsigned char)s[i])) digits = false;
    if (digits) {
      int i = std::stoi(s.substr(at));
      if (i < 0 || i >= rd.rank()) throw ParseFailure("fundamental weight index out of range");
      return rd.fundamental(i);
    }
  }
  // h1,h2,...[;d1,d2,...]
  Weight w = rd.zero_weight();
  std::string hs = s, ds;
  if (auto pos = s.find(';'); pos != std::string::npos) {
    hs = s.substr(0, pos);
    ds = s.substr(pos + 1);
  }
  auto parse_list = [&s](const std::string& t) {
    std::vector<long long> out;
    std::string cur;
    for (char ch : t + ",") {
      if (ch == ',') {
        if (!cur.empty()) {
          size_t used = 0;
          long long v = 0;
          try {
            v = std::stoll(cur, &used);
          } catch (const std::exception&) {
            throw ParseFailure("bad weight coordinate in '" + s + "'");
          }
          if (used != cur.size()) throw ParseFailure("bad weight coordinate in '" + s + "'");
          out.push_back(v);
        }
        cur.clear();
      } else
        cur += ch;
    }
    return out;
  };
  auto hv = parse_list(hs);
  if ((int)hv.size() == 1 && rd.rank() > 1) {
    // scalar shorthand only valid in rank 1
    throw ParseFailure("weight '" + s + "' has " + std::to_string(hv.size()) +
                       " h-coordinates, need " + std::to_string(rd.rank()));
  }
  if ((int)hv.size() != rd.rank()) throw ParseFailure("bad h-coordinate count in '" + s + "'");
  w.h = hv;
  if (!ds.empty()) {
    auto dv = parse_list(ds);
    if ((int)dv.size() != rd.corank()) throw ParseFailure("bad d-coordinate count in '" + s + "'");
    w.d = dv;
  }
  return w;
}

std::vector<int> parse_order(const RootDatum& rd, const std::string& s) {
  if (s.empty()) return natural_order(rd.rank());
  std::vector<int> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(std::stoi(cur));
      cur.clear();
    } else
      cur += ch;
  }
  std::vector<bool> seen(rd.rank(), false);
  if ((int)out.size() != rd.rank()) throw ParseFailure("index order size mismatch");
  for (int i : out) {
    if (i < 0 || i >= rd.rank() || seen[i]) throw ParseFailure("bad index order");
    seen[i] = true;
  }
  return out;
}

void emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << body;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error("cannot open output file " + cfg.out);
  f << body;
}

std::string with_comment_header(const RunConfig& cfg, const std::string& prefix,
                                const std::string& body) {
  return prefix + " config: " + cfg.to_json().dump() + "\n" + body;
}

std::string json_artifact(const RunConfig& cfg, json payload) {
  payload["config"] = cfg.to_json();
  return payload.dump(2) + "\n";
}

void apply_convention(const RunConfig& cfg) {
  if (cfg.convention == "kashiwara") {
    g_tensor_rule = TensorRule::Kashiwara;
    sl2::g_coproduct = sl2::Coproduct::Lower;
  } else if (cfg.convention == "reversed") {
    g_tensor_rule = TensorRule::Reversed;
    sl2::g_coproduct = sl2::Coproduct::Reversed;
  } else {
    throw ParseFailure("unknown convention " + cfg.convention);
  }
}

int cmd_crystal(const std::string& sub, const RunConfig& cfg) {
  auto rd = make_datum(cfg);
  GenOptions opt;
  opt.vertex_cap = (size_t)cfg.vertex_cap;
  if (sub == "gen") {
    Weight lambda = parse_weight(rd, cfg.lambda);
    auto g = generate(rd, {CrystalElement::highest(rd, lambda)}, (int)cfg.depth, opt);
    if (cfg.format == "dot")
      emit(cfg, with_comment_header(cfg, "//", graph_to_dot(g)));
    else
      emit(cfg, json_artifact(cfg, graph_to_json(g)));
    return 0;
  }
  if (sub == "tensor") {
    Weight lambda = parse_weight(rd, cfg.lambda), mu = parse_weight(rd, cfg.mu);
    auto dec = decompose(rd, lambda, mu, (int)cfg.depth, opt);
    if (cfg.format == "dot")
      emit(cfg, with_comment_header(cfg, "//", graph_to_dot(dec.graph)));
    else
      emit(cfg, json_artifact(cfg, decomposition_to_json(dec)));
    return 0;
  }
  if (sub == "character") {
    Weight lambda = parse_weight(rd, cfg.lambda);
    auto g = generate(rd, {CrystalElement::highest(rd, lambda)}, (int)cfg.depth, opt);
    auto ch = character(g);
    if (cfg.format == "csv") {
      std::string body = "weight,count,complete\n";
      for (auto& [w, c] : ch.counts) body += "\"" + w.str() + "\"," + std::to_string(c) + ",1\n";
      for (auto& [w, c] : ch.incomplete)
        body += "\"" + w.str() + "\"," + std::to_string(c) + ",0\n";
      emit(cfg, with_comment_header(cfg, "#", body));
    } else {
      json counts = json::array(), inc = json::array();
      for (auto& [w, c] : ch.counts) counts.push_back({{"weight", w.to_json()}, {"count", c}});
      for (auto& [w, c] : ch.incomplete) inc.push_back({{"weight", w.to_json()}, {"count", c}});
      emit(cfg, json_artifact(cfg, json{{"counts", counts}, {"incomplete", inc}}));
    }
    return 0;
  }
  throw ParseFailure("unknown crystal subcommand " + sub);
}

int cmd_filtration(const std::string& sub, const RunConfig& cfg) {
  auto rd = make_datum(cfg);
  auto order = parse_order(rd, cfg.index_order);
  Weight lambda = parse_weight(rd, cfg.lambda), mu = parse_weight(rd, cfg.mu);
  if (sub == "report" || sub == "mirror") {
    FiltrationReport rep =
        sub == "report"
            ? filtration_report(rd, lambda, mu, cfg.max_length, order, (size_t)cfg.vertex_cap)
            : mirror_report(rd, lambda, mu, cfg.max_length, order, (size_t)cfg.vertex_cap);
    if (cfg.format == "csv")
      emit(cfg, with_comment_header(cfg, "#", filt_report_to_csv(rep)));
    else
      emit(cfg, json_artifact(cfg, filt_report_to_json(rep)));
    return 0;
  }
  if (sub == "affine") {
    auto v = affine_classify(rd, lambda, mu, cfg.max_length, order, (size_t)cfg.vertex_cap);
    emit(cfg, json_artifact(cfg, affine_verdict_to_json(v)));
    return 0;
  }
  throw ParseFailure("unknown filtration subcommand " + sub);
}

int cmd_cells(const std::string& sub, const RunConfig& cfg) {
  auto rd = make_datum(cfg);
  if (sub == "multiplicity") {
    Weight xi = parse_weight(rd, cfg.xi), eta = parse_weight(rd, cfg.eta);
    // without an explicit budget the witness raising distance is used
    auto cell = multiplicity(rd, xi, eta, cfg.theta_steps,
                             cfg.max_length_set ? cfg.max_length : -1,
                             (size_t)cfg.vertex_cap);
    if (cfg.format == "csv")
      emit(cfg, with_comment_header(cfg, "#",
                                    multiplicity_csv_header() + multiplicity_csv_row(cell)));
    else
      emit(cfg, json_artifact(cfg, cell.to_json()));
    return 0;
  }
  if (sub == "cell-dims") {
    Weight xi = parse_weight(rd, cfg.xi);
    Weight e1 = parse_weight(rd, cfg.eta), e2 = parse_weight(rd, cfg.eta2);
    auto cell = cell_graded_dimension(rd, xi, e1, e2, cfg.theta_steps, (size_t)cfg.vertex_cap);
    if (cfg.format == "csv")
      emit(cfg, with_comment_header(cfg, "#",
                                    multiplicity_csv_header() + multiplicity_csv_row(cell)));
    else
      emit(cfg, json_artifact(cfg, cell.to_json()));
    return 0;
  }
  if (sub == "peter-weyl") {
    Weight e1 = parse_weight(rd, cfg.eta), e2 = parse_weight(rd, cfg.eta2);
    Weight cut = parse_weight(rd, cfg.cutoff);
    auto rep = peter_weyl_count(rd, e1, e2, cut, cfg.theta_steps, (size_t)cfg.vertex_cap);
    emit(cfg, json_artifact(cfg, rep.to_json()));
    return 0;
  }
  throw ParseFailure("unknown cells subcommand " + sub);
}

int cmd_sl2(const std::string& sub, const RunConfig& cfg) {
  using namespace qcrystal::sl2;
  if (sub == "structconst") {
    SCEntry e = structure_constants(Monomial::parse(cfg.b_str), Monomial::parse(cfg.c_str));
    emit(cfg, json_artifact(cfg, e.to_json()));
    return 0;
  }
  if (sub == "dualprod") {
    // the same table, presented as b* . c* expanded in the dual basis
    SCEntry e = structure_constants(Monomial::parse(cfg.b_str), Monomial::parse(cfg.c_str));
    json terms = json::array();
    for (auto& [a, poly] : e.coeffs)
      terms.push_back({{"a", a.str()}, {"poly", poly.str()}});
    emit(cfg, json_artifact(cfg, json{{"b", e.b.str()},
                                      {"c", e.c.str()},
                                      {"product", terms},
                                      {"certificate",
                                       {{"lambda", e.lambda}, {"mu", e.mu},
                                        {"margin", e.margin}}}}));
    return 0;
  }
  if (sub == "verify") {
    const int P = cfg.max_power;
    long long checked = 0;
    for (int a = 0; a <= P; ++a)
      for (int b = 0; b <= P; ++b)
        for (long long n = -2 * P; n <= 2 * P; ++n) {
          Family f = n <= (long long)b - a ? Family::A : Family::B;
          Monomial m(f, a, b, n);
          for (int l1 = 0; l1 <= 1; ++l1)
            for (int m1 = 0; m1 <= 1; ++m1)
              for (int l2 = 0; l2 <= 1; ++l2)
                for (int m2 = 0; m2 <= 1; ++m2) {
                  std::string diff;
                  if (!verify_coproduct_action(m, l1, m1, l2, m2, &diff)) {
                    emit(cfg, json_artifact(cfg, json{{"ok", false}, {"diff", diff}}));
                    return 1;
                  }
                  ++checked;
                }
        }
    emit(cfg, json_artifact(cfg, json{{"ok", true}, {"checked", checked}}));
    return 0;
  }
  throw ParseFailure("unknown sl2 subcommand " + sub);
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--type", cfg.type, "root datum preset: A1, A2, A1~");
  app->add_option("--cartan", cfg.cartan_json,
                  "inline root datum as JSON {cartan, corank, root_d}");
  app->add_option("--lambda", cfg.lambda, "dominant weight");
  app->add_option("--mu", cfg.mu, "dominant weight");
  app->add_option("--xi", cfg.xi, "cell label (dominant weight)");
  app->add_option("--eta", cfg.eta, "weight");
  app->add_option("--eta2", cfg.eta2, "second weight");
  app->add_option("--cutoff", cfg.cutoff, "dominant cutoff weight");
  app->add_option("--b", cfg.b_str, "canonical index, e.g. E(1)F(2)1(-1)");
  app->add_option("--c", cfg.c_str, "canonical index");
  app->add_option("--depth", cfg.depth, "exploration depth")->check(CLI::PositiveNumber);
  app->add_option("--max-length", cfg.max_length, "raising-distance budget")
      ->check(CLI::PositiveNumber)
      ->each([&cfg](const std::string&) { cfg.max_length_set = true; });
  app->add_option("--vertex-cap", cfg.vertex_cap, "vertex budget")->check(CLI::PositiveNumber);
  app->add_option("--theta-steps", cfg.theta_steps, "stabilizer chain length")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-power", cfg.max_power, "divided power bound for scans")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", cfg.out, "output file ('-' = stdout)");
  app->add_option("--format", cfg.format, "json | dot | csv")
      ->check(CLI::IsMember({"json", "dot", "csv"}));
  app->add_option("--index-order", cfg.index_order, "total order on indices, e.g. 1,0");
  app->add_option("--convention", cfg.convention, "kashiwara | reversed")
      ->check(CLI::IsMember({"kashiwara", "reversed"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact crystal/canonical basis engine"};
  app.require_subcommand(1);
  // config files use sections named after the subcommand path,
  // e.g. [filtration.report]; unknown keys are rejected
  app.set_config("--config");
  app.allow_config_extras(false);

  RunConfig cfg;
  std::vector<std::pair<std::string, std::string>> dispatch;  // (group, sub)

  for (auto group : {"crystal", "filtration", "cells", "sl2"}) {
    auto* g = app.add_subcommand(group);
    g->require_subcommand(1);
    std::vector<std::string> subs;
    if (std::string(group) == "crystal") subs = {"gen", "tensor", "character"};
    if (std::string(group) == "filtration") subs = {"report", "affine", "mirror"};
    if (std::string(group) == "cells") subs = {"multiplicity", "cell-dims", "peter-weyl"};
    if (std::string(group) == "sl2") subs = {"structconst", "dualprod", "verify"};
    for (auto& s : subs) {
      auto* sc = g->add_subcommand(s);
      add_common(sc, cfg);
      sc->callback([group = std::string(group), s, &dispatch] { dispatch.push_back({group, s}); });
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    apply_convention(cfg);
    auto [group, sub] = dispatch.at(0);
    if (group == "crystal") return cmd_crystal(sub, cfg);
    if (group == "filtration") return cmd_filtration(sub, cfg);
    if (group == "cells") return cmd_cells(sub, cfg);
    if (group == "sl2") return cmd_sl2(sub, cfg);
    return 3;
  } catch (const ParseFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.partial.is_null() && !cfg.out.empty())
      emit(cfg, json_artifact(cfg, json{{"error", e.what()}, {"partial", e.partial}}));
    return 2;
  } catch (const NotStabilized& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.partial.is_null() && !cfg.out.empty())
      emit(cfg, json_artifact(cfg, json{{"error", e.what()}, {"partial", e.partial}}));
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
