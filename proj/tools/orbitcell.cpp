#include "orbitcell/io/json_io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace orbitcell;
using io::json;

namespace {

enum Exit { Ok = 0, Failed = 1, Malformed = 2, Unsupported = 3 };

struct Options {
  std::string graph_file;
  int complete = 0;
  int k = 2;
  int m = 2;
  std::string mode = "complex";
  std::string out;
  std::size_t oracle_limit = 100;
  std::string poset_file;
  std::string copresheaf_file;
};

class Table {
public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream &os) const {
    std::vector<std::size_t> w;
    for (const auto &r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (w.size() <= i)
          w.push_back(0);
        w[i] = std::max(w[i], r[i].size());
      }
    for (const auto &r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size())
          line += std::string(w[i] - r[i].size() + 2, ' ');
      }
      os << line << '\n';
    }
  }

private:
  std::vector<std::vector<std::string>> rows_;
};

std::string poly_string(const std::vector<std::size_t> &p) {
  std::string s;
  for (std::size_t d = 0; d < p.size(); ++d) {
    if (!p[d])
      continue;
    if (!s.empty())
      s += " + ";
    if (d == 0 || p[d] != 1)
      s += std::to_string(p[d]);
    if (d > 0)
      s += d == 1 ? "t" : "t^" + std::to_string(d);
  }
  return s.empty() ? "0" : s;
}

std::string join(const std::vector<std::string> &v, const char *sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + v[i];
  return s;
}

std::string combination_text(const Combination &c) {
  if (c.empty())
    return "0";
  std::string s;
  for (const auto &[i, x] : c) {
    if (!s.empty())
      s += x < 0 ? " - " : " + ";
    else if (x < 0)
      s += "-";
    Integer a = abs(x);
    if (a != 1)
      s += a.get_str() + "*";
    s += "e" + std::to_string(i);
  }
  return s;
}

void emit(const Options &o, const json &j) {
  if (o.out.empty())
    return;
  std::ofstream f(o.out);
  if (!f)
    throw InvalidInput("cannot write " + o.out);
  f << j.dump(2) << '\n';
}

Mode parse_mode(const std::string &s) {
  if (s == "complex")
    return Mode::Complex;
  if (s == "real")
    return Mode::Real;
  throw InvalidInput("mode is complex or real");
}

void check_parameters(const Options &o, bool ring) {
  if (o.k < 1)
    throw InvalidInput("--k must be at least 1");
  if (o.m < 1)
    throw InvalidInput("--m must be at least 1");
  Mode mode = parse_mode(o.mode);
  if (mode == Mode::Real && o.k != 2)
    throw UnsupportedParameters("the real case needs k = 2");
  if (mode == Mode::Real && o.m < 2)
    throw UnsupportedParameters("the real case needs m > 1");
  if (ring && o.m < 2)
    throw UnsupportedParameters("ring structure needs m > 1");
}

Graph load_graph(const Options &o) {
  if (!o.graph_file.empty() && o.complete)
    throw InvalidInput("give either --graph or --complete");
  if (!o.graph_file.empty())
    return io::graph_from_json(io::read_json_file(o.graph_file));
  if (o.complete < 1)
    throw InvalidInput("a graph is required: --graph FILE or --complete N");
  return Graph::complete(o.complete);
}

int cmd_betti(const Options &o) {
  check_parameters(o, false);
  Mode mode = parse_mode(o.mode);
  if (o.m == 1)
    std::cerr << "warning: m = 1 gives additive data only\n";
  RingPresentation r(load_graph(o), o.k, o.m, mode, false);
  const auto &l = r.lattice();
  auto p = r.poincare();
  json pieces = json::array();
  std::vector<std::tuple<int, std::string, std::size_t>> rows;
  for (std::size_t t = 0; t < l.size(); ++t)
    if (auto n = r.piece_rank(t))
      rows.emplace_back(r.degree_of(t), l.label(t), n);
  std::sort(rows.begin(), rows.end());
  for (const auto &[d, label, n] : rows)
    pieces.push_back(json{{"grading", label}, {"degree", d}, {"rank", n}});
  json out{{"graph", io::graph_to_json(l.graph())},
           {"k", o.k},
           {"m", o.m},
           {"mode", io::mode_name(mode)},
           {"betti", p},
           {"poincare", p},
           {"pieces", pieces}};
  emit(o, out);
  if (o.out.empty()) {
    Table t({"degree", "rank"});
    for (std::size_t d = 0; d < p.size(); ++d)
      t.add({std::to_string(d), std::to_string(p[d])});
    t.print(std::cout);
    std::cout << "poincare: " << poly_string(p) << '\n';
  }
  return Ok;
}

int cmd_ring(const Options &o) {
  check_parameters(o, true);
  Mode mode = parse_mode(o.mode);
  RingPresentation r(load_graph(o), o.k, o.m, mode, true);
  emit(o, io::ring_to_json(r));
  if (o.out.empty()) {
    const auto &l = r.lattice();
    Table b({"index", "degree", "grading", "labels"});
    for (std::size_t i = 0; i < r.size(); ++i)
      b.add({"e" + std::to_string(i), std::to_string(r.basis()[i].degree),
             l.label(r.basis()[i].grading), join(r.labels(i), " ")});
    b.print(std::cout);
    std::cout << '\n';
    Table p({"left", "right", "product"});
    for (const auto &[ij, c] : r.products())
      if (ij.first && ij.second)
        p.add({"e" + std::to_string(ij.first), "e" + std::to_string(ij.second),
               combination_text(c)});
    p.print(std::cout);
    std::cout << "\ncoefficients: " << (mode == Mode::Complex ? "Z" : "Z/2") << '\n';
    std::cout << "poincare: " << poly_string(r.poincare()) << '\n';
  }
  return Ok;
}

int cmd_verify(const Options &o) {
  check_parameters(o, false);
  Mode mode = parse_mode(o.mode);
  VerifyOptions opt;
  opt.oracle_limit = o.oracle_limit;
  if (o.m == 1) {
    std::cerr << "warning: m = 1 gives additive data only\n";
    opt.products = false;
  }
  auto rep = verify_full(load_graph(o), o.k, o.m, mode, opt);
  emit(o, io::report_to_json(rep));
  if (o.out.empty()) {
    Table t({"check", "status", "detail"});
    for (const auto &c : rep.checks)
      t.add({c.name, c.skipped ? "skipped" : c.ok ? "pass" : "fail", c.detail});
    t.print(std::cout);
  }
  return rep.ok() ? Ok : Failed;
}

int cmd_cellular(const Options &o) {
  if (o.poset_file.empty())
    throw InvalidInput("--poset FILE is required");
  auto p = std::make_shared<const Poset>(io::poset_from_json(io::read_json_file(o.poset_file)));
  std::optional<Copresheaf> g;
  if (!o.copresheaf_file.empty())
    g.emplace(io::copresheaf_from_json(io::read_json_file(o.copresheaf_file), p));
  else if (auto bottom = p->minimum())
    g.emplace(delta_at<Variance::Co>(p, *bottom));
  else
    throw InvalidInput("--copresheaf FILE is required when the poset has no minimum");
  if (!p->graded())
    throw NotGraded("the poset has no rank function");
  auto res = construct_cellular_form(*g);
  if (auto *nc = std::get_if<NotCellular>(&res)) {
    emit(o, json{{"cellular", false},
                 {"element", nc->label},
                 {"step", to_string(nc->step)},
                 {"detail", nc->detail}});
    std::cout << "not cellular at " << nc->label << ": " << to_string(nc->step);
    if (!nc->detail.empty())
      std::cout << " (" << nc->detail << ")";
    std::cout << '\n';
    return Failed;
  }
  const auto &f = std::get<CellularForm>(res);
  if (auto check = verify_cellular_form(f, *g); !check.ok) {
    std::cout << "form check failed: " << check.what << '\n';
    return Failed;
  }
  json j = io::form_to_json(f);
  j["cellular"] = true;
  emit(o, j);
  if (o.out.empty()) {
    Table t({"element", "rank", "piece"});
    for (auto x : detail::elements_by_rank(*p))
      t.add({p->label(x), std::to_string(p->rank(x)), std::to_string(f.piece_rank[x])});
    t.print(std::cout);
    std::vector<std::size_t> by_rank(p->max_rank() + 1, 0);
    for (std::size_t x = 0; x < p->size(); ++x)
      by_rank[p->rank(x)] += f.piece_rank[x];
    std::vector<std::string> s;
    for (auto n : by_rank)
      s.push_back(std::to_string(n));
    std::cout << "ranks: (" << join(s, ",") << ")\n";
  }
  return Ok;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Cellular forms on graded posets and cohomology of orbit configuration spaces"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App *c, bool graph) {
    if (graph) {
      c->add_option("--graph", o.graph_file, "graph JSON file");
      c->add_option("--complete", o.complete, "use the complete graph on N vertices");
      c->add_option("--k", o.k, "order of the cyclic group")->capture_default_str();
      c->add_option("--m", o.m, "complex dimension")->capture_default_str();
      c->add_option("--mode", o.mode, "complex or real")->capture_default_str();
    }
    c->add_option("--out", o.out, "write JSON here instead of printing a table");
    c->add_option("--oracle-limit", o.oracle_limit, "largest poset for brute-force Tor")
        ->capture_default_str();
  };
  auto *betti = app.add_subcommand("betti", "Betti numbers and Poincare polynomial");
  auto *ring = app.add_subcommand("ring", "cohomology ring presentation");
  auto *verify = app.add_subcommand("verify", "compare against the brute-force oracle");
  auto *cellular = app.add_subcommand("cellular", "cellular form of a poset and copresheaf");
  common(betti, true);
  common(ring, true);
  common(verify, true);
  common(cellular, false);
  cellular->add_option("--poset", o.poset_file, "poset JSON file");
  cellular->add_option("--copresheaf", o.copresheaf_file, "copresheaf JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return Malformed;
  }
  try {
    if (*betti)
      return cmd_betti(o);
    if (*ring)
      return cmd_ring(o);
    if (*verify)
      return cmd_verify(o);
    return cmd_cellular(o);
  } catch (const UnsupportedParameters &e) {
    std::cerr << e.what() << '\n';
    return Unsupported;
  } catch (const OracleTooLarge &e) {
    std::cerr << e.what() << '\n';
    return Unsupported;
  } catch (const Error &e) {
    std::cerr << e.what() << '\n';
    return Malformed;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return Malformed;
  }
}
