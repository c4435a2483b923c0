#pragma once

#include "orbitcell/cellular/cellular_form.hpp"
#include "orbitcell/ring/verify.hpp"

#include <json.hpp>

#include <fstream>

namespace orbitcell::io {

using nlohmann::json;

inline json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

namespace detail {

inline long long as_int(const json &j, const std::string &what) {
  if (!j.is_number_integer())
    throw InvalidInput(what + " must be an integer");
  return j.get<long long>();
}

inline const json &field(const json &j, const char *name) {
  if (!j.is_object() || !j.contains(name))
    throw InvalidInput(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

} // namespace detail

/// `{"n": n, "edges": [[i, j], ...]}` with 1-based vertices, or `{"complete": n}`.
inline Graph graph_from_json(const json &j) {
  if (j.is_object() && j.contains("complete")) {
    auto n = detail::as_int(j.at("complete"), "complete");
    if (n < 1)
      throw InvalidInput("complete graph needs n >= 1");
    return Graph::complete(static_cast<int>(n));
  }
  auto n = detail::as_int(detail::field(j, "n"), "n");
  if (n < 1)
    throw InvalidInput("graph needs n >= 1");
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    if (!j.at("edges").is_array())
      throw InvalidInput("edges must be an array");
    for (const auto &e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw InvalidInput("an edge is a pair of vertices");
      auto a = detail::as_int(e[0], "vertex"), b = detail::as_int(e[1], "vertex");
      if (a < 1 || b < 1 || a > n || b > n)
        throw InvalidInput("edge endpoint out of range");
      edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
  }
  return Graph(static_cast<int>(n), edges);
}

inline json graph_to_json(const Graph &g) {
  json edges = json::array();
  for (auto [a, b] : g.edges)
    edges.push_back({a + 1, b + 1});
  return json{{"n", g.n}, {"edges", edges}};
}

/// `{"elements": [labels], "covers": [[lo, hi]], "rank": [ints]}`; cover
/// endpoints are labels or 0-based indices.
inline Poset poset_from_json(const json &j) {
  const auto &el = detail::field(j, "elements");
  if (!el.is_array())
    throw InvalidInput("elements must be an array");
  std::vector<std::string> labels;
  for (const auto &e : el) {
    if (e.is_string())
      labels.push_back(e.get<std::string>());
    else if (e.is_number_integer())
      labels.push_back(std::to_string(e.get<long long>()));
    else
      throw InvalidInput("element labels are strings");
  }
  {
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidInput("duplicate element label");
  }
  auto lookup = [&](const json &x) -> std::size_t {
    if (x.is_string()) {
      auto it = std::find(labels.begin(), labels.end(), x.get<std::string>());
      if (it == labels.end())
        throw InvalidInput("unknown element " + x.get<std::string>());
      return static_cast<std::size_t>(it - labels.begin());
    }
    auto i = detail::as_int(x, "cover endpoint");
    if (i < 0 || static_cast<std::size_t>(i) >= labels.size())
      throw InvalidInput("cover endpoint out of range");
    return static_cast<std::size_t>(i);
  };
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  if (j.contains("covers")) {
    if (!j.at("covers").is_array())
      throw InvalidInput("covers must be an array");
    for (const auto &c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2)
        throw InvalidInput("a cover is a pair [lo, hi]");
      rel.emplace_back(lookup(c[0]), lookup(c[1]));
    }
  }
  std::optional<std::vector<int>> rank;
  if (j.contains("rank")) {
    const auto &r = j.at("rank");
    if (!r.is_array() || r.size() != labels.size())
      throw InvalidInput("rank must list one integer per element");
    rank.emplace();
    for (const auto &x : r)
      rank->push_back(static_cast<int>(detail::as_int(x, "rank")));
  }
  return Poset::from_covers(labels, rel, rank);
}

inline json poset_to_json(const Poset &p) {
  json covers = json::array();
  for (auto [lo, hi] : p.cover_pairs())
    covers.push_back({p.label(lo), p.label(hi)});
  json out{{"elements", p.labels()}, {"covers", covers}};
  if (p.graded())
    out["rank"] = *p.ranks();
  return out;
}

inline IntMatrix matrix_from_json(const json &j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw InvalidInput("matrix needs " + std::to_string(rows) + " rows");
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw InvalidInput("matrix row needs " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto &x = j[r][c];
      if (x.is_number_integer())
        m(r, c) = Integer(std::to_string(x.get<long long>()));
      else if (x.is_string())
        m(r, c) = Integer(x.get<std::string>());
      else
        throw InvalidInput("matrix entries are integers");
    }
  }
  return m;
}

inline json matrix_to_json(const IntMatrix &m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).fits_slong_p())
        row.push_back(m(r, c).get_si());
      else
        row.push_back(m(r, c).get_str());
    }
    rows.push_back(row);
  }
  return rows;
}

/// `{"ranks": [ints], "extensions": {"lo->hi": [[row-major]]}}`; a map on
/// lo < hi has rank(hi) rows. Missing covers carry zero maps.
inline Copresheaf copresheaf_from_json(const json &j, std::shared_ptr<const Poset> p) {
  const auto &r = detail::field(j, "ranks");
  if (!r.is_array() || r.size() != p->size())
    throw InvalidInput("ranks must list one integer per element");
  std::vector<std::size_t> ranks;
  for (const auto &x : r) {
    auto v = detail::as_int(x, "rank");
    if (v < 0)
      throw InvalidInput("ranks are nonnegative");
    ranks.push_back(static_cast<std::size_t>(v));
  }
  std::map<CoverKey, IntMatrix> maps;
  if (j.contains("extensions")) {
    if (!j.at("extensions").is_object())
      throw InvalidInput("extensions must be an object");
    for (const auto &[key, mat] : j.at("extensions").items()) {
      auto arrow = key.find("->");
      if (arrow == std::string::npos)
        throw InvalidInput("extension keys look like \"lo->hi\"");
      auto lo = p->find(key.substr(0, arrow)), hi = p->find(key.substr(arrow + 2));
      if (!lo || !hi)
        throw InvalidInput("unknown element in extension " + key);
      maps.emplace(CoverKey{*lo, *hi}, matrix_from_json(mat, ranks[*hi], ranks[*lo]));
    }
  }
  return Copresheaf(std::move(p), std::move(ranks), std::move(maps));
}

inline json form_to_json(const CellularForm &f) {
  const Poset &p = f.poset();
  json ranks = json::object(), d = json::object();
  for (std::size_t x = 0; x < p.size(); ++x)
    ranks[p.label(x)] = f.piece_rank[x];
  for (const auto &[key, m] : f.differential)
    d[p.label(key.first) + "->" + p.label(key.second)] = matrix_to_json(m);
  return json{{"elements", p.labels()}, {"pieces", ranks}, {"differentials", d}};
}

/// `{"partition": [[blocks]], "entries": {"b,t": [values] | "?"}}` with
/// 1-based vertices; b indexes "partition" and t the column, both 0-based.
inline json partial_matrix_to_json(const OrbitLattice &l, std::size_t i) {
  const auto &e = l.element(i);
  const auto &p = l.bond().partitions[e.partition];
  json blocks = json::array(), entries = json::object();
  for (const auto &b : p.blocks) {
    json blk = json::array();
    for (int v : b)
      blk.push_back(v + 1);
    blocks.push_back(blk);
  }
  const auto &rows = l.rows(e.partition);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int t = 0; t < l.m(); ++t) {
      auto key = std::to_string(rows[r]) + "," + std::to_string(t);
      int c = e.entries[r * l.m() + t];
      if (c < 0)
        entries[key] = "?";
      else
        entries[key] = l.class_values(p.blocks[rows[r]].size(), c);
    }
  return json{{"partition", blocks}, {"entries", entries}};
}

inline json combination_to_json(const Combination &c) {
  json out = json::array();
  for (const auto &[i, x] : c)
    out.push_back({x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()), i});
  return out;
}

inline const char *mode_name(Mode m) { return m == Mode::Complex ? "complex" : "real"; }

inline json ring_to_json(const RingPresentation &r) {
  const auto &l = r.lattice();
  json basis = json::array();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto &b = r.basis()[i];
    basis.push_back(json{{"degree", b.degree},
                         {"grading", partial_matrix_to_json(l, b.grading)},
                         {"labels", r.labels(i)}});
  }
  json products = json::array();
  if (r.has_products())
    for (const auto &[ij, c] : r.products())
      products.push_back({ij.first, ij.second, combination_to_json(c)});
  return json{{"graph", graph_to_json(l.graph())},
              {"k", l.k()},
              {"m", l.m()},
              {"mode", mode_name(r.mode())},
              {"coefficients", r.mode() == Mode::Complex ? "Z" : "Z/2"},
              {"basis", basis},
              {"products", products},
              {"poincare", r.poincare()}};
}

inline json report_to_json(const VerifyReport &rep) {
  json checks = json::array();
  for (const auto &c : rep.checks)
    checks.push_back(json{{"name", c.name},
                          {"status", c.skipped ? "skipped" : c.ok ? "pass" : "fail"},
                          {"detail", c.detail}});
  return json{{"ok", rep.ok()}, {"checks", checks}};
}

} // namespace orbitcell::io
