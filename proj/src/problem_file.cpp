// Copyright 2026 The anfcq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "anfcq/problem_file.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "anfcq/transforms.hpp"

namespace anfcq {

using nlohmann::json;
using Path = std::vector<std::string>;

namespace {

std::string pointer_string(const Path& path) {
  std::string out;
  for (const auto& tok : path) {
    out += '/';
    for (char c : tok) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
  }
  return out.empty() ? "/" : out;
}

// Finds the byte offset of the value at `path` in syntactically valid JSON.
class Locator {
 public:
  explicit Locator(const std::string& s) : s_(s) {}

  std::size_t find(const Path& path) {
    i_ = 0;
    return descend(path, 0);
  }

 private:
  void ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\n' || s_[i_] == '\r' || s_[i_] == '\t')) ++i_;
  }

  std::string read_string() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\') ++i_;
      if (i_ < s_.size()) out += s_[i_++];
    }
    ++i_;
    return out;
  }

  void skip_value() {
    ws();
    if (i_ >= s_.size()) return;
    if (s_[i_] == '"') {
      read_string();
      return;
    }
    if (s_[i_] == '{' || s_[i_] == '[') {
      int depth = 0;
      while (i_ < s_.size()) {
        const char c = s_[i_];
        if (c == '"') {
          read_string();
          continue;
        }
        if (c == '{' || c == '[') ++depth;
        if (c == '}' || c == ']') --depth;
        ++i_;
        if (depth == 0) return;
      }
      return;
    }
    while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']' && s_[i_] != ' ' && s_[i_] != '\n')
      ++i_;
  }

  std::size_t descend(const Path& path, std::size_t depth) {
    ws();
    if (depth == path.size() || i_ >= s_.size()) return i_;
    const std::size_t here = i_;
    if (s_[i_] == '{') {
      ++i_;
      for (;;) {
        ws();
        if (i_ >= s_.size() || s_[i_] == '}') return here;
        const std::string key = read_string();
        ws();
        ++i_;  // ':'
        if (key == path[depth]) return descend(path, depth + 1);
        skip_value();
        ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
      }
    }
    if (s_[i_] == '[') {
      std::size_t want = 0;
      try {
        want = std::stoul(path[depth]);
      } catch (const std::exception&) {
        return here;
      }
      ++i_;
      for (std::size_t k = 0;; ++k) {
        ws();
        if (i_ >= s_.size() || s_[i_] == ']') return here;
        if (k == want) return descend(path, depth + 1);
        skip_value();
        ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
      }
    }
    return here;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Verdict verdict_from_string(const std::string& s, bool& ok) {
  ok = true;
  if (s == "holds") return Verdict::Holds;
  if (s == "fails") return Verdict::Fails;
  if (s == "unknown") return Verdict::Unknown;
  ok = false;
  return Verdict::Unknown;
}

class Parser {
 public:
  Parser(const std::string& text, const std::string& origin) : text_(text), origin_(origin) {}

  [[noreturn]] void error(const Path& path, const std::string& msg) const {
    Locator loc(text_);
    const auto [line, col] = line_col(text_, loc.find(path));
    throw ProblemParseError(origin_, line, col, pointer_string(path), msg);
  }

  static Path sub(Path p, const std::string& k) {
    p.push_back(k);
    return p;
  }
  static Path sub(Path p, std::size_t k) {
    p.push_back(std::to_string(k));
    return p;
  }

  void keys(const json& obj, const Path& path, std::initializer_list<const char*> required,
            std::initializer_list<const char*> optional) const {
    if (!obj.is_object()) error(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const bool known = std::any_of(required.begin(), required.end(), [&](const char* k) { return it.key() == k; }) ||
                         std::any_of(optional.begin(), optional.end(), [&](const char* k) { return it.key() == k; });
      if (!known) error(sub(path, it.key()), "unknown field '" + it.key() + "'");
    }
    for (const char* k : required)
      if (!obj.contains(k)) error(path, std::string("missing required field '") + k + "'");
  }

  std::size_t count(const json& v, const Path& path) const {
    if (!v.is_number_unsigned()) error(path, "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  std::string str(const json& v, const Path& path) const {
    if (!v.is_string()) error(path, "expected a string");
    return v.get<std::string>();
  }

  Rational rational(const json& v, const Path& path) const {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (!v.is_string()) error(path, "expected a rational as a string such as \"-3/4\" or an integer");
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
      error(path, e.what());
    }
  }

  const json& array(const json& v, const Path& path) const {
    if (!v.is_array()) error(path, "expected an array");
    return v;
  }

  RatVector vec(const json& v, std::size_t n, const Path& path) const {
    array(v, path);
    if (v.size() != n) error(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(v.size()));
    RatVector out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(rational(v[k], sub(path, k)));
    return out;
  }

  QuadraticFunc quad(const json& v, std::size_t n, const Path& path) const {
    keys(v, path, {"linear"}, {"constant", "hessian"});
    QuadraticFunc q(n);
    if (v.contains("constant")) q.constant = rational(v["constant"], sub(path, "constant"));
    q.linear = vec(v["linear"], n, sub(path, "linear"));
    if (v.contains("hessian")) {
      const Path hp = sub(path, "hessian");
      const json& h = array(v["hessian"], hp);
      if (h.size() != n) error(hp, "expected " + std::to_string(n) + " rows, found " + std::to_string(h.size()));
      for (std::size_t r = 0; r < n; ++r) {
        RatVector row = vec(h[r], n, sub(hp, r));
        for (std::size_t c = 0; c < n; ++c) q.hessian(r, c) = row[c];
      }
      if (!q.hessian.is_symmetric()) error(hp, "hessian must be symmetric");
    }
    return q;
  }

  std::vector<QuadraticFunc> quad_list(const json& root, const char* key, std::size_t count_expected,
                                       std::size_t n) const {
    const Path path{key};
    if (!root.contains(key)) {
      if (count_expected != 0) error(path, "expected " + std::to_string(count_expected) + " functions");
      return {};
    }
    const json& a = array(root[key], path);
    if (a.size() != count_expected)
      error(path, "expected " + std::to_string(count_expected) + " functions (from dimensions), found " +
                      std::to_string(a.size()));
    std::vector<QuadraticFunc> out;
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(quad(a[k], n, sub(path, k)));
    return out;
  }

  ProblemFile run() {
    json root;
    try {
      root = json::parse(text_);
    } catch (const json::parse_error& e) {
      const std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
      const auto [line, col] = line_col(text_, off);
      std::string msg = e.what();
      if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
      throw ProblemParseError(origin_, line, col, "", msg);
    }
    keys(root, {}, {"name", "dimensions", "objective", "switching", "points"},
         {"$schema", "description", "smoothness_degree", "equalities", "inequalities", "tangent_annotations",
          "expected"});
    ProblemFile pf;
    pf.path = origin_;
    pf.text = text_;
    AbsNormalProgram& p = pf.program;
    p.name = str(root["name"], {"name"});
    if (root.contains("description")) pf.description = str(root["description"], {"description"});
    if (root.contains("smoothness_degree"))
      p.smoothness_degree = static_cast<unsigned>(count(root["smoothness_degree"], {"smoothness_degree"}));

    const json& dims = root["dimensions"];
    keys(dims, {"dimensions"}, {"n_t", "s"}, {"m1", "m2"});
    p.n_t = count(dims["n_t"], {"dimensions", "n_t"});
    p.s = count(dims["s"], {"dimensions", "s"});
    const std::size_t m1 = dims.contains("m1") ? count(dims["m1"], {"dimensions", "m1"}) : 0;
    const std::size_t m2 = dims.contains("m2") ? count(dims["m2"], {"dimensions", "m2"}) : 0;
    if (p.n_t == 0) error({"dimensions", "n_t"}, "need at least one smooth variable");
    const std::size_t nj = p.n_t + p.s;

    p.objective = quad(root["objective"], p.n_t, {"objective"});
    p.c_e = quad_list(root, "equalities", m1, nj);
    p.c_i = quad_list(root, "inequalities", m2, nj);
    p.c_z = quad_list(root, "switching", p.s, nj);
    const ValidationReport vr = validate(p);
    if (!vr.ok()) error({"switching"}, vr.summary());

    parse_points(root, pf);
    if (root.contains("tangent_annotations")) parse_annotations(root["tangent_annotations"], pf);
    if (root.contains("expected")) parse_expected(root["expected"], pf);
    return pf;
  }

 private:
  void parse_points(const json& root, ProblemFile& pf) const {
    const Path path{"points"};
    const json& a = array(root["points"], path);
    std::set<std::string> seen;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const Path pp = sub(path, k);
      keys(a[k], pp, {"label", "t"}, {"minimizer", "w_signs"});
      ProblemPoint pt;
      pt.label = str(a[k]["label"], sub(pp, "label"));
      if (!seen.insert(pt.label).second) error(sub(pp, "label"), "duplicate point label '" + pt.label + "'");
      pt.t = vec(a[k]["t"], pf.program.n_t, sub(pp, "t"));
      if (a[k].contains("minimizer")) {
        if (!a[k]["minimizer"].is_boolean()) error(sub(pp, "minimizer"), "expected true or false");
        pt.minimizer = a[k]["minimizer"].get<bool>();
      }
      if (a[k].contains("w_signs")) {
        const Path wp = sub(pp, "w_signs");
        const json& w = array(a[k]["w_signs"], wp);
        if (w.size() != pf.program.m2()) error(wp, "expected one sign per inequality");
        for (std::size_t j = 0; j < w.size(); ++j) {
          if (!w[j].is_number_integer() || (w[j].get<int>() != 1 && w[j].get<int>() != -1))
            error(sub(wp, j), "expected 1 or -1");
          pt.w_signs.push_back(w[j].get<int>());
        }
      }
      const EvalResult e = eval(pf.program, pt.t);
      if (!e.feasible()) error(sub(pp, "t"), "point '" + pt.label + "' is not feasible");
      pf.points.push_back(std::move(pt));
    }
  }

  // Branch labels of a formulation at a point, for validating annotations.
  std::vector<std::string> branch_labels(const ProblemFile& pf, const ProblemPoint& pt, FormulationKind k) const {
    const AbsNormalProgram& p = pf.program;
    std::vector<SmoothBranchProblem> bs;
    const EvalResult ei = eval(p, pt.t);
    if (k == FormulationKind::IAnf) {
      bs = enumerate_anf_branches(p, ei);
    } else if (k == FormulationKind::IMpcc) {
      const MpccProgram mp = to_mpcc(p);
      RatVector x = ei.t;
      x.insert(x.end(), ei.z.begin(), ei.z.end());
      bs = enumerate_mpcc_branches(mp, make_mpcc_point(mp, phi_inv(p, mp, x)));
    } else {
      const SlackProgram sp = to_slack(p);
      const EvalResult ee = eval(sp.lifted, lift_point(p, pt.t, pt.w_signs));
      if (k == FormulationKind::EAnf) {
        bs = enumerate_anf_branches(sp.lifted, ee);
      } else {
        const MpccProgram mp = to_mpcc(sp.lifted);
        RatVector x = ee.t;
        x.insert(x.end(), ee.z.begin(), ee.z.end());
        bs = enumerate_mpcc_branches(mp, make_mpcc_point(mp, phi_inv(sp.lifted, mp, x)));
      }
    }
    std::vector<std::string> out;
    for (const auto& b : bs) out.push_back(b.label);
    return out;
  }

  void parse_annotations(const json& v, ProblemFile& pf) const {
    const Path path{"tangent_annotations"};
    const json& a = array(v, path);
    const AbsNormalProgram& p = pf.program;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const Path ap = sub(path, k);
      keys(a[k], ap, {"formulation", "branch", "pieces"}, {"point"});
      TangentAnnotation ann;
      try {
        ann.formulation = formulation_from_string(str(a[k]["formulation"], sub(ap, "formulation")));
      } catch (const std::invalid_argument& e) {
        error(sub(ap, "formulation"), e.what());
      }
      const bool mpcc = is_mpcc(ann.formulation);
      const bool slack = ann.formulation == FormulationKind::EAnf || ann.formulation == FormulationKind::EMpcc;
      const std::size_t n = p.n_t + (slack ? p.m2() : 0);
      const std::size_t s = p.s + (slack ? p.m2() : 0);
      const std::size_t dim = mpcc ? n + 2 * s : n + s;

      std::string label = str(a[k]["branch"], sub(ap, "branch"));
      if (!mpcc) {
        if (label.rfind("σ=", 0) != 0) label = "σ=" + label;
        const std::string signs = label.substr(std::string("σ=").size());
        if (signs.size() != s)
          error(sub(ap, "branch"), "signature has " + std::to_string(signs.size()) + " entries, expected " +
                                       std::to_string(s));
        if (signs.find_first_not_of("+-") != std::string::npos)
          error(sub(ap, "branch"), "branch signature must be definite (only + and -)");
      } else if (label.rfind("P={", 0) != 0 || label.back() != '}') {
        error(sub(ap, "branch"), "counterpart branch labels look like P={1,3}");
      }
      ann.branch_label = label;

      std::vector<const ProblemPoint*> targets;
      if (a[k].contains("point")) {
        ann.point_label = str(a[k]["point"], sub(ap, "point"));
        const ProblemPoint* pt = pf.find_point(ann.point_label);
        if (!pt) error(sub(ap, "point"), "no point labelled '" + ann.point_label + "'");
        targets.push_back(pt);
      } else {
        for (const auto& pt : pf.points) targets.push_back(&pt);
      }
      bool exists = false;
      for (const ProblemPoint* pt : targets) {
        const auto labels = branch_labels(pf, *pt, ann.formulation);
        if (std::find(labels.begin(), labels.end(), label) != labels.end()) exists = true;
      }
      if (!exists) error(sub(ap, "branch"), "branch " + label + " does not exist at the annotated point");

      const Path pp = sub(ap, "pieces");
      const json& pieces = array(a[k]["pieces"], pp);
      if (pieces.empty()) error(pp, "at least one piece is required");
      for (std::size_t q = 0; q < pieces.size(); ++q) {
        const Path qp = sub(pp, q);
        keys(pieces[q], qp, {}, {"equalities", "inequalities"});
        PolyCone c(dim);
        for (const char* key : {"equalities", "inequalities"}) {
          if (!pieces[q].contains(key)) continue;
          const json& rows = array(pieces[q][key], sub(qp, key));
          for (std::size_t r = 0; r < rows.size(); ++r) {
            RatVector row = vec(rows[r], dim, sub(sub(qp, key), r));
            if (std::string(key) == "equalities") c.add_eq(row);
            else c.add_ge(row);
          }
        }
        ann.pieces.push_back(std::move(c));
      }
      pf.annotations.items.push_back(std::move(ann));
    }
  }

  void parse_expected(const json& v, ProblemFile& pf) const {
    const Path path{"expected"};
    if (!v.is_object()) error(path, "expected an object keyed by point label");
    for (auto it = v.begin(); it != v.end(); ++it) {
      const Path ep = sub(path, it.key());
      if (!pf.find_point(it.key())) error(ep, "no point labelled '" + it.key() + "'");
      if (!it.value().is_object()) error(ep, "expected an object");
      ExpectedBlock blk;
      blk.point = it.key();
      for (auto f = it.value().begin(); f != it.value().end(); ++f) {
        const Path fp = sub(ep, f.key());
        if (f.key() == "open_converse") {
          const json& a = array(f.value(), fp);
          for (std::size_t k = 0; k < a.size(); ++k) blk.open_converse.push_back(str(a[k], sub(fp, k)));
          continue;
        }
        const auto& ks = expected_keys();
        if (std::find(ks.begin(), ks.end(), f.key()) == ks.end()) error(fp, "unknown field '" + f.key() + "'");
        bool ok = false;
        const Verdict vd = verdict_from_string(str(f.value(), fp), ok);
        if (!ok) error(fp, "expected \"holds\", \"fails\" or \"unknown\"");
        blk.verdicts[f.key()] = vd;
      }
      pf.expected.push_back(std::move(blk));
    }
  }

  const std::string& text_;
  std::string origin_;
};

}  // namespace

const std::vector<std::string>& expected_keys() {
  static const std::vector<std::string> keys = {
      "akq",          "gkq",          "mpcc_acq",     "mpcc_gcq",     "e_akq",        "e_gkq",
      "e_mpcc_acq",   "e_mpcc_gcq",   "branch_acq",   "branch_gcq",   "m_stationary", "b_stationary"};
  return keys;
}

const ProblemPoint* ProblemFile::find_point(const std::string& label) const {
  for (const auto& p : points)
    if (p.label == label) return &p;
  return nullptr;
}

ProblemParseError::ProblemParseError(const std::string& origin, std::size_t l, std::size_t c,
                                     const std::string& ptr, const std::string& msg)
    : std::runtime_error(origin + ":" + std::to_string(l) + ":" + std::to_string(c) + ": " +
                         (ptr.empty() ? "" : ptr + ": ") + msg),
      line(l),
      col(c),
      pointer(ptr) {}

ProblemFile parse_problem_text(const std::string& text, const std::string& origin) {
  return Parser(text, origin).run();
}

ProblemFile parse_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str(), path);
}

RatVector parse_point_list(const std::string& s) {
  RatVector out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    out.push_back(Rational::parse(tok));
  }
  return out;
}

}  // namespace anfcq
