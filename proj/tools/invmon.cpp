// invmon: command-line front end.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "invmon/boundary.hpp"
#include "invmon/constructions.hpp"
#include "invmon/rc.hpp"
#include "invmon/stephen.hpp"
#include "invmon/subgroup.hpp"
#include "invmon/zone_graphs.hpp"

using namespace invmon;
using json = nlohmann::ordered_json;

namespace {

  enum Exit : int { ok = 0, usage = 1, violation = 2, inconclusive = 3 };

  struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  //! What every report carries, plus the text and JSON built by a command.
  struct Report {
    std::string        command;
    std::uint64_t      seed = 0;
    json               body = json::object();
    std::ostringstream text;
    int                code = Exit::ok;
    //! Decision commands answer yes/no rather than pass/fail.
    bool question = false;

    std::string status() const {
      switch (code) {
        case Exit::ok:
          return question ? "yes" : "pass";
        case Exit::violation:
          return question ? "no" : "fail";
        case Exit::inconclusive:
          return "unknown";
        default:
          return "error";
      }
    }
  };

  std::string slurp(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw IoError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void spit(std::string const& path, std::string const& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw IoError("cannot write " + path);
    }
    out << text;
  }

  std::vector<std::string> split_list(std::string const& s) {
    std::vector<std::string> out;
    std::string              cur;
    for (char c : s) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty() || !out.empty()) {
      out.push_back(cur);
    }
    for (auto& x : out) {
      auto b = x.find_first_not_of(" \t");
      auto e = x.find_last_not_of(" \t");
      x      = b == std::string::npos ? "" : x.substr(b, e - b + 1);
    }
    return out;
  }

  std::set<std::size_t> index_list(std::string const& s) {
    std::set<std::size_t> out;
    for (auto const& x : split_list(s)) {
      if (x.empty()) {
        continue;
      }
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(x, &pos);
      } catch (std::exception const&) {
        pos = 0;
      }
      if (pos != x.size()) {
        throw ParseError("expected a coset index, got \"" + x + "\"");
      }
      out.insert(v);
    }
    return out;
  }

  //! A subset given as a file of vertex ids or inline as `0,1,2`.
  std::vector<vertex_type> load_subset(std::string const& arg) {
    if (std::filesystem::is_regular_file(arg)) {
      return read_subset(slurp(arg));
    }
    std::string s = arg;
    for (auto& c : s) {
      if (c == ',') {
        c = ' ';
      }
    }
    return read_subset(s);
  }

  Presentation load_presentation(std::string const& path) {
    auto p = parse_presentation(slurp(path));
    p.validate();
    return p;
  }

  MstInput load_input(std::string const& path, std::string const& b) {
    MstInput in{load_presentation(path), {}};
    for (auto const& x : split_list(b)) {
      if (!x.empty()) {
        in.b_subset.push_back(x);
      }
    }
    return in;
  }

  SOracle load_oracle(std::string const& path, Alphabet const& A) {
    if (path.empty()) {
      return SOracle::free_monoid(A.size());
    }
    return parse_s_oracle(slurp(path), A);
  }

  json json_items(CheckReport const& r) {
    json out = json::array();
    for (auto const& i : r.items) {
      out.push_back({{"name", i.name}, {"ok", i.ok}, {"checked", i.checked}, {"failures", i.failures}});
    }
    return out;
  }

  void add_check(Report& rep, CheckReport const& r) {
    rep.body["checks"] = json_items(r);
    rep.text << r.to_string();
    rep.code = r.ok() ? Exit::ok : Exit::violation;
  }

  void require_positive(std::size_t v, char const* what) {
    if (v == 0) {
      throw CLI::ValidationError(std::string(what) + " must be positive");
    }
  }

  int verdict_code(Verdict v) {
    switch (v) {
      case Verdict::yes:
        return Exit::ok;
      case Verdict::no:
        return Exit::violation;
      default:
        return Exit::inconclusive;
    }
  }

  json json_decision(SemiDecision const& d, Alphabet const& A) {
    json w = json::array();
    for (auto const& x : d.witnesses) {
      w.push_back({{"word", A.format(x.word)}, {"walk", x.walk}});
    }
    return {{"verdict", to_string(d.verdict)},
            {"rounds", d.rounds},
            {"vertices", d.vertices},
            {"stabilized", d.stabilized},
            {"capped", d.capped},
            {"witnesses", w}};
  }

  void text_decision(Report& rep, SemiDecision const& d, Alphabet const& A) {
    rep.text << "verdict: " << to_string(d.verdict) << "\nrounds: " << d.rounds
             << "\nvertices: " << d.vertices << "\nstabilized: " << d.stabilized
             << "\ncapped: " << d.capped << '\n';
    for (auto const& x : d.witnesses) {
      rep.text << "witness: " << A.format(x.word) << " ->";
      for (auto v : x.walk) {
        rep.text << ' ' << v;
      }
      rep.text << '\n';
    }
  }

  json json_boundary(BoundaryReport const& b) {
    json out = {{"mode", to_string(b.mode)},
                {"width", b.width},
                {"no_pairs", b.no_pairs},
                {"exact", b.exact},
                {"pairs", b.pairs.size()}};
    if (auto w = b.widest()) {
      out["widest"] = {{"x", w->x}, {"y", w->y}, {"distance", w->distance}, {"path", w->path}};
    }
    return out;
  }

  void text_boundary(Report& rep, std::string const& label, BoundaryReport const& b) {
    rep.text << label << "width: " << b.width << (b.no_pairs ? " (no boundary pairs)" : "")
             << " [" << to_string(b.mode) << ", " << b.pairs.size() << " pairs]\n";
    if (auto w = b.widest()) {
      rep.text << label << "widest: " << w->x << " -> " << w->y << " at distance " << w->distance
               << " via";
      for (auto v : w->path) {
        rep.text << ' ' << v;
      }
      rep.text << '\n';
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroup system files
  ////////////////////////////////////////////////////////////////////////

  json system_json(CosetSystem const& cs) {
    auto const& A = cs.model().graph.labels();
    json        j = json::object();
    j["format"]   = "invmon-coset-system-1";
    j["model"]    = write_model(cs.model());
    j["cover"]    = cs.cover();
    j["kappa"]    = cs.kappa();
    json reps     = json::object();
    for (auto c : cs.cover()) {
      reps[std::to_string(c)] = {{"word", A.format(cs.representative(c))}, {"base", cs.base(c)}};
    }
    j["representatives"] = reps;
    json bw              = json::array();
    for (auto const& [k, w] : cs.boundary_words()) {
      bw.push_back({{"x", k.first}, {"y", k.second}, {"word", A.format(w)}});
    }
    j["boundary_words"] = bw;
    json sy             = json::array();
    for (std::size_t s = 0; s < cs.symbols().size(); ++s) {
      auto const& x = cs.symbols()[s];
      sy.push_back({{"name", cs.symbol_name(s)},
                    {"j", x.j},
                    {"w", A.format(x.w)},
                    {"target", x.target},
                    {"psi", A.format(x.psi)}});
    }
    j["symbols"] = sy;
    return j;
  }

  //! Rebuilds the system from the stored model and cover, and checks the
  //! stored tables against the rebuilt ones.
  CosetSystem load_system(std::string const& path) {
    json j;
    try {
      j = json::parse(slurp(path));
    } catch (json::exception const& e) {
      throw ParseError(std::string("system file: ") + e.what());
    }
    if (j.value("format", "") != "invmon-coset-system-1") {
      throw ParseError("system file: unknown format");
    }
    auto                  model = read_model(j.at("model").get<std::string>());
    std::set<std::size_t> J     = j.at("cover").get<std::set<std::size_t>>();
    auto                  cs    = build_coset_system(std::move(model), J);
    if (system_json(cs) != j) {
      throw ParseError("system file: stored tables do not match the model");
    }
    return cs;
  }

  ////////////////////////////////////////////////////////////////////////
  // Commands
  ////////////////////////////////////////////////////////////////////////

  struct Globals {
    std::string   json_out;
    std::uint64_t seed = 1;
  };

  struct Args {
    std::string pres, base = "", word, left, right, dot, cert, in, b, w, out, oracle, check = "bidet,relators,zones",
                graph, subset, model, j, sys, mode = "literal", kind, s_file, q_file;
    std::size_t rounds = 8, cap = 200000, max_len = 12, max_steps = 100000, r = 0, trunc = 2, k = 1,
                samples = 50, interior = 6, base_vertex = 0;
    std::optional<std::size_t> radius, margin;
    long                       mr_r   = 0;
    bool                       unit   = false;
    std::optional<std::size_t> j_single;
  };

  StephenBudget budget(Args const& a) {
    require_positive(a.rounds, "--rounds");
    require_positive(a.cap, "--cap");
    return {a.rounds, a.cap, a.radius};
  }

  void pres_validate(Args const& a, Report& rep) {
    auto p                 = load_presentation(a.pres);
    rep.body["kind"]       = to_string(p.kind);
    rep.body["generators"] = p.alphabet.names();
    rep.body["relations"]  = p.relations.size();
    rep.text << "valid " << to_string(p.kind) << " presentation: " << p.alphabet.size()
             << " generators, " << p.relations.size() << " relations\n";
  }

  void pres_show(Args const& a, Report& rep) {
    auto p                   = load_presentation(a.pres);
    auto s                   = serialize_presentation(p);
    rep.body["presentation"] = s;
    rep.body["max_relator_length"] = p.max_relator_length();
    rep.text << s;
  }

  void pres_prefixes(Args const& a, Report& rep) {
    auto p  = load_presentation(a.pres);
    auto pg = prefix_generators(p);
    json ws = json::array();
    for (std::size_t i = 0; i < pg.words.size(); ++i) {
      ws.push_back({{"word", p.alphabet.format(pg.words[i])}, {"relator", pg.source[i]}});
      rep.text << "p" << i << " = " << p.alphabet.format(pg.words[i]) << "  (relator " << pg.source[i]
               << ")\n";
    }
    rep.body["prefixes"] = ws;
  }

  void stephen_run(Args const& a, Report& rep) {
    auto p  = load_presentation(a.pres);
    auto w  = p.alphabet.parse(a.base);
    auto ap = approximate(p, w, budget(a));
    auto const& g = ap.graph;
    rep.body["base"]       = p.alphabet.format(w);
    rep.body["rounds"]     = ap.rounds;
    rep.body["vertices"]   = g.num_vertices();
    rep.body["edges"]      = g.edges().size();
    rep.body["start"]      = ap.start;
    rep.body["root"]       = ap.root();
    rep.body["stabilized"] = ap.stabilized;
    rep.body["capped"]     = ap.capped;
    rep.text << "base: " << p.alphabet.format(w) << "\nrounds: " << ap.rounds
             << "\nvertices: " << g.num_vertices() << "\nedges: " << g.edges().size()
             << "\nstart: " << ap.start << "\nroot: " << ap.root()
             << "\nstabilized: " << ap.stabilized << "\ncapped: " << ap.capped << '\n';
    if (!a.dot.empty()) {
      spit(a.dot, export_dot(g, {"stephen", {ap.start}}));
    }
    if (!a.out.empty()) {
      spit(a.out, write_graph(g));
    }
    rep.code = ap.stabilized ? Exit::ok : Exit::inconclusive;
  }

  void stephen_member(Args const& a, Report& rep) {
    rep.question = true;
    auto p = load_presentation(a.pres);
    auto w = p.alphabet.parse(a.word);
    auto d = a.unit ? is_unit(p, w, budget(a)) : is_right_unit(p, w, budget(a));
    rep.body["question"] = a.unit ? "unit" : "right unit";
    rep.body["word"]     = p.alphabet.format(w);
    rep.body["decision"] = json_decision(d, p.alphabet);
    text_decision(rep, d, p.alphabet);
    rep.code = verdict_code(d.verdict);
  }

  void stephen_equal(Args const& a, Report& rep) {
    rep.question = true;
    auto p = load_presentation(a.pres);
    auto u = p.alphabet.parse(a.left);
    auto v = p.alphabet.parse(a.right);
    auto d = equal_right_units(p, u, v, budget(a));
    rep.body["left"]     = p.alphabet.format(u);
    rep.body["right"]    = p.alphabet.format(v);
    rep.body["decision"] = json_decision(d, p.alphabet);
    text_decision(rep, d, p.alphabet);
    rep.code = verdict_code(d.verdict);
  }

  void rc_solve(Args const& a, Report& rep) {
    rep.question = true;
    require_positive(a.max_len, "--max-len");
    require_positive(a.max_steps, "--max-steps");
    auto p   = load_presentation(a.pres);
    auto u   = p.alphabet.parse(a.left);
    auto v   = p.alphabet.parse(a.right);
    auto res = search_chain(p, u, v, a.max_len, a.max_steps);
    rep.body["left"]      = p.alphabet.format(u);
    rep.body["right"]     = p.alphabet.format(v);
    rep.body["max_len"]   = a.max_len;
    rep.body["max_steps"] = a.max_steps;
    rep.body["visited"]   = res.visited;
    rep.body["exhausted"] = res.exhausted;
    rep.body["found"]     = res.chain.has_value();
    if (res.chain) {
      auto cert              = serialize_chain(p.alphabet, *res.chain);
      rep.body["steps"]      = res.chain->steps.size();
      rep.body["chain"]      = cert;
      rep.text << "chain found (" << res.chain->steps.size() << " steps, " << res.visited
               << " words visited)\n"
               << cert;
      if (!a.cert.empty()) {
        spit(a.cert, cert);
      }
    } else {
      rep.text << "no chain within max_len " << a.max_len << " (" << res.visited << " words visited"
               << (res.exhausted ? ", bound exhausted" : ", step budget hit") << ")\n";
      rep.code = Exit::inconclusive;
    }
  }

  void rc_verify(Args const& a, Report& rep) {
    auto p  = load_presentation(a.pres);
    auto c  = parse_chain(p.alphabet, slurp(a.cert));
    auto cv = validate_chain(p, c);
    rep.body["valid"]   = cv.valid;
    rep.body["steps"]   = c.steps.size();
    rep.body["message"] = cv.message;
    if (cv.step) {
      rep.body["bad_step"] = *cv.step;
    }
    bool ends = true;
    if (cv.valid && !c.words.empty()) {
      auto first = to_word(c.words.front());
      auto last  = to_word(c.words.back());
      if (first) {
        rep.body["from"] = p.alphabet.format(*first);
      }
      if (last) {
        rep.body["to"] = p.alphabet.format(*last);
      }
      if (!a.left.empty() && (!first || *first != p.alphabet.parse(a.left))) {
        ends = false;
      }
      if (!a.right.empty() && (!last || *last != p.alphabet.parse(a.right))) {
        ends = false;
      }
    }
    rep.body["ends_match"] = ends;
    if (cv.valid && ends) {
      rep.text << "certificate valid (" << c.steps.size() << " steps)\n";
    } else if (!cv.valid) {
      rep.text << "certificate invalid" << (cv.step ? " at step " + std::to_string(*cv.step) : "")
               << ": " << cv.message << '\n';
      rep.code = Exit::violation;
    } else {
      rep.text << "certificate valid but its ends differ from --left/--right\n";
      rep.code = Exit::violation;
    }
  }

  void rc_mr(Args const& a, Report& rep) {
    rep.question = true;
    if (a.mr_r < 0) {
      throw CLI::ValidationError("--r must be nonnegative");
    }
    auto A  = mr_alphabet();
    auto u  = A.parse(a.left);
    auto v  = A.parse(a.right);
    bool eq = mr_equal(a.mr_r, u, v, A);
    rep.body["r"]     = a.mr_r;
    rep.body["left"]  = A.format(u);
    rep.body["right"] = A.format(v);
    rep.body["equal"] = eq;
    rep.text << (eq ? "equal" : "not equal") << " in M_" << a.mr_r << '\n';
    rep.code = eq ? Exit::ok : Exit::violation;
  }

  void construct(Args const& a, Report& rep) {
    Presentation out;
    rep.body["construction"] = a.kind;
    if (a.kind == "mst" || a.kind == "q") {
      auto in = load_input(a.in, a.b);
      if (a.kind == "mst") {
        out = build_mst(in);
      } else {
        QTruncation t;
        t.L         = a.trunc;
        t.max_len   = a.max_len;
        t.max_steps = a.max_steps;
        out         = build_q(in, t);
      }
    } else if (a.kind == "mqw" || a.kind == "rqw") {
      auto              g = load_presentation(a.in);
      std::vector<Word> W;
      for (auto const& x : split_list(a.w)) {
        W.push_back(g.alphabet.parse(x));
      }
      if (a.kind == "mqw") {
        auto res = build_mqw(g, W);
        out      = res.primary;
        rep.body["alternate"] = serialize_presentation(res.alternate);
      } else {
        out      = build_rqw(g, W);
        auto tz  = tietze_check_rqw(out);
        rep.body["tietze"] = {{"ok", tz.ok},
                              {"eliminated", tz.eliminated},
                              {"group_relators", tz.group_relators},
                              {"failures", tz.failures}};
        rep.text << "# tietze check: " << (tz.ok ? "pass" : "FAIL") << '\n';
        for (auto const& f : tz.failures) {
          rep.text << "#   " << f << '\n';
        }
        if (!tz.ok) {
          rep.code = Exit::violation;
        }
      }
    } else {
      throw CLI::ValidationError("construction must be one of mst, q, mqw, rqw");
    }
    auto text                = serialize_presentation(out);
    rep.body["generators"]   = out.alphabet.size();
    rep.body["relations"]    = out.relations.size();
    rep.body["presentation"] = text;
    if (a.out.empty()) {
      rep.text << text;
    } else {
      spit(a.out, text);
      rep.text << "wrote " << out.relations.size() << " relations over " << out.alphabet.size()
               << " generators\n";
    }
  }

  void construct_check_q(Args const& a, Report& rep) {
    auto s        = load_presentation(a.s_file);
    auto q        = load_presentation(a.q_file);
    auto failures = check_q_certificates(s, q);
    rep.body["failures"] = failures;
    rep.body["relations"] = q.relations.size();
    if (failures.empty()) {
      rep.text << "all " << q.relations.size() << " certificates replay\n";
    } else {
      for (auto const& f : failures) {
        rep.text << f << '\n';
      }
      rep.code = Exit::violation;
    }
  }

  void omega_ball_cmd(Args const& a, Report& rep) {
    auto in   = load_input(a.in, a.b);
    auto s    = load_oracle(a.oracle, in.s_pres.alphabet);
    auto R    = a.radius.value_or(6);
    auto ball = omega_ball(in, s, R);
    auto mst  = build_mst(in);
    OmegaChecks chk{false, false, false};
    for (auto const& c : split_list(a.check)) {
      if (c == "bidet") {
        chk.bidet = true;
      } else if (c == "relators") {
        chk.relators = true;
      } else if (c == "zones") {
        chk.zones = true;
      } else if (!c.empty()) {
        throw CLI::ValidationError("unknown check \"" + c + "\"");
      }
    }
    rep.body["radius"]   = R;
    rep.body["vertices"] = ball.graph.num_vertices();
    rep.body["edges"]    = ball.graph.edges().size();
    rep.body["zones"]    = ball.zones.size();
    rep.text << "radius: " << R << "\nvertices: " << ball.graph.num_vertices()
             << "\nedges: " << ball.graph.edges().size() << "\nzones: " << ball.zones.size() << '\n';
    if (!a.dot.empty()) {
      spit(a.dot, export_dot(ball.graph, {"omega", {}}));
    }
    if (!a.out.empty()) {
      spit(a.out, write_graph(ball.graph));
    }
    add_check(rep, check_omega(ball, mst, chk, a.margin));
  }

  void gammaprime_check(Args const& a, Report& rep) {
    auto in    = load_input(a.in, a.b);
    auto s     = load_oracle(a.oracle, in.s_pres.alphabet);
    auto R     = a.radius.value_or(8);
    auto ball  = q_cayley_ball(in, s, R);
    auto types = classify_types(ball.graph, in.s_pres.alphabet);
    auto gp    = gamma_prime(ball, types, in);
    std::size_t complete = 0;
    for (bool c : gp.complete) {
      complete += c ? 1 : 0;
    }
    rep.body["radius"]   = R;
    rep.body["interior"] = a.interior;
    rep.body["vertices"] = gp.graph.num_vertices();
    rep.body["edges"]    = gp.graph.edges().size();
    rep.body["complete"] = complete;
    rep.text << "radius: " << R << "\ninterior margin: " << a.interior
             << "\nvertices: " << gp.graph.num_vertices() << "\nedges: " << gp.graph.edges().size()
             << "\ncomplete: " << complete << '\n';
    if (!a.dot.empty()) {
      spit(a.dot, export_dot(gp.graph, {"gamma_prime", {}}));
    }
    add_check(rep, check_gamma_prime(gp, build_mst(in), a.interior));
  }

  void boundary_width_cmd(Args const& a, Report& rep) {
    auto g    = read_graph(slurp(a.graph));
    auto X    = load_subset(a.subset);
    auto mode = parse_boundary_mode(a.mode);
    auto b    = boundary_width(g, X, mode);
    rep.body["subset"]   = b.subset;
    rep.body["boundary"] = json_boundary(b);
    text_boundary(rep, "", b);
    for (auto const& p : b.pairs) {
      if (!replays_boundary_path(g, X, p.path, mode)) {
        rep.code = Exit::violation;
        rep.text << "witness path " << p.x << " -> " << p.y << " does not replay\n";
      }
    }
  }

  void boundary_cover_cmd(Args const& a, Report& rep) {
    auto g    = read_graph(slurp(a.graph));
    auto D    = load_subset(a.subset);
    auto mode = parse_boundary_mode(a.mode);
    auto c    = check_cover_bounds(g, D, a.r, mode);
    rep.body["r"]      = a.r;
    rep.body["inner"]  = json_boundary(c.inner);
    rep.body["outer"]  = json_boundary(c.outer);
    rep.body["bound"]  = c.bound();
    rep.body["ok"]     = c.ok();
    text_boundary(rep, "D: ", c.inner);
    text_boundary(rep, "D_r: ", c.outer);
    rep.text << "bound 2r + K = " << c.bound() << ": " << (c.ok() ? "holds" : "VIOLATED") << '\n';
    rep.code = c.ok() ? Exit::ok : Exit::violation;
  }

  void boundary_cosets_cmd(Args const& a, Report& rep) {
    auto m    = read_model(slurp(a.model));
    auto mc   = check_model(m);
    auto mode = parse_boundary_mode(a.mode);
    if (!mc.ok()) {
      add_check(rep, mc);
      return;
    }
    auto J  = a.j.empty() ? std::set<std::size_t>{1} : index_list(a.j);
    auto ca = cover_analysis(m, J, mode);
    rep.body["cover"]     = ca.J;
    rep.body["members"]   = ca.members;
    rep.body["connected"] = ca.connected;
    rep.body["boundary"]  = json_boundary(ca.width);
    rep.text << "cover:";
    for (auto j : ca.J) {
      rep.text << ' ' << j;
    }
    rep.text << "\nvertices: " << ca.members.size() << "\nconnected: " << ca.connected << '\n';
    text_boundary(rep, "", ca.width);
    if (ca.enlargement) {
      auto const& e = *ca.enlargement;
      rep.body["enlargement"] = {{"kappa", e.kappa},
                                 {"upsilon", e.upsilon},
                                 {"cover", e.J2},
                                 {"connected", e.connected},
                                 {"width", e.bound.outer.width},
                                 {"bound", e.bound.bound()},
                                 {"bound_ok", e.bound.ok()}};
      rep.text << "enlargement: kappa " << e.kappa << ", radius " << e.upsilon << ", cover";
      for (auto j : e.J2) {
        rep.text << ' ' << j;
      }
      rep.text << "\n  connected: " << e.connected << "\n  width " << e.bound.outer.width
               << " <= " << e.bound.bound() << ": " << (e.bound.ok() ? "holds" : "VIOLATED") << '\n';
      if (!e.connected || !e.bound.ok()) {
        rep.code = Exit::violation;
      }
    } else {
      rep.text << "no action table: enlargement skipped\n";
    }
  }

  void boundary_rips(Args const& a, Report& rep) {
    rep.question = true;
    require_positive(a.k, "--k");
    auto g  = read_graph(slurp(a.graph));
    auto lg = lk_loops(g, static_cast<vertex_type>(a.base_vertex), a.k);
    rep.body["k"]          = a.k;
    rep.body["rank"]       = lg.rank;
    rep.body["loops"]      = lg.loops.size();
    rep.body["folded_vertices"] = lg.folded.num_vertices();
    rep.body["generates"]  = lg.generates;
    rep.text << "rank of pi_1: " << lg.rank << "\nloops of length <= " << a.k << ": "
             << lg.loops.size() << "\nfolded vertices: " << lg.folded.num_vertices()
             << "\ngenerates: " << (lg.generates ? "yes" : "no") << '\n';
    rep.code = lg.generates ? Exit::ok : Exit::violation;
  }

  void qi_check_cmd(Args const& a, Report& rep) {
    auto        p = load_presentation(a.pres);
    QiR1Options opt;
    opt.budget = budget(a);
    if (!opt.budget.radius) {
      opt.budget.radius = 5;
    }
    opt.margin = a.margin;
    opt.seed   = rep.seed;
    auto q     = qi_r1_check(p, opt);
    rep.body["lambda"]      = q.lambda;
    rep.body["vertices"]    = q.vertices;
    rep.body["interior"]    = q.interior;
    rep.body["delta_edges"] = q.delta_edges;
    rep.body["stabilized"]  = q.stabilized;
    rep.body["capped"]      = q.capped;
    rep.text << "lambda: " << q.lambda << "\nvertices: " << q.vertices
             << "\nsampled interior: " << q.interior << "\ndelta edges: " << q.delta_edges
             << "\nstabilized: " << q.stabilized << "\ncapped: " << q.capped << '\n';
    add_check(rep, q.report);
    if (rep.code == Exit::ok && q.interior == 0) {
      rep.code = Exit::inconclusive;
    }
  }

  void subgroup_build(Args const& a, Report& rep) {
    auto m  = read_model(slurp(a.model));
    auto J  = index_list(a.j);
    auto cs = build_coset_system(std::move(m), J);
    auto sj = system_json(cs);
    rep.body["cover"]   = cs.cover();
    rep.body["kappa"]   = cs.kappa();
    rep.body["symbols"] = cs.symbols().size();
    rep.text << "cover:";
    for (auto j : cs.cover()) {
      rep.text << ' ' << j;
    }
    rep.text << "\nkappa: " << cs.kappa() << "\nboundary words: " << cs.boundary_words().size()
             << "\nsymbols: " << cs.symbols().size() << '\n';
    for (std::size_t s = 0; s < cs.symbols().size(); ++s) {
      rep.text << "  " << cs.symbol_name(s) << " -> "
               << cs.model().graph.labels().format(cs.symbols()[s].psi) << '\n';
    }
    if (!a.out.empty()) {
      spit(a.out, sj.dump(2) + "\n");
    }
    add_check(rep, check_coset_system(cs));
  }

  void subgroup_rewrite(Args const& a, Report& rep) {
    auto        cs = load_system(a.sys);
    auto const& A  = cs.model().graph.labels();
    auto        j  = a.j_single.value_or(1);
    auto        u  = A.parse(a.word);
    auto        p  = cs.phi(j, u);
    auto        back = cs.psi(p);
    json        names = json::array();
    for (auto s : p) {
      names.push_back(cs.symbol_name(s));
    }
    rep.body["j"]    = j;
    rep.body["word"] = A.format(u);
    rep.body["phi"]  = names;
    rep.body["psi"]  = A.format(back);
    rep.text << "phi: " << (p.empty() ? std::string("1") : cs.format(p)) << "\npsi(phi): "
             << A.format(back) << '\n';
  }

  void subgroup_verify(Args const& a, Report& rep) {
    require_positive(a.samples, "--samples");
    auto cs  = load_system(a.sys);
    auto sys = check_coset_system(cs);
    auto cl  = verify_claims(cs, a.samples, rep.seed);
    CheckReport all;
    for (auto const* r : {&sys, &cl.report}) {
      for (auto const& i : r->items) {
        all.items.push_back(i);
      }
    }
    rep.body["samples"] = a.samples;
    rep.body["unknown"] = cl.unknown;
    rep.text << "samples: " << a.samples << " (" << cl.unknown << " left the model)\n";
    add_check(rep, all);
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invmon: special inverse monoids, RC presentations and subgroup covers"};
  app.require_subcommand(1);
  Globals g;
  Args    a;
  app.add_option("--json-out", g.json_out, "write a machine-readable report here");
  app.add_option("--seed", g.seed, "seed for every sampled check")->capture_default_str();

  std::string                 command;
  std::function<void(Report&)> handler;
  auto leaf = [&](CLI::App* parent, std::string const& name, std::string const& desc,
                  void (*fn)(Args const&, Report&)) {
    auto* s = parent->add_subcommand(name, desc);
    s->callback([&, fn, full = parent->get_name() + " " + name] {
      command = full;
      handler = [&a, fn](Report& r) { fn(a, r); };
    });
    return s;
  };
  auto pres_opt = [&](CLI::App* s) {
    s->add_option("--pres", a.pres, "presentation file")->required()->check(CLI::ExistingFile);
  };
  auto budget_opts = [&](CLI::App* s) {
    s->add_option("--rounds", a.rounds, "Stephen rounds")->capture_default_str();
    s->add_option("--cap", a.cap, "vertex cap")->capture_default_str();
    s->add_option("--radius", a.radius, "only sew within this distance of the root");
  };

  auto* pres = app.add_subcommand("pres", "presentation files")->require_subcommand(1);
  for (auto [name, fn] : {std::pair{"validate", &pres_validate}, std::pair{"show", &pres_show},
                          std::pair{"prefixes", &pres_prefixes}}) {
    auto* s = leaf(pres, name, std::string(name) + " a presentation", fn);
    s->add_option("file", a.pres, "presentation file")->required()->check(CLI::ExistingFile);
  }

  auto* st = app.add_subcommand("stephen", "Schützenberger graph approximation")->require_subcommand(1);
  {
    auto* s = leaf(st, "run", "approximate the Schützenberger graph of a word", &stephen_run);
    pres_opt(s);
    s->add_option("--base", a.base, "base word (default 1)");
    budget_opts(s);
    s->add_option("--dot", a.dot, "write the graph as DOT");
    s->add_option("-o,--out", a.out, "write the graph file");
    s = leaf(st, "member", "is the word a right unit (or unit with --unit)", &stephen_member);
    pres_opt(s);
    s->add_option("--word", a.word, "word")->required();
    s->add_flag("--unit", a.unit, "test for a unit instead");
    budget_opts(s);
    s = leaf(st, "equal", "equality of right units", &stephen_equal);
    pres_opt(s);
    s->add_option("--left", a.left, "word")->required();
    s->add_option("--right", a.right, "word")->required();
    budget_opts(s);
  }

  auto* rc = app.add_subcommand("rc", "right cancellative chains")->require_subcommand(1);
  {
    auto* s = leaf(rc, "solve", "search for a chain", &rc_solve);
    pres_opt(s);
    s->add_option("--left", a.left, "word")->required();
    s->add_option("--right", a.right, "word")->required();
    s->add_option("--max-len", a.max_len, "longest word in the chain")->capture_default_str();
    s->add_option("--max-steps", a.max_steps, "distinct words visited")->capture_default_str();
    s->add_option("--cert", a.cert, "write the chain here");
    s = leaf(rc, "verify", "replay a chain certificate", &rc_verify);
    pres_opt(s);
    s->add_option("--cert", a.cert, "certificate")->required()->check(CLI::ExistingFile);
    s->add_option("--left", a.left, "expected first word");
    s->add_option("--right", a.right, "expected last word");
    s = leaf(rc, "mr", "exact equality in M_r", &rc_mr);
    s->add_option("--r", a.mr_r, "r")->required();
    s->add_option("--left", a.left, "word")->required();
    s->add_option("--right", a.right, "word")->required();
  }

  auto* co = app.add_subcommand("construct", "build presentations");
  co->require_subcommand(0, 1);
  {
    auto* ck = leaf(co, "check-q", "replay the certificates recorded in a Q presentation", &construct_check_q);
    ck->add_option("--s", a.s_file, "the RC presentation S")->required()->check(CLI::ExistingFile);
    ck->add_option("--q", a.q_file, "the Q presentation")->required()->check(CLI::ExistingFile);
    co->add_option("kind", a.kind, "mst, q, mqw or rqw");
    co->add_option("--in", a.in, "input presentation")->check(CLI::ExistingFile);
    co->add_option("--b", a.b, "comma separated subset B");
    co->add_option("--w", a.w, "comma separated words W");
    co->add_option("--trunc", a.trunc, "truncation length L for Q")->capture_default_str();
    co->add_option("--max-len", a.max_len, "chain search bound for Q")->capture_default_str();
    co->add_option("--max-steps", a.max_steps, "chain search budget for Q")->capture_default_str();
    co->add_option("-o,--out", a.out, "output presentation file");
    co->callback([&] {
      if (co->get_subcommands().empty()) {
        if (a.kind.empty() || a.in.empty()) {
          throw CLI::ValidationError("construct: give a construction and --in");
        }
        command = "construct " + a.kind;
        handler = [&a](Report& r) { construct(a, r); };
      }
    });
  }

  auto* om = app.add_subcommand("omega", "balls of Omega")->require_subcommand(1);
  {
    auto* s = leaf(om, "ball", "generate and check a ball", &omega_ball_cmd);
    s->add_option("--in", a.in, "RC presentation S")->required()->check(CLI::ExistingFile);
    s->add_option("--b", a.b, "comma separated subset B");
    s->add_option("--oracle", a.oracle, "S oracle file (default: free monoid)")->check(CLI::ExistingFile);
    s->add_option("--radius", a.radius, "ball radius (default 6)");
    s->add_option("--dot", a.dot, "write the ball as DOT");
    s->add_option("-o,--out", a.out, "write the graph file");
    s->add_option("--check", a.check, "bidet,relators,zones")->capture_default_str();
    s->add_option("--margin", a.margin, "relator loops only this far inside");
  }

  auto* gp = app.add_subcommand("gammaprime", "the graph Gamma'")->require_subcommand(1);
  {
    auto* s = leaf(gp, "check", "build Gamma' on a Cayley ball of Q and check it", &gammaprime_check);
    s->add_option("--in", a.in, "RC presentation S")->required()->check(CLI::ExistingFile);
    s->add_option("--b", a.b, "comma separated subset B");
    s->add_option("--oracle", a.oracle, "S oracle file (default: free monoid)")->check(CLI::ExistingFile);
    s->add_option("--radius", a.radius, "Cayley ball radius (default 8)");
    s->add_option("--interior", a.interior, "interior margin")->capture_default_str();
    s->add_option("--dot", a.dot, "write Gamma' as DOT");
  }

  auto* bd = app.add_subcommand("boundary", "boundary width and covers")->require_subcommand(1);
  {
    auto mode_opt = [&](CLI::App* s) {
      s->add_option("--mode", a.mode, "literal or excursion")->capture_default_str();
    };
    auto* s = leaf(bd, "width", "boundary width of a subset", &boundary_width_cmd);
    s->add_option("--graph", a.graph, "graph file")->required()->check(CLI::ExistingFile);
    s->add_option("--subset", a.subset, "subset file or list")->required();
    mode_opt(s);
    s = leaf(bd, "cover", "check width(D_r) <= 2r + width(D)", &boundary_cover_cmd);
    s->add_option("--graph", a.graph, "graph file")->required()->check(CLI::ExistingFile);
    s->add_option("--subset", a.subset, "subset file or list")->required();
    s->add_option("--r", a.r, "radius")->required();
    mode_opt(s);
    s = leaf(bd, "cosets", "cover of an R-class by H-cosets", &boundary_cosets_cmd);
    s->add_option("--model", a.model, "model file")->required()->check(CLI::ExistingFile);
    s->add_option("--j", a.j, "comma separated coset indices (default 1)");
    mode_opt(s);
    s = leaf(bd, "rips", "do loops of length <= k generate pi_1", &boundary_rips);
    s->add_option("--graph", a.graph, "graph file")->required()->check(CLI::ExistingFile);
    s->add_option("--base", a.base_vertex, "base vertex")->capture_default_str();
    s->add_option("--k", a.k, "loop length")->required();
  }

  auto* qi = app.add_subcommand("qi", "quasi-isometry checks")->require_subcommand(1);
  {
    auto* s = leaf(qi, "check", "compare the Schützenberger graph with the right unit Cayley graph",
                   &qi_check_cmd);
    pres_opt(s);
    budget_opts(s);
    s->add_option("--margin", a.margin, "interior margin (default ceil(lambda/2))");
  }

  auto* sg = app.add_subcommand("subgroup", "generators of a maximal subgroup")->require_subcommand(1);
  {
    auto* s = leaf(sg, "build", "build a coset system", &subgroup_build);
    s->add_option("--model", a.model, "model file")->required()->check(CLI::ExistingFile);
    s->add_option("--j", a.j, "comma separated cover (default: all cosets)");
    s->add_option("-o,--out", a.out, "system file");
    s = leaf(sg, "rewrite", "rewrite a word in the symbols", &subgroup_rewrite);
    s->add_option("--sys", a.sys, "system file")->required()->check(CLI::ExistingFile);
    s->add_option("--j", a.j_single, "starting coset (default 1)");
    s->add_option("--word", a.word, "word")->required();
    s = leaf(sg, "verify", "sample the rewriting claims", &subgroup_verify);
    s->add_option("--sys", a.sys, "system file")->required()->check(CLI::ExistingFile);
    s->add_option("--samples", a.samples, "samples per claim")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return Exit::usage;
  }
  if (!handler) {
    std::cerr << app.help();
    return Exit::usage;
  }

  Report rep;
  rep.command = command;
  rep.seed    = g.seed;
  try {
    handler(rep);
  } catch (CLI::ValidationError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::usage;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::usage;
  }

  std::cout << "command: " << rep.command << "\nseed: " << rep.seed << '\n'
            << rep.text.str() << "status: " << rep.status() << '\n';
  if (!g.json_out.empty()) {
    json out      = json::object();
    out["command"] = rep.command;
    out["seed"]    = rep.seed;
    out["status"]  = rep.status();
    out["exit"]    = rep.code;
    out["result"]  = rep.body;
    try {
      spit(g.json_out, out.dump(2) + "\n");
    } catch (IoError const& e) {
      std::cerr << "error: " << e.what() << '\n';
      return Exit::usage;
    }
  }
  return rep.code;
}
