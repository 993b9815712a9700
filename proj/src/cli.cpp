#include "sde/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

#include "sde/automatic.hpp"
#include "sde/engine.hpp"
#include "sde/equivalence.hpp"
#include "sde/error.hpp"
#include "sde/parser.hpp"
#include "sde/solve.hpp"

namespace sde::cli {

namespace {

struct Options {
  std::size_t n = 20;
  std::size_t budget = kDefaultBudget;
  std::string algebra;
  std::string up_to;
  std::size_t prefix = 32;
  std::size_t pairs = kDefaultPairBudget;
  std::string defs;
  std::string term;
  std::string target;
  std::string second;
  std::string index;
};

struct Selector {
  std::string file;
  std::string var;  // empty when absent
};

Selector split(const std::string& s) {
  auto pos = s.find('#');
  if (pos == std::string::npos) return {s, ""};
  return {s.substr(0, pos), s.substr(pos + 1)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  SpecFile load(const std::string& path) const {
    AlgebraPtr override = o_.algebra.empty() ? nullptr : algebra_by_name(o_.algebra);
    return parse_spec(read_file(path), override);
  }

  static void require_var(const SpecFile& spec, const std::string& var) {
    if (!spec.system.find(var)) fail(ErrorKind::UnknownSymbol, "no variable '" + var + "' in the file");
  }

  std::string prefix_of(const Stream& s, std::size_t n) const {
    return format_prefix(*s.algebra(), take(s, n, o_.budget));
  }

  int solve() {
    Selector sel = split(o_.target);
    SpecFile spec = load(sel.file);
    if (!sel.var.empty()) require_var(spec, sel.var);
    Solution sol = solve_spec(spec);
    if (!sel.var.empty()) {
      out_ << prefix_of(sol.at(sel.var), o_.n) << "\n";
      return kOk;
    }
    for (const auto& v : sol.vars) {
      std::string line = prefix_of(sol.at(v), o_.n);
      out_ << v << ": " << line << "\n";
    }
    return kOk;
  }

  int closed_form() {
    Selector sel = split(o_.target);
    SpecFile spec = load(sel.file);
    if (!sel.var.empty()) require_var(spec, sel.var);
    for (const auto& [v, r] : closed_forms(spec)) {
      if (sel.var.empty()) {
        out_ << v << ": " << r.to_string() << "\n";
      } else if (v == sel.var) {
        out_ << r.to_string() << "\n";
      }
    }
    return kOk;
  }

  int eval() {
    SpecFile spec;
    if (!o_.defs.empty()) {
      spec = load(o_.defs);
    } else {
      spec.algebra = o_.algebra.empty() ? rationals() : algebra_by_name(o_.algebra);
      spec.system.algebra = spec.algebra;
    }
    TermPtr t = parse_term(o_.term, spec);
    auto engine = Engine::create(spec.algebra);
    for (const auto& d : spec.defs) engine->add_def(d);
    engine->add_system(spec.system);
    out_ << prefix_of(eval_term(*engine, *t, {}), o_.n) << "\n";
    return kOk;
  }

  int equiv() {
    Selector a = split(o_.target);
    Selector b = split(o_.second);
    if (a.var.empty() || b.var.empty()) fail(ErrorKind::InvalidArgument, "equiv needs two file#var selectors");
    SpecFile sa = load(a.file);
    SpecFile sb = load(b.file);
    require_var(sa, a.var);
    require_var(sb, b.var);
    require_same(*sa.algebra, *sb.algebra, "equiv");

    // A prefix comparison first gives the minimal refutation cheaply.
    Stream xa = solve_spec(sa).at(a.var);
    Stream xb = solve_spec(sb).at(b.var);
    auto cmp = bounded_eq(xa, xb, o_.prefix, o_.budget);
    if (const auto* d = std::get_if<Differ>(&cmp)) {
      out_ << EquivResult{sa.algebra, Refuted{d->index, d->a, d->b}}.to_string();
      return kRefuted;
    }
    if (classify(sa.system).kind == SystemKind::EvenOdd || classify(sb.system).kind == SystemKind::EvenOdd) {
      out_ << "unknown: even/odd systems are compared on prefixes only; equal on the first " << o_.prefix
           << " elements\n";
      return kUnknown;
    }
    auto engine = Engine::create(sa.algebra);
    for (const auto& d : sa.defs) engine->add_def(d);
    for (const auto& d : sb.defs) {
      if (const GsosDef* existing = engine->definition(d.name)) {
        if (!same_def(*existing, d)) fail(ErrorKind::InvalidArgument, "files disagree on the definition of " + d.name);
        continue;
      }
      engine->add_def(d);
    }
    engine->add_system(sa.system, "A.");
    engine->add_system(sb.system, "B.");
    std::set<std::string> ops;
    std::stringstream list(o_.up_to);
    for (std::string item; std::getline(list, item, ',');)
      if (!item.empty()) ops.insert(item);
    EquivResult r = equiv_up_to(engine, engine->unknown("A." + a.var), engine->unknown("B." + b.var), ops, o_.pairs);
    out_ << r.to_string();
    if (r.proved()) return kOk;
    if (r.refuted()) return kRefuted;
    return kUnknown;
  }

  int kernel() {
    Selector sel = split(o_.target);
    SpecFile spec = load(sel.file);
    if (sel.var.empty()) fail(ErrorKind::InvalidArgument, "kernel needs a file#var selector");
    require_var(spec, sel.var);
    KernelResult k = kernel2(solve_spec(spec).at(sel.var), 32, 32, 10 * o_.budget);
    if (const auto* u = std::get_if<KernelUnknown>(&k)) {
      out_ << "unknown: " << u->reason << "\n";
      return kUnknown;
    }
    const auto& f = std::get<KernelFinite>(k);
    out_ << "states: " << f.automaton.size() << (f.exact ? " (exact)" : " (prefix-identified)") << "\n";
    out_ << f.automaton.dump();
    return kOk;
  }

  int at() {
    std::uint64_t n = 0;
    try {
      std::size_t used = 0;
      if (o_.index.empty() || !std::isdigit(static_cast<unsigned char>(o_.index[0]))) throw std::invalid_argument("index");
      n = std::stoull(o_.index, &used);
      if (used != o_.index.size()) throw std::invalid_argument("index");
    } catch (const std::logic_error&) {
      fail(ErrorKind::InvalidArgument, "index must be a natural number, got '" + o_.index + "'");
    }
    Selector sel = split(o_.target);
    SpecFile spec = load(sel.file);
    if (sel.var.empty()) fail(ErrorKind::InvalidArgument, "at needs a file#var selector");
    require_var(spec, sel.var);
    if (classify(spec.system).kind == SystemKind::EvenOdd) {
      TwoAutomaton aut = compile_evenodd(spec.system);
      out_ << spec.algebra->print(value_at(aut, aut.index(sel.var), n)) << "\n";
      return kOk;
    }
    Stream s = solve_spec(spec).at(sel.var);
    ForcingBudget guard(o_.budget);
    out_ << spec.algebra->print(s.at(static_cast<std::size_t>(n))) << "\n";
    return kOk;
  }

  int bbin_cmd() {
    mpq_class q = parse_rational(o_.target);
    std::vector<int> bits = binary_encode_rational(q, o_.n);
    std::string line;
    for (std::size_t i = 0; i < bits.size(); ++i) line += (i ? ", " : "") + std::to_string(bits[i]);
    out_ << line << "\n";
    Periodicity p = detect_eventually_periodic(binary_rational_stream(q), 4096);
    if (const auto* per = std::get_if<Periodic>(&p)) {
      out_ << "eventually periodic: k=" << per->k << " n=" << per->n << " period=" << per->n - per->k << "\n";
    }
    return kOk;
  }

  int check() {
    SpecFile spec = load(o_.target);
    int status = kOk;
    Classification c = classify(spec.system);
    out_ << "class: " << to_string(c.kind);
    if (c.kind == SystemKind::NonStd) out_ << " (" << to_string(c.nonstd) << ")";
    out_ << "\n";
    for (const auto& d : spec.defs) {
      GsosCheck g = validate_gsos(d);
      if (g.ok()) {
        out_ << "def " << d.name << ": gsos" << (g.sos ? " (sos)" : "") << "\n";
        continue;
      }
      status = kRefuted;
      for (const auto& v : g.violations) out_ << "def " << d.name << ": violation " << to_string(v.kind) << ": " << v.detail << "\n";
    }
    if (c.kind == SystemKind::EvenOdd) {
      ZeroConsistency z = check_zero_consistency(spec.system);
      out_ << "zero-consistent: " << (z.ok ? "yes" : "no, at " + z.state) << "\n";
      if (!z.ok) return kRefuted;
    }
    Solution sol = solve_spec(spec);
    for (const auto& v : sol.vars) {
      std::string line = prefix_of(sol.at(v), 3);
      out_ << v << ": " << line << "\n";
    }
    out_ << "productive: first 3 terms computed\n";
    return status;
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::BudgetExhausted:
    case ErrorKind::NonProductive: return kUnknown;
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownSymbol:
    case ErrorKind::ArityMismatch:
    case ErrorKind::MissingInitialValue:
    case ErrorKind::InvalidArgument: return kUsage;
    default: return kRefuted;
  }
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch == '\n' ? ' ' : ch;
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Stream differential equations: solve, evaluate, compare"};
  app.name("sde");
  app.require_subcommand(1, 1);
  app.add_option("-n", o.n, "number of elements to print")->capture_default_str();
  app.add_option("--budget", o.budget, "forcing budget per evaluation")->capture_default_str();
  app.add_option("--algebra", o.algebra, "override the algebra directive (Q, Z, F2, Fp(p), Bool, Nat, Tropical)");

  auto* solve = app.add_subcommand("solve", "print prefixes of the solution")->fallthrough();
  solve->add_option("target", o.target, "file.sde or file.sde#var")->required();
  auto* closed = app.add_subcommand("closed-form", "rational closed forms of a linear system")->fallthrough();
  closed->add_option("target", o.target, "file.sde or file.sde#var")->required();
  auto* eval = app.add_subcommand("eval", "evaluate a term over declared operators")->fallthrough();
  eval->add_option("--defs", o.defs, "file with operator definitions and equations");
  eval->add_option("--term", o.term, "term to evaluate")->required();
  auto* equiv = app.add_subcommand("equiv", "decide equality of two streams")->fallthrough();
  equiv->add_option("first", o.target, "file.sde#var")->required();
  equiv->add_option("second", o.second, "file.sde#var")->required();
  equiv->add_option("--up-to", o.up_to, "comma separated operators for the up-to closure");
  equiv->add_option("--prefix", o.prefix, "prefix compared before the proof search")->capture_default_str();
  equiv->add_option("--pairs", o.pairs, "relation size budget")->capture_default_str();
  auto* kernel = app.add_subcommand("kernel", "2-kernel automaton of a stream")->fallthrough();
  kernel->add_option("target", o.target, "file.sde#var")->required();
  auto* at = app.add_subcommand("at", "element at an index")->fallthrough();
  at->add_option("index", o.index, "index")->required();
  at->add_option("target", o.target, "file.sde#var")->required();
  auto* bbin = app.add_subcommand("bbin", "2-adic bits of a rational with odd denominator")->fallthrough();
  bbin->add_option("q", o.target, "rational such as 17/5")->required();
  auto* check = app.add_subcommand("check", "classify and validate a file, probe productivity")->fallthrough();
  check->add_option("file", o.target, "file.sde")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: kind=Usage message=\"" << escape(e.what()) << "\"\n";
    return kUsage;
  }

  Runner r(o, out);
  try {
    if (*solve) return r.solve();
    if (*closed) return r.closed_form();
    if (*eval) return r.eval();
    if (*equiv) return r.equiv();
    if (*kernel) return r.kernel();
    if (*at) return r.at();
    if (*bbin) return r.bbin_cmd();
    return r.check();
  } catch (const Error& e) {
    err << "error: kind=" << to_string(e.kind());
    if (e.index()) err << " index=" << *e.index();
    if (e.span()) err << " line=" << e.span()->line << " column=" << e.span()->column;
    err << " message=\"" << escape(e.what()) << "\"\n";
    return exit_code(e.kind());
  }
}

}  // namespace sde::cli
