// mills_cli: evaluate the Mills ratio, tabulate bounds and verify claims.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mills/mills.hpp"

namespace {

using mills::Enclosure;
using mills::json;
using mills::Rational;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_precision() {
  if (const char* env = std::getenv("MILLS_DEFAULT_PRECISION")) {
    try {
      int p = std::stoi(env);
      if (p > 0 && p <= 10000) return p;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring MILLS_DEFAULT_PRECISION=" << env << "\n";
  }
  return 30;
}

Rational parse_nonnegative(const std::string& s) {
  Rational x = mills::parse_rational(s);
  if (x < 0) throw UsageError("x must be >= 0, got " + s);
  return x;
}

std::vector<Rational> parse_xs(const std::vector<std::string>& xs, const std::string& range) {
  std::vector<Rational> out;
  for (const auto& item : xs) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) out.push_back(parse_nonnegative(tok));
    }
  }
  if (!range.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(range);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw UsageError("--range expects a:b:n");
    Rational a = parse_nonnegative(parts[0]), b = parse_nonnegative(parts[1]);
    long n = std::stol(parts[2]);
    if (n < 1 || b < a) throw UsageError("--range expects a <= b and n >= 1");
    for (long i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * Rational(i) / Rational(n - 1));
  }
  if (out.empty()) throw UsageError("no evaluation points (use --xs or --range)");
  return out;
}

std::pair<mills::ExtendedRational, mills::ExtendedRational> parse_interval(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("--interval expects a:b");
  return {mills::parse_extended(s.substr(0, colon)), mills::parse_extended(s.substr(colon + 1))};
}

/// Enclosure snapped outward to 10^-digits so that the printed decimals are
/// the exact endpoints.
Enclosure snapped(const Enclosure& e, int digits) { return e.rounded_outward(mills::pow10_integer(digits)); }

std::string dec(const Rational& q, int digits) { return mills::to_decimal(q, digits, 0); }

json enclosure_json(const Enclosure& e, int digits) {
  Enclosure s = snapped(e, digits);
  return {{"lo", dec(s.lo(), digits)}, {"hi", dec(s.hi(), digits)}};
}

// A column of `table`: f itself, a catalog bound, Q{n}P{n} or J{n}.
struct Column {
  std::string name;
  enum class Kind { convergent, asymptotic, catalog } kind;
  unsigned n = 0;
  const mills::BoundSpec* spec = nullptr;
};

Column parse_column(const std::string& id) {
  auto number_after = [&](std::size_t pos, std::size_t len) -> std::optional<unsigned> {
    std::string digits = id.substr(pos, len);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) return std::nullopt;
    return static_cast<unsigned>(std::stoul(digits));
  };
  if (id.size() > 1 && (id[0] == 'J' || id[0] == 'j')) {
    if (auto n = number_after(1, std::string::npos)) return {id, Column::Kind::asymptotic, *n, nullptr};
  }
  if (id.size() > 3 && (id[0] == 'Q' || id[0] == 'q')) {
    auto p = id.find_first_of("Pp", 1);
    if (p != std::string::npos) {
      auto a = number_after(1, p - 1), b = number_after(p + 1, std::string::npos);
      if (a && b && *a == *b) return {id, Column::Kind::convergent, *a, nullptr};
    }
  }
  if (const auto* s = mills::find_bound(id)) return {id, Column::Kind::catalog, 0, s};
  throw UsageError("unknown bound id '" + id + "'");
}

std::optional<Enclosure> column_value(const Column& c, const Rational& x, int precision) {
  switch (c.kind) {
    case Column::Kind::convergent: {
      if (mills::pq_values(c.n, x).first == 0) return std::nullopt;
      return Enclosure(mills::convergent_eval(c.n, x));
    }
    case Column::Kind::asymptotic:
      if (x == 0) return std::nullopt;
      return Enclosure(mills::jn_eval(c.n, x));
    case Column::Kind::catalog:
      if (c.spec->positive_domain && x == 0) return std::nullopt;
      return mills::eval_bound(*c.spec, x, precision);
  }
  return std::nullopt;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string x;
  std::string width = "1e-12";
  unsigned derivative = 0;
  std::string format = "human";
};

int cmd_eval(const EvalArgs& a) {
  const Rational x = parse_nonnegative(a.x);
  const Rational width = mills::parse_rational(a.width);
  if (width <= 0) throw UsageError("--width must be positive");
  const int digits = mills::digits_for_width(width) + 2;
  Enclosure e = mills::mills_derivative_enclosure({x, width, a.derivative});
  const std::string label = a.derivative == 0 ? "f(" + a.x + ")" : "f^(" + std::to_string(a.derivative) + ")(" + a.x + ")";
  if (a.format == "json") {
    json j = {{"x", x.get_str()}, {"derivative", a.derivative}, {"width", width.get_str()}};
    j["enclosure"] = enclosure_json(e, digits);
    j["exact"] = {{"lo", e.lo().get_str()}, {"hi", e.hi().get_str()}};
    std::cout << j.dump(2) << "\n";
  } else if (a.format == "csv") {
    Enclosure s = snapped(e, digits);
    std::cout << "x,derivative,lo,hi\n" << a.x << "," << a.derivative << "," << dec(s.lo(), digits) << ","
              << dec(s.hi(), digits) << "\n";
  } else {
    std::cout << label << " ∈ " << mills::to_decimal(e, digits) << "\n";
  }
  return kExitOk;
}

struct TableArgs {
  std::vector<std::string> xs;
  std::string range;
  std::vector<std::string> bounds;
  std::string width = "1e-12";
  std::string format = "csv";
};

int cmd_table(const TableArgs& a, int precision) {
  const auto xs = parse_xs(a.xs, a.range);
  std::vector<Column> cols;
  for (const auto& item : a.bounds) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) cols.push_back(parse_column(tok));
  }
  const Rational width = mills::parse_rational(a.width);
  if (width <= 0) throw UsageError("--width must be positive");
  const int digits = mills::digits_for_width(width) + 2;

  json rows = json::array();
  if (a.format == "csv") {
    std::cout << "x,f_lo,f_hi";
    for (const auto& c : cols) std::cout << "," << csv_escape(c.name + "_lo") << "," << csv_escape(c.name + "_hi");
    std::cout << "\n";
  }
  for (const auto& x : xs) {
    Enclosure f = snapped(mills::mills_enclosure(x, width), digits);
    std::vector<std::optional<Enclosure>> vals;
    for (const auto& c : cols) {
      auto v = column_value(c, x, precision);
      vals.push_back(v ? std::optional<Enclosure>(snapped(*v, digits)) : std::nullopt);
    }
    if (a.format == "csv") {
      std::cout << x.get_str() << "," << dec(f.lo(), digits) << "," << dec(f.hi(), digits);
      for (const auto& v : vals) {
        if (v) std::cout << "," << dec(v->lo(), digits) << "," << dec(v->hi(), digits);
        else std::cout << ",,";
      }
      std::cout << "\n";
    } else if (a.format == "json") {
      json row = {{"x", x.get_str()}, {"f", enclosure_json(f, digits)}};
      json b = json::object();
      for (std::size_t i = 0; i < cols.size(); ++i) b[cols[i].name] = vals[i] ? enclosure_json(*vals[i], digits) : json(nullptr);
      row["bounds"] = b;
      rows.push_back(row);
    } else {
      std::cout << "x = " << x.get_str() << "  f ∈ " << mills::to_decimal(f, digits) << "\n";
      for (std::size_t i = 0; i < cols.size(); ++i)
        std::cout << "  " << cols[i].name << " " << (vals[i] ? "∈ " + mills::to_decimal(*vals[i], digits) : "undefined") << "\n";
    }
  }
  if (a.format == "json") std::cout << json{{"rows", rows}}.dump(2) << "\n";
  return kExitOk;
}

int cmd_bounds_list(const std::string& format) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& s : mills::catalog()) arr.push_back(mills::bound_to_json(s));
    std::cout << arr.dump(2) << "\n";
    return kExitOk;
  }
  if (format == "csv") std::cout << "id,family,side,target,coincidence,formula\n";
  for (const auto& s : mills::catalog()) {
    std::string co = s.coincidence ? "(" + std::to_string(s.coincidence->i) + "," + std::to_string(s.coincidence->j) + ")" : "-";
    if (format == "csv") {
      std::cout << s.id << "," << mills::to_string(s.family) << "," << mills::to_string(s.side) << ","
                << (s.target == mills::BoundTarget::mills ? "f" : "Q") << "," << csv_escape(co) << "," << csv_escape(s.formula)
                << "\n";
    } else {
      std::cout << std::left << std::setw(18) << s.id << std::setw(8) << mills::to_string(s.side) << std::setw(6) << co
                << s.formula << "\n";
    }
  }
  return kExitOk;
}

int cmd_bounds_eval(const std::string& id, const TableArgs& a, int precision) {
  const auto& spec = mills::lookup_bound(id);
  const auto xs = parse_xs(a.xs, a.range);
  const Rational width = mills::parse_rational(a.width);
  if (width <= 0) throw UsageError("--width must be positive");
  const int digits = mills::digits_for_width(width) + 2;
  const char* target = spec.target == mills::BoundTarget::mills ? "f" : "Q";
  json rows = json::array();
  if (a.format == "csv") std::cout << "x,bound_lo,bound_hi," << target << "_lo," << target << "_hi\n";
  for (const auto& x : xs) {
    Enclosure t = snapped(mills::target_enclosure(spec, x, width), digits);
    std::optional<Enclosure> b;
    if (!(spec.positive_domain && x == 0)) b = snapped(mills::eval_bound(spec, x, precision), digits);
    if (a.format == "csv") {
      std::cout << x.get_str() << "," << (b ? dec(b->lo(), digits) : "") << "," << (b ? dec(b->hi(), digits) : "") << ","
                << dec(t.lo(), digits) << "," << dec(t.hi(), digits) << "\n";
    } else if (a.format == "json") {
      rows.push_back({{"x", x.get_str()}, {"bound", b ? enclosure_json(*b, digits) : json(nullptr)}, {target, enclosure_json(t, digits)}});
    } else {
      std::cout << "x = " << x.get_str() << "  " << spec.id << " " << (b ? "∈ " + mills::to_decimal(*b, digits) : "undefined")
                << "  " << target << " ∈ " << mills::to_decimal(t, digits) << "\n";
    }
  }
  if (a.format == "json") std::cout << json{{"id", spec.id}, {"rows", rows}}.dump(2) << "\n";
  return kExitOk;
}

struct GapArgs {
  std::string upper, lower;
  std::size_t grid = 4096;
  std::string tol = "1e-6";
  std::string certify;
  std::string format = "human";
};

int cmd_bounds_gap(const GapArgs& a) {
  const auto& up = mills::lookup_bound(a.upper);
  const auto& lo = mills::lookup_bound(a.lower);
  if (a.grid < 2) throw UsageError("--grid must be at least 2");
  auto r = mills::gap(up, lo, a.grid, mills::parse_rational(a.tol));
  std::optional<mills::GapCertificate> cert;
  if (!a.certify.empty()) cert = mills::certify_sup_gap(up, lo, mills::parse_rational(a.certify));
  if (a.format == "json") {
    json j = {{"upper", r.upper_id},
              {"lower", r.lower_id},
              {"grid", r.grid},
              {"sup_gap", dec(r.sup_gap, 8)},
              {"argmax", dec(r.argmax, 8)},
              {"argmax_interval", {dec(r.argmax_interval.lo, 8), dec(r.argmax_interval.hi, 8)}}};
    if (cert)
      j["certificate"] = {{"constant", cert->constant.get_str()},
                          {"proved", cert->proved},
                          {"cells", cert->cells},
                          {"tail_start", cert->tail_start.get_str()},
                          {"reason", cert->reason}};
    std::cout << j.dump(2) << "\n";
  } else if (a.format == "csv") {
    std::cout << "upper,lower,grid,sup_gap,argmax,argmax_lo,argmax_hi\n"
              << r.upper_id << "," << r.lower_id << "," << r.grid << "," << dec(r.sup_gap, 8) << "," << dec(r.argmax, 8) << ","
              << dec(r.argmax_interval.lo, 8) << "," << dec(r.argmax_interval.hi, 8) << "\n";
  } else {
    std::cout << r.upper_id << " - " << r.lower_id << ": sup gap " << dec(r.sup_gap, 8) << " at x ≈ " << dec(r.argmax, 6)
              << " (argmax in [" << dec(r.argmax_interval.lo, 6) << ", " << dec(r.argmax_interval.hi, 6) << "])\n";
    if (cert)
      std::cout << "certificate: sup gap < " << cert->constant.get_str() << " " << (cert->proved ? "PROVED" : "NOT PROVED")
                << " (" << cert->cells << " cells)" << (cert->reason.empty() ? "" : ": " + cert->reason) << "\n";
  }
  return cert && !cert->proved ? kExitFailed : kExitOk;
}

struct VerifyArgs {
  std::vector<std::string> ids;
  bool all = false;
  std::string file;
  std::string format = "human";
  unsigned jobs = 0;
  bool no_escalate = false;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<mills::Claim> claims;
  if (a.all)
    for (const auto& c : mills::builtin_claims()) claims.push_back(c);
  if (!a.file.empty()) {
    std::ifstream in(a.file);
    if (!in) throw UsageError("cannot open " + a.file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(std::string("claim file is not valid JSON: ") + e.what());
    }
    try {
      for (auto& c : mills::claims_from_json(j)) claims.push_back(std::move(c));
    } catch (const json::exception& e) {
      throw UsageError(std::string("malformed claim file: ") + e.what());
    }
  }
  for (const auto& id : a.ids) {
    const auto* c = mills::find_claim(id);
    if (!c) throw UsageError("unknown claim id '" + id + "'");
    claims.push_back(*c);
  }
  if (claims.empty()) throw UsageError("nothing to verify (give claim ids, --all or --file)");
  std::sort(claims.begin(), claims.end(), [](const auto& x, const auto& y) { return x.id < y.id; });

  mills::VerifyOptions opt;
  opt.escalate = !a.no_escalate;
  std::vector<mills::Certificate> certs(claims.size());
  std::atomic<std::size_t> next{0};
  unsigned workers = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(claims.size()));
  auto work = [&] {
    for (std::size_t i; (i = next++) < claims.size();) {
      try {
        certs[i] = mills::verify_claim(claims[i], opt);
      } catch (const std::exception& e) {
        certs[i].claim_id = claims[i].id;
        certs[i].verdict = mills::Verdict::indeterminate;
        certs[i].hint = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  bool all_proved = true;
  json out = json::array();
  for (const auto& c : certs) {
    all_proved = all_proved && c.verdict == mills::Verdict::proved;
    if (a.format == "json") {
      out.push_back(mills::certificate_to_json(c));
    } else {
      std::cout << std::left << std::setw(26) << c.claim_id << " " << std::setw(13) << mills::to_string(c.verdict)
                << std::fixed << std::setprecision(3) << c.seconds << " s";
      if (!c.hint.empty() && c.verdict != mills::Verdict::proved) std::cout << "  (" << c.hint << ")";
      std::cout << "\n";
    }
  }
  if (a.format == "json") std::cout << (certs.size() == 1 ? out[0] : out).dump(2) << "\n";
  return all_proved ? kExitOk : kExitFailed;
}

struct SturmArgs {
  std::string poly;
  std::string interval = "-inf:+inf";
  std::string action = "count";
  std::string width = "1/1000";
  std::string format = "human";
};

int cmd_sturm(const SturmArgs& a) {
  mills::Polynomial p;
  try {
    const std::string& s = a.poly;
    auto first = s.find_first_not_of(" \t\n");
    if (first != std::string::npos && s[first] == '[') p = mills::polynomial_from_json(json::parse(s));
    else p = mills::parse_polynomial(s);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed polynomial: ") + e.what());
  } catch (const mills::ParseError& e) {
    throw UsageError(std::string("malformed polynomial: ") + e.what());
  }
  if (p.is_zero()) throw UsageError("the zero polynomial has no Sturm sequence");
  auto [lo, hi] = parse_interval(a.interval);
  if (!(lo < hi)) throw UsageError("--interval needs a < b");
  json j = {{"polynomial", mills::to_string(p)}, {"interval", {lo.to_string(), hi.to_string()}}, {"action", a.action}};
  std::string human;
  if (a.action == "count") {
    int n = mills::count_roots(p, lo, hi);
    j["roots"] = n;
    human = std::to_string(n);
  } else if (a.action == "isolate") {
    const Rational w = mills::parse_rational(a.width);
    if (w <= 0) throw UsageError("--width must be positive");
    auto roots = mills::isolate_roots(p, lo, hi, w);
    j["intervals"] = mills::roots_to_json(roots);
    for (const auto& r : roots)
      human += "[" + r.lo.get_str() + ", " + r.hi.get_str() + "]  ≈ [" + dec(r.lo, 6) + ", " + dec(r.hi, 6) + "]\n";
    if (roots.empty()) human = "no roots\n";
    human.pop_back();
  } else if (a.action == "positive") {
    bool pos = mills::is_positive_on(p, lo, hi);
    j["positive"] = pos;
    human = pos ? "positive" : "not positive";
  } else if (a.action == "sequence") {
    auto seq = mills::sturm_sequence(p);
    json polys = json::array();
    for (const auto& q : seq.polys) {
      polys.push_back(mills::to_string(q));
      human += mills::to_string(q) + "\n";
    }
    j["sequence"] = polys;
    auto vl = mills::sign_changes(seq, lo), vh = mills::sign_changes(seq, hi);
    j["changes"] = {vl.changes, vh.changes};
    human += "V(" + lo.to_string() + ") = " + std::to_string(vl.changes) + ", V(" + hi.to_string() +
             ") = " + std::to_string(vh.changes);
  } else {
    throw UsageError("unknown sturm action '" + a.action + "'");
  }
  if (a.format == "json") std::cout << j.dump(2) << "\n";
  else std::cout << human << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mills ratio toolkit: certified evaluation, bounds and positivity proofs"};
  app.require_subcommand(1);
  const std::vector<std::string> formats = {"human", "json", "csv"};

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Enclose f(x) or a derivative");
  eval->add_option("x", ea.x, "Point x >= 0 (decimal or p/q)")->required();
  eval->add_option("--width", ea.width, "Maximum enclosure width");
  eval->add_option("--derivative,-d", ea.derivative, "Derivative order");
  eval->add_option("--format", ea.format)->check(CLI::IsMember(formats));

  TableArgs ta;
  auto* table = app.add_subcommand("table", "Tabulate f and bounds");
  table->add_option("--xs", ta.xs, "Comma-separated points");
  table->add_option("--range", ta.range, "a:b:n equally spaced points");
  table->add_option("--bounds", ta.bounds, "Catalog ids, Q<n>P<n> or J<n>");
  table->add_option("--width", ta.width);
  table->add_option("--format", ta.format)->check(CLI::IsMember(formats));

  auto* bounds = app.add_subcommand("bounds", "Bounds catalog");
  bounds->require_subcommand(1);
  std::string list_format = "human";
  auto* blist = bounds->add_subcommand("list", "List catalog entries");
  blist->add_option("--format", list_format)->check(CLI::IsMember(formats));
  std::string beval_id;
  TableArgs ba;
  ba.format = "human";
  auto* beval = bounds->add_subcommand("eval", "Evaluate one bound against the oracle");
  beval->add_option("id", beval_id)->required();
  beval->add_option("--xs", ba.xs);
  beval->add_option("--range", ba.range);
  beval->add_option("--width", ba.width);
  beval->add_option("--format", ba.format)->check(CLI::IsMember(formats));
  GapArgs ga;
  auto* bgap = bounds->add_subcommand("gap", "Measure sup(upper - lower) over x >= 0");
  bgap->add_option("upper", ga.upper)->required();
  bgap->add_option("lower", ga.lower)->required();
  bgap->add_option("--grid", ga.grid);
  bgap->add_option("--tol", ga.tol, "Refinement tolerance");
  bgap->add_option("--certify", ga.certify, "Also prove sup gap < this constant");
  bgap->add_option("--format", ga.format)->check(CLI::IsMember(formats));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Prove claims by polynomial positivity");
  verify->add_option("ids", va.ids, "Claim ids");
  verify->add_flag("--all", va.all, "All built-in claims");
  verify->add_option("--file", va.file, "Claims JSON file");
  verify->add_option("--jobs,-j", va.jobs, "Worker threads");
  verify->add_flag("--no-escalate", va.no_escalate, "Do not refine failing pieces");
  verify->add_option("--format", va.format)->check(CLI::IsMember(std::vector<std::string>{"human", "json"}));

  SturmArgs sa;
  auto* sturm = app.add_subcommand("sturm", "Sturm root counting and isolation");
  sturm->add_option("action", sa.action, "count | isolate | positive | sequence");
  sturm->add_option("--poly", sa.poly, "\"c_k x^k + ... + c_0\" or a JSON array of terms")->required();
  sturm->add_option("--interval", sa.interval, "a:b, endpoints may be -inf/inf");
  sturm->add_option("--width", sa.width, "Isolation width");
  sturm->add_option("--format", sa.format)->check(CLI::IsMember(std::vector<std::string>{"human", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const int precision = default_precision();
    if (*eval) return cmd_eval(ea);
    if (*table) return cmd_table(ta, precision);
    if (*blist) return cmd_bounds_list(list_format);
    if (*beval) return cmd_bounds_eval(beval_id, ba, precision);
    if (*bgap) return cmd_bounds_gap(ga);
    if (*verify) return cmd_verify(va);
    if (*sturm) return cmd_sturm(sa);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mills::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
