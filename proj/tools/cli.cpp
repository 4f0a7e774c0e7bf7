#include "cli.hpp"

#include "edr/adequacy.hpp"
#include "edr/engine.hpp"
#include "edr/lab.hpp"
#include "edr/matrix.hpp"
#include "edr/rings.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace edr::cli {

using nlohmann::json;

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename into " + path + ": " + ec.message());
  }
}

namespace {

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

struct Output {
  std::ostream& out;
  std::ostream& err;
  std::string path;
  bool table = false;

  // JSON goes to --out when given, else to stdout unless a table was asked for.
  void emit(const json& doc) const {
    std::string text = doc.dump(2) + "\n";
    if (!path.empty())
      write_atomic(path, text);
    else if (!table)
      out << text;
  }
  // Human lines share stdout only when the JSON does not.
  std::ostream& human() const { return path.empty() && !table ? err : out; }
};

PropertyResult result_from_json(const std::string& id, const json& j) {
  PropertyResult r;
  r.id = id;
  r.verdict = j.at("verdict").get<bool>();
  if (j.contains("witness")) r.witness = j["witness"];
  if (j.contains("counterexample")) r.counterexample = j["counterexample"];
  if (j.contains("note")) r.note = j["note"].get<std::string>();
  return r;
}

void print_rows(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << std::left << std::setw(static_cast<int>(width[i])) << r[i];
      if (i + 1 < r.size()) os << "  ";
    }
    os << "\n";
  }
}

std::string diagonal_line(const RingMatrix& D) {
  std::string s = "D = diag(";
  std::size_t k = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < k; ++i) s += (i ? ", " : "") + D.ring()->format(D.at(i, i));
  return s + ")";
}

std::string chain_line(const RingMatrix& D) {
  std::string s = "chain:";
  std::size_t k = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < k; ++i) s += (i ? " | " : " ") + D.ring()->format(D.at(i, i));
  return s;
}

// ---- reduce ----

struct ReduceOpts {
  std::string matrix, strategy, verify;
};

int cmd_reduce(const ReduceOpts& o, const Output& io) {
  RingMatrix A = matrix_from_json(read_json(o.matrix));
  if (!o.verify.empty()) {
    json doc = read_json(o.verify);
    auto cert = certificate_from_json(A.ring(), doc);
    auto v = verify_certificate(A, cert);
    json res = {{"verified", v.verdict}};
    if (!v.verdict) res["violated"] = {{"invariant", v.note}, {"where", v.counterexample}};
    io.emit(res);
    io.human() << (v.verdict ? "certificate verified" : "certificate rejected: " + v.note) << "\n";
    return v.verdict ? kOk : kVerifyFailed;
  }
  Strategy s = o.strategy.empty() ? default_strategy(*A.ring()) : parse_strategy(o.strategy);
  ReductionCertificate cert;
  try {
    cert = diagonal_reduce(A, s);
  } catch (const ReductionFailed& e) {
    json doc = {{"ring", A.ring()->spec()}, {"error", e.what()}, {"witness", e.witness()}};
    io.emit(doc);
    io.human() << "reduction failed: " << e.what() << "\n" << e.witness().dump() << "\n";
    return kReductionFailed;
  }
  auto v = verify_certificate(A, cert);
  io.emit(certificate_json(cert, v.verdict));
  io.human() << diagonal_line(cert.D) << "\n" << chain_line(cert.D) << "\n";
  if (!v.verdict) io.human() << "verification failed: " << v.note << "\n";
  return v.verdict ? kOk : kVerifyFailed;
}

// ---- classify ----

struct ClassifyOpts {
  std::string spec, verify, export_table;
  std::size_t size_bound = kDefaultSizeBound;
};

void classify_table(std::ostream& os, const json& report) {
  os << report["ring_spec"].get<std::string>() << "\n";
  std::vector<std::vector<std::string>> rows{{"predicate", "verdict", "note"}};
  for (const auto& [id, r] : report["predicates"].items())
    rows.push_back({id, r["verdict"].get<bool>() ? "true" : "false", r.value("note", "")});
  print_rows(os, rows);
}

int cmd_classify(const ClassifyOpts& o, const Output& io) {
  if (!o.verify.empty()) {
    json doc = read_json(o.verify);
    if (!doc.contains("ring_spec") || !doc.contains("predicates")) throw ParseError("not a classification report");
    RingHandle ring = make_ring(doc["ring_spec"].get<std::string>());
    json fresh = classify(ring, o.size_bound).to_json();
    std::vector<std::string> problems;
    if (fresh != doc) problems.push_back("report differs from a fresh classification");
    if (ring->is_finite()) {
      WitnessVerifier v(ring);
      for (const auto& [id, r] : doc["predicates"].items()) {
        std::string msg = v.check(result_from_json(id, r));
        if (!msg.empty()) problems.push_back(id + ": " + msg);
      }
    }
    io.emit({{"verified", problems.empty()}, {"problems", problems}});
    for (const auto& p : problems) io.human() << p << "\n";
    io.human() << (problems.empty() ? "report verified" : "report rejected") << "\n";
    return problems.empty() ? kOk : kVerifyFailed;
  }
  if (o.spec.empty()) throw ParseError("classify needs a ring spec");
  RingHandle ring = make_ring(o.spec);
  if (!o.export_table.empty()) {
    if (!ring->is_finite()) throw Unsupported("only finite rings export to the table format");
    write_atomic(o.export_table, table_ring_json(tabulate(*ring, o.size_bound)).dump() + "\n");
  }
  json report = classify(ring, o.size_bound).to_json();
  io.emit(report);
  if (io.table) classify_table(io.out, report);
  return kOk;
}

// ---- adequate ----

struct AdequateOpts {
  std::string spec, c, a, variant = "classic", verify;
};

bool divides_power(Integer s, const Integer& a) {
  // rad(s) | rad(a): strip from s every factor shared with a.
  s = abs(s);
  for (Integer g = gcd(s, a); g != 1 && s != 1; g = gcd(s, a)) {
    if (a == 0) return true;
    s /= g;
  }
  return s == 1;
}

std::vector<std::string> check_adequate_doc(const json& doc) {
  std::vector<std::string> problems;
  RingHandle ring = make_ring(doc.at("ring").get<std::string>());
  const Ring& R = *ring;
  if (!doc.value("adequate", false)) return problems;
  const json& w = doc.at("witness");
  auto el = [&](const char* key) { return R.parse(w.at(key).get<std::string>()); };
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };
  if (R.is_finite()) {
    AdequateWitness aw;
    aw.variant = parse_variant(w.at("variant").get<std::string>());
    aw.c = el("c");
    aw.a = el("a");
    aw.r = el("r");
    aw.s = el("s");
    aw.p = el("p");
    aw.q = el("q");
    aw.j = w.contains("j") ? el("j") : R.zero();
    need(WitnessVerifier(ring).check_adequate(aw), "finite witness fails re-verification");
    return problems;
  }
  switch (R.kind()) {
    case RingKind::integers:
    case RingKind::localized: {
      Element c = el("c"), a = el("a"), r = el("r"), s = el("s"), p = el("p"), q = el("q");
      need(R.mul(r, s) == c, "c != r s");
      need(R.add(R.mul(r, p), R.mul(a, q)) == R.one(), "r p + a q != 1");
      if (R.kind() == RingKind::integers) {
        need(divides_power(s.as<Integer>(), a.as<Integer>()), "rad(s) does not divide rad(a)");
      } else {
        const auto& L = static_cast<const LocalizedRing&>(R);
        for (const auto& prime : L.primes())
          if (mpz_divisible_p(s.as<Fraction>().num.get_mpz_t(), prime.get_mpz_t()))
            need(mpz_divisible_p(a.as<Fraction>().num.get_mpz_t(), prime.get_mpz_t()) != 0,
                 "s has a prime of P not dividing a");
      }
      break;
    }
    case RingKind::dual_integers: {
      Element f = el("f"), h = el("h"), s = el("s"), t = el("t"), k = el("k"), l = el("l"), u = el("unit");
      need(R.mul(s, t) == f, "f != s t");
      need(R.add(R.mul(k, s), R.mul(l, h)) == u, "k s + l h != unit");
      need(R.inverse(u).has_value(), "unit is not invertible");
      break;
    }
    default:
      problems.push_back("no verifier for " + R.spec());
  }
  return problems;
}

int cmd_adequate(const AdequateOpts& o, const Output& io) {
  if (!o.verify.empty()) {
    auto problems = check_adequate_doc(read_json(o.verify));
    io.emit({{"verified", problems.empty()}, {"problems", problems}});
    for (const auto& p : problems) io.human() << p << "\n";
    return problems.empty() ? kOk : kVerifyFailed;
  }
  if (o.spec.empty() || o.c.empty() || o.a.empty()) throw ParseError("adequate needs <ring> <c> <a>");
  RingHandle ring = make_ring(o.spec);
  json doc = adequate_report(ring, ring->parse(o.c), ring->parse(o.a), parse_variant(o.variant));
  io.emit(doc);
  if (io.table) {
    std::vector<std::vector<std::string>> rows{{"field", "value"}};
    rows.push_back({"adequate", doc["adequate"].get<bool>() ? "true" : "false"});
    const json& payload = doc.contains("witness") ? doc["witness"] : doc["failure"];
    for (const auto& [k, v] : payload.items()) rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
    print_rows(io.out, rows);
  }
  return kOk;
}

// ---- check-theorems ----

struct TheoremOpts {
  std::vector<std::string> rings, checks;
  std::uint64_t seed = kDefaultSeed;
  std::size_t size_bound = kDefaultSizeBound;
  std::size_t samples_2x2 = 1000, samples_3x3 = 200;
  std::string verify;
};

void theorem_table(std::ostream& os, const json& report) {
  std::vector<std::vector<std::string>> rows{{"check", "aggregate", "exercised", "statement"}};
  for (const auto& r : report["results"])
    rows.push_back({r["id"].get<std::string>(), r["aggregate"].get<std::string>(),
                    std::to_string(r["rings_exercised"].get<std::size_t>()), r["statement"].get<std::string>()});
  print_rows(os, rows);
  const auto& s = report["summary"];
  os << "pass " << s["pass"] << ", fail " << s["fail"] << ", info " << s["info"] << "\n";
}

int cmd_check_theorems(const TheoremOpts& o, const Output& io) {
  if (!o.verify.empty()) {
    json doc = read_json(o.verify);
    if (!doc.contains("config")) throw ParseError("not a theorem report");
    json fresh = run_corpus(CorpusConfig::from_json(doc["config"]));
    bool same = fresh.dump() == doc.dump();
    bool clean = doc["summary"]["fail"] == 0;
    io.emit({{"reproduced", same}, {"all_pass", clean}});
    io.human() << (same ? "report reproduced" : "report does not reproduce") << "\n";
    return same && clean ? kOk : kVerifyFailed;
  }
  CorpusConfig cfg = default_corpus();
  if (!o.rings.empty()) cfg.rings = o.rings;
  cfg.checks = o.checks;
  cfg.seed = o.seed;
  cfg.size_bound = o.size_bound;
  cfg.samples_2x2 = o.samples_2x2;
  cfg.samples_3x3 = o.samples_3x3;
  json report = run_corpus(cfg);
  io.emit(report);
  if (io.table) theorem_table(io.out, report);
  return report["summary"]["fail"] == 0 ? kOk : kVerifyFailed;
}

// ---- case-study ----

int cmd_case_study(const std::string& name, const Output& io) {
  if (name != "zalpha") throw ParseError("unknown case study '" + name + "'");
  json doc = zalpha_case_study();
  io.emit(doc);
  if (io.table) {
    std::vector<std::vector<std::string>> rows{{"quotient", "alpha", "s'", "s", "s' | s"}};
    for (const auto& q : doc["quotients"])
      rows.push_back({q["ideal"].get<std::string>(), std::to_string(q["alpha_maps_to"].get<int>()),
                      q["s_prime_image"].get<std::string>(), q["s_image"].get<std::string>(),
                      q["s_prime_divides_s"].get<bool>() ? "yes" : "no"});
    print_rows(io.out, rows);
    io.out << "divides in Z[a]: " << (doc["in_ring"]["divides"].get<bool>() ? "yes" : "no") << "\n";
    io.out << "sign discrepancy: " << (doc["sign_discrepancy"].get<bool>() ? "yes" : "no") << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified diagonal reduction and adequacy checks over commutative rings", "edr"};
  app.require_subcommand(1, 1);
  std::string out_path;
  bool table = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Write JSON here (atomically)");
    sub->add_flag("--table", table, "Print a human-readable table");
  };

  ReduceOpts ro;
  auto* reduce = app.add_subcommand("reduce", "Diagonally reduce a matrix file with a certificate");
  reduce->add_option("matrix", ro.matrix, "Matrix JSON {ring, rows}")->required();
  reduce->add_option("--strategy", ro.strategy, "euclidean_Z | finite_search | zloc_structural");
  reduce->add_option("--verify", ro.verify, "Check this certificate against the matrix instead of reducing");
  common(reduce);

  ClassifyOpts co;
  auto* cls = app.add_subcommand("classify", "Evaluate every ring predicate");
  cls->add_option("ring", co.spec, "Ring spec");
  cls->add_option("--verify", co.verify, "Re-verify a classification report");
  cls->add_option("--export-table", co.export_table, "Also write the ring in table format");
  cls->add_option("--size-bound", co.size_bound, "Largest finite ring to enumerate");
  common(cls);

  AdequateOpts ao;
  auto* adq = app.add_subcommand("adequate", "Adequacy witness for c against a");
  adq->add_option("ring", ao.spec, "Ring spec");
  adq->add_option("c", ao.c, "Element c");
  adq->add_option("a", ao.a, "Element a");
  adq->add_option("--variant", ao.variant, "classic | feckly | cvariant")
      ->check(CLI::IsMember({"classic", "feckly", "cvariant"}));
  adq->add_option("--verify", ao.verify, "Re-verify a witness file");
  common(adq);

  TheoremOpts to;
  auto* thm = app.add_subcommand("check-theorems", "Run the corpus checks");
  thm->add_option("--rings", to.rings, "Ring specs (default: built-in corpus)")->delimiter(';');
  thm->add_option("--checks", to.checks, "Check ids to run (default: all)")->delimiter(',');
  thm->add_option("--seed", to.seed, "Random seed");
  thm->add_option("--size-bound", to.size_bound, "Largest finite ring to enumerate");
  thm->add_option("--samples-2x2", to.samples_2x2, "Random 2x2 matrices per ring");
  thm->add_option("--samples-3x3", to.samples_3x3, "Random 3x3 matrices per ring");
  thm->add_option("--verify", to.verify, "Re-run a report's config and compare");
  common(thm);

  std::string study = "zalpha";
  auto* cs = app.add_subcommand("case-study", "Worked examples");
  cs->add_option("name", study, "Case study name (zalpha)");
  common(cs);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "edr: " << e.what() << "\n";
    return kParse;
  }

  Output io{out, err, out_path, table};
  try {
    if (*reduce) return cmd_reduce(ro, io);
    if (*cls) return cmd_classify(co, io);
    if (*adq) return cmd_adequate(ao, io);
    if (*thm) return cmd_check_theorems(to, io);
    return cmd_case_study(study, io);
  } catch (const ReductionFailed& e) {
    err << "edr: " << e.what() << "\n";
    return kReductionFailed;
  } catch (const ParseError& e) {
    err << "edr: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const AxiomViolation& e) {
    err << "edr: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const TooLarge& e) {
    err << "edr: too large: " << e.what() << "\n";
    return kTooLarge;
  } catch (const Error& e) {
    err << "edr: unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::exception& e) {
    err << "edr: " << e.what() << "\n";
    return kVerifyFailed;
  }
}

}  // namespace edr::cli
