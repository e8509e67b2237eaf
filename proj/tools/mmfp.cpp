#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmfp/cache.hpp"
#include "mmfp/verifier.hpp"

using nlohmann::json;

namespace {

struct Common {
  std::uint64_t p = 5;
  std::string format = "text";
  std::string cache_dir;
  std::string source = "eisenstein:4";
  std::uint64_t prime_bound = 37;
};

mmfp::SourceSpec parse_source(const std::string& text, const mmfp::Prime& p) {
  if (text == "delta") return mmfp::SourceSpec::delta();
  if (text.rfind("eisenstein:", 0) == 0)
    return mmfp::SourceSpec::eisenstein(std::stoi(text.substr(11)));
  if (text.rfind("file:", 0) == 0) {
    std::ifstream in(text.substr(5));
    if (!in) mmfp::raise(mmfp::errc::invalid_argument, "cannot open " + text.substr(5));
    json j = json::parse(in);
    if (j.at("p").get<std::uint64_t>() != p.value())
      mmfp::raise(mmfp::errc::field_mismatch, "series file is mod a different prime");
    int weight = j.at("weight").get<int>();
    mmfp::ExtensionField F(p, 1);
    std::vector<std::uint64_t> flat;
    for (const auto& c : j.at("coefficients")) {
      std::uint64_t v = c.is_string() ? std::stoull(c.get<std::string>())
                                      : c.get<std::uint64_t>();
      flat.push_back(v % p.value());
    }
    return mmfp::SourceSpec::from_series(mmfp::QSeries(F.tag(), weight, std::move(flat)));
  }
  mmfp::raise(mmfp::errc::invalid_argument,
              "source must be eisenstein:K, delta, or file:PATH");
}

std::optional<mmfp::SpaceProvider> make_provider(const Common& opt, const mmfp::Prime& p) {
  std::string dir = opt.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("MMFP_CACHE_DIR")) dir = env;
  if (dir.empty()) return std::nullopt;
  return mmfp::caching_provider(p, dir);
}

json value_to_json(const mmfp::FieldElement& v) {
  if (v.tag().d == 1) return std::to_string(v.c0());
  return json::array({std::to_string(v.c0()), std::to_string(v.c1())});
}

json field_to_json(const mmfp::FieldTag& tag) {
  json j;
  j["p"] = tag.p;
  j["d"] = tag.d;
  if (tag.d == 2)
    j["modulus"] = json::array(
        {std::to_string(tag.m0), std::to_string(tag.m1), "1"});  // ascending coefficients
  return j;
}

json eigensystem_to_json(const mmfp::Eigensystem& phi) {
  json values = json::array();
  for (const auto& [ell, v] : phi.values) values.push_back(json::array({ell, value_to_json(v)}));
  json j;
  j["field"] = field_to_json(phi.field);
  j["values"] = std::move(values);
  return j;
}

json qexpansion_to_json(const mmfp::QSeries& f, std::size_t limit = 38) {
  json j = json::array();
  for (std::size_t n = 0; n < std::min(limit, f.precision()); ++n)
    j.push_back(value_to_json(f.coeff(n)));
  return j;
}

std::string eigensystem_text(const mmfp::Eigensystem& phi) {
  std::string out = "(";
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    if (i) out += ",";
    out += phi.values[i].second.str();
  }
  return out + ")";
}

std::string expansion_text(const mmfp::QSeries& f, std::size_t limit = 13) {
  std::string out;
  bool first = true;
  for (std::size_t n = 0; n < std::min(limit, f.precision()); ++n) {
    mmfp::FieldElement c = f.coeff(n);
    if (c.is_zero()) continue;
    if (!first) out += " + ";
    first = false;
    std::string coeff = c.str();
    if (n == 0) {
      out += coeff;
    } else {
      if (coeff != "1") out += coeff + "*";
      out += "q";
      if (n > 1) out += "^" + std::to_string(n);
    }
  }
  if (first) out = "0";
  return out + " + O(q^" + std::to_string(std::min(limit, f.precision())) + ")";
}

json verdict_to_json(const mmfp::Verdict& v) {
  json j;
  j["p"] = v.p;
  j["source"] = v.source;
  j["filtration"] = v.filtration;
  j["eigensystem"] = eigensystem_to_json(v.phi);
  j["matched_weight"] = v.matched_weight;
  j["qexpansion"] = qexpansion_to_json(v.matched.eigenform);
  j["primes"] = v.primes;
  j["precision"] = v.precision;
  j["source_is_cuspidal"] = v.source_is_cuspidal;
  j["matched_resolved"] = v.matched.resolved;
  j["match_multiplicity"] = v.match_multiplicity;
  j["matched_field"] = field_to_json(v.matched.system.field);
  return j;
}

int run_basis(const Common& opt, int k, std::size_t prec, bool cuspidal) {
  mmfp::Prime p(opt.p);
  if (prec == 0) prec = mmfp::sturm_bound(k) + 1;
  auto provider = make_provider(opt, p);
  mmfp::FormSpace space = provider ? (*provider)(k, cuspidal, prec)
                                   : mmfp::miller_basis(k, p, prec, cuspidal);
  if (opt.format == "json") {
    mmfp::CacheEntry e = mmfp::to_cache_entry(space);
    json rows = json::array();
    for (const auto& row : e.rows) {
      json r = json::array();
      for (std::uint64_t x : row) r.push_back(std::to_string(x));
      rows.push_back(std::move(r));
    }
    json j;
    j["p"] = e.p;
    j["k"] = e.k;
    j["cuspidal"] = e.cuspidal;
    j["precision"] = e.precision;
    j["dimension"] = e.rows.size();
    j["rows"] = std::move(rows);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (cuspidal ? "S_" : "M_") << k << " mod " << opt.p << ": dimension "
              << space.dimension() << ", precision " << space.precision() << "\n";
    for (std::size_t i = 0; i < space.dimension(); ++i)
      std::cout << "  " << expansion_text(space.row_series(i), space.precision()) << "\n";
  }
  return 0;
}

int run_hecke_matrix(const Common& opt, int k, std::uint64_t ell, std::size_t prec,
                     bool cuspidal) {
  mmfp::Prime p(opt.p);
  if (prec == 0) prec = ell * (mmfp::sturm_bound(k) + 1) + 1;
  auto provider = make_provider(opt, p);
  mmfp::FormSpace space = provider ? (*provider)(k, cuspidal, prec)
                                   : mmfp::miller_basis(k, p, prec, cuspidal);
  mmfp::HeckeMatrix t = mmfp::hecke_matrix(space, ell);
  if (opt.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < t.entries.rows(); ++i) {
      json r = json::array();
      for (std::size_t j = 0; j < t.entries.cols(); ++j)
        r.push_back(value_to_json(t.entries.at(i, j)));
      rows.push_back(std::move(r));
    }
    json j;
    j["p"] = opt.p;
    j["k"] = k;
    j["ell"] = ell;
    j["cuspidal"] = cuspidal;
    j["matrix"] = std::move(rows);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "T_" << ell << " on " << (cuspidal ? "S_" : "M_") << k << " mod " << opt.p
              << ":\n";
    for (std::size_t i = 0; i < t.entries.rows(); ++i) {
      std::cout << "  [";
      for (std::size_t j = 0; j < t.entries.cols(); ++j)
        std::cout << (j ? " " : "") << t.entries.at(i, j).str();
      std::cout << "]\n";
    }
  }
  return 0;
}

int run_eigensystems(const Common& opt, int k, bool cuspidal) {
  mmfp::Prime p(opt.p);
  std::vector<std::uint64_t> primes = mmfp::primes_up_to(opt.prime_bound, opt.p);
  std::uint64_t ell_max = primes.empty() ? 2 : primes.back();
  std::size_t prec = ell_max * (mmfp::sturm_bound(k) + 1) + 1;
  auto provider = make_provider(opt, p);
  mmfp::FormSpace space = provider ? (*provider)(k, cuspidal, prec)
                                   : mmfp::miller_basis(k, p, prec, cuspidal);
  auto records = mmfp::decompose_eigensystems(space, primes);
  if (opt.format == "json") {
    json recs = json::array();
    for (const auto& rec : records) {
      json r;
      r["resolved"] = rec.resolved;
      r["subspace_dim"] = rec.subspace_dim;
      r["cuspidal"] = rec.cuspidal;
      r["eigensystem"] = eigensystem_to_json(rec.system);
      r["qexpansion"] = qexpansion_to_json(rec.eigenform);
      recs.push_back(std::move(r));
    }
    json j;
    j["p"] = opt.p;
    j["k"] = k;
    j["cuspidal"] = cuspidal;
    j["primes"] = primes;
    j["records"] = std::move(recs);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (cuspidal ? "S_" : "M_") << k << " mod " << opt.p << " under T_ell, ell <= "
              << opt.prime_bound << ":\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& rec = records[i];
      std::cout << "  #" << i << (rec.resolved ? " resolved " : " unresolved ") << "dim "
                << rec.subspace_dim << " eigensystem " << eigensystem_text(rec.system) << "  "
                << expansion_text(rec.eigenform) << "\n";
    }
  }
  return 0;
}

int run_filtration(const Common& opt) {
  mmfp::Prime p(opt.p);
  mmfp::SourceSpec src = parse_source(opt.source, p);
  std::size_t prec = mmfp::sturm_bound(src.weight()) + 2;
  mmfp::QSeries f = src.kind == mmfp::SourceSpec::Kind::eisenstein
                        ? mmfp::eisenstein_qexp(src.k, p, prec)
                    : src.kind == mmfp::SourceSpec::Kind::delta
                        ? mmfp::delta_qexp(p, prec)
                        : *src.series;
  auto provider = make_provider(opt, p);
  mmfp::FiltrationReport fr =
      mmfp::filtration(f, p, provider ? &*provider : nullptr);
  if (opt.format == "json") {
    json witness = json::array();
    for (const auto& c : fr.witness) witness.push_back(value_to_json(c));
    json j;
    j["p"] = opt.p;
    j["source"] = src.describe();
    j["weight"] = fr.input_weight;
    j["filtration"] = fr.filtration;
    j["witness"] = std::move(witness);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "filtration = " << fr.filtration << "\n";
  }
  return 0;
}

int run_verify(const Common& opt) {
  mmfp::Prime p(opt.p);
  mmfp::SourceSpec src = parse_source(opt.source, p);
  auto provider = make_provider(opt, p);
  mmfp::Verdict v =
      mmfp::verify_theorem(p, src, opt.prime_bound, provider ? &*provider : nullptr);
  if (opt.format == "json") {
    std::cout << verdict_to_json(v).dump() << "\n";
  } else {
    std::cout << "source " << v.source << " mod " << v.p << "\n"
              << "  filtration  = " << v.filtration << "\n"
              << "  eigensystem = " << eigensystem_text(v.phi) << " at ell = (";
    for (std::size_t i = 0; i < v.primes.size(); ++i)
      std::cout << (i ? "," : "") << v.primes[i];
    std::cout << ")\n"
              << "  cuspidal match in S_" << v.matched_weight << " (shift "
              << v.matched_weight - v.filtration << ")\n"
              << "  matched form: " << expansion_text(v.matched.eigenform) << "\n";
    if (!v.matched.resolved)
      std::cout << "  note: eigensystem shared by a " << v.matched.subspace_dim
                << "-dimensional subspace\n";
  }
  return 0;
}

int run_corollary(const Common& opt, int k_max) {
  mmfp::Prime p(opt.p);
  auto provider = make_provider(opt, p);
  mmfp::CorollaryReport report =
      mmfp::corollary_sweep(p, k_max, opt.prime_bound, provider ? &*provider : nullptr);
  if (opt.format == "json") {
    json rows = json::array();
    for (const auto& row : report.rows) {
      json r;
      r["k"] = row.k;
      r["id"] = row.id;
      r["filtration"] = row.filtration;
      r["cuspidal"] = row.cuspidal;
      rows.push_back(std::move(r));
    }
    json viol = json::array();
    for (const auto& row : report.violations) viol.push_back(row.id);
    json j;
    j["p"] = report.p;
    j["k_max"] = report.k_max;
    j["rows"] = std::move(rows);
    j["violations"] = std::move(viol);
    j["unresolved"] = report.unresolved;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "eigenforms of M_k mod " << report.p << ", k <= " << report.k_max << ":\n";
    for (const auto& row : report.rows)
      std::cout << "  " << row.id << "  filtration " << row.filtration
                << (row.cuspidal ? "  cuspidal" : "  non-cuspidal") << "\n";
    for (const auto& s : report.unresolved) std::cout << "  unresolved: " << s << "\n";
    std::cout << (report.violations.empty() ? "no violations" : "VIOLATIONS FOUND") << "\n";
  }
  return report.violations.empty() ? 0 : 1;
}

int run_regression(const Common& opt) {
  auto results = mmfp::regression_examples();
  bool all = true;
  if (opt.format == "json") {
    json cases = json::array();
    for (const auto& rc : results) {
      json c;
      c["name"] = rc.name;
      c["pass"] = rc.pass;
      c["filtration"] = rc.expected_filtration;
      c["matched_weight"] = rc.expected_matched_weight;
      c["detail"] = rc.detail;
      cases.push_back(std::move(c));
      all = all && rc.pass;
    }
    std::cout << json{{"cases", cases}}.dump() << "\n";
  } else {
    for (const auto& rc : results) {
      std::cout << (rc.pass ? "PASS " : "FAIL ") << rc.name << " -> S_"
                << rc.expected_matched_weight;
      if (!rc.pass) std::cout << "  (" << rc.detail << ")";
      std::cout << "\n";
      all = all && rc.pass;
    }
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"level-1 modular forms mod p: bases, Hecke eigensystems, filtrations"};
  app.require_subcommand(1);

  Common opt;
  int k = 12;
  std::uint64_t ell = 2;
  std::size_t prec = 0;
  bool cuspidal = false;
  int k_max = 40;

  auto add_common = [&](CLI::App* cmd, bool with_source) {
    cmd->add_option("--p", opt.p, "characteristic (prime >= 5)");
    cmd->add_option("--format", opt.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--cache-dir", opt.cache_dir,
                    "basis cache directory (env MMFP_CACHE_DIR)");
    if (with_source)
      cmd->add_option("--source", opt.source, "eisenstein:K | delta | file:PATH");
  };

  CLI::App* basis = app.add_subcommand("basis", "echelon basis of M_k or S_k");
  add_common(basis, false);
  basis->add_option("--k", k, "weight")->required();
  basis->add_option("--prec", prec, "q-expansion precision");
  basis->add_flag("--cuspidal", cuspidal, "cusp forms only");

  CLI::App* hecke = app.add_subcommand("hecke-matrix", "matrix of T_ell in the echelon basis");
  add_common(hecke, false);
  hecke->add_option("--k", k, "weight")->required();
  hecke->add_option("--ell", ell, "prime ell != p")->required();
  hecke->add_option("--prec", prec, "q-expansion precision");
  hecke->add_flag("--cuspidal", cuspidal, "cusp forms only");

  CLI::App* eig = app.add_subcommand("eigensystems", "simultaneous Hecke eigensystems");
  add_common(eig, false);
  eig->add_option("--k", k, "weight")->required();
  eig->add_option("--primes", opt.prime_bound, "use T_ell for primes ell <= bound");
  eig->add_flag("--cuspidal", cuspidal, "cusp forms only");

  CLI::App* filt = app.add_subcommand("filtration", "least weight carrying the q-expansion");
  add_common(filt, true);

  CLI::App* verify = app.add_subcommand(
      "verify", "locate a cuspidal eigenform with the source's eigensystem");
  add_common(verify, true);
  verify->add_option("--primes", opt.prime_bound, "match at primes ell <= bound");

  std::uint64_t coro_bound = 13;
  CLI::App* coro = app.add_subcommand(
      "corollary", "check filtration > p+1 implies cuspidal across M_k, k <= k_max");
  add_common(coro, false);
  coro->add_option("--k", k_max, "largest weight");
  coro->add_option("--primes", coro_bound, "use T_ell for primes ell <= bound");

  CLI::App* reg = app.add_subcommand("regression", "known matched-eigenform fixtures");
  add_common(reg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (basis->parsed()) return run_basis(opt, k, prec, cuspidal);
    if (hecke->parsed()) return run_hecke_matrix(opt, k, ell, prec, cuspidal);
    if (eig->parsed()) return run_eigensystems(opt, k, cuspidal);
    if (filt->parsed()) return run_filtration(opt);
    if (verify->parsed()) return run_verify(opt);
    if (coro->parsed()) {
      opt.prime_bound = coro_bound;
      return run_corollary(opt, k_max);
    }
    if (reg->parsed()) return run_regression(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
