#include "cli.hpp"

#include "nijenhuis/errors.hpp"
#include "nijenhuis/geomcheck.hpp"
#include "nijenhuis/hermcat.hpp"
#include "nijenhuis/minimality.hpp"
#include "nijenhuis/report.hpp"
#include "nijenhuis/symring.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace nijenhuis::cli {

namespace {

struct Options {
  std::string space = "AIII";
  std::optional<int> n;
  std::optional<int> k;
  std::string rep = "auto";
  std::size_t trials = 100;
  double tol = 1e-9;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  std::string out;
  unsigned threads = 1;
  std::string mutate = "none";
  std::string point = "random";
  std::string target;
  bool space_given = false;
};

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

SpaceTag resolve_tag(const Options& o) {
  const SpaceKind kind = parse_space_kind(o.space);
  SpaceTag tag;
  for (const auto& t : default_catalog())
    if (t.kind == kind) tag = t;
  if (o.n) {
    tag.n = *o.n;
    if (kind == SpaceKind::AIII && !o.k) tag.k = 1;
  }
  if (o.k) tag.k = *o.k;
  return tag;
}

RepKind resolve_rep(const Options& o, const SpaceDescriptor& space) {
  if (o.rep == "fundamental") return RepKind::Fundamental;
  if (o.rep == "spin") return RepKind::Spin;
  if (o.rep == "auto") return space.tag().kind == SpaceKind::BDI ? RepKind::Spin : RepKind::Fundamental;
  throw UsageError("unknown representation '" + o.rep + "' (expected fundamental, spin or auto)");
}

void emit(const Options& o, std::ostream& out, const std::string& command, Json config, Json result,
          const std::string& text) {
  std::string body;
  if (o.format == "json") {
    body = envelope(command, std::move(config), std::move(result)).dump(2) + "\n";
  } else {
    body = text;
  }
  if (o.out.empty()) {
    out << body;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file " + o.out);
  file << body;
  if (!file) throw ConfigError("failed writing " + o.out);
}

int cmd_catalog(const Options& o, std::ostream& out) {
  std::vector<SpaceTag> tags = o.space_given ? std::vector<SpaceTag>{resolve_tag(o)} : default_catalog();
  Json entries = Json::array();
  std::ostringstream text;
  text << std::left << std::setw(12) << "space" << std::setw(10) << "algebra" << std::setw(22) << "k_phi"
       << std::setw(6) << "rank" << std::setw(8) << "|D_c+|" << std::setw(9) << "|D_nc+|" << std::setw(12)
       << "(rho,rho)" << "chain\n";
  for (const auto& tag : tags) {
    const SpaceDescriptor space = build_space(tag);
    Json e = catalog_entry(space);
    std::string chain;
    for (const auto& l : e["chain"]) chain += (chain.empty() ? "" : " > ") + l["label"].get<std::string>();
    text << std::setw(12) << space.name() << std::setw(10) << space.algebra() << std::setw(22) << space.k_phi_label()
         << "rank " << std::setw(1) << space.rank() << std::setw(2) << "" << std::setw(8)
         << space.compact_positive().size() << std::setw(9) << space.noncompact_positive().size() << std::setw(12)
         << to_string(rho_phi_norm(space)) << chain << "\n";
    entries.push_back(std::move(e));
  }
  emit(o, out, "catalog", Json::object(), Json{{"entries", entries}}, text.str());
  return 0;
}

int cmd_minimal_check(const Options& o, std::ostream& out) {
  const SpaceDescriptor space = build_space(resolve_tag(o));
  if (!space.tag().is_classical())
    throw UsageError("no matrix representation for " + space.name() + "; use `minimal search " +
                     (space.tag().kind == SpaceKind::EIII ? "e6" : "e7") + "`");
  const MatrixRep rep = rep_for_space(space, resolve_rep(o, space));
  const MinimalityVerdict v = is_phi_minimal(rep, space);
  std::optional<ChainMinimality> chain;
  if (v.is_minimal) chain = chain_minimality(rep, space, thimm_chain(space));
  std::ostringstream text;
  text << space.name() << " " << rep.label() << " (dim " << rep.dim() << "): "
       << (v.is_minimal ? "minimal" : "not minimal") << "\n";
  text << "  Lambda_phi = i*" << to_string(v.lambda_phi_im) << "\n";
  text << "  rho_phi levels: " << v.num_levels << ", eigenvalues i*{";
  for (std::size_t i = 0; i < v.eigenvalues_im.size(); ++i) text << (i ? ", " : "") << to_string(v.eigenvalues_im[i]);
  text << "}\n";
  if (v.is_minimal) {
    text << "  dim V+ = " << v.dim_plus << ", dim V- = " << v.dim_minus << "\n";
  } else {
    text << "  reason: " << v.witness << "\n";
  }
  if (chain) {
    text << "  chain: " << (chain->all_minimal ? "every level minimal" : "a level fails") << "\n";
    for (const auto& l : chain->levels)
      text << "    " << l.label << ": dim W+ = " << l.w_plus.size() << (l.minimal ? "" : "  FAIL " + l.detail) << "\n";
  }
  emit(o, out, "minimal check", Json{{"space", space.name()}, {"rep", rep.label()}},
       minimality_json(space, rep, v, chain), text.str());
  return 0;
}

int cmd_minimal_search(const Options& o, std::ostream& out) {
  std::string target = o.target;
  for (auto& c : target) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  Family family;
  if (target == "e6" || target == "eiii") {
    family = Family::E6;
  } else if (target == "e7" || target == "evii") {
    family = Family::E7;
  } else {
    throw UsageError("minimal search expects e6 or e7; classical families use `minimal check`");
  }
  const NogoCertificate cert = nogo_report(family, o.threads);
  Json j = nogo_json(cert);
  std::ostringstream text;
  text << cert.system << " (" << cert.space << "): scanned " << cert.scan.candidates << " dominant weights\n";
  for (const auto& s : j["survivors"]) {
    text << "  labels " << s["labels"].dump() << "  weight " << s["weight"].dump() << "  ";
    if (s["witness"].is_string())
      text << "trivial";
    else if (s["witness"].is_null())
      text << "NO WITNESS";
    else
      text << "witness alpha=" << s["witness"]["alpha"].dump() << " beta=" << s["witness"]["beta"].dump();
    text << "\n";
  }
  text << "verdict: " << j["verdict"].get<std::string>() << "\n";
  emit(o, out, "minimal search", Json{{"system", cert.system}, {"threads", o.threads}}, j, text.str());
  return cert.no_minimal_rep ? 0 : 1;
}

int cmd_verify(const Options& o, std::ostream& out, std::uint64_t seed) {
  const SpaceDescriptor space = build_space(resolve_tag(o));
  const MatrixRep rep = rep_for_space(space, resolve_rep(o, space));
  const GeomContext ctx(space, rep, parse_mutation(o.mutate));
  SuiteConfig cfg;
  cfg.trials = o.trials;
  cfg.tolerance = o.tol;
  cfg.seed = seed;
  cfg.threads = o.threads;
  const SuiteReport r = run_suite(o.target, ctx, cfg);
  std::ostringstream text;
  text << r.suite << " on " << r.space << " / " << r.rep << "  trials " << r.trials << "  seed " << r.seed
       << "  mutation " << r.mutation << "\n";
  for (const auto& b : r.breakdown)
    text << "  " << std::left << std::setw(34) << b.identity << std::setw(34) << b.level << fmt_double(b.residual)
         << (b.residual <= r.tolerance ? "" : "  FAIL") << "\n";
  if (r.fd_max_disagreement) text << "  finite-difference agreement " << fmt_double(*r.fd_max_disagreement) << "\n";
  for (const auto& n : r.notes) text << "  note: " << n << "\n";
  text << (r.pass ? "PASS" : "FAIL") << "  max residual " << fmt_double(r.max_residual) << " (tolerance "
       << fmt_double(r.tolerance) << ")\n";
  Json config{{"suite", o.target}, {"space", space.name()}, {"rep", rep.label()}, {"trials", o.trials},
              {"tolerance", o.tol},  {"seed", seed},          {"threads", o.threads}, {"mutation", o.mutate}};
  emit(o, out, "verify", config, suite_json(r), text.str());
  return r.pass ? 0 : 1;
}

int cmd_symbolic(const Options& o, std::ostream& out) {
  std::string target = o.target;
  for (auto& c : target) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  SymbolicCertificate cert;
  if (target == "eiii") {
    cert = verify_eiii();
  } else if (target == "evii") {
    cert = verify_evii();
  } else {
    throw UsageError("symbolic expects eiii or evii");
  }
  std::ostringstream text;
  text << cert.space << " slice ring, c = (";
  for (std::size_t i = 0; i < cert.constants.c.size(); ++i) text << (i ? ", " : "") << to_string(cert.constants.c[i]);
  text << "), (rho_phi, rho_phi) = " << to_string(cert.constants.rho_norm) << "\n";
  for (const auto& c : cert.checks) text << "  [" << (c.holds ? "ok" : "FAIL") << "] " << c.name << "\n";
  if (cert.membership) {
    const auto& m = *cert.membership;
    text << "  membership (degree <= " << m.max_degree << ", " << m.products.size()
         << " products): " << (m.member ? "member" : "not a member") << "\n";
    if (!m.member) {
      text << "  separating functional:";
      for (const auto& [e, v] : m.functional) text << " " << SymPoly::monomial(e, 1).to_string() << " -> " << to_string(v) << ";";
      text << " value on target " << to_string(m.functional_on_target) << "\n";
    }
  }
  for (const auto& n : cert.notes) text << "  note: " << n << "\n";
  text << (cert.pass ? "PASS" : "FAIL") << "\n";
  emit(o, out, "symbolic", Json{{"target", target}}, symbolic_json(cert), text.str());
  return cert.pass ? 0 : 1;
}

int cmd_spectrum(const Options& o, std::ostream& out, std::uint64_t seed) {
  const SpaceDescriptor space = build_space(resolve_tag(o));
  const MatrixRep rep = rep_for_space(space, resolve_rep(o, space));
  const GeomContext ctx(space, rep);
  const std::size_t m = ctx.slice().y.size();
  OrbitSample sample;
  if (o.point == "base") {
    sample = slice_point(ctx, std::vector<double>(m, 0.0));
  } else if (o.point == "pi2") {
    sample = slice_point(ctx, std::vector<double>(m, std::numbers::pi / 2));
  } else if (o.point == "random") {
    sample = random_orbit_point(ctx, seed, SampleMode::Slice);
  } else {
    throw UsageError("unknown point '" + o.point + "' (expected base, pi2 or random)");
  }
  const SpectrumReport r = nijenhuis_spectrum(ctx, sample);
  const bool pass = r.max_mismatch <= o.tol && r.contains_minus_two_f;
  std::ostringstream text;
  text << "Nijenhuis eigenvalues on " << space.name() << " / " << rep.label() << " (" << o.point << " point)\n";
  text << "  from Lambda_phi:";
  for (auto z : r.eigenvalues) text << " " << fmt_double(z.real());
  text << "\n  from slice:     ";
  for (double v : r.predicted) text << " " << fmt_double(v);
  text << "\n  -2 f_j:         ";
  for (double v : r.minus_two_f) text << " " << fmt_double(v);
  text << "\n" << (pass ? "PASS" : "FAIL") << "  max mismatch " << fmt_double(r.max_mismatch) << "\n";
  Json config{{"space", space.name()}, {"rep", rep.label()}, {"point", o.point}, {"seed", seed}, {"tolerance", o.tol}};
  Json result = spectrum_json(r, sample);
  result["pass"] = pass;
  emit(o, out, "spectrum", config, result, text.str());
  return pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Verification engine for the Nijenhuis tensor on compact hermitian symmetric spaces", "nijenhuis"};
  app.require_subcommand(1);

  auto add_space = [&](CLI::App* sub, bool positional) {
    CLI::Option* opt = positional ? sub->add_option("space", o.space, "AIII, BDI, DIII, CI, EIII or EVII")->required()
                                  : sub->add_option("--space", o.space, "AIII, BDI, DIII, CI, EIII or EVII");
    opt->each([&](const std::string&) { o.space_given = true; });
    sub->add_option("--n", o.n, "family parameter n");
    sub->add_option("--k", o.k, "AIII parameter k (defaults to 1 when --n is given)");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", o.out, "write the report to a file");
  };
  auto add_numeric = [&](CLI::App* sub) {
    sub->add_option("--rep", o.rep, "fundamental, spin or auto")->check(CLI::IsMember({"fundamental", "spin", "auto"}));
    sub->add_option("--seed", o.seed, "random seed (default: from entropy; always echoed)");
    sub->add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "worker cap");
  };

  auto* catalog = app.add_subcommand("catalog", "list compact hermitian symmetric spaces");
  add_space(catalog, false);
  add_output(catalog);

  auto* minimal = app.add_subcommand("minimal", "phi-minimal representations");
  minimal->require_subcommand(1);
  auto* check = minimal->add_subcommand("check", "test a classical representation");
  add_space(check, true);
  check->add_option("--rep", o.rep, "fundamental, spin or auto")->check(CLI::IsMember({"fundamental", "spin", "auto"}));
  add_output(check);
  auto* search = minimal->add_subcommand("search", "nonexistence certificate for e6 or e7");
  search->add_option("system", o.target, "e6 or e7")->required();
  search->add_option("--threads", o.threads, "worker cap");
  add_output(search);

  auto* verify = app.add_subcommand("verify", "run a geometric verification suite");
  std::string suite_help = "one of:";
  for (const auto& s : suite_names()) suite_help += " " + s;
  verify->add_option("suite", o.target, suite_help)->required()->check(CLI::IsMember(suite_names()));
  add_space(verify, false);
  add_numeric(verify);
  verify->add_option("--trials", o.trials, "random trials")->check(CLI::PositiveNumber);
  verify->add_option("--mutate", o.mutate, "none, drop-half, flip-sign or lambda-zero")
      ->check(CLI::IsMember({"none", "drop-half", "flip-sign", "lambda-zero"}));
  add_output(verify);

  auto* symbolic = app.add_subcommand("symbolic", "exact slice-ring certificates");
  symbolic->add_option("target", o.target, "eiii or evii")->required();
  add_output(symbolic);

  auto* spectrum = app.add_subcommand("spectrum", "Nijenhuis eigenvalues at an orbit point");
  add_space(spectrum, false);
  add_numeric(spectrum);
  spectrum->add_option("--point", o.point, "base, pi2 or random")->check(CLI::IsMember({"base", "pi2", "random"}));
  add_output(spectrum);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("nijenhuis");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::uint64_t seed = o.seed ? *o.seed : std::random_device{}() * 0x100000001ULL + std::random_device{}();
    if (*catalog) return cmd_catalog(o, out);
    if (*check) return cmd_minimal_check(o, out);
    if (*search) return cmd_minimal_search(o, out);
    if (*verify) return cmd_verify(o, out, seed);
    if (*symbolic) return cmd_symbolic(o, out);
    if (*spectrum) return cmd_spectrum(o, out, seed);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  err << "no command given\n";
  return 2;
}

}  // namespace nijenhuis::cli
