#include "qhdim/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qhdim/classifier.hpp"
#include "qhdim/cremona.hpp"
#include "qhdim/degeneration.hpp"
#include "qhdim/minus_one.hpp"
#include "qhdim/oracle.hpp"

namespace qhdim {

namespace {

constexpr int kSchemaVersion = 1;

enum class Format { Plain, Json, Csv };

struct SystemArgs {
  Int d = 0;
  Int m0 = 0;
  Int n = 0;
  Int m = 0;

  System get() const { return System(d, m0, n, m); }
};

void add_system_args(CLI::App* cmd, SystemArgs& a) {
  cmd->add_option("d", a.d, "degree")->required();
  cmd->add_option("m0", a.m0, "multiplicity at p0")->required();
  cmd->add_option("n", a.n, "number of further points (default 0)");
  cmd->add_option("m", a.m, "multiplicity at each further point (default 0)");
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string out;
  for (const auto& c : cells) out += (out.empty() ? "" : ",") + c;
  return out + "\n";
}

std::string s(Int x) { return std::to_string(x); }

std::optional<std::string> cache_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("QHDIM_CACHE"); env != nullptr && *env != '\0') return std::string(env);
  return std::nullopt;
}

degeneration::Certificate run_certifier(const System& sys, const degeneration::CertifyOptions& opts,
                                        const std::string& cache_flag) {
  auto cache = std::make_shared<degeneration::CertCache>();
  const auto path = cache_path(cache_flag);
  if (path) cache->load(*path);
  degeneration::Certifier certifier(opts, cache);
  auto cert = certifier.certify(sys);
  if (path) cache->save(*path);
  return cert;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dimensions of quasi-homogeneous linear systems of plane curves", "qhdim"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  bool csv = false;
  std::string cache_flag;
  auto* json_opt = app.add_flag("--json", json, "JSON output");
  app.add_flag("--csv", csv, "CSV output")->excludes(json_opt);
  app.add_option("--cache", cache_flag, "certificate cache file (default: $QHDIM_CACHE)");

  SystemArgs sys_args;
  bool trace = false;
  auto* dim_cmd = app.add_subcommand("dim", "generic dimension with status and certificate");
  add_system_args(dim_cmd, sys_args);
  dim_cmd->add_flag("--trace", trace, "also run the degeneration certifier and print its proof");

  auto* classify_cmd = app.add_subcommand("classify", "speciality report with (-1)-curve decomposition");
  add_system_args(classify_cmd, sys_args);

  Int m_max = 0;
  Int e_max = minus_one::kDefaultEMax;
  Int delta_max = 0;
  bool configurations = false;
  auto* enum_cmd = app.add_subcommand("enumerate", "quasi-homogeneous (-1)-classes or configurations");
  enum_cmd->add_option("--m-max", m_max, "largest m")->required()->check(CLI::Range(Int{1}, Int{100000}));
  enum_cmd->add_flag("--configurations", configurations, "enumerate (-1)-configurations instead");
  enum_cmd->add_option("--e-max", e_max, "truncation of the infinite families")->check(CLI::Range(Int{1}, Int{100000}));
  enum_cmd->add_option("--delta-max", delta_max, "largest member degree searched (default m-max + 1)");

  oracle::OracleConfig ocfg;
  auto* oracle_cmd = app.add_subcommand("oracle", "measure the dimension by rank over a prime field");
  add_system_args(oracle_cmd, sys_args);
  oracle_cmd->add_option("--seed", ocfg.seed, "random seed");
  oracle_cmd->add_option("--trials", ocfg.trials, "independent point samples")->check(CLI::Range(1, 1000));
  oracle_cmd->add_option("--prime", ocfg.prime, "prime modulus below 2^32");

  classifier::SweepOptions sweep;
  auto* verify_cmd = app.add_subcommand("verify", "sweep theory against the oracle");
  verify_cmd->add_option("--d-max", sweep.d_max)->check(CLI::Range(Int{0}, Int{60}));
  verify_cmd->add_option("--n-max", sweep.n_max)->check(CLI::Range(Int{0}, Int{60}));
  verify_cmd->add_option("--m-max", sweep.m_max)->check(CLI::Range(Int{1}, Int{20}));
  verify_cmd->add_option("--m-min", sweep.m_min)->check(CLI::Range(Int{1}, Int{20}));
  verify_cmd->add_flag("--certify", sweep.certify, "also check every certificate against the oracle");
  verify_cmd->add_option("--threads", sweep.threads);
  verify_cmd->add_option("--seed", sweep.oracle.seed);
  verify_cmd->add_option("--trials", sweep.oracle.trials)->check(CLI::Range(1, 1000));

  std::string table_name;
  auto* table_cmd = app.add_subcommand("table", "print a reference table");
  table_cmd->add_option("name", table_name, "obirreg23 | qh1list | compound")
      ->required()
      ->check(CLI::IsMember({"obirreg23", "qh1list", "compound"}));

  degeneration::CertifyOptions copts;
  auto* certify_cmd = app.add_subcommand("certify", "prove emptiness or non-speciality by degeneration");
  add_system_args(certify_cmd, sys_args);
  certify_cmd->add_flag("--trace", trace, "print the proof tree");
  certify_cmd->add_option("--budget", copts.node_budget, "node budget");
  certify_cmd->add_flag("--allow-oracle", copts.allow_oracle, "measure unresolved subsystems");

  std::vector<std::string> argv_store{"qhdim"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const Format fmt = json ? Format::Json : csv ? Format::Csv : Format::Plain;

  try {
    if (dim_cmd->parsed()) {
      const System sys = sys_args.get();
      const SystemInvariants inv = invariants(sys);
      const DimensionResult r = classifier::dimension(sys);
      std::optional<degeneration::Certificate> cert;
      if (trace) cert = run_certifier(sys, copts, cache_flag);
      if (fmt == Format::Json) {
        nlohmann::json j{{"schema_version", kSchemaVersion}, {"system", to_json(sys)},
                         {"v", inv.v}, {"e", inv.e}, {"dim", r.dim},
                         {"status", to_string(r.status)}, {"certificate", r.certificate}};
        if (cert) j["proof"] = degeneration::to_json(*cert);
        out << j.dump() << "\n";
      } else if (fmt == Format::Csv) {
        out << "d,m0,n,m,v,e,dim,status\n"
            << csv_row({s(sys.d()), s(sys.m0()), s(sys.n()), s(sys.m()), s(inv.v), s(inv.e), s(r.dim),
                        std::string(to_string(r.status))});
      } else {
        out << sys.str() << ": dim " << r.dim << " [" << to_string(r.status) << "]\n"
            << "  v = " << inv.v << ", e = " << inv.e << "\n"
            << "  certificate: " << r.certificate.dump() << "\n";
        if (cert) out << "proof (" << to_string(cert->outcome) << "):\n" << degeneration::render_trace(*cert);
      }
      return 0;
    }

    if (classify_cmd->parsed()) {
      const System sys = sys_args.get();
      const SystemInvariants inv = invariants(sys);
      const DimensionResult r = classifier::dimension(sys);
      const bool special = r.dim > inv.e;
      std::optional<minus_one::SpecialDecomposition> dec;
      std::string entry;
      if (classifier::in_classified_range(sys)) {
        if (auto match = classifier::lookup_special_table(sys, true)) {
          entry = classifier::special_table()[match->entry].pattern;
          dec = match->decomposition;
        }
      } else {
        dec = minus_one::find_special_decomposition(sys);
      }
      if (fmt == Format::Json) {
        nlohmann::json j{{"schema_version", kSchemaVersion}, {"system", to_json(sys)},
                         {"v", inv.v}, {"e", inv.e}, {"dim", r.dim}, {"special", special},
                         {"status", to_string(r.status)}};
        if (!entry.empty()) j["table_entry"] = entry;
        j["decomposition"] = dec ? minus_one::to_json(*dec) : nlohmann::json();
        out << j.dump() << "\n";
      } else if (fmt == Format::Csv) {
        out << "d,m0,n,m,v,e,dim,special,status\n"
            << csv_row({s(sys.d()), s(sys.m0()), s(sys.n()), s(sys.m()), s(inv.v), s(inv.e), s(r.dim),
                        special ? "true" : "false", std::string(to_string(r.status))});
      } else {
        out << sys.str() << ": " << (special ? "special" : "non-special") << ", dim " << r.dim
            << ", v = " << inv.v << ", e = " << inv.e << " [" << to_string(r.status) << "]\n";
        if (!entry.empty()) out << "  listed as " << entry << "\n";
        if (dec) {
          out << "  in the form " << dec->form.str() << ":\n";
          for (const auto& p : dec->fixed_parts) {
            const auto& c = p.atom.curve;
            out << "    " << p.multiplicity << " x (" << c.delta << "; " << c.mu0 << "; " << c.mu1 << ", "
                << c.mu2 << ")" << (p.atom.count > 1 ? " orbit of " + s(p.atom.count) : "") << "  from "
                << p.atom.origin << "\n";
          }
          out << "    residual " << dec->residual.str() << " with v = " << dec->residual.v() << "\n";
        }
      }
      return 0;
    }

    if (enum_cmd->parsed()) {
      if (configurations) {
        const Int dm = delta_max > 0 ? delta_max : minus_one::default_delta_max(m_max);
        const auto configs = minus_one::enumerate_configurations(m_max, dm, e_max);
        if (fmt == Format::Plain) {
          out << classifier::render_configuration_table(configs);
          return 0;
        }
        nlohmann::json rows = nlohmann::json::array();
        if (fmt == Format::Csv) out << "d,m0,n,m,delta,mu0,mu1,mu2,count,compound\n";
        for (const auto& c : configs) {
          const System& t = c.total;
          if (fmt == Format::Csv) {
            out << csv_row({s(t.d()), s(t.m0()), s(t.n()), s(t.m()), s(c.curve.delta), s(c.curve.mu0),
                            s(c.curve.mu1), s(c.curve.mu2), s(c.count), c.compound ? "true" : "false"});
          } else {
            rows.push_back({{"d", t.d()}, {"m0", t.m0()}, {"n", t.n()}, {"m", t.m()},
                            {"delta", c.curve.delta}, {"mu0", c.curve.mu0}, {"mu1", c.curve.mu1},
                            {"mu2", c.curve.mu2}, {"count", c.count}, {"compound", c.compound}});
          }
        }
        if (fmt == Format::Json) {
          out << nlohmann::json{{"schema_version", kSchemaVersion}, {"e_max", e_max}, {"delta_max", dm},
                                {"configurations", rows}}.dump()
              << "\n";
        }
        return 0;
      }
      const auto classes = minus_one::enumerate_qh_classes(m_max, e_max);
      if (fmt == Format::Plain) {
        out << classifier::render_qh_class_table(classes);
        return 0;
      }
      nlohmann::json rows = nlohmann::json::array();
      if (fmt == Format::Csv) out << "d,m0,n,m,x,y,family,irreducible\n";
      for (const auto& c : classes) {
        const System& t = c.system;
        const std::string x = c.witness ? s(c.witness->x) : "";
        const std::string y = c.witness ? s(c.witness->y) : "";
        if (fmt == Format::Csv) {
          out << csv_row({s(t.d()), s(t.m0()), s(t.n()), s(t.m()), x, y, minus_one::family_name(c),
                          c.irreducible ? "true" : "false"});
        } else {
          nlohmann::json row{{"d", t.d()}, {"m0", t.m0()}, {"n", t.n()}, {"m", t.m()},
                             {"family", minus_one::family_name(c)}, {"irreducible", c.irreducible}};
          row["x"] = c.witness ? nlohmann::json(c.witness->x) : nlohmann::json();
          row["y"] = c.witness ? nlohmann::json(c.witness->y) : nlohmann::json();
          rows.push_back(std::move(row));
        }
      }
      if (fmt == Format::Json) {
        out << nlohmann::json{{"schema_version", kSchemaVersion}, {"e_max", e_max}, {"classes", rows}}.dump()
            << "\n";
      }
      return 0;
    }

    if (oracle_cmd->parsed()) {
      const System sys = sys_args.get();
      const DimensionResult r = oracle::measure_dim(sys, ocfg);
      const Int e = expected_dim(sys);
      if (fmt == Format::Json) {
        out << nlohmann::json{{"schema_version", kSchemaVersion}, {"system", to_json(sys)}, {"dim", r.dim},
                              {"e", e}, {"special", r.dim > e}, {"status", to_string(r.status)},
                              {"oracle", r.certificate}}.dump()
            << "\n";
      } else if (fmt == Format::Csv) {
        out << "d,m0,n,m,dim,e,special,prime,trials,seed\n"
            << csv_row({s(sys.d()), s(sys.m0()), s(sys.n()), s(sys.m()), s(r.dim), s(e),
                        r.dim > e ? "true" : "false", std::to_string(ocfg.prime), s(ocfg.trials),
                        std::to_string(ocfg.seed)});
      } else {
        out << sys.str() << ": measured dim " << r.dim << ", e = " << e << (r.dim > e ? " (special)" : "")
            << "\n  prime " << ocfg.prime << ", trials " << ocfg.trials << ", seed " << ocfg.seed
            << ", per trial " << r.certificate["per_trial"].dump() << "\n";
      }
      return 0;
    }

    if (verify_cmd->parsed()) {
      const auto report = classifier::verify_sweep(sweep);
      if (fmt == Format::Json) {
        out << classifier::to_json(report).dump() << "\n";
      } else {
        out << "cells " << report.cells << ", special " << report.special << ", mismatches "
            << report.mismatches.size() << " (" << report.seconds << " s)\n";
        if (sweep.certify) {
          out << "certified empty " << report.certified_empty << ", certified non-special "
              << report.certified_nonspecial << ", inconclusive " << report.certify_inconclusive << "\n";
        }
        for (const auto& m : report.mismatches) {
          out << "  " << m.sys.str() << " " << m.kind << ": expected " << m.expected << ", measured "
              << m.measured << "\n";
        }
      }
      return report.mismatches.empty() ? 0 : 1;
    }

    if (table_cmd->parsed()) {
      if (table_name == "obirreg23") {
        out << classifier::render_special_table();
      } else if (table_name == "qh1list") {
        out << classifier::render_qh_class_table(minus_one::enumerate_qh_classes(7));
      } else {
        out << classifier::render_configuration_table(
            minus_one::enumerate_configurations(10, minus_one::default_delta_max(10)));
      }
      return 0;
    }

    if (certify_cmd->parsed()) {
      const System sys = sys_args.get();
      const auto cert = run_certifier(sys, copts, cache_flag);
      if (fmt == Format::Json) {
        nlohmann::json j = degeneration::to_json(cert);
        j["schema_version"] = kSchemaVersion;
        j["system"] = to_json(sys);
        if (!trace) j.erase("tree");
        out << j.dump() << "\n";
      } else if (fmt == Format::Csv) {
        out << "d,m0,n,m,outcome,dim,oracle_assisted\n"
            << csv_row({s(sys.d()), s(sys.m0()), s(sys.n()), s(sys.m()), std::string(to_string(cert.outcome)),
                        s(cert.dim), cert.oracle_assisted ? "true" : "false"});
      } else {
        out << sys.str() << ": " << to_string(cert.outcome);
        if (cert.outcome != degeneration::Outcome::Inconclusive) out << ", dim " << cert.dim;
        if (cert.oracle_assisted) out << " (oracle-assisted)";
        out << "\n";
        if (trace) out << degeneration::render_trace(cert);
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace qhdim
