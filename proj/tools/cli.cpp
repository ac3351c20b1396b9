#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "layercache/phy.hpp"
#include "layercache/scheme.hpp"
#include "layercache/tradeoff.hpp"
#include "layercache/verifier.hpp"

namespace layercache::cli {

namespace {

// Input problems caught after flag parsing; reported as usage errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

std::string both(const Rational& r) { return to_display(r) + " (" + to_decimal(r) + ")"; }

int cmd_corner(const std::string& name, const std::string& output, std::ostream& out) {
  write_output(output, write_scheme(corner_scheme(parse_corner(name))), out);
  return kExitOk;
}

int cmd_verify(const std::string& path, std::istream& in, std::ostream& out) {
  const LinearScheme s = read_scheme(read_input(path, in));
  const VerifyReport report = verify_all(s);
  out << report.render();
  return report.pass ? kExitOk : kExitFailure;
}

int cmd_construct(const std::string& m_text, const std::string& output, std::ostream& out,
                  std::ostream& err) {
  const Rational m = parse_rational(m_text);
  const LinearScheme s = scheme_for_memory(m);
  write_output(output, write_scheme(s), out);
  // With the scheme on stdout the summary moves to stderr so pipes stay clean.
  std::ostream& summary = (output.empty() || output == "-") ? err : out;
  summary << "n " << s.n << '\n'
          << "M " << both(s.memory) << '\n'
          << "c " << both(s.load) << '\n'
          << "rho " << both(s.sum_load()) << '\n'
          << "rho_star " << both(rho_star(m)) << '\n';
  return kExitOk;
}

int cmd_tradeoff(const std::string& m_text, std::ostream& out) {
  const Rational m = parse_rational(m_text);
  const Rational rho = rho_star(m);
  out << "M " << both(m) << '\n'
      << "rho_star " << both(rho) << '\n'
      << "inv_dof " << both(inverse_dof(m)) << '\n'
      << "lower_bound " << both(dof_lower_bound(m)) << '\n'
      << "gap " << both(optimality_gap(m)) << '\n';
  for (const ConverseInequality& q : check_converse(m, rho).inequalities) {
    out << "converse " << q.label << " slack " << both(q.slack) << ' ' << to_string(q.verdict)
        << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const std::string& from, const std::string& to, const std::string& step,
              const std::string& csv_path, const std::string& format, std::ostream& out) {
  CsvFormat fmt = CsvFormat::Fraction;
  if (format == "dec") {
    fmt = CsvFormat::Decimal;
  } else if (format == "both") {
    fmt = CsvFormat::Both;
  } else if (format != "frac") {
    throw UsageError("unknown format '" + format + "' (expected frac, dec or both)");
  }
  const auto rows = sweep(parse_rational(from), parse_rational(to), parse_rational(step));
  write_output(csv_path, curve_csv(rows, fmt), out);
  return kExitOk;
}

PhyConfig make_config(const std::string& gains, int q) {
  PhyConfig cfg = parse_gains(gains);
  cfg.alphabet_size = q;
  cfg.validate();
  return cfg;
}

int cmd_phy_cert(const std::string& gains, int q, std::ostream& out) {
  const PhyConfig cfg = make_config(gains, q);
  const UniquenessCertificate cert = uniqueness_certificate(cfg);
  out << "points_per_user " << cert.points_per_user << '\n'
      << "user1 " << (cert.user1 ? "PASS" : "FAIL") << '\n'
      << "user2 " << (cert.user2 ? "PASS" : "FAIL") << '\n'
      << "CERT " << (cert.pass() ? "PASS" : "FAIL") << '\n';
  return cert.pass() ? kExitOk : kExitFailure;
}

int cmd_phy_mc(const std::string& gains, int q, double power, std::size_t trials,
               std::uint64_t seed, std::ostream& out) {
  PhyConfig cfg = make_config(gains, q);
  cfg.power = power;
  cfg.validate();
  if (!uniqueness_certificate(cfg).pass()) {
    throw UsageError("uniqueness certificate fails for these gains");
  }
  const MonteCarloResult r = monte_carlo(cfg, trials, seed);
  out << MonteCarloResult::csv_header() << '\n' << r.csv_row() << '\n';
  return kExitOk;
}

int cmd_e2e(const std::string& path, const std::string& demand_tag, const std::string& gains,
            std::uint64_t seed, std::size_t trials, std::istream& in, std::ostream& out) {
  const LinearScheme s = read_scheme(read_input(path, in));
  const auto demand = parse_demand(demand_tag);
  if (!demand) throw UsageError("demand must be one of AA, AB, BA, BB");
  const PhyConfig cfg = make_config(gains, 2);
  if (!uniqueness_certificate(cfg).pass()) {
    throw UsageError("uniqueness certificate fails for these gains");
  }

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  bool ok1 = true, ok2 = true;
  for (std::size_t t = 0; t < trials; ++t) {
    BitVector files(2 * s.n);
    for (auto& b : files) b = coin(rng) ? 1 : 0;
    const DecodedFiles got = e2e_run(s, *demand, cfg, files);
    ok1 = ok1 && got.user1 == mat_vec(file_selector(s.n, demand->w1), files);
    ok2 = ok2 && got.user2 == mat_vec(file_selector(s.n, demand->w2), files);
  }
  out << "USER 1 " << (ok1 ? "PASS" : "FAIL") << '\n'
      << "USER 2 " << (ok2 ? "PASS" : "FAIL") << '\n';
  return ok1 && ok2 ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cache-aided two-user interference channel toolkit", "layercache"};
  app.require_subcommand(1);

  std::string corner_name, output;
  auto* corner = app.add_subcommand("corner", "Write one of the built-in corner schemes");
  corner->add_option("name", corner_name, "M0, M13, M45 or M2")->required();
  corner->add_option("-o,--output", output, "Output file (default stdout)");

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "Certify a scheme file for all demands");
  verify->add_option("file", verify_path, "Scheme file, '-' for stdin")->required();

  std::string m_text;
  auto* construct = app.add_subcommand("construct", "Build the optimal scheme for a memory");
  construct->add_option("--m", m_text, "Memory as p/q")->required();
  construct->add_option("-o,--output", output, "Output file (default stdout)");

  auto* tradeoff = app.add_subcommand("tradeoff", "Evaluate the trade-off at one memory");
  tradeoff->add_option("--m", m_text, "Memory as p/q")->required();

  std::string from, to, step, csv_path, format = "frac";
  auto* sweep_cmd = app.add_subcommand("sweep", "Export the trade-off curve as CSV");
  sweep_cmd->add_option("--from", from)->required();
  sweep_cmd->add_option("--to", to)->required();
  sweep_cmd->add_option("--step", step)->required();
  sweep_cmd->add_option("--csv", csv_path, "Output file (default stdout)");
  sweep_cmd->add_option("--format", format, "frac, dec or both");

  std::string gains;
  int q = 2;
  double power = 1.0;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  auto* phy = app.add_subcommand("phy", "Physical-layer tools");
  phy->require_subcommand(1);
  auto* cert = phy->add_subcommand("cert", "Check that aligned values are uniquely decodable");
  cert->add_option("--gains", gains, "h11,h12,h21,h22")->required();
  cert->add_option("--q", q, "Alphabet size");
  auto* mc = phy->add_subcommand("mc", "Monte Carlo symbol error rate");
  mc->add_option("--gains", gains, "h11,h12,h21,h22")->required();
  mc->add_option("--q", q, "Alphabet size");
  mc->add_option("--power", power, "Transmit power budget")->required();
  mc->add_option("--trials", trials)->required();
  mc->add_option("--seed", seed)->required();

  std::string scheme_path, demand_tag;
  auto* e2e = app.add_subcommand("e2e", "Deliver random files over the aligned physical layer");
  e2e->add_option("--scheme", scheme_path, "Scheme file, '-' for stdin")->required();
  e2e->add_option("--demand", demand_tag, "AA, AB, BA or BB")->required();
  e2e->add_option("--gains", gains, "h11,h12,h21,h22")->required();
  e2e->add_option("--seed", seed);
  e2e->add_option("--trials", trials, "Number of random file pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*corner) return cmd_corner(corner_name, output, out);
    if (*verify) return cmd_verify(verify_path, in, out);
    if (*construct) return cmd_construct(m_text, output, out, err);
    if (*tradeoff) return cmd_tradeoff(m_text, out);
    if (*sweep_cmd) return cmd_sweep(from, to, step, csv_path, format, out);
    if (*cert) return cmd_phy_cert(gains, q, out);
    if (*mc) return cmd_phy_mc(gains, q, power, trials, seed, out);
    if (*e2e) return cmd_e2e(scheme_path, demand_tag, gains, seed, trials, in, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace layercache::cli
