#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entrobound/apps.hpp"
#include "entrobound/mbound.hpp"
#include "entrobound/oracle.hpp"

namespace {

using entrobound::core::ProbVector;

struct Options {
  std::string format = "json";
  std::string units = "nats";
  std::uint64_t seed = 1;
  std::string out;
};

// a cell is either a number (formatted to 12 significant digits, infinity
// serialized as the string "inf") or a plain string
using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> r) { rows.push_back(std::move(r)); }
};

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_table(const Table& t, const Options& opt, std::ostream& os) {
  if (opt.format == "csv") {
    for (std::size_t c = 0; c < t.cols.size(); ++c)
      os << (c ? "," : "") << t.cols[c];
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        os << (c ? "," : "");
        if (const double* d = std::get_if<double>(&row[c]))
          os << format_number(*d);
        else
          os << std::get<std::string>(row[c]);
      }
      os << "\n";
    }
    return;
  }
  const auto emit_obj = [&](const std::vector<Cell>& row, const char* indent) {
    os << "{";
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << "\n" << indent << "  \"" << t.cols[c] << "\": ";
      if (const double* d = std::get_if<double>(&row[c])) {
        if (std::isinf(*d))
          os << '"' << format_number(*d) << '"';
        else
          os << format_number(*d);
      } else {
        os << '"' << std::get<std::string>(row[c]) << '"';
      }
    }
    os << "\n" << indent << "}";
  };
  if (t.rows.size() == 1) {
    emit_obj(t.rows.front(), "");
  } else {
    os << "[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      os << (r ? "," : "") << "\n  ";
      emit_obj(t.rows[r], "  ");
    }
    os << "\n]";
  }
  os << "\n";
}

int emit(const Table& t, const Options& opt) {
  if (opt.out.empty()) {
    write_table(t, opt, std::cout);
    return 0;
  }
  std::ofstream f(opt.out);
  if (!f) {
    std::cerr << "error: cannot open output file " << opt.out << "\n";
    return 1;
  }
  write_table(t, opt, f);
  return 0;
}

// display scale for entropic quantities; internal values stay in nats
double unit_scale(const Options& opt) { return opt.units == "bits" ? std::log(2.0) : 1.0; }

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    const double x = std::stod(tok, &pos);
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw std::invalid_argument("trailing junk in list: " + tok);
    v.push_back(x);
  }
  if (v.empty()) throw std::invalid_argument("empty list");
  return v;
}

entrobound::apps::Channel load_channel(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open channel file " + path);
  std::vector<std::vector<double>> matrix;
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json j;
    f >> j;
    if (!j.contains("matrix") || !j["matrix"].is_array())
      throw std::runtime_error("channel JSON must contain a \"matrix\" array");
    for (const auto& row : j["matrix"])
      matrix.push_back(row.get<std::vector<double>>());
  } else {
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
      if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        matrix.push_back(parse_list(line));
      } catch (const std::exception&) {
        if (first) {
          first = false;  // optional header row
          continue;
        }
        throw std::runtime_error("malformed channel row: " + line);
      }
      first = false;
    }
  }
  return entrobound::apps::Channel(matrix);
}

int cmd_m_bound(int d, double delta, const Options& opt) {
  const auto res = entrobound::bound::compute_M(d, delta);
  const auto lb = entrobound::bound::closed_form_lower_bounds(d, delta);
  const auto pf = entrobound::bound::pinsker_fa_bound(d, delta);
  const double u = unit_scale(opt);
  Table t;
  t.cols = {"d",          "delta",       "value",       "s_opt",
            "r_opt",      "status",      "exp_bound",   "cubic_bound",
            "quad_bound", "pinsker_fa",  "iterations",  "residual"};
  t.add_row({static_cast<double>(d), delta / u, res.value / u, res.s_opt, res.r_opt,
             std::string(res.is_infinite() ? "Infinite" : "Finite"), lb.exp_bound / u,
             lb.cubic_bound / u, lb.quad_bound / u, pf.bound / u,
             static_cast<double>(res.iterations), res.residual});
  return emit(t, opt);
}

int cmd_n_bound(int d, const Options& opt) {
  const auto nb = entrobound::bound::compute_N(d);
  const double u2 = unit_scale(opt) * unit_scale(opt);
  Table t;
  t.cols = {"d", "n", "r_d", "n_closed"};
  t.add_row({static_cast<double>(d), nb.n_value / u2, nb.r_d, nb.n_closed / u2});
  return emit(t, opt);
}

int cmd_capacity(const std::string& path, double tol, const Options& opt) {
  const auto ch = load_channel(path);
  const double cap = entrobound::apps::blahut_arimoto(ch, tol);
  const auto cb = entrobound::apps::capacity_lower_bound(ch);
  const double u = unit_scale(opt);
  Table t;
  t.cols = {"capacity", "bound", "s_max", "s_min", "conjectural_bound"};
  t.add_row({cap / u, cb.bound / u, cb.s_max / u, cb.s_min / u, cb.conjectural_bound / u});
  return emit(t, opt);
}

int cmd_chernoff(const std::string& ps, const std::string& qs, int d, const Options& opt) {
  const ProbVector p(parse_list(ps)), q(parse_list(qs));
  const auto res = entrobound::apps::chernoff(p, q, d);
  const double u = unit_scale(opt);
  Table t;
  t.cols = {"xi", "lower_bound"};
  t.add_row({res.xi / u, res.lower_bound / u});
  return emit(t, opt);
}

int cmd_process(const std::string& ri, const std::string& rf, int k,
                const std::string& temps, const Options& opt) {
  const ProbVector rho_i(parse_list(ri)), rho_f(parse_list(rf));
  std::vector<double> tv = temps.empty() ? std::vector<double>(static_cast<std::size_t>(k), 1.0)
                                         : parse_list(temps);
  const auto rep = entrobound::apps::stepwise_process(rho_i, rho_f, k, std::move(tv));
  const double u = unit_scale(opt);
  Table t;
  t.cols = {"k",              "clausius_lhs",   "delta_S",      "rel_ent_sum",
            "bound_convexity", "bound_quadratic", "bound_pinsker", "upper_envelope",
            "w_waste_lb"};
  t.add_row({static_cast<double>(rep.k), rep.clausius_lhs / u, rep.delta_S / u,
             rep.rel_ent_sum / u, rep.bound_convexity / u, rep.bound_quadratic / u,
             rep.bound_pinsker / u, rep.upper_envelope / u, rep.w_waste_lb / u});
  return emit(t, opt);
}

int cmd_work(const std::string& rho, const std::string& levels, double temperature,
             const Options& opt) {
  const ProbVector rho_i(parse_list(rho));
  const auto res =
      entrobound::apps::extractable_work(rho_i, parse_list(levels), temperature);
  const double u = unit_scale(opt);
  Table t;
  t.cols = {"exact", "lower_bound"};
  t.add_row({res.exact / u, res.lower_bound / u});
  return emit(t, opt);
}

int cmd_verify(int samples, const Options& opt) {
  Table t;
  t.cols = {"check", "d", "samples", "min_gap", "violations", "resamples", "worst_case"};
  long total = 0;
  for (int d : {2, 3, 5, 10, 50}) {
    const auto rep = entrobound::oracle::verify_M_bound(d, samples, opt.seed);
    total += rep.violations;
    t.add_row({std::string("m_bound"), static_cast<double>(d),
               static_cast<double>(rep.samples), rep.min_gap,
               static_cast<double>(rep.violations), static_cast<double>(rep.resamples),
               rep.worst_case});
  }
  for (int d : {2, 4, 16, 64}) {
    const auto rep = entrobound::oracle::verify_variance_bound(d, samples, opt.seed);
    total += rep.violations;
    t.add_row({std::string("variance"), static_cast<double>(d),
               static_cast<double>(rep.samples), rep.min_gap,
               static_cast<double>(rep.violations), static_cast<double>(rep.resamples),
               rep.worst_case});
  }
  const int rc = emit(t, opt);
  if (rc != 0) return rc;
  return total > 0 ? 2 : 0;
}

int cmd_figure(const Options& opt) {
  std::ostringstream os;
  os << "d,delta,M,exp_bound_Nd,cubic_bound_Nd,quad_bound,pinsker_fa\n";
  const double u = unit_scale(opt);
  for (int d : {2, 10, 50}) {
    const double ld = std::log(static_cast<double>(d));
    for (int i = 0; i < 401; ++i) {
      const double delta = -ld + 2.0 * ld * i / 400.0;
      const auto m = entrobound::bound::compute_M(d, delta);
      const auto lb = entrobound::bound::closed_form_lower_bounds(d, delta);
      const auto pf = entrobound::bound::pinsker_fa_bound(d, delta);
      os << d << "," << format_number(delta / u) << "," << format_number(m.value / u)
         << "," << format_number(lb.exp_bound / u) << ","
         << format_number(lb.cubic_bound / u) << "," << format_number(lb.quad_bound / u)
         << "," << format_number(pf.bound / u) << "\n";
    }
  }
  os << "\nd,N,N_closed,N_closed_minus_1\n";
  for (int d = 2; d <= 100; ++d) {
    const auto nb = entrobound::bound::compute_N(d);
    os << d << "," << format_number(nb.n_value / (u * u)) << ","
       << format_number(nb.n_closed / (u * u)) << ","
       << format_number((nb.n_closed - 1.0) / (u * u)) << "\n";
  }
  if (opt.out.empty()) {
    std::cout << os.str();
    return 0;
  }
  std::ofstream f(opt.out);
  if (!f) {
    std::cerr << "error: cannot open output file " << opt.out << "\n";
    return 1;
  }
  f << os.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entrobound: tight entropy-difference lower bounds on relative entropy"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  const auto add_sub = [&](const char* name, const char* desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->fallthrough();
    return sub;
  };
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--units", opt.units, "display units")
      ->check(CLI::IsMember({"nats", "bits"}));
  app.add_option("--seed", opt.seed, "oracle seed");
  app.add_option("--out", opt.out, "output path (default stdout)");

  int d = 2, k = 1, samples = 1000, chernoff_d = 0;
  double delta = 0.0, tol = 1e-10, temperature = 1.0;
  std::string channel, pvec, qvec, rho_i, rho_f, temps, rho, levels;

  auto* mb = add_sub("m-bound", "tight bound M(delta, d)");
  mb->add_option("--d", d, "dimension")->required();
  mb->add_option("--delta", delta, "entropy difference in nats")->required();

  auto* nb = add_sub("n-bound", "maximum surprisal variance N(d)");
  nb->add_option("--d", d, "dimension")->required();

  auto* cap = add_sub("capacity", "channel capacity and lower bound");
  cap->add_option("--channel", channel, "channel file (CSV rows or JSON)")->required();
  cap->add_option("--tol", tol, "capacity convergence tolerance");

  auto* ch = add_sub("chernoff", "Chernoff information");
  ch->add_option("--p", pvec, "first distribution, comma-separated")->required();
  ch->add_option("--q", qvec, "second distribution, comma-separated")->required();
  ch->add_option("--d", chernoff_d, "bound dimension (default: state dimension)");

  auto* pr = add_sub("process", "stepwise equilibration report");
  pr->add_option("--rho-i", rho_i, "initial state")->required();
  pr->add_option("--rho-f", rho_f, "final state")->required();
  pr->add_option("--k", k, "number of steps")->required();
  pr->add_option("--temps", temps, "per-step temperatures (default all 1)");

  auto* wk = add_sub("work", "extractable work at constant temperature");
  wk->add_option("--rho", rho, "initial state")->required();
  wk->add_option("--levels", levels, "energy levels")->required();
  wk->add_option("--temperature", temperature, "bath temperature")->required();

  auto* vf = add_sub("verify", "run the oracle suite");
  vf->add_option("--samples", samples, "samples per dimension");

  add_sub("figure", "emit plot data (CSV)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mb->parsed()) return cmd_m_bound(d, delta, opt);
    if (nb->parsed()) return cmd_n_bound(d, opt);
    if (cap->parsed()) return cmd_capacity(channel, tol, opt);
    if (ch->parsed()) return cmd_chernoff(pvec, qvec, chernoff_d, opt);
    if (pr->parsed()) return cmd_process(rho_i, rho_f, k, temps, opt);
    if (wk->parsed()) return cmd_work(rho, levels, temperature, opt);
    if (vf->parsed()) return cmd_verify(samples, opt);
    return cmd_figure(opt);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
