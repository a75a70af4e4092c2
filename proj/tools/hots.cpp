// hots: coefficients, solvers and experiments for order-3 stochastic tensors.
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hots/builtins.hpp"
#include "hots/coefficients.hpp"
#include "hots/graph.hpp"
#include "hots/io.hpp"
#include "hots/solvers.hpp"
#include "hots/tensor.hpp"

using json = nlohmann::json;
using namespace hots;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct TensorSource {
  std::string file;
  std::string builtin;
};

DenseTensor3 load_dense(const TensorSource& src) {
  if (!src.builtin.empty()) return builtin_tensor(src.builtin);
  if (src.file.empty()) throw std::invalid_argument("need --tensor <file> or --builtin <name>");
  auto entries = read_tensor_file(src.file);
  if (entries.n > kDenseCoefficientGuard) {
    throw std::invalid_argument("tensor too large for dense scans (n > " +
                                std::to_string(kDenseCoefficientGuard) + ")");
  }
  auto t = to_dense(entries);
  auto rep = validate_stochastic(t);
  if (!rep.ok) {
    std::ostringstream os;
    os << "tensor is not stochastic: column (j=" << rep.worst_j + 1 << ", k=" << rep.worst_k + 1
       << ") deviates by " << rep.worst_deviation;
    throw std::invalid_argument(os.str());
  }
  return t;
}

std::ostream& open_out(std::ofstream& f, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  f.open(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  return f;
}

Vec sigma_from_flag(const DenseTensor3& t, const std::string& flag) {
  auto sv = sigma_vectors(t);
  if (flag == "s1") return sv.sigma1;
  if (flag == "s2") return sv.sigma2;
  if (flag == "s3") return sv.sigma3;
  std::ifstream in(flag);
  if (!in) throw std::invalid_argument("--sigma: not s1|s2|s3 and cannot open file " + flag);
  Vec sigma;
  double v;
  while (in >> v) sigma.push_back(v);
  if (static_cast<int>(sigma.size()) != t.n()) {
    throw std::invalid_argument("--sigma file: expected " + std::to_string(t.n()) + " values");
  }
  return sigma;
}

int run_coeff(const TensorSource& src, const std::string& which, const std::string& sigma_flag,
              const std::string& out_path) {
  auto t = load_dense(src);
  json j;
  auto from_report = [&](const CoefficientReport& r) {
    j["name"] = coefficient_name(r.name);
    j["value"] = r.value;
    j["witness"] = r.witness;
    if (!r.runtime_note.empty()) j["note"] = r.runtime_note;
  };
  if (which == "TL") {
    from_report(tauL(t));
  } else if (which == "TR") {
    from_report(tauR(t));
  } else if (which == "T") {
    from_report(tau(t));
  } else if (which == "TH") {
    j["name"] = "TH";
    j["value"] = tauH(t);
    j["witness"] = json::array();
  } else if (which == "tau1") {
    // Dobrushin coefficient of the collapsed chain P(u) at the uniform vector.
    j["name"] = "tau1";
    j["value"] = tau1_matrix(collapse(t, uniform_vector(t.n())));
    j["witness"] = json::array();
  } else if (which == "delta") {
    j["name"] = "delta";
    j["value"] = delta_closed_form(t);
    j["witness"] = json::array();
  } else if (which == "delta-bf") {
    j["name"] = "delta";
    j["value"] = delta_bruteforce(t);
    j["witness"] = json::array();
    j["note"] = "exact subset enumeration";
  } else if (which == "gamma") {
    j["name"] = "gamma";
    j["value"] = gamma_coefficient(t);
    j["witness"] = json::array();
  } else if (which == "theta") {
    Vec sigma = sigma_from_flag(t, sigma_flag.empty() ? "s1" : sigma_flag);
    j["name"] = "theta";
    j["value"] = theta(t, sigma);
    j["witness"] = json::array();
    j["sigma"] = sigma;
  } else {
    throw std::invalid_argument("--which: unknown coefficient " + which);
  }
  std::ofstream f;
  open_out(f, out_path) << j.dump(2) << "\n";
  return 0;
}

json report_to_json(const SolveReport& r) {
  json j;
  j["final"] = r.final;
  if (!r.final_y.empty()) j["final_y"] = r.final_y;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["residual_history"] = r.residual_history;
  if (r.certified_rate) {
    j["certified_rate"] = *r.certified_rate;
    j["certificate"] = r.certificate_name;
  }
  j["unique_certified"] = r.unique_certified;
  return j;
}

ScheduleC parse_schedule(const std::string& s) {
  if (s == "harmonic" || s.empty()) return ScheduleC::harmonic();
  if (s.rfind("constant:", 0) == 0) return ScheduleC::constant(std::stod(s.substr(9)));
  throw std::invalid_argument("--schedule: expected harmonic or constant:<c>");
}

int run_solve(const std::string& method, const TensorSource& src, const SolveOptions& opt,
              double alpha, double sigma, const std::string& schedule, std::uint64_t seed,
              long long steps, const std::string& out_path) {
  auto t = load_dense(src);
  const Vec u = uniform_vector(t.n());
  json j;
  j["method"] = method;
  if (method == "hopm") {
    j["report"] = report_to_json(hopm(t, u, opt));
  } else if (method == "alt") {
    j["report"] = report_to_json(alternate_pm(t, u, u, opt));
  } else if (method == "vrrw") {
    j["report"] = report_to_json(vrrw_iterate(t, u, u, parse_schedule(schedule), opt));
  } else if (method == "mlpr") {
    j["report"] = report_to_json(mlpr_fixed_point(t, alpha, u, opt));
    j["alpha"] = alpha;
  } else if (method == "shifted") {
    if (sigma < 0.0) {
      auto choice = optimal_shift(t);
      sigma = choice.sigma_star;
      j["sigma_optimal_value"] = choice.value;
    }
    j["report"] = report_to_json(shifted_pm(t, sigma, 0.5, u, opt));
    j["sigma"] = sigma;
  } else if (method == "pairchain") {
    auto rep = pair_chain_stationary(t, opt.tol, opt.maxit);
    json pc;
    pc["iterations"] = rep.iterations;
    pc["converged"] = rep.converged;
    pc["fixed_point_residual"] = rep.fixed_point_residual;
    pc["rowsum"] = rep.rowsum;
    std::vector<Vec> rows(t.n(), Vec(t.n()));
    for (int i = 0; i < t.n(); ++i)
      for (int k = 0; k < t.n(); ++k) rows[i][k] = rep.Y(i, k);
    pc["Y"] = rows;
    j["report"] = pc;
  } else if (method == "mc") {
    auto rep = simulate_spacey_mc(t, 0, steps, seed);
    json mc;
    mc["occupation"] = rep.occupation;
    mc["final_state"] = rep.final_state;
    j["report"] = mc;
    j["steps"] = steps;
    j["seed"] = seed;
  } else {
    throw std::invalid_argument("solve: unknown method " + method);
  }
  std::ofstream f;
  open_out(f, out_path) << j.dump(2) << "\n";
  return 0;
}

int run_graph_mlpr(const std::string& edges, double alpha, double beta, bool lcc,
                   const SolveOptions& opt, const std::string& out_path,
                   const std::string& format) {
  Graph g = load_edge_list_file(edges);
  std::vector<int> node_map;
  if (lcc) {
    g = largest_connected_component(g, &node_map);
  } else {
    node_map.resize(g.n);
    for (int i = 0; i < g.n; ++i) node_map[i] = i;
  }
  auto rep = triangle_mlpr(g, alpha, beta, uniform_vector(g.n), opt);
  std::ofstream f;
  std::ostream& out = open_out(f, out_path);
  if (format == "json") {
    json j;
    j["n"] = g.n;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["certificate_alpha_one_plus_beta"] = rep.certificate;
    j["x_minus_v"] = rep.x_minus_v;
    j["x_minus_z"] = rep.x_minus_z;
    j["x_minus_z_bound"] = rep.bound;
    j["iterations"] = rep.solve.iterations;
    j["converged"] = rep.solve.converged;
    j["x"] = rep.solve.final;
    j["z"] = rep.z;
    j["node"] = node_map;
    out << j.dump(2) << "\n";
  } else {
    out << "node,x,z,x_minus_z\n";
    for (int i = 0; i < g.n; ++i) {
      out << node_map[i] << ',' << fmt(rep.solve.final[i]) << ',' << fmt(rep.z[i]) << ','
          << fmt(rep.solve.final[i] - rep.z[i]) << "\n";
    }
  }
  if (!rep.solve.converged) {
    std::cerr << "warning: tensor solve did not converge within maxit\n";
  }
  return 0;
}

// ---- experiments -----------------------------------------------------------

int run_fig1(std::uint64_t seed, int count, int threads, const std::string& out_path) {
  struct Row {
    int n;
    double T, TH, two_minus_2delta;
  };
  std::vector<Row> rows(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      std::uint64_t s = mix_seed(seed, i);
      const int n = 2 + static_cast<int>(s % 9);  // n in 2..10
      auto p = random_stochastic(n, mix_seed(s, 1));
      rows[i] = {n, tau(p).value, tauH(p), 2.0 - 2.0 * delta_closed_form(p)};
    }
  };
  const int nt = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::ofstream f;
  std::ostream& out = open_out(f, out_path);
  out << "n,T,TH,two_minus_2delta\n";
  for (const auto& r : rows) {
    out << r.n << ',' << fmt(r.T) << ',' << fmt(r.TH) << ',' << fmt(r.two_minus_2delta) << "\n";
  }
  return 0;
}

int run_fig2(const TensorSource& src, const std::string& out_path) {
  auto p = load_dense(src);
  auto shared = std::make_shared<DenseTensor3>(p);
  const double T = tau(p).value;
  auto sv = sigma_vectors(p);
  const double th1 = theta(p, sv.sigma1), th2 = theta(p, sv.sigma2), th3 = theta(p, sv.sigma3);
  std::ofstream f;
  std::ostream& out = open_out(f, out_path);
  out << "alpha,two_alpha,TH_Palpha,two_minus_2delta_Palpha,alpha_T,alpha_theta1,alpha_theta2,"
         "alpha_theta3\n";
  const Vec v = uniform_vector(p.n());
  for (int g = 0; g <= 100; ++g) {
    const double a = g / 100.0;
    auto pa = densify(teleport_operator(shared, a, v));
    out << fmt(a) << ',' << fmt(2 * a) << ',' << fmt(tauH(pa)) << ','
        << fmt(2.0 - 2.0 * delta_closed_form(pa)) << ',' << fmt(a * T) << ',' << fmt(a * th1)
        << ',' << fmt(a * th2) << ',' << fmt(a * th3) << "\n";
  }
  return 0;
}

int run_fig3(const std::string& edges, bool lcc, const SolveOptions& opt,
             const std::string& out_path) {
  Graph g = load_edge_list_file(edges);
  if (lcc) g = largest_connected_component(g);
  std::ofstream f;
  std::ostream& out = open_out(f, out_path);
  out << "alpha,beta,x_minus_v,x_minus_z,iterations\n";
  for (int ia = 1; ia < 10; ++ia) {
    for (int ib = 0; ib <= 10; ++ib) {
      const double a = ia / 10.0, b = ib / 10.0;
      try {
        auto rep = triangle_mlpr(g, a, b, uniform_vector(g.n), opt);
        out << fmt(a) << ',' << fmt(b) << ',' << fmt(rep.x_minus_v) << ','
            << fmt(rep.x_minus_z) << ',' << rep.solve.iterations << "\n";
      } catch (const std::exception& e) {
        out << fmt(a) << ',' << fmt(b) << ",error,error,0\n";
      }
    }
  }
  return 0;
}

int run_fig4(const std::string& edges, bool lcc, double ref_alpha, double ref_beta,
             double cmp_alpha, double cmp_beta, const SolveOptions& opt,
             const std::string& out_path) {
  Graph g = load_edge_list_file(edges);
  if (lcc) g = largest_connected_component(g);
  const Vec v = uniform_vector(g.n);
  auto ref = triangle_mlpr(g, ref_alpha, ref_beta, v, opt);
  auto cmp = triangle_mlpr(g, cmp_alpha, cmp_beta, v, opt);
  std::ofstream f;
  std::ostream& out = open_out(f, out_path);
  out << "node,x_ref,x_cmp\n";
  for (int i = 0; i < g.n; ++i) {
    out << i << ',' << fmt(ref.solve.final[i]) << ',' << fmt(cmp.solve.final[i]) << "\n";
  }
  return 0;
}

int run_fig5(const TensorSource& src, const std::string& out_path) {
  auto p = load_dense(src);
  auto shared = std::make_shared<DenseTensor3>(p);
  std::ofstream f;
  std::ostream& out = open_out(f, out_path);
  out << "sigma,T_Psigma\n";
  for (int g = 0; g <= 1000; ++g) {
    const double sigma = g / 1000.0;
    const double v = tau(densify(shift_operator(shared, sigma, 0.5))).value;
    out << fmt(sigma) << ',' << fmt(v) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"higher-order ergodicity coefficients for stochastic tensors"};
  app.require_subcommand(1);

  std::string out_path, format = "csv";
  std::uint64_t seed = 1;
  int threads = 1;
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "random seed");
  app.add_option("--threads", threads, "worker threads for sweeps");

  TensorSource src;
  SolveOptions opt;
  double alpha = 0.5, sigma = -1.0, beta = 0.5;
  std::string which = "T", sigma_flag, schedule = "harmonic", method, edges, fig;
  bool lcc = false;
  long long steps = 1000000;
  double ref_alpha = 0.6, ref_beta = 0.6, cmp_alpha = 0.6, cmp_beta = 0.0;

  auto add_tensor_flags = [&](CLI::App* c) {
    c->fallthrough();  // let the global --out/--seed/--format/--threads apply
    c->add_option("--tensor", src.file, "tensor text file");
    c->add_option("--builtin", src.builtin, "P1|P2|example61");
  };

  auto* coeff = app.add_subcommand("coeff", "compute an ergodicity coefficient");
  add_tensor_flags(coeff);
  coeff->add_option("--which", which, "tau1|TL|TR|T|TH|delta|delta-bf|gamma|theta");
  coeff->add_option("--sigma", sigma_flag, "s1|s2|s3|<file> (theta only)");

  auto* solve = app.add_subcommand("solve", "run a fixed-point solver");
  solve->add_option("method", method, "hopm|alt|vrrw|mlpr|shifted|pairchain|mc")->required();
  add_tensor_flags(solve);
  solve->add_option("--tol", opt.tol, "stopping tolerance");
  solve->add_option("--maxit", opt.maxit, "maximum iterations");
  solve->add_option("--alpha", alpha, "teleport weight (mlpr)");
  solve->add_option("--sigma-value", sigma, "shift (shifted; default: optimized)");
  solve->add_option("--schedule", schedule, "constant:<c>|harmonic (vrrw)");
  solve->add_option("--steps", steps, "Monte Carlo steps (mc)");

  auto* graph = app.add_subcommand("graph", "graph pipelines");
  graph->fallthrough();
  auto* gmlpr = graph->add_subcommand("mlpr", "triangle-based multilinear PageRank");
  gmlpr->fallthrough();
  gmlpr->add_option("--edges", edges, "edge list file")->required();
  gmlpr->add_option("--alpha", alpha, "teleport weight");
  gmlpr->add_option("--beta", beta, "triangle blend weight");
  gmlpr->add_flag("--lcc", lcc, "restrict to the largest connected component");
  gmlpr->add_option("--tol", opt.tol, "stopping tolerance");
  gmlpr->add_option("--maxit", opt.maxit, "maximum iterations");
  graph->require_subcommand(1);

  auto* exp = app.add_subcommand("experiment", "figure-style data sweeps");
  exp->add_option("name", fig, "fig1|fig2|fig3|fig4|fig5")->required();
  add_tensor_flags(exp);
  exp->add_option("--edges", edges, "edge list file (fig3, fig4)");
  exp->add_flag("--lcc", lcc, "restrict to the largest connected component");
  exp->add_option("--count", steps, "sample count (fig1)");
  exp->add_option("--ref-alpha", ref_alpha, "reference alpha (fig4)");
  exp->add_option("--ref-beta", ref_beta, "reference beta (fig4)");
  exp->add_option("--cmp-alpha", cmp_alpha, "comparison alpha (fig4)");
  exp->add_option("--cmp-beta", cmp_beta, "comparison beta (fig4)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (coeff->parsed()) return run_coeff(src, which, sigma_flag, out_path);
    if (solve->parsed()) {
      return run_solve(method, src, opt, alpha, sigma, schedule, seed, steps, out_path);
    }
    if (graph->parsed()) {
      return run_graph_mlpr(edges, alpha, beta, lcc, opt, out_path, format);
    }
    if (exp->parsed()) {
      if (fig == "fig1") {
        const int count = steps == 1000000 ? 10000 : static_cast<int>(steps);
        return run_fig1(seed, count, threads, out_path);
      }
      if (fig == "fig2") return run_fig2(src, out_path);
      if (fig == "fig3") {
        if (edges.empty()) throw std::invalid_argument("fig3 needs --edges");
        return run_fig3(edges, lcc, opt, out_path);
      }
      if (fig == "fig4") {
        if (edges.empty()) throw std::invalid_argument("fig4 needs --edges");
        return run_fig4(edges, lcc, ref_alpha, ref_beta, cmp_alpha, cmp_beta, opt, out_path);
      }
      if (fig == "fig5") return run_fig5(src, out_path);
      throw std::invalid_argument("experiment: unknown figure " + fig);
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
