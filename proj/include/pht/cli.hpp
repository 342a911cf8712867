#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bottleneck.hpp"
#include "complex.hpp"
#include "integral2d.hpp"
#include "maxdist2d.hpp"
#include "oracle.hpp"
#include "persistence.hpp"
#include "sphere3d.hpp"

namespace pht::cli {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kInput = 3 };

inline std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Complex load_complex(const std::string& path) { return parse_complex(read_file(path)); }

inline Diagram load_diagram(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_diagram_csv(in);
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  return out;
}

/// Evaluates fn(i) for i in [0, n) on `threads` workers; results land by index.
template <class F>
std::vector<double> parallel_eval(std::size_t n, int threads, F&& fn) {
  std::vector<double> out(n);
  const std::size_t t = static_cast<std::size_t>(std::max(1, threads));
  if (t == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += t) out[i] = fn(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

inline void write_svg(std::ostream& out, const std::vector<double>& theta, const std::vector<double>& h) {
  const double w = 640, ht = 320, pad = 30;
  double top = 0.0;
  for (double v : h)
    if (std::isfinite(v)) top = std::max(top, v);
  if (top <= 0.0) top = 1.0;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << ht << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << ht - pad << "\" x2=\"" << w - pad << "\" y2=\"" << ht - pad
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << ht - pad
      << "\" stroke=\"black\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(h[i])) continue;
    const double x = pad + (w - 2 * pad) * theta[i] / kTwoPi;
    const double y = ht - pad - (ht - 2 * pad) * h[i] / top;
    out << x << ',' << y << ' ';
  }
  out << "\"/>\n";
  out << "<text x=\"" << pad << "\" y=\"" << pad - 8 << "\" font-size=\"12\">max " << fmt(top) << "</text>\n";
  out << "</svg>\n";
}

/// One oracle cross-check per line; returns the number of failures.
inline int selftest(std::ostream& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    out << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  const double a = 0.75, phi = 0.3;
  const Complex p(2, {Point{{0.0, 0.0}}}, {Simplex{{0}}});
  const Complex q(2, {Point{{a * std::cos(phi), a * std::sin(phi)}}}, {Simplex{{0}}});
  report("single-vertex dinf equals distance", std::fabs(d_infty(p, q, seed).value - a) <= 1e-12);
  report("single-vertex d1 equals 4a", std::fabs(d1(p, q).value - 4 * a) <= 1e-10);

  bool agree = true;
  for (int t = 0; t < 20; ++t) {
    std::vector<DiagramPoint> x, y;
    for (int i = 0; i < 3; ++i) {
      const double b = u(rng), d = u(rng);
      x.push_back({std::min(b, d), std::max(b, d)});
      const double b2 = u(rng), d2 = u(rng);
      y.push_back({std::min(b2, d2), std::max(b2, d2)});
    }
    BipartiteInstance inst{x, y, {}, {}, false};
    agree = agree && bottleneck_distance(inst) == exhaustive_bottleneck(x, y);
  }
  report("bottleneck matches exhaustive enumeration", agree);

  const Complex tri(2, {Point{{0, 0}}, Point{{1, 0}}, Point{{0, 1}}},
                    {Simplex{{0}}, Simplex{{1}}, Simplex{{2}}, Simplex{{0, 1}}, Simplex{{1, 2}}, Simplex{{0, 2}}});
  const Complex moved(2, {Point{{0.1, 0}}, Point{{1.2, 0.1}}, Point{{0, 0.8}}}, tri.simplices());
  const auto basic = d_infty_basic(tri, moved);
  const auto pruned = d_infty(tri, moved, seed);
  report("basic and pruned engines agree", basic.value == pruned.value);
  const auto bound = sampled_dinf(tri, moved, 256);
  report("sampled certificate brackets exact value",
         bound.lower <= basic.value + 1e-12 && basic.value <= bound.upper + 1e-12);
  return failures;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Distances between persistent homology transforms"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for sampling")->check(CLI::PositiveNumber);

  std::string file_a, file_b, csv, svg, intervals, mode = "pruned";
  double theta = 0.0, delta = 0.1;
  std::vector<double> dir;
  std::uint64_t seed = 0;
  int samples = 1024;
  bool recompute = false, emit_witness = false;

  auto* diagram = app.add_subcommand("diagram", "persistence diagram of a complex at a direction");
  diagram->add_option("complex", file_a)->required();
  auto* theta_opt = diagram->add_option("--theta", theta, "planar direction angle");
  diagram->add_option("--dir", dir, "unit direction vector")->delimiter(',')->excludes(theta_opt);

  auto* bneck = app.add_subcommand("bottleneck", "bottleneck distance of two diagram CSV files");
  bneck->add_option("x", file_a)->required();
  bneck->add_option("y", file_b)->required();

  auto* dinf = app.add_subcommand("dinf", "exact maximum distance of two planar complexes");
  dinf->add_option("a", file_a)->required();
  dinf->add_option("b", file_b)->required();
  dinf->add_option("--exact", mode)->check(CLI::IsMember({"basic", "pruned"}));
  dinf->add_option("--seed", seed);
  dinf->add_flag("--recompute-oracle", recompute, "recompute pairings instead of transposing");
  dinf->add_flag("--emit-witness", emit_witness, "print the diagrams at the witness angle");

  auto* d1cmd = app.add_subcommand("d1", "exact integrated distance of two planar complexes");
  d1cmd->add_option("a", file_a)->required();
  d1cmd->add_option("b", file_b)->required();
  d1cmd->add_option("--intervals", intervals, "per-interval CSV output");

  auto* dinf3 = app.add_subcommand("dinf3", "certified sampled maximum distance of two 3D complexes");
  dinf3->add_option("a", file_a)->required();
  dinf3->add_option("b", file_b)->required();
  dinf3->add_option("--delta", delta, "covering radius")->check(CLI::PositiveNumber);
  dinf3->add_option("--csv", csv, "sample CSV output");

  auto* profile = app.add_subcommand("profile", "sampled H(theta) of two planar complexes");
  profile->add_option("a", file_a)->required();
  profile->add_option("b", file_b)->required();
  profile->add_option("--samples", samples)->check(CLI::PositiveNumber);
  profile->add_option("--csv", csv);
  profile->add_option("--svg", svg);

  auto* self = app.add_subcommand("selftest", "oracle cross-checks");
  self->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*diagram) {
      const Complex k = load_complex(file_a);
      Direction w = Direction::angle(theta);
      if (!dir.empty()) {
        if (static_cast<int>(dir.size()) != k.ambient_dim()) throw InputError("direction arity mismatch");
        w = Direction::unit(dir);
      } else if (k.ambient_dim() != 2) {
        throw InputError("--theta needs a planar complex; use --dir");
      }
      write_diagram_csv(out, compute_persistence(k, w));
    } else if (*bneck) {
      out << fmt(bottleneck_distance(load_diagram(file_a), load_diagram(file_b))) << '\n';
    } else if (*dinf) {
      const Complex k = load_complex(file_a), kp = load_complex(file_b);
      DecideOptions opt;
      opt.recompute = recompute;
      MaxDistance2D engine(k, kp, opt);
      const auto r = mode == "basic" ? engine.basic() : engine.pruned(seed);
      out << "value " << fmt(r.value) << '\n';
      out << "witness_theta " << fmt(r.witness_theta) << '\n';
      out << "refinements " << r.refinements << '\n';
      if (emit_witness && std::isfinite(r.value)) {
        const Direction w = Direction::angle(r.witness_theta);
        out << "witness_H " << fmt(evaluate_H(k, kp, w)) << '\n';
        out << "# diagram a\n";
        write_diagram_csv(out, compute_persistence(k, w));
        out << "# diagram b\n";
        write_diagram_csv(out, compute_persistence(kp, w));
      }
    } else if (*d1cmd) {
      const Complex k = load_complex(file_a), kp = load_complex(file_b);
      const auto r = d1(k, kp);
      out << fmt(r.value) << '\n';
      if (!intervals.empty()) {
        auto f = open_output(intervals);
        write_intervals_csv(f, r);
      }
    } else if (*dinf3) {
      const Complex k = load_complex(file_a), kp = load_complex(file_b);
      if (k.ambient_dim() != 3 || kp.ambient_dim() != 3) throw InputError("dinf3 needs 3D complexes");
      int level = 0;
      while (icosphere(level).covering_radius() > delta)
        if (++level > 9) throw InputError("covering parameter too small");
      const SphereMesh mesh = icosphere(level);
      const auto h = parallel_eval(mesh.vertices.size(), threads,
                                   [&](std::size_t i) { return evaluate_H3(k, kp, to_direction(mesh.vertices[i])); });
      SampledBound3 b;
      b.level = level;
      b.delta = mesh.covering_radius();
      for (std::size_t i = 0; i < h.size(); ++i) {
        b.samples.push_back({mesh.vertices[i], h[i]});
        b.lower = std::max(b.lower, h[i]);
      }
      b.upper = b.lower + (enclosing_radius(k) + enclosing_radius(kp)) * b.delta;
      out << "lower " << fmt(b.lower) << '\n' << "upper " << fmt(b.upper) << '\n';
      out << "delta " << fmt(b.delta) << '\n' << "level " << b.level << '\n';
      if (!csv.empty()) {
        auto f = open_output(csv);
        write_sphere_samples(f, b);
      }
    } else if (*profile) {
      const Complex k = load_complex(file_a), kp = load_complex(file_b);
      std::vector<double> th(samples);
      for (int i = 0; i < samples; ++i) th[i] = kTwoPi * i / samples;
      const auto h = parallel_eval(th.size(), threads, [&](std::size_t i) { return evaluate_H(k, kp, th[i]); });
      std::ostringstream rows;
      rows << "theta,H\n";
      for (std::size_t i = 0; i < th.size(); ++i) rows << fmt(th[i]) << ',' << fmt(h[i]) << '\n';
      if (!csv.empty()) {
        auto f = open_output(csv);
        f << rows.str();
      }
      if (!svg.empty()) {
        auto f = open_output(svg);
        write_svg(f, th, h);
      }
      if (csv.empty() && svg.empty()) out << rows.str();
      out << "max " << fmt(*std::max_element(h.begin(), h.end())) << '\n';
    } else if (*self) {
      return selftest(out, seed) == 0 ? kOk : kFailure;
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace pht::cli
