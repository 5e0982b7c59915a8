// Copyright 2026 The modpack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modpack/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "modpack/ansatz_io.hpp"
#include "modpack/jw_compile.hpp"
#include "modpack/packer.hpp"
#include "modpack/render.hpp"
#include "modpack/schedule_io.hpp"
#include "modpack/simcheck.hpp"
#include "modpack/synthetic.hpp"
#include "modpack/timing.hpp"
#include "modpack/util.hpp"

namespace modpack {

namespace {

// Raised for a failed validation or verification; the report is already out.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LayoutFlags {
  std::vector<int> seams;
  int modules = 0;
  int rows = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--seams", seams, "Seam rows, comma separated (a seam s starts a module at row s)")
        ->delimiter(',');
    cmd->add_option("--modules", modules, "Equal-size modules instead of explicit seams")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--rows", rows, "Row count (default: orbitals of the ansatz)")
        ->check(CLI::PositiveNumber);
  }

  ModuleLayout build(const Ansatz& a) const {
    const int n = rows > 0 ? rows : a.n_orbitals();
    if (n < a.n_orbitals()) throw std::invalid_argument("--rows is smaller than the orbital count");
    if (!seams.empty() && modules > 0) throw std::invalid_argument("give --seams or --modules, not both");
    if (modules > 0) return ModuleLayout::equal(n, modules);
    return ModuleLayout(n, seams);
  }
};

struct PackFlags {
  double tau = 1.0;
  bool gap_widening = false;
  std::string mask_basis = "modules";

  void add(CLI::App* cmd, bool with_tau = true) {
    if (with_tau) cmd->add_option("--tau", tau, "Latency ratio (>= 1)")->check(CLI::Range(1.0, 1e9));
    cmd->add_flag("--gap-widening", gap_widening, "Widen short masks to fit the narrowest intra tile");
    cmd->add_option("--mask-basis", mask_basis, "Mask length basis")
        ->check(CLI::IsMember({"modules", "rows"}));
  }

  PackOptions options() const {
    PackOptions o;
    o.gap_widening = gap_widening;
    o.mask_basis = mask_basis == "rows" ? MaskBasis::RowHeight : MaskBasis::ModulesSpanned;
    return o;
  }
};

AnsatzFormat ansatz_format(const std::string& s) {
  if (s == "text") return AnsatzFormat::Text;
  if (s == "json") return AnsatzFormat::Json;
  return AnsatzFormat::Auto;
}

// An empty path or "-" means the stream.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::vector<double> expand_grid(const std::vector<std::string>& items, const char* what) {
  // Each item is a number or lo:hi:step (inclusive).
  std::vector<double> out;
  for (const auto& item : items) {
    auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_double(parts[0]));
    } else if (parts.size() == 3) {
      const double lo = parse_double(parts[0]), hi = parse_double(parts[1]),
                   step = parse_double(parts[2]);
      if (!(step > 0) || hi < lo) throw std::invalid_argument(std::string("bad ") + what + " range " + item);
      for (int i = 0;; ++i) {
        const double v = lo + i * step;
        if (v > hi + 1e-9 * std::max(1.0, std::abs(hi))) break;
        out.push_back(v);
      }
    } else {
      throw std::invalid_argument(std::string("bad ") + what + " entry " + item);
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
  return out;
}

std::string seam_list(const ModuleLayout& l) {
  std::string s;
  for (int v : l.seams()) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s.empty() ? "none" : s;
}

// ---- compile ---------------------------------------------------------------

struct CompileCmd {
  std::string input;
  std::string format = "auto";
  double epsilon = 0.0;
  std::string out_path;
  LayoutFlags layout;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("compile", "Select terms at epsilon and compile them into tiles");
    c->add_option("ansatz", input, "Ansatz file (text or JSON)")->required();
    c->add_option("--format", format, "Ansatz format")->check(CLI::IsMember({"auto", "text", "json"}));
    c->add_option("--epsilon", epsilon, "Gradient threshold; 0 keeps every term")
        ->check(CLI::NonNegativeNumber);
    c->add_option("-o,--out", out_path, "Tiles file (default: stdout, summary to stderr)");
    layout.add(c);
  }

  int run(std::ostream& out, std::ostream& err) const {
    const Ansatz a = load_ansatz(input, ansatz_format(format));
    const ModuleLayout l = layout.build(a);
    const Ansatz kept = select_terms(a, epsilon);
    const auto tiles = compile_ansatz(kept, l);
    const int inter = static_cast<int>(std::count_if(
        tiles.begin(), tiles.end(), [](const CircuitTile& t) { return t.is_inter(); }));
    int inter_gates = 0;
    for (const auto& t : tiles) inter_gates += t.inter_gate_count;
    emit(out_path, format_tiles({l, tiles}), out);
    std::ostream& summary = (out_path.empty() || out_path == "-") ? err : out;
    summary << "terms kept " << kept.size() << " of " << a.size() << '\n'
            << "layout rows " << l.n_rows() << " seams " << seam_list(l) << '\n'
            << "intra tiles " << tiles.size() - static_cast<std::size_t>(inter) << '\n'
            << "inter tiles " << inter << '\n'
            << "inter gates " << inter_gates << '\n';
    return 0;
  }
};

// ---- pack / baseline -------------------------------------------------------

struct PackCmd {
  PackerKind kind;
  std::string name;
  std::string tiles_path;
  std::string out_path;
  PackFlags flags;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand(
        name, kind == PackerKind::Double ? "Pack tiles with the two-grid packer"
                                         : "Pack tiles with the per-row frontier baseline");
    c->add_option("tiles", tiles_path, "Tiles file from compile")->required();
    c->add_option("-o,--out", out_path, "Schedule file (default: stdout, summary to stderr)");
    flags.add(c);
  }

  int run(std::ostream& out, std::ostream& err) const {
    const TileSet ts = parse_tiles(read_file(tiles_path));
    const PackOptions opts = flags.options();
    const Schedule s = run_packer(kind, ts.tiles, ts.layout, flags.tau, opts);
    const Schedule s0 = run_packer(kind, ts.tiles, ts.layout, 1.0, opts);
    const auto report = validate_schedule(s, ts.tiles, ts.layout, flags.tau, opts);
    emit(out_path, format_schedule(s, ts.tiles), out);
    std::ostream& summary = (out_path.empty() || out_path == "-") ? err : out;
    summary << "packer " << s.packer_name << " tau " << format_double(flags.tau) << '\n'
            << "makespan " << s.makespan << '\n'
            << "t0 " << s0.makespan << '\n'
            << "ratio " << format_double(s0.makespan ? double(s.makespan) / s0.makespan : 1.0)
            << '\n'
            << "lower bound " << row_load_lower_bound(ts.tiles) << '\n'
            << "valid " << (report.ok() ? "yes" : "no") << '\n';
    if (!report.ok()) {
      summary << report.summary();
      throw CheckFailed("schedule failed validation");
    }
    return 0;
  }
};

// ---- sweep -----------------------------------------------------------------

struct SweepCmd {
  std::string input;
  std::string format = "auto";
  std::vector<std::string> epsilons{"1e-2", "1e-3", "1e-4", "1e-5"};
  std::vector<std::string> taus{"1:20:1"};
  std::string out_path;
  int workers = 0;
  CLI::Option* workers_opt = nullptr;
  double free_tolerance = 1.05;
  LayoutFlags layout;
  PackFlags flags;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("sweep", "Phase table of t/t0 over epsilon and tau");
    c->add_option("ansatz", input, "Ansatz file (text or JSON)")->required();
    c->add_option("--format", format, "Ansatz format")->check(CLI::IsMember({"auto", "text", "json"}));
    c->add_option("--epsilons", epsilons, "Epsilon values or lo:hi:step ranges")->delimiter(',');
    c->add_option("--taus", taus, "Tau values or lo:hi:step ranges")->delimiter(',');
    c->add_option("-o,--out", out_path, "CSV file (default: stdout, summary to stderr)");
    workers_opt = c->add_option("--workers", workers,
                                std::string("Worker threads (0: available parallelism; default from ") +
                                    kWorkersEnv + ")")
                      ->check(CLI::NonNegativeNumber);
    c->add_option("--free-tolerance", free_tolerance, "t/t0 bound of the free regime");
    layout.add(c);
    flags.add(c, false);
  }

  int run(std::ostream& out, std::ostream& err) const {
    const Ansatz a = load_ansatz(input, ansatz_format(format));
    const ModuleLayout l = layout.build(a);
    SweepOptions opts;
    opts.pack = flags.options();
    opts.workers = workers;
    // CLI11 drops env values that fail validation, so read it here.
    if (workers_opt->count() == 0) {
      if (const char* env = std::getenv(kWorkersEnv); env && *env) {
        long v = -1;
        try {
          v = parse_int(env);
        } catch (const std::exception&) {
        }
        if (v < 0) throw std::invalid_argument(std::string(kWorkersEnv) + "=" + env + " is not a worker count");
        opts.workers = static_cast<int>(v);
      }
    }
    const auto eps = expand_grid(epsilons, "epsilon");
    const auto ts = expand_grid(taus, "tau");
    const PhaseTable table = sweep(a, l, eps, ts, opts);
    emit(out_path, table.to_csv(), out);
    std::ostream& summary = (out_path.empty() || out_path == "-") ? err : out;
    summary << "cells " << table.cells.size() << " (" << eps.size() << " epsilon x " << ts.size()
            << " tau)\n";
    for (std::size_t e = 0; e < eps.size(); ++e) {
      // Contiguous free run from the first tau, as in free_threshold.
      std::string free_tau = "none";
      double worst = 0.0;
      bool broken = false;
      for (std::size_t t = 0; t < ts.size(); ++t) {
        const auto& c = table.at(e, t);
        worst = std::max(worst, c.ratio);
        if (!broken && c.ratio <= free_tolerance) {
          free_tau = format_double(c.tau);
        } else {
          broken = true;
        }
      }
      const auto& c0 = table.at(e, 0);
      summary << "epsilon " << format_double(eps[e]) << " terms " << c0.terms << " inter "
              << c0.tiles_inter << " t0 " << c0.t0 << " max_ratio " << format_double(worst)
              << " free_tau " << free_tau << '\n';
    }
    return 0;
  }
};

// ---- seams -----------------------------------------------------------------

struct SeamsCmd {
  std::string input;
  std::string format = "auto";
  int modules = 2;
  int min_rows = 1;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("seams", "Inter-module CNOTs per seam position and the best layout");
    c->add_option("ansatz", input, "Ansatz file (text or JSON)")->required();
    c->add_option("--format", format, "Ansatz format")->check(CLI::IsMember({"auto", "text", "json"}));
    c->add_option("--modules", modules, "Module count")->check(CLI::PositiveNumber);
    c->add_option("--min-rows", min_rows, "Minimum rows per module")->check(CLI::PositiveNumber);
  }

  int run(std::ostream& out, std::ostream&) const {
    const Ansatz a = load_ansatz(input, ansatz_format(format));
    const auto per_seam = seam_sweep(a);
    out << "seam,n_inter\n";
    for (std::size_t s = 1; s < per_seam.size(); ++s) out << s << ',' << per_seam[s] << '\n';
    const SeamChoice choice = optimize_seam(a, modules, min_rows);
    out << "choice modules " << modules << " seams " << seam_list(choice.layout) << " n_inter "
        << choice.n_inter << '\n';
    return 0;
  }
};

// ---- hwmodel ---------------------------------------------------------------

struct HwCmd {
  HardwareParams p;
  double spacing_um = 5.0;
  double bare_us = 0.5;
  std::string scheme = "lattice";
  int pairs = 0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("hwmodel", "Neutral-atom timing model and the derived tau");
    c->add_option("--distance", p.code_distance, "Code distance d");
    c->add_option("--spacing-um", spacing_um, "Array spacing in micrometres");
    c->add_option("--speed", p.avg_speed, "Average atom speed in m/s");
    c->add_option("--bare-us", bare_us, "Bare transversal CNOT time in microseconds");
    c->add_option("--ladder", p.ladder_length, "CNOTs per ladder");
    c->add_option("--bell-rate", p.bell_rate, "Bell pair generation rate per second");
    c->add_option("--scheme", scheme, "Inter-module CNOT scheme (sets the default pair count)")
        ->check(CLI::IsMember({"lattice", "transversal"}));
    c->add_option("--pairs", pairs, "Bell pairs per inter-module CNOT (default: d or d^2)");
    c->add_option("--cnots-per-tile", p.inter_cnots_per_tile, "Inter-module CNOTs per tile seam");
  }

  int run(std::ostream& out, std::ostream&) {
    p.array_spacing = spacing_um * 1e-6;
    p.bare_gate_time = bare_us * 1e-6;
    p.bell_pairs_per_inter_cnot =
        pairs > 0 ? pairs
                  : HardwareParams::pairs_for(scheme == "transversal" ? InterCnotScheme::Transversal
                                                                      : InterCnotScheme::LatticeSurgery,
                                              p.code_distance);
    const HardwareTiming h = hardware_tau(p);
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    os << "bell pairs per inter cnot " << p.bell_pairs_per_inter_cnot << '\n'
       << "t_ladder_us " << h.t_ladder * 1e6 << '\n'
       << "t_ladder_approx_us " << h.t_ladder_approx * 1e6 << '\n'
       << "t_intra_us " << h.t_intra * 1e6 << '\n'
       << "t_intra_approx_us " << h.t_intra_approx * 1e6 << '\n'
       << "t_bell_per_cnot_us " << h.t_bell_per_cnot * 1e6 << '\n'
       << "t_bell_per_tile_us " << h.t_bell_per_tile * 1e6 << '\n'
       << "tau " << h.tau << '\n'
       << "tau_approx " << h.tau_approx << '\n';
    out << os.str();
    return 0;
  }
};

// ---- render ----------------------------------------------------------------

struct RenderCmd {
  std::string schedule_path;
  std::string tiles_path;
  std::string format = "ascii";
  int scale = 1;
  bool no_masks = false;
  std::string out_path;
  std::string mask_basis = "modules";

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("render", "Draw a schedule as ASCII or SVG");
    c->add_option("schedule", schedule_path, "Schedule file from pack or baseline")->required();
    c->add_option("tiles", tiles_path, "Tiles file (supplies the layout)")->required();
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"ascii", "svg"}));
    c->add_option("--scale", scale, "Schedule columns per output cell")->check(CLI::PositiveNumber);
    c->add_flag("--no-masks", no_masks, "Do not draw buffering masks");
    c->add_option("--mask-basis", mask_basis, "Mask length basis")
        ->check(CLI::IsMember({"modules", "rows"}));
    c->add_option("-o,--out", out_path, "Output file (default: stdout)");
  }

  int run(std::ostream& out, std::ostream&) const {
    const ScheduleFile sf = parse_schedule(read_file(schedule_path));
    TileSet ts = parse_tiles(read_file(tiles_path));
    for (const auto& p : sf.schedule.placements) {
      auto it = std::find_if(ts.tiles.begin(), ts.tiles.end(),
                             [&](const CircuitTile& t) { return t.tile_id == p.tile_id; });
      if (it == ts.tiles.end() || it->row_lo != p.row_lo || it->row_hi != p.row_hi) {
        throw std::invalid_argument("schedule tile " + std::to_string(p.tile_id) +
                                    " does not match " + tiles_path);
      }
    }
    RenderSpec spec;
    spec.format = format == "svg" ? RenderFormat::Svg : RenderFormat::Ascii;
    spec.column_scale = scale;
    spec.show_masks = !no_masks;
    spec.mask_basis = mask_basis == "rows" ? MaskBasis::RowHeight : MaskBasis::ModulesSpanned;
    emit(out_path, render(sf.schedule, ts, spec), out);
    return 0;
  }
};

// ---- verify ----------------------------------------------------------------

struct VerifyCmd {
  int n = 4;
  std::string terms_path;
  std::vector<double> amplitudes{0.1, 0.3, 1.0};
  double tol = 1e-8;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("verify", "Dense check of compiled terms against the JW exponential");
    c->add_option("--n", n, "Qubits (at most 12)")->check(CLI::Range(1, kDenseMaxQubits));
    c->add_option("--terms", terms_path, "Ansatz file; default is one term per hopping class");
    c->add_option("--amplitudes", amplitudes, "Amplitudes for the default terms")->delimiter(',');
    c->add_option("--tol", tol, "Spectral-norm tolerance");
  }

  int run(std::ostream& out, std::ostream&) const {
    bool ok = true;
    auto one = [&](const std::vector<ExcitationTerm>& terms, int qubits) {
      const auto r = run_verification(terms, qubits, tol);
      out << r.table();
      ok = ok && r.ok();
    };
    if (!terms_path.empty()) {
      const Ansatz a = load_ansatz(terms_path);
      if (a.n_orbitals() > n) {
        throw std::invalid_argument(terms_path + " needs " + std::to_string(a.n_orbitals()) +
                                    " qubits; raise --n");
      }
      one(a.terms(), n);
    } else {
      if (n < 4) throw std::invalid_argument("the default terms need --n >= 4");
      for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (i) out << '\n';
        out << "amplitude " << format_double(amplitudes[i]) << '\n';
        one(standard_terms(amplitudes[i]), n);
      }
    }
    out << "verify " << (ok ? "pass" : "FAIL") << '\n';
    if (!ok) throw CheckFailed("verification failed");
    return 0;
  }
};

// ---- synth -----------------------------------------------------------------

struct SynthCmd {
  SyntheticSpec spec;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "text";

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("synth", "Write a seeded synthetic chain ansatz");
    c->add_option("--modules", spec.n_modules, "Modules in the chain");
    c->add_option("--rows-per-module", spec.rows_per_module, "Rows per module");
    c->add_option("--intra-terms", spec.intra_terms_per_module, "Intra terms per module");
    c->add_option("--inter-terms", spec.inter_terms_per_seam, "Inter terms per seam");
    c->add_option("--max-crossed", spec.max_seams_crossed, "Seams an inter term may cross");
    c->add_option("--inter-decay", spec.inter_decay, "Gradient factor per crossed seam");
    c->add_option("--seed", seed, "RNG seed");
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    c->add_option("-o,--out", out_path, "Ansatz file (default: stdout)");
  }

  int run(std::ostream& out, std::ostream&) const {
    const Ansatz a = generate_synthetic_chain(spec, seed);
    emit(out_path, serialize_ansatz(a, format == "json" ? AnsatzFormat::Json : AnsatzFormat::Text),
         out);
    return 0;
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"modpack: schedule excitation-term circuits across modules"};
  app.name("modpack");
  app.require_subcommand(1);
  app.set_config("--config", "", "Defaults file: key=value lines, [subcommand] sections; flags win");
  app.allow_config_extras(false);

  CompileCmd compile;
  PackCmd pack{PackerKind::Double, "pack", {}, {}, {}};
  PackCmd baseline{PackerKind::Baseline, "baseline", {}, {}, {}};
  SweepCmd sweep_cmd;
  SeamsCmd seams;
  HwCmd hw;
  RenderCmd render_cmd;
  VerifyCmd verify;
  SynthCmd synth;
  compile.add(app);
  pack.add(app);
  baseline.add(app);
  sweep_cmd.add(app);
  seams.add(app);
  hw.add(app);
  render_cmd.add(app);
  verify.add(app);
  synth.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "compile") return compile.run(out, err);
    if (cmd == "pack") return pack.run(out, err);
    if (cmd == "baseline") return baseline.run(out, err);
    if (cmd == "sweep") return sweep_cmd.run(out, err);
    if (cmd == "seams") return seams.run(out, err);
    if (cmd == "hwmodel") return hw.run(out, err);
    if (cmd == "render") return render_cmd.run(out, err);
    if (cmd == "verify") return verify.run(out, err);
    if (cmd == "synth") return synth.run(out, err);
    err << "modpack: unknown subcommand " << cmd << '\n';
    return 2;
  } catch (const CheckFailed& e) {
    err << "modpack: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "modpack: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace modpack
