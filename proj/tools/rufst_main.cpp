// rufst: build rotational covering frames on sampled 2-D grids, compute
// plain/rotational truncated Fourier scattering features, analyze arrays
// against the finite frame, and run the verification suites.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rufst/config.hpp"
#include "rufst/feature_io.hpp"
#include "rufst/finite_frame.hpp"
#include "rufst/io.hpp"
#include "rufst/scattering.hpp"
#include "rufst/verify/suites.hpp"

namespace fs = std::filesystem;
using namespace rufst;

namespace {

struct CliFlags {
  std::string config_path;
  std::optional<double> A;
  std::optional<int> B;
  std::optional<int> M;
  std::optional<int> K;
  std::string size;
  std::string transform;
  std::string rotation_mode;
  std::string input;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> cap;
  std::vector<std::string> suites;
  std::string break_check;
};

void add_common_flags(CLI::App* cmd, CliFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
  cmd->add_option("--A", f.A, "radial shell width A");
  cmd->add_option("--B", f.B, "base angular resolution B (order of G)");
  cmd->add_option("--M", f.M, "radial truncation level M");
  cmd->add_option("--K", f.K, "scattering depth K");
  cmd->add_option("--size", f.size, "grid size N1xN2, e.g. 33x33");
  cmd->add_option("--transform", f.transform, "plain|rotational");
  cmd->add_option("--rotation-mode", f.rotation_mode, "exact|bilinear");
  cmd->add_option("--input", f.input, "input array (.npy) or image (.pgm)");
  cmd->add_option("--out", f.out, "output file or directory");
  cmd->add_option("--seed", f.seed, "seed for randomized suites");
  cmd->add_option("--cap", f.cap, "path count cap");
}

JobConfig resolve_config(const CliFlags& f) {
  JobConfig cfg;
  if (!f.config_path.empty()) cfg = JobConfig::from_json_file(f.config_path);
  if (f.A) cfg.A = *f.A;
  if (f.B) cfg.B = *f.B;
  if (f.M) cfg.M = *f.M;
  if (f.K) cfg.K = *f.K;
  if (!f.size.empty()) {
    const std::size_t x = f.size.find('x');
    if (x == std::string::npos) throw ConfigError("config: field size must look like 33x33");
    try {
      cfg.n1 = std::stoi(f.size.substr(0, x));
      cfg.n2 = std::stoi(f.size.substr(x + 1));
    } catch (...) {
      throw ConfigError("config: field size must look like 33x33");
    }
  }
  if (!f.transform.empty()) cfg.transform = f.transform;
  if (!f.rotation_mode.empty()) cfg.rotation_mode = f.rotation_mode;
  if (!f.input.empty()) cfg.input = f.input;
  if (!f.out.empty()) cfg.out = f.out;
  if (f.seed) cfg.seed = *f.seed;
  if (f.cap) cfg.cap = *f.cap;
  if (!f.suites.empty()) cfg.suites = f.suites;
  if (!f.break_check.empty()) cfg.break_check = f.break_check;
  cfg.validate();
  return cfg;
}

void serialize_frame(const fs::path& dir, const FrameInstance& frame) {
  fs::create_directories(dir);
  nlohmann::json meta;
  meta["A"] = frame.spec.A;
  meta["B"] = frame.spec.B;
  meta["grid"] = {frame.spec.n1, frame.spec.n2};
  meta["M"] = frame.spec.M;
  nlohmann::json atoms = nlohmann::json::array();
  std::vector<double> flat;
  for (const SpectralAtom& a : frame.atoms) {
    atoms.push_back({{"atom", a.index.to_string()},
                     {"empty", a.empty},
                     {"k1_min", a.k1_min},
                     {"k2_min", a.k2_min},
                     {"s1", a.s1},
                     {"s2", a.s2}});
    flat.insert(flat.end(), a.mask.v.begin(), a.mask.v.end());
  }
  meta["atoms"] = std::move(atoms);
  std::ofstream out(dir / "frame.json");
  out << meta.dump(2) << "\n";
  npy_write_real(dir / "masks.npy",
                 {static_cast<std::int64_t>(frame.atoms.size()), frame.spec.n1, frame.spec.n2},
                 flat);
}

int cmd_frame_build(const JobConfig& cfg) {
  const FrameSpec spec = cfg.frame_spec();
  spec.validate();
  const FrameInstance frame = build_frame(spec);
  std::size_t empty = 0;
  for (const SpectralAtom& a : frame.atoms) empty += a.empty ? 1 : 0;
  const PartitionReport rep = verify_partition(frame);

  std::printf("frame: A=%g B=%d M=%d grid=%dx%d\n", spec.A, spec.B, spec.M, spec.n1, spec.n2);
  std::printf("atoms: %zu (%zu empty)\n", frame.atoms.size(), empty);
  if (spec.full_cover()) {
    std::printf("full cover: yes\n");
  } else {
    std::printf("full cover: no\n");
    std::printf("warning: A*M=%g < max lattice radius %g; partition equals 1 only inside\n",
                spec.A * spec.M, spec.max_lattice_radius());
  }
  std::printf("partition residual inside: %.6e (threshold 1e-10)\n", rep.max_dev_inside);
  std::printf("partition leak outside: %.6e\n", rep.max_leak_outside);

  double max_diam = 0.0;
  bool any = false;
  for (int m = 1; m <= spec.M; ++m) {
    if (pow2_ceil(m) * spec.B < 4) continue;
    any = true;
    max_diam = std::max(max_diam, wedge_diameter(spec, m));
  }
  const double bound = wedge_diameter_bound(spec);
  if (any) {
    std::printf("wedge diameters: max %.6g <= bound %.6g: %s\n", max_diam, bound,
                max_diam <= bound ? "ok" : "VIOLATED");
  } else {
    std::printf("wedge diameters: no level with m*B >= 4\n");
  }

  if (!cfg.out.empty()) {
    serialize_frame(cfg.out, frame);
    std::printf("frame written to %s\n", cfg.out.c_str());
  }
  return rep.max_dev_inside < 1e-10 ? 0 : 1;
}

RealArray center_crop(const RealArray& img, int half) {
  const int c1 = img.n1 / 2, c2 = img.n2 / 2;
  RealArray out(2 * half + 1, 2 * half + 1);
  for (int i1 = -half; i1 <= half; ++i1) {
    for (int i2 = -half; i2 <= half; ++i2) {
      out.at(i1 + half, i2 + half) = img.at(c1 + i1, c2 + i2);
    }
  }
  return out;
}

int cmd_frame_render(const JobConfig& cfg) {
  if (cfg.out.empty()) throw ConfigError("config: frame render needs --out");
  const FrameSpec spec = cfg.frame_spec();
  spec.validate();
  const FrameInstance frame = build_frame(spec);
  fs::create_directories(cfg.out);

  nlohmann::json meta;
  nlohmann::json entries = nlohmann::json::array();
  std::vector<RealArray> intensities(frame.atoms.size());
  std::size_t rendered = 0;
  for (std::size_t i = 0; i < frame.atoms.size(); ++i) {
    const SpectralAtom& atom = frame.atoms[i];
    if (atom.empty) continue;
    GridArray spectrum(spec.n1, spec.n2, Domain::Frequency);
    for (std::size_t k = 0; k < spectrum.v.size(); ++k) spectrum.v[k] = atom.mask.v[k];
    const GridArray spatial = idft(spectrum);
    // recenter so the atom core sits at the image center
    RealArray img(spec.n1, spec.n2);
    const int c1 = spec.n1 / 2, c2 = spec.n2 / 2;
    double peak = 0.0;
    for (int a = 0; a < spec.n1; ++a) {
      for (int b = 0; b < spec.n2; ++b) {
        const double v =
            std::abs(spatial.at((a - c1 + spec.n1) % spec.n1, (b - c2 + spec.n2) % spec.n2));
        img.at(a, b) = v;
        peak = std::max(peak, v);
      }
    }
    if (peak > 0.0) {
      for (double& v : img.v) v /= peak;
    }
    intensities[i] = img;
    const std::string name = "atom_" + atom.index.to_string() + ".pgm";
    pgm_write(fs::path(cfg.out) / name, img);
    entries.push_back({{"atom", atom.index.to_string()}, {"file", name}, {"peak", peak}});
    ++rendered;
  }
  meta["normalization"] = "per-image max";
  meta["atoms"] = std::move(entries);

  // Montage of the first four rotations per level, rows n = 1..4, columns m.
  if (spec.B == 4) {
    const int cols = std::min(spec.M, 4);
    const int half = spec.n1 / 4;
    const int cell = 2 * half + 1;
    const int gap = 2;
    RealArray montage(4 * cell + 3 * gap, cols * cell + (cols - 1) * gap);
    for (double& v : montage.v) v = 1.0;
    for (int n = 1; n <= 4; ++n) {
      for (int m = 1; m <= cols; ++m) {
        const AtomIndex idx = AtomIndex::band(m, n - 1);
        const SpectralAtom& atom = frame.atom(idx);
        if (atom.empty) continue;
        const RealArray cellimg = center_crop(intensities[frame.atom_pos(idx)], half);
        const int r0 = (n - 1) * (cell + gap), c0 = (m - 1) * (cell + gap);
        for (int a = 0; a < cell; ++a) {
          for (int b = 0; b < cell; ++b) montage.at(r0 + a, c0 + b) = cellimg.at(a, b);
        }
      }
    }
    pgm_write(fs::path(cfg.out) / "montage.pgm", montage);
    meta["montage"] = "montage.pgm";
  }

  std::ofstream mf(fs::path(cfg.out) / "render_meta.json");
  mf << meta.dump(2) << "\n";
  std::printf("rendered %zu atoms to %s\n", rendered, cfg.out.c_str());
  return 0;
}

int cmd_scatter(const JobConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("config: scatter needs --input");
  const GridArray f = load_grid(cfg.input);
  FrameSpec spec = cfg.frame_spec();
  spec.n1 = f.n1;
  spec.n2 = f.n2;
  spec.validate();
  const FrameInstance frame = build_frame(spec);
  const FeatureSet features =
      cfg.transform_kind() == TransformKind::Plain
          ? scatter_plain(frame, f, cfg.M, cfg.K, cfg.cap)
          : scatter_rotational(frame, f, cfg.M, cfg.K, cfg.mode(), cfg.cap);
  std::printf("transform: %s M=%d K=%d maps=%zu\n", cfg.transform.c_str(), cfg.M, cfg.K,
              features.maps.size());
  std::printf("input norm: %.17g\n", frobenius_norm(f));
  std::printf("feature norm: %.17g\n", feature_norm(features));
  if (!cfg.out.empty()) {
    export_features(cfg.out, features, spec);
    std::printf("features written to %s\n", cfg.out.c_str());
  }
  return 0;
}

int cmd_analyze(const JobConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("config: analyze needs --input");
  const GridArray f = load_grid(cfg.input);
  JobConfig sized = cfg;
  sized.n1 = f.n1;
  sized.n2 = f.n2;
  const FrameSpec spec = sized.frame_spec_full_cover();
  spec.validate();
  const FrameInstance frame = build_frame(spec);
  const CoefficientSet coeffs = analyze(frame, f);
  const double n2 = frobenius_norm(f) * frobenius_norm(f);
  const double residual =
      n2 > 0.0 ? std::abs(coeffs.total_energy() - n2) / n2 : 0.0;
  std::size_t count = 0;
  for (const auto& a : coeffs.atoms) count += a.c.size();
  std::printf("frame: A=%g B=%d M=%d grid=%dx%d (full cover)\n", spec.A, spec.B, spec.M,
              spec.n1, spec.n2);
  std::printf("coefficients: %zu across %zu atoms\n", count, coeffs.atoms.size());
  std::printf("parseval residual: %.6e\n", residual);
  if (!cfg.out.empty()) {
    export_coefficients(cfg.out, coeffs, spec);
    std::printf("coefficients written to %s\n", cfg.out.c_str());
  }
  return 0;
}

int cmd_verify(const JobConfig& cfg) {
  verify::VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.suites = cfg.suites;
  opt.break_check = cfg.break_check;
  const std::vector<verify::CheckResult> results = verify::run_verify(opt);
  std::size_t passed = 0;
  for (const verify::CheckResult& r : results) {
    std::printf("%s\n", verify::format_check_line(r).c_str());
    passed += r.pass ? 1 : 0;
  }
  std::printf("verified %zu/%zu checks\n", passed, results.size());
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotational covering frames and truncated Fourier scattering"};
  app.require_subcommand(1);
  CliFlags flags;

  CLI::App* frame_cmd = app.add_subcommand("frame", "frame construction commands");
  frame_cmd->require_subcommand(1);
  CLI::App* build_cmd = frame_cmd->add_subcommand("build", "build a frame and verify its partition");
  add_common_flags(build_cmd, flags);
  CLI::App* render_cmd = frame_cmd->add_subcommand("render", "render spatial atom intensities");
  add_common_flags(render_cmd, flags);

  CLI::App* scatter_cmd = app.add_subcommand("scatter", "compute scattering features");
  add_common_flags(scatter_cmd, flags);

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "finite-frame coefficients");
  add_common_flags(analyze_cmd, flags);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
  add_common_flags(verify_cmd, flags);
  verify_cmd->add_option("--suite", flags.suites, "suites to run (core frame finite scattering)");
  verify_cmd->add_option("--break", flags.break_check,
                         "debug: sabotage the named check (negative control)");

  CLI11_PARSE(app, argc, argv);

  try {
    const JobConfig cfg = resolve_config(flags);
    if (build_cmd->parsed()) return cmd_frame_build(cfg);
    if (render_cmd->parsed()) return cmd_frame_render(cfg);
    if (scatter_cmd->parsed()) return cmd_scatter(cfg);
    if (analyze_cmd->parsed()) return cmd_analyze(cfg);
    if (verify_cmd->parsed()) return cmd_verify(cfg);
  } catch (const CapExceededError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}
