#include "rufst/feature_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace rufst {

namespace {

using nlohmann::json;

json frame_meta(const FrameSpec& spec) {
  return json{{"A", spec.A}, {"B", spec.B}, {"grid", {spec.n1, spec.n2}}, {"M", spec.M}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void export_features(const std::filesystem::path& dir, const FeatureSet& fs,
                     const FrameSpec& spec) {
  std::filesystem::create_directories(dir);

  std::vector<double> flat;
  flat.reserve(fs.maps.size() * static_cast<std::size_t>(fs.n1) * fs.n2);
  std::vector<double> norms;
  norms.reserve(fs.maps.size());
  for (const RealArray& m : fs.maps) {
    flat.insert(flat.end(), m.v.begin(), m.v.end());
    norms.push_back(frobenius_norm(m));
  }
  npy_write_real(dir / "maps.npy",
                 {static_cast<std::int64_t>(fs.maps.size()), fs.n1, fs.n2}, flat);

  json meta;
  meta["format_version"] = 1;
  meta["kind"] = fs.kind == TransformKind::Plain ? "plain" : "rotational";
  meta["rotation_mode"] = fs.mode == RotationMode::Exact ? "exact" : "bilinear";
  meta["M"] = fs.M;
  meta["K"] = fs.K;
  meta["grid"] = {fs.n1, fs.n2};
  meta["frame"] = frame_meta(spec);
  meta["first_term_weight"] =
      fs.kind == TransformKind::Rotational ? 1.0 / std::sqrt(static_cast<double>(spec.B)) : 1.0;
  meta["layout"] = fs.layout;
  meta["map_count"] = fs.maps.size();
  meta["map_norms"] = norms;
  meta["feature_norm"] = feature_norm(fs);
  write_text(dir / "meta.json", meta.dump(2) + "\n");

  std::string csv = "path,norm\n";
  for (std::size_t i = 0; i < fs.layout.size(); ++i) {
    csv += fs.layout[i] + "," + fmt17(norms[i]) + "\n";
  }
  write_text(dir / "norms.csv", csv);
}

FeatureSet import_features(const std::filesystem::path& dir) {
  const json meta = read_json(dir / "meta.json");
  FeatureSet fs;
  fs.kind = meta.at("kind").get<std::string>() == "plain" ? TransformKind::Plain
                                                          : TransformKind::Rotational;
  fs.mode = meta.at("rotation_mode").get<std::string>() == "exact" ? RotationMode::Exact
                                                                   : RotationMode::Bilinear;
  fs.M = meta.at("M").get<int>();
  fs.K = meta.at("K").get<int>();
  fs.n1 = meta.at("grid").at(0).get<int>();
  fs.n2 = meta.at("grid").at(1).get<int>();
  fs.layout = meta.at("layout").get<std::vector<std::string>>();

  const NpyArray arr = npy_read(dir / "maps.npy");
  if (arr.is_complex || arr.shape.size() != 3) {
    throw IoError("import_features: maps.npy must be a real 3-D array");
  }
  if (arr.shape[1] != fs.n1 || arr.shape[2] != fs.n2 ||
      arr.shape[0] != static_cast<std::int64_t>(fs.layout.size())) {
    throw IoError("import_features: maps.npy shape does not match meta.json");
  }
  const std::size_t per = static_cast<std::size_t>(fs.n1) * fs.n2;
  fs.maps.resize(static_cast<std::size_t>(arr.shape[0]));
  for (std::size_t i = 0; i < fs.maps.size(); ++i) {
    fs.maps[i] = RealArray(fs.n1, fs.n2);
    std::copy(arr.real_data.begin() + static_cast<std::ptrdiff_t>(i * per),
              arr.real_data.begin() + static_cast<std::ptrdiff_t>((i + 1) * per),
              fs.maps[i].v.begin());
  }
  return fs;
}

void export_coefficients(const std::filesystem::path& dir, const CoefficientSet& coeffs,
                         const FrameSpec& spec) {
  std::filesystem::create_directories(dir);
  std::vector<cplx> flat;
  json atoms = json::array();
  for (const CoefficientSet::AtomCoeffs& ac : coeffs.atoms) {
    json a;
    a["atom"] = ac.index.to_string();
    a["empty"] = ac.empty;
    a["k1_min"] = ac.k1_min;
    a["k2_min"] = ac.k2_min;
    a["s1"] = ac.s1;
    a["s2"] = ac.s2;
    a["offset"] = flat.size();
    atoms.push_back(std::move(a));
    flat.insert(flat.end(), ac.c.begin(), ac.c.end());
  }
  npy_write_complex(dir / "coeffs.npy", {static_cast<std::int64_t>(flat.size())}, flat);

  json meta;
  meta["format_version"] = 1;
  meta["grid"] = {coeffs.n1, coeffs.n2};
  meta["full_cover"] = coeffs.full_cover;
  meta["frame"] = frame_meta(spec);
  meta["total_energy"] = coeffs.total_energy();
  meta["atoms"] = std::move(atoms);
  write_text(dir / "meta.json", meta.dump(2) + "\n");
}

CoefficientSet import_coefficients(const std::filesystem::path& dir) {
  const json meta = read_json(dir / "meta.json");
  const NpyArray arr = npy_read(dir / "coeffs.npy");
  if (!arr.is_complex || arr.shape.size() != 1) {
    throw IoError("import_coefficients: coeffs.npy must be a flat complex array");
  }
  CoefficientSet out;
  out.n1 = meta.at("grid").at(0).get<int>();
  out.n2 = meta.at("grid").at(1).get<int>();
  out.full_cover = meta.at("full_cover").get<bool>();
  for (const auto& a : meta.at("atoms")) {
    CoefficientSet::AtomCoeffs ac;
    const std::string id = a.at("atom").get<std::string>();
    if (id == "f0") {
      ac.index = AtomIndex::lowpass();
    } else {
      const std::size_t dot = id.find(".j");
      ac.index = AtomIndex::band(std::stoi(id.substr(1, dot - 1)),
                                 std::stoll(id.substr(dot + 2)));
    }
    ac.empty = a.at("empty").get<bool>();
    ac.k1_min = a.at("k1_min").get<int>();
    ac.k2_min = a.at("k2_min").get<int>();
    ac.s1 = a.at("s1").get<int>();
    ac.s2 = a.at("s2").get<int>();
    const std::size_t offset = a.at("offset").get<std::size_t>();
    if (!ac.empty) {
      const std::size_t count = static_cast<std::size_t>(ac.s1) * ac.s2;
      if (offset + count > arr.complex_data.size()) {
        throw IoError("import_coefficients: payload shorter than atom table");
      }
      ac.c.assign(arr.complex_data.begin() + static_cast<std::ptrdiff_t>(offset),
                  arr.complex_data.begin() + static_cast<std::ptrdiff_t>(offset + count));
    }
    out.atoms.push_back(std::move(ac));
  }
  return out;
}

}  // namespace rufst
