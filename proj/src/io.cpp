#include "simplexlearn/io.hpp"

#include "simplexlearn/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace simplexlearn::io {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return out;
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size(), ErrorCode::kIo,
          "not a number: '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size(), ErrorCode::kIo,
          "not an unsigned integer: '" + s + "'");
  return v;
}

Point parse_row(const std::string& line, int dim) {
  const auto fields = split(line, ',');
  require(static_cast<int>(fields.size()) == dim, ErrorCode::kIo,
          "expected " + std::to_string(dim) + " values per row, got " +
              std::to_string(fields.size()));
  Point p(dim);
  for (int d = 0; d < dim; ++d) p(d) = parse_double(fields[static_cast<std::size_t>(d)]);
  return p;
}

std::string format_row(const Point& p) {
  std::string row;
  for (Eigen::Index d = 0; d < p.size(); ++d) {
    if (d > 0) row += ',';
    row += format_double(p(d));
  }
  return row;
}

std::string extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kIo, what + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

json point_to_json(const Point& p) {
  json a = json::array();
  for (Eigen::Index d = 0; d < p.size(); ++d) a.push_back(p(d));
  return a;
}

Point point_from_json(const json& j) {
  require(j.is_array() && !j.empty() && j.size() <= kMaxDim, ErrorCode::kIo,
          "point must be a nonempty array of numbers");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t d = 0; d < j.size(); ++d) {
    require(j[d].is_number(), ErrorCode::kIo, "point coordinate is not a number");
    p(static_cast<Eigen::Index>(d)) = j[d].get<double>();
  }
  return p;
}

json simplex_to_json(const Simplex& s) {
  json v = json::array();
  for (int i = 0; i <= s.dim(); ++i) v.push_back(point_to_json(s.vertex(i)));
  return {{"dim", s.dim()}, {"vertices", v}};
}

Simplex simplex_from_json(const json& j) {
  require(j.is_object() && j.contains("dim") && j.contains("vertices"), ErrorCode::kIo,
          "simplex JSON needs 'dim' and 'vertices'");
  const int dim = j.at("dim").get<int>();
  check_dimension(dim);
  const auto& vs = j.at("vertices");
  require(vs.is_array(), ErrorCode::kIo, "'vertices' must be an array");
  PointSet points;
  for (const auto& v : vs) {
    points.push_back(point_from_json(v));
    require(points.back().size() == dim, ErrorCode::kIo, "vertex dimension differs from 'dim'");
  }
  return Simplex::from_points(points);
}

std::string simplex_to_csv(const Simplex& s) {
  std::string out = "dim," + std::to_string(s.dim()) + "\n";
  for (int i = 0; i <= s.dim(); ++i) out += format_row(s.vertex(i)) + "\n";
  return out;
}

Simplex simplex_from_csv(const std::string& text) {
  const auto lines = nonempty_lines(text);
  require(!lines.empty(), ErrorCode::kIo, "empty simplex CSV");
  const auto header = split(lines[0], ',');
  require(header.size() == 2 && header[0] == "dim", ErrorCode::kIo,
          "simplex CSV must start with 'dim,K'");
  const int dim = static_cast<int>(parse_u64(header[1]));
  check_dimension(dim);
  require(static_cast<int>(lines.size()) == dim + 2, ErrorCode::kIo,
          "simplex CSV needs K+1 vertex rows");
  PointSet points;
  for (std::size_t i = 1; i < lines.size(); ++i) points.push_back(parse_row(lines[i], dim));
  return Simplex::from_points(points);
}

std::string dataset_to_csv(const NoisyDataset& d) {
  std::string out = "dim,n,sigma,seed\n";
  out += std::to_string(d.dim) + "," + std::to_string(d.size()) + "," + format_double(d.sigma) +
         "," + std::to_string(d.seed) + "\n";
  for (const auto& p : d.points) out += format_row(p) + "\n";
  return out;
}

NoisyDataset dataset_from_csv(const std::string& text) {
  const auto lines = nonempty_lines(text);
  require(lines.size() >= 2, ErrorCode::kIo, "dataset CSV needs a header and a value row");
  const auto header = split(lines[0], ',');
  require(header == std::vector<std::string>{"dim", "n", "sigma", "seed"}, ErrorCode::kIo,
          "dataset CSV header must be 'dim,n,sigma,seed'");
  const auto values = split(lines[1], ',');
  require(values.size() == 4, ErrorCode::kIo, "dataset CSV value row needs 4 fields");
  NoisyDataset d;
  d.dim = static_cast<int>(parse_u64(values[0]));
  check_dimension(d.dim);
  const std::uint64_t n = parse_u64(values[1]);
  d.sigma = parse_double(values[2]);
  d.seed = parse_u64(values[3]);
  require(lines.size() - 2 == n, ErrorCode::kIo,
          "dataset CSV declares n=" + std::to_string(n) + " but has " +
              std::to_string(lines.size() - 2) + " rows");
  d.points.reserve(n);
  for (std::size_t i = 2; i < lines.size(); ++i) d.points.push_back(parse_row(lines[i], d.dim));
  d.validate();
  return d;
}

json dataset_to_json(const NoisyDataset& d) {
  json pts = json::array();
  for (const auto& p : d.points) pts.push_back(point_to_json(p));
  json j = {{"dim", d.dim}, {"n", d.size()}, {"sigma", d.sigma}, {"seed", d.seed},
            {"points", pts}};
  if (d.truth) j["truth"] = simplex_to_json(*d.truth);
  return j;
}

NoisyDataset dataset_from_json(const json& j) {
  try {
    NoisyDataset d;
    d.dim = j.at("dim").get<int>();
    check_dimension(d.dim);
    d.sigma = j.at("sigma").get<double>();
    d.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& p : j.at("points")) d.points.push_back(point_from_json(p));
    require(d.points.size() == j.at("n").get<std::size_t>(), ErrorCode::kIo,
            "dataset JSON 'n' does not match the number of points");
    if (j.contains("truth")) d.truth = simplex_from_json(j.at("truth"));
    d.validate();
    return d;
  } catch (const json::exception& e) {
    fail(ErrorCode::kIo, std::string("malformed dataset JSON: ") + e.what());
  }
}

json ball_to_json(const BoundingBall& b) {
  const auto& d = b.diagnostics;
  return {{"center", point_to_json(b.center)},
          {"radius", b.radius},
          {"diagnostics",
           {{"D", d.d_statistic},
            {"m", d.pairs},
            {"snr_used", d.snr_used},
            {"vol_root_used", d.vol_root_used},
            {"snr_provenance", provenance_name(d.snr_provenance)},
            {"delta_used", d.delta_used},
            {"denominator", d.denominator},
            {"denominator_variant", "appendix"},
            {"required_m", d.required_pairs},
            {"heuristic", d.heuristic},
            {"warnings", d.warnings}}}};
}

BoundingBall ball_from_json(const json& j) {
  try {
    BoundingBall b;
    b.center = point_from_json(j.at("center"));
    b.radius = j.at("radius").get<double>();
    require(b.radius > 0.0, ErrorCode::kIo, "ball radius must be positive");
    if (j.contains("diagnostics")) {
      const auto& d = j.at("diagnostics");
      b.diagnostics.d_statistic = d.value("D", 0.0);
      b.diagnostics.pairs = d.value("m", std::size_t{0});
      b.diagnostics.snr_used = d.value("snr_used", 0.0);
      b.diagnostics.vol_root_used = d.value("vol_root_used", 0.0);
      b.diagnostics.snr_provenance = parse_provenance(d.value("snr_provenance", "config"));
      b.diagnostics.delta_used = d.value("delta_used", 0.0);
      b.diagnostics.denominator = d.value("denominator", 0.0);
      b.diagnostics.required_pairs = d.value("required_m", std::size_t{0});
      b.diagnostics.heuristic = d.value("heuristic", false);
    }
    return b;
  } catch (const json::exception& e) {
    fail(ErrorCode::kIo, std::string("malformed ball JSON: ") + e.what());
  }
}

json covering_to_json(const CoveringSet& c) {
  json pts = json::array();
  for (const auto& p : c.points) pts.push_back(point_to_json(p));
  return {{"ball", ball_to_json(c.ball)},
          {"resolution", c.resolution},
          {"method", cover_method_name(c.method)},
          {"size", c.points.size()},
          {"points", pts}};
}

json cover_report_to_json(const CoverReport& r) {
  return {{"max_distance", r.max_distance}, {"probes", r.probes}, {"passed", r.passed}};
}

json filter_record_to_json(const FilterRecord& r) {
  json j = {{"subsets", r.subsets},
            {"dropped_degenerate", r.dropped_degenerate},
            {"dropped_isoperimetry", r.dropped_isoperimetry},
            {"v_min", r.v_min}};
  if (r.isoperimetry) {
    j["isoperimetry"] = {{"theta_lower", r.isoperimetry->theta_lower},
                         {"theta_upper", r.isoperimetry->theta_upper},
                         {"slack", r.slack}};
  } else {
    j["isoperimetry"] = nullptr;
  }
  return j;
}

json family_to_json(const CandidateFamily& f) {
  json pts = json::array();
  for (const auto& p : f.points()) pts.push_back(point_to_json(p));
  json tuples = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto t = f.tuple(i);
    tuples.push_back(std::vector<std::uint32_t>(t.begin(), t.end()));
  }
  return {{"dim", f.dim()},
          {"size", f.size()},
          {"points", pts},
          {"tuples", tuples},
          {"filters", filter_record_to_json(f.filters())}};
}

json selection_report_to_json(const SelectionReport& r) {
  json j = {{"winner", r.winner},
            {"wins", r.wins},
            {"mode", measure_mode_name(r.mode)},
            {"contests_recorded", r.contests_recorded},
            {"guarantee",
             {{"factor", r.guarantee.factor},
              {"additive", r.guarantee.additive},
              {"eps", r.guarantee.eps},
              {"delta", r.guarantee.delta},
              {"n", r.guarantee.n},
              {"M", r.guarantee.candidates}}}};
  if (r.contests_recorded) {
    json c = json::array();
    for (const auto& rec : r.contests)
      c.push_back({{"i", rec.i},
                   {"j", rec.j},
                   {"p_i", rec.p_i},
                   {"p_j", rec.p_j},
                   {"se_i", rec.se_i},
                   {"se_j", rec.se_j},
                   {"mu", rec.mu},
                   {"winner", rec.winner}});
    j["contests"] = c;
  }
  return j;
}

json tv_to_json(const TvEstimate& tv) {
  return {{"value", tv.value},
          {"standard_error", tv.standard_error},
          {"method", tv_method_name(tv.method)},
          {"outer_budget", tv.outer_budget},
          {"inner_budget", tv.inner_budget}};
}

json guarantee_to_json(const GuaranteeRecord& g) {
  return {{"c1", g.c1}, {"c2", g.c2},       {"eps1", g.eps1},
          {"eps2", g.eps2}, {"delta", g.delta}, {"n_required", g.n_required},
          {"bound", g.bound()}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  require(static_cast<bool>(out), ErrorCode::kIo, "write failed for " + path.string());
}

Simplex load_simplex(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (extension(path) == ".csv") return simplex_from_csv(text);
  return simplex_from_json(parse_json(text, "simplex file " + path.string()));
}

void save_simplex(const std::filesystem::path& path, const Simplex& s) {
  if (extension(path) == ".csv") write_file(path, simplex_to_csv(s));
  else write_file(path, simplex_to_json(s).dump(2) + "\n");
}

NoisyDataset load_dataset(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (extension(path) == ".json")
    return dataset_from_json(parse_json(text, "dataset file " + path.string()));
  return dataset_from_csv(text);
}

void save_dataset(const std::filesystem::path& path, const NoisyDataset& d) {
  if (extension(path) == ".json") write_file(path, dataset_to_json(d).dump(2) + "\n");
  else write_file(path, dataset_to_csv(d));
}

}  // namespace simplexlearn::io
