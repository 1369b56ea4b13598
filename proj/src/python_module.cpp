#include "simplexlearn/bounding.hpp"
#include "simplexlearn/cli.hpp"
#include "simplexlearn/config.hpp"
#include "simplexlearn/error.hpp"
#include "simplexlearn/io.hpp"
#include "simplexlearn/metrics.hpp"
#include "simplexlearn/pipeline.hpp"
#include "simplexlearn/sampling.hpp"
#include "simplexlearn/select.hpp"
#include "simplexlearn/simplex.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace simplexlearn;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointSet points_from_array(const Array& a) {
  if (a.ndim() == 1) {
    PointSet out;
    for (py::ssize_t i = 0; i < a.shape(0); ++i) {
      Point p(1);
      p(0) = a.at(i);
      out.push_back(p);
    }
    return out;
  }
  require(a.ndim() == 2 && a.shape(1) >= 1 && a.shape(1) <= kMaxDim, ErrorCode::kDimension,
          "points must be an (n, K) array with 1 <= K <= " + std::to_string(kMaxDim));
  const auto r = a.unchecked<2>();
  PointSet out;
  out.reserve(static_cast<std::size_t>(a.shape(0)));
  for (py::ssize_t i = 0; i < a.shape(0); ++i) {
    Point p(a.shape(1));
    for (py::ssize_t d = 0; d < a.shape(1); ++d) p(d) = r(i, d);
    out.push_back(p);
  }
  return out;
}

Array points_to_array(const PointSet& points, int dim) {
  Array a({static_cast<py::ssize_t>(points.size()), static_cast<py::ssize_t>(dim)});
  auto w = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (int d = 0; d < dim; ++d) w(static_cast<py::ssize_t>(i), d) = points[i](d);
  return a;
}

// Vertices are rows: shape (K+1, K).
Simplex simplex_from_array(const Array& a) { return Simplex::from_points(points_from_array(a)); }

Array simplex_to_array(const Simplex& s) {
  PointSet vs;
  for (int i = 0; i <= s.dim(); ++i) vs.push_back(s.vertex(i));
  return points_to_array(vs, s.dim());
}

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

ConfigMap config_from_dict(const py::dict& d) {
  ConfigMap map;
  for (const auto& [k, v] : d) {
    std::string value;
    if (py::isinstance<py::bool_>(v)) value = v.cast<bool>() ? "true" : "false";
    else value = py::str(v).cast<std::string>();
    map[py::str(k).cast<std::string>()] = value;
  }
  return map;
}

}  // namespace

PYBIND11_MODULE(_simplexlearn, m) {
  m.doc() = "Learning a simplex from noisy uniform samples";

  static py::exception<Error> error_type(m, "SimplexLearnError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type,
                    (std::string(error_code_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.attr("__version__") = version_string();

  py::class_<Simplex>(m, "Simplex")
      .def(py::init([](const Array& vertices) { return simplex_from_array(vertices); }),
           py::arg("vertices"))
      .def_property_readonly("dim", &Simplex::dim)
      .def_property_readonly("vertices", [](const Simplex& s) { return simplex_to_array(s); })
      .def_property_readonly("volume", &Simplex::volume)
      .def_property_readonly("diameter", &Simplex::diameter)
      .def("facet_volumes", &Simplex::facet_volumes)
      .def("centroid", [](const Simplex& s) {
        PointSet c{s.centroid()};
        return points_to_array(c, s.dim());
      })
      .def(
          "contains",
          [](const Simplex& s, const Array& points) {
            std::vector<bool> out;
            for (const auto& q : points_from_array(points)) out.push_back(s.contains(q));
            return out;
          },
          py::arg("points"), "Membership of each row of an (n, K) array.")
      .def("tight_isoperimetry", [](const Simplex& s) {
        const auto t = s.tight_isoperimetry();
        return py::make_tuple(t.theta_lower, t.theta_upper);
      })
      .def("__repr__", [](const Simplex& s) {
        return "<Simplex dim=" + std::to_string(s.dim()) +
               " volume=" + io::format_double(s.volume()) + ">";
      });

  m.def("standard_simplex", &standard_simplex, py::arg("dim"));

  m.def(
      "generate",
      [](const Simplex& truth, std::size_t n, double sigma, std::uint64_t seed) {
        const NoisyDataset d = generate_dataset(truth, n, sigma, seed);
        return points_to_array(d.points, d.dim);
      },
      py::arg("truth"), py::arg("n"), py::arg("sigma"), py::arg("seed") = 0,
      "Noisy uniform samples from `truth` as an (n, K) array.");

  m.def(
      "learn",
      [](const Array& points, double sigma, const py::dict& config,
         std::optional<Simplex> truth, int threads) {
        NoisyDataset d;
        d.points = points_from_array(points);
        require(!d.points.empty(), ErrorCode::kInsufficientData, "no points");
        d.dim = static_cast<int>(d.points.front().size());
        d.sigma = sigma;
        d.truth = truth;
        const RunConfig c = run_config_from_map(config_from_dict(config));
        std::optional<RunResult> r;
        {
          py::gil_scoped_release release;
          r.emplace(learn(d, c, threads));
        }
        py::dict out = to_python(run_result_to_json(*r));
        out["simplex"] = py::cast(r->learned);
        return out;
      },
      py::arg("points"), py::arg("sigma"), py::arg("config") = py::dict(),
      py::arg("truth") = py::none(), py::arg("threads") = 1,
      "Run the full pipeline. Returns the result record as a dict; the learned "
      "simplex is under 'simplex'.");

  m.def("tv", &tv_uniform_exact, py::arg("a"), py::arg("b"),
        "Exact TV distance between two uniform simplices (K <= 2).");

  m.def(
      "tv_noisy_vs_clean",
      [](const Simplex& s, double sigma, std::uint64_t seed, std::size_t budget) {
        RngStream rng(seed, stream_key(StreamKind::kMonteCarlo, 1));
        const TvEstimate e = tv_noisy_vs_clean_mc(s, sigma, rng, budget, budget);
        return py::make_tuple(e.value, e.standard_error);
      },
      py::arg("simplex"), py::arg("sigma"), py::arg("seed") = 0,
      py::arg("budget") = kDefaultNestedBudget);

  m.def("lemma3_bound", &lemma3_bound, py::arg("dim"), py::arg("theta_upper"), py::arg("snr"));
  m.def("min_samples_lemma1", &min_samples_lemma1, py::arg("dim"), py::arg("theta_lower"),
        py::arg("delta"));
  m.def("min_samples_selection", &min_samples_selection, py::arg("candidates"), py::arg("eps"),
        py::arg("delta"));
  m.def("sample_complexity_thm2", &sample_complexity_thm2, py::arg("dim"),
        py::arg("theta_upper"), py::arg("radius"), py::arg("vol_root"), py::arg("eps"),
        py::arg("delta"));
  m.def("sample_complexity_thm3", &sample_complexity_thm3, py::arg("dim"),
        py::arg("theta_lower"), py::arg("theta_upper"), py::arg("radius"), py::arg("vol_root"),
        py::arg("eps"), py::arg("delta"));

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "simplexlearn");
        std::ostringstream out, err;
        const int status = run_cli(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (status, stdout, stderr).");
}
