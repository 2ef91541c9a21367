#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>

#include <json.hpp>

#include "skygeo/centroid.hpp"
#include "skygeo/config.hpp"
#include "skygeo/errors.hpp"
#include "skygeo/extraction.hpp"
#include "skygeo/gipsy.hpp"
#include "skygeo/manifest.hpp"
#include "skygeo/pipeline.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null:
            return py::none();
        case nlohmann::json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer:
            return py::int_(j.get<std::int64_t>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<std::uint64_t>());
        case nlohmann::json::value_t::number_float:
            return py::float_(j.get<double>());
        case nlohmann::json::value_t::string:
            return py::str(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) {
                out[py::str(key)] = json_to_py(value);
            }
            return out;
        }
        default:
            return py::none();
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Geocode news-described events and verify them in satellite imagery";

    py::register_exception<skygeo::Error>(m, "SkygeoError", PyExc_RuntimeError);

    py::class_<skygeo::GeoCoordinate>(m, "GeoCoordinate")
        .def(py::init<double, double>(), py::arg("lat_deg"), py::arg("lon_deg"))
        .def_readwrite("lat_deg", &skygeo::GeoCoordinate::lat_deg)
        .def_readwrite("lon_deg", &skygeo::GeoCoordinate::lon_deg)
        .def("__repr__", [](const skygeo::GeoCoordinate& c) {
            return "GeoCoordinate(" + std::to_string(c.lat_deg) + ", " +
                   std::to_string(c.lon_deg) + ")";
        });

    py::class_<skygeo::EcefPoint>(m, "EcefPoint")
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readwrite("x", &skygeo::EcefPoint::x)
        .def_readwrite("y", &skygeo::EcefPoint::y)
        .def_readwrite("z", &skygeo::EcefPoint::z)
        .def("__repr__", [](const skygeo::EcefPoint& p) {
            return "EcefPoint(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
                   std::to_string(p.z) + ")";
        });

    py::class_<skygeo::GeoBoundingBox>(m, "GeoBoundingBox")
        .def(py::init<double, double, double, double>(), py::arg("south"), py::arg("north"),
             py::arg("west"), py::arg("east"))
        .def_readwrite("south", &skygeo::GeoBoundingBox::south)
        .def_readwrite("north", &skygeo::GeoBoundingBox::north)
        .def_readwrite("west", &skygeo::GeoBoundingBox::west)
        .def_readwrite("east", &skygeo::GeoBoundingBox::east)
        .def("contains", &skygeo::GeoBoundingBox::contains)
        .def("center", &skygeo::GeoBoundingBox::center)
        .def("crosses_antimeridian", &skygeo::GeoBoundingBox::crosses_antimeridian);

    py::class_<skygeo::WeightedPlace>(m, "WeightedPlace")
        .def(py::init([](std::string name, skygeo::GeoCoordinate coordinate,
                         skygeo::GeoBoundingBox bbox, int weight) {
                 return skygeo::WeightedPlace{std::move(name), coordinate, bbox, weight};
             }),
             py::arg("name"), py::arg("coordinate"), py::arg("bbox"), py::arg("weight") = 1)
        .def_readwrite("name", &skygeo::WeightedPlace::name)
        .def_readwrite("coordinate", &skygeo::WeightedPlace::coordinate)
        .def_readwrite("bbox", &skygeo::WeightedPlace::bbox)
        .def_readwrite("weight", &skygeo::WeightedPlace::weight);

    py::class_<skygeo::Gazetteer, std::shared_ptr<skygeo::Gazetteer>>(m, "Gazetteer")
        .def("__len__", &skygeo::Gazetteer::size)
        .def("lookup", [](const skygeo::Gazetteer& g, const std::string& name) -> py::object {
            const auto* e = g.lookup(name);
            if (!e) return py::none();
            return py::make_tuple(e->name, e->coordinate, e->bbox);
        });

    m.def("normalize_longitude", &skygeo::normalize_longitude, py::arg("lon_deg"),
          "Map any finite longitude into (-180, 180].");
    m.def("geodetic_to_ecef", &skygeo::geodetic_to_ecef, py::arg("coordinate"),
          "WGS84 closed-form conversion at ellipsoid height 0.");
    m.def("ecef_to_geodetic", &skygeo::ecef_to_geodetic, py::arg("point"),
          "Iterative inverse conversion (1e-12 rad convergence).");
    m.def("split_antimeridian", &skygeo::split_antimeridian, py::arg("bbox"));

    m.def(
        "weighted_centroid",
        [](const std::vector<skygeo::WeightedPlace>& places) {
            return skygeo::weighted_centroid(places);
        },
        py::arg("places"), "Mention-weighted ECEF average of the places.");
    m.def(
        "gipsy_locate",
        [](const std::vector<skygeo::WeightedPlace>& places) {
            return skygeo::gipsy_locate(places);
        },
        py::arg("places"),
        "Stack bounding-box prisms by mention weight and return the centroid "
        "of the highest region.");
    m.def(
        "elevation_cells",
        [](const std::vector<skygeo::WeightedPlace>& places) {
            const auto prisms = skygeo::make_prisms(places);
            return json_to_py(skygeo::build_elevation_map(prisms).cells_json());
        },
        py::arg("places"), "Debug dump of the stacked elevation surface.");

    m.def("load_gazetteer",
          [](const std::filesystem::path& path) {
              return std::make_shared<skygeo::Gazetteer>(skygeo::load_gazetteer(path));
          },
          py::arg("path"));
    m.def(
        "extract_weighted_places",
        [](const std::string& text, const skygeo::Gazetteer& g) {
            return skygeo::extract_weighted_places(text, g);
        },
        py::arg("text"), py::arg("gazetteer"),
        "Count gazetteer-name mentions (case-insensitive, word-boundary, "
        "longest match wins).");

    m.def(
        "compute_metrics",
        [](int detections, int total, std::optional<int> baseline, const std::string& method) {
            return json_to_py(
                skygeo::compute_metrics(detections, total, baseline, method).to_json());
        },
        py::arg("detections"), py::arg("total"), py::arg("baseline_detections") = py::none(),
        py::arg("method") = "", "Yield percentage and improvement over the baseline.");

    m.def(
        "dataset_stats",
        [](const std::filesystem::path& manifest_path) {
            const auto manifests = skygeo::import_manifests(manifest_path);
            return json_to_py(skygeo::compute_dataset_stats(manifests).to_json());
        },
        py::arg("manifest_path"), "Sequence counts and mean frames for a manifest file.");

    m.def(
        "run_corpus",
        [](const std::filesystem::path& corpus_path, const std::filesystem::path& config_path,
           const std::vector<std::string>& methods) {
            const auto config = skygeo::AppConfig::load(config_path);
            const auto backends = config.build_backends(config_path.parent_path());
            std::vector<skygeo::Method> parsed;
            for (const auto& m_name : methods) {
                parsed.push_back(skygeo::method_from_string(m_name));
            }
            const auto corpus = skygeo::load_corpus(corpus_path);
            const auto outcome =
                skygeo::run_batch(corpus.articles, parsed, config.pipeline_config(), backends);
            nlohmann::json results = nlohmann::json::array();
            for (const auto& r : outcome.results) results.push_back(r.to_json());
            return json_to_py(nlohmann::json{{"results", std::move(results)},
                                             {"report", outcome.report.to_json()}});
        },
        py::arg("corpus_path"), py::arg("config_path"),
        py::arg("methods") = std::vector<std::string>{"centroid", "gipsy", "agentic"},
        "Run the configured backends over a corpus and return results plus "
        "the report.");

    m.attr("__version__") = "0.1.0";
}
