#pragma once

#include "simplexlearn/bounding.hpp"
#include "simplexlearn/metrics.hpp"
#include "simplexlearn/quantize.hpp"
#include "simplexlearn/sampling.hpp"
#include "simplexlearn/select.hpp"
#include "simplexlearn/simplex.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace simplexlearn::io {

using nlohmann::json;

json point_to_json(const Point& p);
Point point_from_json(const json& j);

// {"dim": K, "vertices": [[...K floats...] x (K+1)]}
json simplex_to_json(const Simplex& s);
Simplex simplex_from_json(const json& j);
// Header row "dim,K", then K+1 rows of K floats.
std::string simplex_to_csv(const Simplex& s);
Simplex simplex_from_csv(const std::string& text);

// Header "dim,n,sigma,seed", a row with those values, then n rows of K floats.
std::string dataset_to_csv(const NoisyDataset& d);
NoisyDataset dataset_from_csv(const std::string& text);
// Same fields as the CSV plus "points" and an optional "truth".
json dataset_to_json(const NoisyDataset& d);
NoisyDataset dataset_from_json(const json& j);

json ball_to_json(const BoundingBall& b);
BoundingBall ball_from_json(const json& j);

json covering_to_json(const CoveringSet& c);
json cover_report_to_json(const CoverReport& r);
json family_to_json(const CandidateFamily& f);
json filter_record_to_json(const FilterRecord& r);
json selection_report_to_json(const SelectionReport& r);
json tv_to_json(const TvEstimate& tv);
json guarantee_to_json(const GuaranteeRecord& g);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// Dispatch on extension: .json or .csv.
Simplex load_simplex(const std::filesystem::path& path);
void save_simplex(const std::filesystem::path& path, const Simplex& s);
NoisyDataset load_dataset(const std::filesystem::path& path);
void save_dataset(const std::filesystem::path& path, const NoisyDataset& d);

// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace simplexlearn::io
