#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gabor/criterion_operator.hpp"
#include "gabor/framecheck.hpp"
#include "gabor/lambda.hpp"
#include "gabor/symbols.hpp"
#include "gabor/windows.hpp"

namespace gabor {

using json = nlohmann::json;

json to_json_complex(cplx z);
cplx complex_from_json(const json& j);

/// {"terms":[{"a":[re,im],"w":[re,im],"j":int}, ...]}, "j" defaulting to 1.
/// Malformed documents throw ConfigError.
std::vector<PoleTerm> pole_terms_from_json(const json& doc);
json window_to_json(const Window& w);

json universal_to_json(const UniversalSet& s);
/// Accepts {"base_points":[...], "period":p}, which also covers universal-set documents.
PeriodicPointSet point_set_from_json(const json& doc);

json family_to_json(const SymbolFamily& f);

json segment_to_json(const Segment& s);
Segment segment_from_json(const json& doc);

json estimate_summary(const FrameEstimate& e);
void write_estimate_csv(std::ostream& os, const FrameEstimate& e);

/// Shortest text that round-trips a double (17 significant digits).
std::string format_double(double x);

json read_json_file(const std::string& path);

}  // namespace gabor
