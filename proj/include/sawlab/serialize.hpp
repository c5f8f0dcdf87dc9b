#pragma once

#include <string>

#include "json.hpp"
#include "sawlab/cayley.hpp"
#include "sawlab/estimate.hpp"
#include "sawlab/presentation.hpp"
#include "sawlab/saw.hpp"

namespace sawlab {

// All emitted JSON uses ordered maps so output bytes are reproducible.
using Json = nlohmann::ordered_json;

std::string format_double(double x);  // %.12g, locale-independent

Json counts_to_json(const CountsTable& t);
std::string counts_to_csv(const CountsTable& t);  // header n,c_n,b_n,h_n; rows 1..n_max

Json report_to_json(const VerifyReport& report);

Json fingerprint_to_json(const Fingerprint& f, std::span<const std::string> names);
Json girth_to_json(const GirthReport& g, std::span<const std::string> names);
Json classg_to_json(const ClassGReport& r);
Json bracket_to_json(const MuBracket& br);

Json locality_to_json(const std::vector<LocalityRow>& rows);
std::string locality_to_csv(const std::vector<LocalityRow>& rows);

}  // namespace sawlab
