#pragma once

// File formats. Functions: JSON {p, n, values} or CSV "index,value".
// Sets: JSON {p, n, members}. Subspaces: JSON {p, n, basis: [[digits]]}
// with RREF rows. Spectra: CSV "index,re,im,magnitude,rank".

#include <iosfwd>
#include <string>

#include "ap3/functions.hpp"
#include "ap3/spectral.hpp"
#include "ap3/subspace.hpp"
#include "json.hpp"

namespace ap3 {

using Json = nlohmann::json;

Json to_json(const DenseFunction& f);
Json to_json(const SetSpec& s);
Json to_json(const Subspace& w);

// All throw FormatError on malformed input.
FieldParams field_from_json(const Json& j);
DenseFunction function_from_json(const Json& j);
SetSpec set_from_json(const Json& j);
Subspace subspace_from_json(const Json& j);

// Rows "index,value"; a header line is optional. Every index must appear once.
DenseFunction read_function_csv(std::istream& in, const FieldParams& params);
void write_function_csv(std::ostream& out, const DenseFunction& f);

// rank is 1-based position in the magnitude order.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
// Dispatches on extension: .json, or .csv with params required.
DenseFunction read_function_file(const std::string& path, const FieldParams* params = nullptr);

// Shortest round-trip representation of a double.
std::string format_double(double x);

}  // namespace ap3
