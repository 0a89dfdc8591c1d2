#include "ap3/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ap3/errors.hpp"

namespace ap3 {
namespace {

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad field '") + key + "': " + e.what());
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const DenseFunction& f) {
  return Json{{"p", f.params().p()}, {"n", f.params().n()}, {"values", f.values()}};
}

Json to_json(const SetSpec& s) {
  return Json{{"p", s.params().p()}, {"n", s.params().n()}, {"members", s.members()}};
}

Json to_json(const Subspace& w) {
  return Json{{"p", w.params().p()}, {"n", w.params().n()}, {"basis", w.basis()}};
}

FieldParams field_from_json(const Json& j) {
  try {
    return FieldParams(get_field<std::uint32_t>(j, "p"), get_field<std::uint32_t>(j, "n"));
  } catch (const ParameterError& e) {
    throw FormatError(std::string("invalid field: ") + e.what());
  }
}

DenseFunction function_from_json(const Json& j) {
  const FieldParams params = field_from_json(j);
  auto values = get_field<std::vector<double>>(j, "values");
  if (values.size() != params.size()) throw FormatError("values must have length p^n");
  try {
    return DenseFunction(params, std::move(values));
  } catch (const ParameterError& e) {
    throw FormatError(e.what());
  }
}

SetSpec set_from_json(const Json& j) {
  const FieldParams params = field_from_json(j);
  try {
    return SetSpec(params, get_field<std::vector<Element>>(j, "members"));
  } catch (const ParameterError& e) {
    throw FormatError(e.what());
  }
}

Subspace subspace_from_json(const Json& j) {
  const FieldParams params = field_from_json(j);
  auto rows = get_field<std::vector<Digits>>(j, "basis");
  for (const auto& r : rows) {
    if (r.size() != params.n()) throw FormatError("basis rows must have n digits");
    for (auto d : r) {
      if (d >= params.p()) throw FormatError("basis digit out of range");
    }
  }
  Subspace w = Subspace::span_rows(params, rows);
  if (w.dim() != rows.size()) throw FormatError("basis rows are linearly dependent");
  return w;
}

DenseFunction read_function_csv(std::istream& in, const FieldParams& params) {
  std::vector<double> values(params.size(), 0.0);
  std::vector<bool> seen(params.size(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw FormatError("line " + std::to_string(line_no) + ": expected index,value");
    const std::string a = trim(line.substr(0, comma));
    const std::string b = trim(line.substr(comma + 1));
    if (line_no == 1 && a == "index") continue;
    std::uint64_t idx = 0;
    double v = 0.0;
    const auto r1 = std::from_chars(a.data(), a.data() + a.size(), idx);
    const auto r2 = std::from_chars(b.data(), b.data() + b.size(), v);
    if (r1.ec != std::errc() || r1.ptr != a.data() + a.size() || r2.ec != std::errc() ||
        r2.ptr != b.data() + b.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": cannot parse '" + line + "'");
    }
    if (idx >= params.size()) throw FormatError("line " + std::to_string(line_no) + ": index out of range");
    if (seen[idx]) throw FormatError("line " + std::to_string(line_no) + ": duplicate index");
    seen[idx] = true;
    values[idx] = v;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw FormatError("missing value for index " + std::to_string(i));
  }
  try {
    return DenseFunction(params, std::move(values));
  } catch (const ParameterError& e) {
    throw FormatError(e.what());
  }
}

void write_function_csv(std::ostream& out, const DenseFunction& f) {
  out << "index,value\n";
  for (Element m = 0; m < f.size(); ++m) out << m << ',' << format_double(f[m]) << '\n';
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
  out << "index,re,im,magnitude,rank\n";
  for (Element a = 0; a < s.size(); ++a) {
    out << a << ',' << format_double(s[a].real()) << ',' << format_double(s[a].imag()) << ','
        << format_double(std::abs(s[a])) << ',' << s.rank_of()[a] + 1 << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

DenseFunction read_function_file(const std::string& path, const FieldParams* params) {
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (!csv) return function_from_json(read_json_file(path));
  if (params == nullptr) throw FormatError("CSV function files need --p and --n");
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_function_csv(in, *params);
}

}  // namespace ap3
