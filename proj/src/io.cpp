#include <spinsign/io.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace spinsign {

namespace {

using nlohmann::json;

json parse_json_or_throw(const std::string& text) {
  json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) throw std::invalid_argument("input is not valid JSON");
  return parsed;
}

long long integer_field(const json& value, const std::string& what) {
  if (!value.is_number_integer())
    throw std::invalid_argument("'" + what + "' must be an integer");
  return value.get<long long>();
}

Gram gram_from_json(const json& value, const std::string& what) {
  if (!value.is_array() || value.size() != 3)
    throw std::invalid_argument("'" + what + "' must be a 3x3 integer matrix");
  Gram gram{};
  for (std::size_t i = 0; i < 3; ++i) {
    const json& row = value[i];
    if (!row.is_array() || row.size() != 3)
      throw std::invalid_argument("'" + what + "' must be a 3x3 integer matrix");
    for (std::size_t j = 0; j < 3; ++j) gram[i][j] = integer_field(row[j], what);
  }
  return gram;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TernaryForm parse_form(const std::string& json_text) {
  const json doc = parse_json_or_throw(json_text);
  if (!doc.is_object()) throw std::invalid_argument("form file must hold a JSON object");
  if (!doc.contains("gram")) throw std::invalid_argument("form file is missing the 'gram' field");
  return TernaryForm{gram_from_json(doc["gram"], "gram")};
}

SpinorClassSet parse_class_set(const std::string& json_text) {
  const json doc = parse_json_or_throw(json_text);
  if (!doc.is_object()) throw std::invalid_argument("class-set file must hold a JSON object");
  if (!doc.contains("kind"))
    throw std::invalid_argument("class-set file is missing the 'kind' field");
  const std::string kind_tag = doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
  ClassSetKind kind;
  if (kind_tag == "spinor-genus")
    kind = ClassSetKind::spinor_genus;
  else if (kind_tag == "genus")
    kind = ClassSetKind::genus;
  else
    throw std::invalid_argument("'kind' must be \"spinor-genus\" or \"genus\"");

  std::size_t distinguished = 0;
  if (doc.contains("distinguished")) {
    const long long index = integer_field(doc["distinguished"], "distinguished");
    if (index < 0) throw std::invalid_argument("'distinguished' must be nonnegative");
    distinguished = static_cast<std::size_t>(index);
  }

  if (!doc.contains("classes") || !doc["classes"].is_array() || doc["classes"].empty())
    throw std::invalid_argument("'classes' must be a nonempty array");
  std::vector<ClassInput> entries;
  entries.reserve(doc["classes"].size());
  for (std::size_t i = 0; i < doc["classes"].size(); ++i) {
    const json& item = doc["classes"][i];
    if (!item.is_object() || !item.contains("gram"))
      throw std::invalid_argument("each class needs a 'gram' field");
    ClassInput entry{item.contains("name") && item["name"].is_string()
                         ? item["name"].get<std::string>()
                         : "class_" + std::to_string(i),
                     TernaryForm{gram_from_json(item["gram"], "gram")},
                     std::nullopt};
    if (item.contains("aut")) entry.claimed_aut_order = integer_field(item["aut"], "aut");
    entries.push_back(std::move(entry));
  }
  return SpinorClassSet(kind, distinguished, entries);
}

TernaryForm load_form(const std::string& path) { return parse_form(read_file(path)); }

SpinorClassSet load_class_set(const std::string& path) {
  return parse_class_set(read_file(path));
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational fraction_from_string(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(mpz_class(text));
    }
    const mpz_class num(text.substr(0, slash));
    const mpz_class den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num);
    q /= Rational(den);
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse rational value: " + text);
  }
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void write_theta_csv(std::ostream& out, const std::vector<long long>& counts) {
  out << "n,r\n";
  for (std::size_t n = 0; n < counts.size(); ++n) out << n << ',' << counts[n] << '\n';
}

void write_series_csv(std::ostream& out, const std::map<long long, Rational>& values) {
  out << "n,numerator,denominator\n";
  for (const auto& [n, v] : values)
    out << n << ',' << v.get_num().get_str() << ',' << v.get_den().get_str() << '\n';
}

void write_curve_csv(std::ostream& out,
                     const std::vector<std::pair<long long, double>>& points) {
  out << "x,sum\n";
  for (const auto& [x, sum] : points) out << x << ',' << format_double(sum) << '\n';
}

void write_scan_table_csv(std::ostream& out, const SpinorScanReport& report) {
  out << "p";
  for (std::size_t j = 0; j < report.base_counts.size(); ++j) out << ",r_class_" << j;
  out << ",r_spn_num,r_spn_den,a_f_num,a_f_den,stable\n";
  for (const auto& row : report.rows) {
    out << row.p;
    for (long long count : row.class_counts) out << ',' << count;
    out << ',' << row.spinor_average.get_num().get_str() << ','
        << row.spinor_average.get_den().get_str() << ',' << row.cusp.get_num().get_str() << ','
        << row.cusp.get_den().get_str() << ',' << (row.stable ? 1 : 0) << '\n';
  }
}

}  // namespace spinsign
