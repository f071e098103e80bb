#include "stardecomp/alpha_table.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>

#include "stardecomp/errors.hpp"

namespace stardecomp {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

AlphaTable AlphaTable::parse(std::istream& in) {
  AlphaTable table;
  std::string line;
  if (!std::getline(in, line) || trim(line) != "d,alpha") {
    throw ParseError("alpha table: expected header 'd,alpha'");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("alpha table line " + std::to_string(line_no) + ": missing comma");
    }
    const std::string d_text = trim(line.substr(0, comma));
    const std::string a_text = trim(line.substr(comma + 1));
    int d = 0;
    double alpha = 0.0;
    auto [pd, ed] = std::from_chars(d_text.data(), d_text.data() + d_text.size(), d);
    auto [pa, ea] = std::from_chars(a_text.data(), a_text.data() + a_text.size(), alpha);
    if (ed != std::errc{} || pd != d_text.data() + d_text.size() || ea != std::errc{} ||
        pa != a_text.data() + a_text.size()) {
      throw ParseError("alpha table line " + std::to_string(line_no) + ": malformed row");
    }
    if (!(alpha > 0.0 && alpha < 0.5) || d < 3) {
      throw ParseError("alpha table line " + std::to_string(line_no) + ": value out of range");
    }
    if (!table.values_.emplace(d, alpha).second) {
      throw ParseError("alpha table line " + std::to_string(line_no) + ": duplicate degree");
    }
  }
  return table;
}

AlphaTable AlphaTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open alpha table " + path.string());
  return parse(in);
}

void AlphaTable::write(std::ostream& out) const {
  out << "d,alpha\n";
  for (const auto& [d, alpha] : values_) {
    out << d << ',' << std::setprecision(17) << alpha << '\n';
  }
}

void AlphaTable::set(int d, double alpha) { values_[d] = alpha; }

std::optional<double> AlphaTable::lookup(int d) const {
  const auto it = values_.find(d);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

}  // namespace stardecomp
