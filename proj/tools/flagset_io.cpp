#include "flagset_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace flagkneser::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

void write_flag_file(std::ostream& out, const FlagFileHeader& header, const FlagSet& set) {
  out << "q " << set.universe().order() << '\n';
  if (!header.kind.empty()) out << "kind " << header.kind << '\n';
  for (const auto& [role, text] : header.anchors) out << "anchor " << role << ' ' << text << '\n';
  for (const auto& f : header.family) out << "family " << f << '\n';
  out << "size " << set.size() << '\n';
  for (FlagId f : set.members()) out << f << '\n';
}

FlagFile read_flag_file(std::istream& in) {
  FlagFile file;
  std::string raw;
  int line_no = 0;
  bool in_body = false;
  bool have_q = false;
  auto fail = [&](const std::string& why) { return std::invalid_argument("line " + std::to_string(line_no) + ": " + why); };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (std::isdigit(static_cast<unsigned char>(line[0]))) {
      if (!have_q) throw fail("ordinal before the 'q' header line");
      in_body = true;
      FlagId f = 0;
      if (!parse_number(line, f)) throw fail("malformed ordinal '" + line + "'");
      if (!file.ordinals.empty() && f <= file.ordinals.back()) throw fail("ordinals must be strictly ascending");
      file.ordinals.push_back(f);
      continue;
    }
    if (in_body) throw fail("header line after ordinals");
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    std::string rest;
    std::getline(ss, rest);
    rest = trim(rest);
    if (key == "q") {
      if (!parse_number(rest, file.header.q)) throw fail("malformed field order '" + rest + "'");
      have_q = true;
    } else if (key == "kind") {
      file.header.kind = rest;
    } else if (key == "anchor") {
      const auto sp = rest.find(' ');
      if (sp == std::string::npos) throw fail("anchor needs a role and a subspace");
      file.header.anchors.emplace_back(rest.substr(0, sp), trim(rest.substr(sp + 1)));
    } else if (key == "family") {
      file.header.family.push_back(rest);
    } else if (key == "size") {
      std::size_t n = 0;
      if (!parse_number(rest, n)) throw fail("malformed size '" + rest + "'");
      file.header.size = n;
    } else {
      throw fail("unknown header key '" + key + "'");
    }
  }
  if (!have_q) throw std::invalid_argument("line " + std::to_string(line_no) + ": missing 'q' header line");
  if (file.header.size && *file.header.size != file.ordinals.size())
    throw std::invalid_argument("line " + std::to_string(line_no) + ": size header says " + std::to_string(*file.header.size) +
                                " but " + std::to_string(file.ordinals.size()) + " ordinals follow");
  return file;
}

FlagFile read_flag_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_flag_file(in);
}

FlagSet to_flag_set(const FlagFile& file, const FlagUniverse& universe) {
  if (file.header.q != universe.order())
    throw std::invalid_argument("flag file declares q=" + std::to_string(file.header.q) + ", universe has q=" +
                                std::to_string(universe.order()));
  FlagSet set(universe);
  for (FlagId f : file.ordinals) {
    if (f >= universe.size())
      throw std::invalid_argument("ordinal " + std::to_string(f) + " outside the " + std::to_string(universe.size()) +
                                  " flags of PG(6," + std::to_string(universe.order()) + ")");
    set.insert(f);
  }
  return set;
}

std::optional<Subspace> anchor(const FlagFileHeader& header, const std::string& role, const ProjectiveSpace& space) {
  for (const auto& [r, text] : header.anchors)
    if (r == role) return space.parse(text);
  return std::nullopt;
}

}  // namespace flagkneser::cli
