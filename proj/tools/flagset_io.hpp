#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flagkneser/constructions.hpp"
#include "flagkneser/flag_universe.hpp"

namespace flagkneser::cli {

/// Header of a flag set file. Anchors are kept as text until a space is
/// available to parse them.
struct FlagFileHeader {
  int q = 0;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> anchors;  // role, subspace text
  std::vector<std::string> family;
  std::optional<std::size_t> size;
};

struct FlagFile {
  FlagFileHeader header;
  std::vector<FlagId> ordinals;  // ascending
};

/// Text format:
///
///   # comment
///   q 2
///   kind P_H
///   anchor point 0;1,0,0,0,0,0,0
///   family 2;...
///   size 11005
///   0
///   17
///   ...
///
/// Ordinals follow the header, one per line, strictly ascending.
void write_flag_file(std::ostream& out, const FlagFileHeader& header, const FlagSet& set);

/// Throws std::invalid_argument with "line N: ..." on malformed input.
FlagFile read_flag_file(std::istream& in);
FlagFile read_flag_file(const std::string& path);

/// Ordinals checked against the universe size.
FlagSet to_flag_set(const FlagFile& file, const FlagUniverse& universe);

/// Anchor by role, parsed in the given space.
std::optional<Subspace> anchor(const FlagFileHeader& header, const std::string& role, const ProjectiveSpace& space);

}  // namespace flagkneser::cli
