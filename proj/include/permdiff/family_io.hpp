#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "permdiff/perm.hpp"

namespace permdiff {

// Family text format, deterministic for sealed families:
//   n=<n> D=<spec> provenance=<label> size=<count>
//   <v1> <v2> ... <vn>          (one member per line, canonical order)
// Counting-only families serialize the header with size but no member lines.
void write_family(std::ostream& os, const PermFamily& F);
void write_family_file(const std::string& path, const PermFamily& F);
PermFamily read_family(std::istream& is);
PermFamily read_family_file(const std::string& path);

struct SidecarInfo {
  int n = 0;
  std::string d_spec;
  mpz_class claimed_size;
  std::optional<mpz_class> formula_size;
  // "exhaustive" | "sampled" | "none"
  std::string verified = "none";
};

std::string sidecar_json(const SidecarInfo& info);
void write_sidecar_file(const std::string& path, const SidecarInfo& info);
SidecarInfo read_sidecar(const std::string& json_text);

}  // namespace permdiff
