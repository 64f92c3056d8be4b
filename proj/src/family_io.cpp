#include "permdiff/family_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace permdiff {

namespace {

std::string header_field(const std::string& line, const std::string& key) {
  auto pos = line.find(key + "=");
  if (pos == std::string::npos)
    throw std::invalid_argument("family header: missing field '" + key + "'");
  pos += key.size() + 1;
  auto end = line.find(' ', pos);
  return line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

}  // namespace

void write_family(std::ostream& os, const PermFamily& F) {
  os << "n=" << F.n() << " D=" << F.claimed_D().spec()
     << " provenance=" << F.provenance() << " size=" << F.claimed_size().get_str()
     << "\n";
  for (std::size_t i = 0; i < F.size(); ++i) {
    auto m = F.member(i);
    for (int k = 0; k < F.n(); ++k) {
      if (k) os << ' ';
      os << m[k];
    }
    os << "\n";
  }
}

void write_family_file(const std::string& path, const PermFamily& F) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_family(os, F);
}

PermFamily read_family(std::istream& is) {
  std::string header;
  if (!std::getline(is, header))
    throw std::invalid_argument("family file: missing header");
  int n = std::stoi(header_field(header, "n"));
  DistanceSet D = DistanceSet::parse(header_field(header, "D"));
  std::string prov = header_field(header, "provenance");
  mpz_class claimed(header_field(header, "size"));

  std::string line;
  std::vector<Perm> members;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Perm p;
    int v;
    while (ls >> v) p.push_back(v);
    if (static_cast<int>(p.size()) != n)
      throw std::invalid_argument("family file: member of wrong length");
    members.push_back(std::move(p));
  }
  if (members.empty() && claimed != 0)
    return PermFamily::counted(n, D, prov, claimed);
  PermFamily F(n, D, prov);
  for (auto& p : members) F.add(p);
  F.seal();
  if (F.claimed_size() != claimed)
    throw std::invalid_argument("family file: size field does not match member count");
  return F;
}

PermFamily read_family_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return read_family(is);
}

std::string sidecar_json(const SidecarInfo& info) {
  nlohmann::json j;
  j["n"] = info.n;
  j["D"] = info.d_spec;
  j["claimed_size"] = info.claimed_size.get_str();
  if (info.formula_size) j["formula_size"] = info.formula_size->get_str();
  j["verified"] = info.verified;
  return j.dump(2) + "\n";
}

void write_sidecar_file(const std::string& path, const SidecarInfo& info) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << sidecar_json(info);
}

SidecarInfo read_sidecar(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  SidecarInfo info;
  info.n = j.at("n").get<int>();
  info.d_spec = j.at("D").get<std::string>();
  info.claimed_size = mpz_class(j.at("claimed_size").get<std::string>());
  if (j.contains("formula_size"))
    info.formula_size = mpz_class(j["formula_size"].get<std::string>());
  info.verified = j.value("verified", "none");
  return info;
}

}  // namespace permdiff
