#include "charsum/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace charsum::io {

namespace {

using verify::DiscriminantRecord;

constexpr const char* kMagic = "# charsum-dataset v1 config=";

std::string real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_real(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("dataset: bad real '" + s + "'");
  return v;
}

template <class Int>
Int parse_int(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) throw std::runtime_error("dataset: bad integer '" + s + "'");
  return static_cast<Int>(v);
}

void fnv_update(std::uint64_t& h, const std::string& s) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

const std::string& csv_header() {
  static const std::string h =
      "d,parity,M,N,m,a,b,b0,u0,L_b0,delta,E,xi_conductor,distance_sq,small_prime_defect,euler_residual";
  return h;
}

std::string csv_row(const DiscriminantRecord& r) {
  std::string s;
  s += std::to_string(r.d) + ',';
  s += (r.parity == verify::Parity::odd ? "odd" : "even");
  s += ',' + std::to_string(r.M);
  s += ',' + std::to_string(r.N);
  s += ',' + real(r.m);
  s += ',' + std::to_string(r.a);
  s += ',' + std::to_string(r.b);
  s += ',' + std::to_string(r.b0);
  s += ',' + real(r.u0);
  s += ',' + real(r.L_b0);
  s += ',' + real(r.delta);
  s += ',' + real(r.E);
  s += ',' + std::to_string(r.xi_conductor);
  s += ',' + real(r.distance_sq);
  s += ',' + real(r.small_prime_defect);
  s += ',' + real(r.euler_residual);
  return s;
}

DiscriminantRecord parse_csv_row(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  if (f.size() != 16) throw std::runtime_error("dataset: expected 16 columns, got " + std::to_string(f.size()));
  DiscriminantRecord r;
  r.d = parse_int<std::int64_t>(f[0]);
  if (f[1] == "odd")
    r.parity = verify::Parity::odd;
  else if (f[1] == "even")
    r.parity = verify::Parity::even;
  else
    throw std::runtime_error("dataset: bad parity '" + f[1] + "'");
  r.M = parse_int<std::int64_t>(f[2]);
  r.N = parse_int<std::uint64_t>(f[3]);
  r.m = parse_real(f[4]);
  r.a = parse_int<std::int64_t>(f[5]);
  r.b = parse_int<std::int64_t>(f[6]);
  r.b0 = parse_int<std::int64_t>(f[7]);
  r.u0 = parse_real(f[8]);
  r.L_b0 = parse_real(f[9]);
  r.delta = parse_real(f[10]);
  r.E = parse_real(f[11]);
  r.xi_conductor = parse_int<std::uint32_t>(f[12]);
  r.distance_sq = parse_real(f[13]);
  r.small_prime_defect = parse_real(f[14]);
  r.euler_residual = parse_real(f[15]);
  return r;
}

std::uint64_t rows_checksum(const std::vector<DiscriminantRecord>& records) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& r : records) fnv_update(h, csv_row(r) + '\n');
  return h;
}

std::string checksum_hex(std::uint64_t checksum) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(checksum));
  return buf;
}

std::string render_dataset(const Config& cfg, const std::vector<DiscriminantRecord>& records) {
  std::string out = kMagic + to_json(cfg) + '\n';
  out += csv_header() + '\n';
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& r : records) {
    const std::string line = csv_row(r) + '\n';
    fnv_update(h, line);
    out += line;
  }
  out += "# rows=" + std::to_string(records.size()) + " checksum=" + checksum_hex(h) + '\n';
  return out;
}

std::uint64_t write_dataset(const std::filesystem::path& path, const Config& cfg,
                            const std::vector<DiscriminantRecord>& records) {
  const std::string text = render_dataset(cfg, records);
  const std::uint64_t h = rows_checksum(records);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
  }
  nlohmann::json side;
  side["format_version"] = kDatasetVersion;
  side["config"] = nlohmann::json::parse(to_json(cfg));
  side["rows"] = records.size();
  side["checksum"] = checksum_hex(h);
  std::filesystem::path side_path = path;
  side_path += ".json";
  std::ofstream out(side_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + side_path.string());
  out << side.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + side_path.string());
  return h;
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("dataset not found: " + path.string());
  Dataset ds;
  std::string line;
  if (!std::getline(in, line) || line.rfind(kMagic, 0) != 0)
    throw std::runtime_error("dataset: missing header in " + path.string());
  ds.config = config_from_json(line.substr(std::string(kMagic).size()));
  if (!std::getline(in, line) || line != csv_header()) throw std::runtime_error("dataset: unexpected column header");
  bool footer = false;
  std::size_t declared_rows = 0;
  std::string declared_sum;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  while (std::getline(in, line)) {
    if (line.rfind("# rows=", 0) == 0) {
      char sum[32] = {0};
      unsigned long long n = 0;
      if (std::sscanf(line.c_str(), "# rows=%llu checksum=%31s", &n, sum) != 2)
        throw std::runtime_error("dataset: malformed footer");
      declared_rows = static_cast<std::size_t>(n);
      declared_sum = sum;
      footer = true;
      break;
    }
    fnv_update(h, line + '\n');
    ds.records.push_back(parse_csv_row(line));
  }
  if (!footer) throw std::runtime_error("dataset: missing footer (truncated file?)");
  if (declared_rows != ds.records.size()) throw std::runtime_error("dataset: row count does not match footer");
  if (declared_sum != checksum_hex(h)) throw std::runtime_error("dataset: checksum mismatch");
  ds.checksum = h;
  return ds;
}

bool same_experiment(const Config& a, const Config& b) {
  Config x = a;
  Config y = b;
  x.threads = y.threads = 0;
  return x == y;
}

}  // namespace charsum::io
