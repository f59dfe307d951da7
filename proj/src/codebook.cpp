#include "nomauth/codebook.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nomauth/errors.hpp"

namespace nomauth {

std::vector<cdouble> alphabet_by_name(const std::string& name) {
  if (name == "default") {
    return {{1, 1},  {1, -1},  {-1, 1},  {-1, -1}, {3, 1},  {3, -1},
            {-3, 1}, {-3, -1}, {1, 3},   {1, -3},  {-1, 3}, {-1, -3}};
  }
  if (name == "quad4") {
    return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  }
  throw ValidationError("unknown alphabet '" + name + "'");
}

Codebook build_codebook(int n_resources, int k_devices, double sparsity,
                        const std::vector<cdouble>& alphabet, RngStream& rng) {
  if (n_resources < 1 || k_devices < 1)
    throw InvalidDimensions("codebook dimensions must be positive");
  if (!(sparsity >= 0.0 && sparsity < 1.0))
    throw InvalidDimensions("sparsity must lie in [0, 1)");
  if (alphabet.empty()) throw InvalidDimensions("alphabet is empty");

  Eigen::MatrixXcd m(n_resources, k_devices);
  for (int k = 0; k < k_devices; ++k) {
    bool nonzero = false;
    while (!nonzero) {
      for (int n = 0; n < n_resources; ++n) {
        if (sparsity > 0.0 && rng.u01() < sparsity) {
          m(n, k) = cdouble{0.0, 0.0};
        } else {
          m(n, k) = alphabet[rng.below(alphabet.size())];
          nonzero = true;
        }
      }
    }
  }

  // One global scale; entries from the same alphabet symbol stay equal
  // across columns, which the collision metric relies on.
  const double total = m.squaredNorm();
  m *= std::sqrt(static_cast<double>(k_devices) / total);
  return Codebook{std::move(m)};
}

std::vector<Pool> construct_pools(const Codebook& cb) {
  std::vector<Pool> pools(static_cast<std::size_t>(cb.cols()));
  for (Eigen::Index k = 0; k < cb.cols(); ++k) {
    Pool& p = pools[static_cast<std::size_t>(k)];
    p.resize(static_cast<std::size_t>(cb.rows()));
    for (Eigen::Index n = 0; n < cb.rows(); ++n)
      p[static_cast<std::size_t>(n)] = cb.entries(n, k);
  }
  return pools;
}

Pool cycle_pool(const Pool& pool, std::size_t schedule_len) {
  if (pool.empty()) throw InvalidDimensions("pool is empty");
  Pool out(schedule_len);
  for (std::size_t l = 0; l < schedule_len; ++l) out[l] = pool[l % pool.size()];
  return out;
}

Pool TaggedPool::values() const {
  Pool v(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) v[i] = entries[i].value;
  return v;
}

Bits TaggedPool::tags() const {
  Bits t(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) t[i] = entries[i].tag;
  return t;
}

TaggedPool tag_pool(const Pool& pool, const AccessSchedule& sched) {
  if (pool.size() != sched.bits.size())
    throw LengthMismatch("pool has " + std::to_string(pool.size()) +
                         " entries but schedule has " +
                         std::to_string(sched.bits.size()) + " bits");
  TaggedPool tp;
  tp.device_id = sched.device_id;
  tp.entries.resize(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i)
    tp.entries[i] = TaggedEntry{pool[i], sched.bits[i]};
  return tp;
}

Eigen::VectorXcd candidate_column(const Codebook& cb, int device, int shift) {
  const Eigen::Index n = cb.rows();
  if (device < 0 || device >= cb.cols())
    throw InvalidDimensions("device index out of range");
  Eigen::VectorXcd out(n);
  const Eigen::Index s = ((shift % n) + n) % n;
  for (Eigen::Index i = 0; i < n; ++i)
    out(i) = cb.entries((i - s + n) % n, device);
  return out;
}

namespace {

void write_token(std::ostream& os, cdouble v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
  os << buf;
}

cdouble parse_token(const std::string& tok) {
  const char* s = tok.c_str();
  char* end = nullptr;
  const double re = std::strtod(s, &end);
  if (end == s) throw IoError("bad codebook token '" + tok + "'");
  const char* s2 = end;
  const double im = std::strtod(s2, &end);
  if (end == s2 || *end != 'i')
    throw IoError("bad codebook token '" + tok + "'");
  return {re, im};
}

}  // namespace

void write_codebook(std::ostream& os, const Codebook& cb) {
  for (Eigen::Index n = 0; n < cb.rows(); ++n) {
    for (Eigen::Index k = 0; k < cb.cols(); ++k) {
      if (k) os << ", ";
      write_token(os, cb.entries(n, k));
    }
    os << '\n';
  }
}

void write_codebook_file(const std::string& path, const Codebook& cb) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  write_codebook(f, cb);
}

Codebook read_codebook(std::istream& is) {
  std::vector<std::vector<cdouble>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<cdouble> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const auto a = tok.find_first_not_of(" \t\r");
      const auto b = tok.find_last_not_of(" \t\r");
      if (a == std::string::npos) throw IoError("empty codebook token");
      row.push_back(parse_token(tok.substr(a, b - a + 1)));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw IoError("ragged codebook rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("codebook text is empty");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t n = 0; n < rows.size(); ++n)
    for (std::size_t k = 0; k < rows[n].size(); ++k)
      m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) =
          rows[n][k];
  return Codebook{std::move(m)};
}

Codebook read_codebook_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  return read_codebook(f);
}

}  // namespace nomauth
