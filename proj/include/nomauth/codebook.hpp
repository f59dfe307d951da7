#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "nomauth/lfsr.hpp"
#include "nomauth/rng.hpp"

namespace nomauth {

using cdouble = std::complex<double>;

// Finite nonzero alphabets the codebook entries are drawn from (before the
// global energy normalization). "default" is the 12-point set
// {+-1+-i, +-3+-i, +-1+-3i}; "quad4" is the 4-point set {+-1+-i}.
std::vector<cdouble> alphabet_by_name(const std::string& name);

// N x K complex spreading matrix; column k is device k's spreading sequence.
struct Codebook {
  Eigen::MatrixXcd entries;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

// Draws each entry as 0 with probability `sparsity`, otherwise uniformly
// from the alphabet; all-zero columns are redrawn. The whole matrix is then
// scaled so the average column energy is exactly 1. Deterministic in `rng`.
Codebook build_codebook(int n_resources, int k_devices, double sparsity,
                        const std::vector<cdouble>& alphabet, RngStream& rng);

using Pool = std::vector<cdouble>;

// Pool of device k = the ordered entries of column k (length N).
std::vector<Pool> construct_pools(const Codebook& cb);

// Resizes a pool to the schedule length: truncate when L < N, cycle the
// column entries modulo N when L > N.
Pool cycle_pool(const Pool& pool, std::size_t schedule_len);

struct TaggedEntry {
  cdouble value;
  std::uint8_t tag;
};

// Pool entries paired positionally with the device's access-schedule bits.
struct TaggedPool {
  int device_id = 0;
  std::vector<TaggedEntry> entries;

  Pool values() const;
  Bits tags() const;
};

TaggedPool tag_pool(const Pool& pool, const AccessSchedule& sched);

// Column k cyclically shifted down by `shift` rows. Each device holds the
// `candidates` shifts of its base column as its sequence variants; which one
// is in use at a slot is decided by the shared window state, so an observer
// who knows the column still has to guess the variant.
Eigen::VectorXcd candidate_column(const Codebook& cb, int device, int shift);

// Text matrix format for provisioning and fixtures: one line per row,
// comma-separated "re+imi" tokens (e.g. "0.25-1.5i").
void write_codebook(std::ostream& os, const Codebook& cb);
void write_codebook_file(const std::string& path, const Codebook& cb);
Codebook read_codebook(std::istream& is);
Codebook read_codebook_file(const std::string& path);

}  // namespace nomauth
