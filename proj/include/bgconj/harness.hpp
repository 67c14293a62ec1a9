#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bgconj/powersum.hpp"
#include "bgconj/words.hpp"

namespace bgconj {

struct WitnessReport {
  std::string group;  // "G_m" or "G"
  int m = 0;
  BigInt n = 0;
  PowerWord u, v, gamma;
  std::string gamma_desc;  // compact form, also filled when gamma cannot be materialized
  BigInt alpha = 0, beta = 0;
  std::string beta_desc;

  BigInt length_upper = 0;    // |u| + |v| of the emitted words
  BigInt formula_lower = 0;   // floored
  std::string formula_lower_exact;
  BigInt naf_terms = 0;       // p = min_term_count(beta)
  BigInt naf_word_lower = 0;  // ceil((p-1)/2) <= |s0^beta|
  BigInt naf_lower = 0;       // ceil((p-1)/4), the conjugator-length bound

  bool verified = false;
  bool symbolic = false;
  std::string note;

  std::optional<int> oracle_cl;
  std::string oracle_status;  // "", "exact", "none within depth", "budget", "skipped"
};

/// u = s1^2, v = s0^(E(m,n)-1) s1^2 in G_m, gamma = s1^alpha s0^beta with
/// -3 beta 2^alpha = E(m,n) - 1.
WitnessReport make_witness_gm(int m, const BigInt& n);

/// u = s1^2, v = s1^2 s0^(eps-1) in G with eps = E(floor(log2(n)/3), 1).
WitnessReport make_witness_bg(const BigInt& n);

struct TableOptions {
  bool oracle = false;
  int oracle_depth = 6;
  long oracle_node_cap = 400000;
  // Skip the oracle when the literal v is longer than this.
  long oracle_max_v = 64;
};

std::vector<WitnessReport> cl_table(int max_m, int max_n, const TableOptions& opt = {});

/// (alpha, beta) with -3 beta 2^alpha = target, alpha in [-A, v2(target)],
/// minimizing |alpha| + min_term_count(beta).
std::optional<std::pair<BigInt, BigInt>> solve_conjugator(const BigInt& target, int A = 64);

}  // namespace bgconj
