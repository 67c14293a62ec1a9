#pragma once

#include <optional>
#include <string>

#include "bgconj/words.hpp"

namespace bgconj {

struct SearchBudget {
  int max_conjugator_length = 6;
  int max_relator_insertions = 12;
  long node_cap = 200000;
  // Largest |e| tried for s_{r-1}^e shifts during guided conjugacy search.
  int max_power_shift = 32;
};

enum class Method { BS12, POWER_SHIFT, RING_SHIFT, BOUNDED_SEARCH, DMW, T_RING };
enum class Verdict { CONJUGATE, NOT_CONJUGATE, UNDECIDED_WITHIN_BUDGET };

const char* method_name(Method m);
const char* verdict_name(Verdict v);

/// gamma u gamma^-1 = v.
struct ConjCertificate {
  PowerWord u, v, gamma;
  Method method = Method::BS12;
  bool verified = false;
};

struct ConjResult {
  Verdict verdict = Verdict::UNDECIDED_WITHIN_BUDGET;
  std::optional<ConjCertificate> cert;
  std::string note;
  // DMW decomposition data, filled by conj_bg in the t-content case.
  std::optional<BigInt> dmw_k, dmw_m, dmw_q;
};

}  // namespace bgconj
