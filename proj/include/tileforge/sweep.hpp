#pragma once

#include <string>
#include <vector>

#include "tileforge/topology_audit.hpp"

namespace tileforge {

struct SweepRecord {
  Int A = 0, B = 0, C = 0;
  std::size_t neighbor_count = 0;
  bool predicted_14 = false;
  bool agrees = false;
  std::size_t contact_size = 0;
  std::size_t g2 = 0, g3 = 0;
  bool g4_empty = false;
  long euler = 0;
  bool audit_pass = false;
  std::string message;  // failed checks or the exception that stopped the pipeline
};

struct SweepOptions {
  Int a_max = 10, b_max = 10, c_max = 10;
  unsigned jobs = 1;
  AuditOptions audit;
};

/// All 1 <= A <= B < C within the bounds, ordered by (A, B, C).
std::vector<AbcParams> sweep_triples(Int a_max, Int b_max, Int c_max);

SweepRecord sweep_one(const AbcParams& p, const AuditOptions& opt = {});

std::vector<SweepRecord> sweep(const SweepOptions& opt);

}  // namespace tileforge
