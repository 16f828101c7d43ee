#include "tileforge/sweep.hpp"

#include <atomic>
#include <thread>

namespace tileforge {

std::vector<AbcParams> sweep_triples(Int a_max, Int b_max, Int c_max) {
  std::vector<AbcParams> out;
  for (Int a = 1; a <= a_max; ++a)
    for (Int b = a; b <= b_max; ++b)
      for (Int c = b + 1; c <= c_max; ++c) out.emplace_back(a, b, c);
  return out;
}

SweepRecord sweep_one(const AbcParams& p, const AuditOptions& opt) {
  SweepRecord r;
  r.A = p.A;
  r.B = p.B;
  r.C = p.C;
  r.predicted_14 = predicts_14(p);
  try {
    // G_4 can be huge off the 14-neighbor family, so only its emptiness is decided there.
    TileAnalysis an = TileAnalysis::run(p, 3);
    r.neighbor_count = an.neighbors.points.size();
    r.agrees = (r.neighbor_count == 14) == r.predicted_14;
    r.contact_size = an.contact.points.size();
    r.g2 = an.level_size(2);
    r.g3 = an.level_size(3);
    r.g4_empty = !an.tower.next_level_nonempty();
    if (r.neighbor_count == 14) an = TileAnalysis::run(p, 4);
    r.euler = static_cast<long>(r.neighbor_count) - static_cast<long>(r.g2) + static_cast<long>(r.g3);
    const AuditSummary s = audit(an, opt);
    r.audit_pass = s.pass();
    for (const auto& c : s.checks)
      for (const auto& f : c.failures) r.message += (r.message.empty() ? "" : "; ") + c.name + ": " + f;
  } catch (const std::exception& e) {
    r.agrees = false;
    r.audit_pass = false;
    r.message = e.what();
  }
  return r;
}

std::vector<SweepRecord> sweep(const SweepOptions& opt) {
  if (opt.a_max < 1 || opt.b_max < 1 || opt.c_max < 1) throw InputError("sweep bounds must be at least 1");
  const auto triples = sweep_triples(opt.a_max, opt.b_max, opt.c_max);
  std::vector<SweepRecord> out(triples.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < triples.size(); i = next++) out[i] = sweep_one(triples[i], opt.audit);
  };
  const unsigned jobs = std::max(1u, opt.jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace tileforge
