#pragma once

/// @file oracle.hpp
/// @brief Exact ground truth for small instances: optimal tours and exhaustive
/// enumeration of improving alternating circles.

#include <optional>
#include <vector>

#include "lkgain/candidates.hpp"
#include "lkgain/gain.hpp"
#include "lkgain/tour.hpp"

namespace lkgain {

struct OracleResult {
    Cost optimum = 0;
    std::vector<Vertex> witness_tour;
};

inline constexpr Vertex kHeldKarpMaxVertices = 16;
inline constexpr Vertex kBruteForceMaxVertices = 10;
inline constexpr Vertex kEnumerationMaxVertices = 12;
inline constexpr int kEnumerationMaxDepth = 4;

/// Bitmask dynamic program. Throws InstanceTooLarge above 16 vertices.
OracleResult held_karp_optimum(const Instance& inst);

/// Minimum over all (n-1)!/2 tours. Throws InstanceTooLarge above 10 vertices.
OracleResult brute_force_optimum(const Instance& inst);

/// Every alternating circle of depth 2..max_depth with positive closing gain
/// that the given policy admits, starting at `t1` (or at every vertex). Each
/// y_i is drawn from the candidate set of t_{2i}; both tour edges are tried
/// for every x_i. Throws InstanceTooLarge for n > 12 or max_depth > 4.
std::vector<ExchangeMove> enumerate_closing_moves(const Instance& inst, const Tour& tour, int max_depth,
                                                  const GainPolicy& policy, const CandidateSets& cands,
                                                  std::optional<Vertex> t1 = std::nullopt,
                                                  int feasibility_period = 5);

} // namespace lkgain
