#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hynet/admissible.hpp"
#include "hynet/model.hpp"
#include "hynet/partition.hpp"
#include "hynet/perm.hpp"
#include "hynet/poly.hpp"

namespace hynet {

enum class SeqOrder { AGreater, BGreater, Equal, Incomparable };

// Compare colour-count profiles from colour C down to colour 2.
SeqOrder seq_compare(const Signature& a, const Signature& b, int colours);

struct MonomialSpec {
  Signature a;
  Perm sigma;  // on {0..m-1}; position i carries exponent sigma(i)+1
};

// Z_{a_1}^{sigma(1)} ... Z_{a_m}^{sigma(m)} over colour variables (var c-1
// carries colour c).
Poly monomial(const MonomialSpec& spec);

// Permutation placing its largest values on the positions of the highest
// colour, the next block on the next colour, and so on; within a colour the
// larger value goes to the smaller index.
Perm attune(const Signature& a);
bool is_attuned(const Perm& tau, const Signature& a);

// Response library whose only nonzero component sums, over the in-edges of
// the chosen type, the product of source first-components raised to
// sigma(position); first component of the target type only.
AdmissibleSystem witness_response(const Hypernetwork& n, const std::string& etype,
                                  const Perm& sigma);

struct Witness {
  std::string etype;
  Perm sigma;
  std::vector<long long> point;  // value of Z_c at index c-1
  std::string v1, v2;
};

std::optional<Witness> find_breaking_witness(const Hypernetwork& n, const Partition& p);

struct RobustnessVerdict {
  bool balanced = false;
  bool invariant_under_low_degree = false;
  std::optional<Witness> witness;
  int degree_cap = 0;
};

// degree_cap < 0 selects k(k+1)/2 for k the hypernetwork order.
RobustnessVerdict robust_verdict(const Hypernetwork& n, const Partition& p,
                                 std::uint64_t seed, int degree_cap = -1,
                                 int random_probes = 25);

// P_(k): the response of the w vertex type of the order-k augmented
// hypernetwork summing X_{e,1}^1 ... X_{e,k}^k over its order-k in-edges.
ResponseFunction power_sum(int k);

// For a response q of the w type of the canonical augmented hypernetwork on
// k+1 core nodes: q evaluated on w0's inputs minus q on w1's inputs, as a
// polynomial in x_0..x_k (vars 0..k), the shared self value (var k+1) and the
// parameter (var k+2).
Poly even_odd_difference(const Poly& q, int k);

Poly vandermonde(int k);

// Exact S with even_odd_difference(q) = S * vandermonde; throws on a nonzero
// remainder.
Poly vandermonde_quotient(const Poly& q, int k);

// f(Sx) = S f(x) at random points, S swapping the w0/w1 blocks. Exact when
// every response is polynomial, within tol otherwise.
bool check_ghost_symmetry(const AdmissibleSystem& sys, const std::string& w0,
                          const std::string& w1, int npoints, double tol,
                          std::uint64_t seed);

// First C primes, the canonical separating point.
std::vector<long long> primes_point(int colours);

}  // namespace hynet
