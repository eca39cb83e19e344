#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "randcomplex/complex.hpp"
#include "randcomplex/parameters.hpp"

namespace randcomplex {

/// P(Y) = prod p_i^{f_i(Y)} * prod q_i^{e_i(Y)} with 0^0 = 1.
LogProbability measure(const SimplicialComplex& y, const ParameterVector& p);
/// The same product from a precomputed profile.
LogProbability measure(const FaceProfile& profile, const ParameterVector& p);

/// P(Y contains A) = prod p_i^{f_i(A)}.
LogProbability containment_probability(const SimplicialComplex& a, const ParameterVector& p);

/// P(A <= Y <= B) = prod p_i^{f_i(A)} * prod q_i^{e_i(B)}.
///
/// Requires A to be a subcomplex of B and the boundary of every external face
/// of B to lie in A; the identity is false otherwise, and a violation throws
/// ErrorCode::PreconditionViolated.
LogProbability sandwich_probability(const SimplicialComplex& a, const SimplicialComplex& b,
                                    const ParameterVector& p);
/// True iff (A, B) satisfies the sandwich precondition.
bool sandwich_admissible(const SimplicialComplex& a, const SimplicialComplex& b);

/// P(f_0(Y) = t) = C(n, t) p_0^t q_0^{n - t}.
double vertex_count_pmf(std::uint64_t t, std::uint64_t n, const ParameterVector& p);

/// Probability that Y contains S and no edge of Y joins V(S) to the rest:
/// [q_0 + p_0 q_1^{f_0(S)}]^{n - f_0(S)} * prod p_i^{f_i(S)}.
LogProbability isolated_subcomplex_probability(const SimplicialComplex& s, std::uint64_t n,
                                               const ParameterVector& p);

/// E f_1 = C(n, 2) p_0^2 p_1.
double expected_edge_count(std::uint64_t n, const ParameterVector& p);

/// Looks up P(Y contains A) for a complex A; nullopt marks a missing entry.
using ContainmentLookup = std::function<std::optional<double>(const SimplicialComplex&)>;

/// Inclusion-exclusion over subsets S of the external faces E(A0):
/// sum_S (-1)^{|S|} P(Y contains A0 u S). Equals P(A0) when the lookup comes
/// from a multi-parameter measure. Throws InvalidArgument on a missing entry.
double reconstruct_from_containment(const ContainmentLookup& containment,
                                    const SimplicialComplex& a0);

}  // namespace randcomplex
