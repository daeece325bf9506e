#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gaudin/duality.hpp"
#include "gaudin/kz.hpp"
#include "gaudin/lax.hpp"

namespace gaudin {

using Json = nlohmann::ordered_json;

// Rationals as lossless strings ("3", "-1/2"), complex floats as [re, im].
Json to_json(const Rational& r);
Json to_json(cplx c);
Json to_json(const Partition& la);
Json to_json(const Weight& w);
Json to_json(const Algebra& alg);
Json to_json(const AlgebraElement& x);
// {"rows", "cols", "entries": [[row, col, "p/q"], ...]}
Json to_json(const Matrix& m);
Json to_json(const Polynomial& p);  // coefficients, constant term first
Json to_json(const CVec& v);
Json to_json(const CMat& m);        // row-major list of rows

Json to_json(const WeightModule& mod, bool with_action);
Json to_json(const SingularSpace& s);
Json to_json(const JointSpectrum& js);
Json to_json(const CyclicReport& r);
Json to_json(const SpectrumReport& r);
Json to_json(const ShiftReport& r);
Json to_json(const TruncationReport& r);
Json to_json(const KZTruncationReport& r);
Json to_json(const PathSolution& s);
Json to_json(const PartialFraction& f);

Rational rational_from_json(const Json& j);
Weight weight_from_json(const Json& j);
Partition partition_from_json(const Json& j);
cplx complex_from_json(const Json& j);
// Waypoints: a list of points, each a list of ell [re, im] pairs (plain numbers allowed).
std::vector<Point> path_from_json(const Json& j, int ell);

// Two-space indentation, trailing newline.
std::string dump(const Json& j);

}  // namespace gaudin
