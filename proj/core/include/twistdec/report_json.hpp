#pragma once

#include <nlohmann/json.hpp>

#include "twistdec/decompose.hpp"
#include "twistdec/dilation.hpp"
#include "twistdec/wandering.hpp"

namespace twistdec {

using Json = nlohmann::json;

// Matrices are written as rows of [re, im]. Bases above this many entries are
// summarized (dimension, ambient, Frobenius norm) instead of written out.
inline constexpr Eigen::Index kMaxBasisEntries = 20000;

Json to_json(cplx z);
Json to_json(const CMatrix& M);
Json to_json(const Verdict& v);
Json to_json(const Subspace& s);
Json to_json(const Species& s);
Json to_json(const PowerPartialIsometry& p);
Json to_json(const PairReport& p, const Space& sp);
Json to_json(const ClassDiagnosis& d);
Json to_json(const CanonicalDecomposition& d);
Json to_json(const WoldDecomposition& d);
Json to_json(const HalmosWallenDecomposition& d);
Json to_json(const GridDecomposition& d);
Json to_json(const ReductionReport& r, const Space& sp);
Json to_json(const DilationSpace& d);
Json to_json(const TwistedExtension& e);
Json to_json(const Intertwiner& i);
Json to_json(const UpgradeCheck& u);
Json to_json(const DilationWoldReport& r);
Json to_json(const WanderingJoin& w);
Json to_json(const PowerIdentities& p);
Json to_json(const JointReducing& j);
Json to_json(const CriterionReport& c);

CMatrix matrix_from_json(const Json& j);
cplx complex_from_json(const Json& j);

}  // namespace twistdec
