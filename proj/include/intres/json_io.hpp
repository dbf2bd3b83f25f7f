#pragma once

#include <memory>

#include <json.hpp>

#include "intres/approx.hpp"
#include "intres/ladder.hpp"
#include "intres/module.hpp"
#include "intres/poset.hpp"

namespace intres {

/// Key order is preserved so repeated serializations are byte-identical.
using json = nlohmann::ordered_json;

/// {"kind":"grid","m":M,"n":N} or {"kind":"hasse","elements":[...],"edges":[[a,b],...]}
json poset_to_json(const Poset& p);
std::shared_ptr<const Poset> poset_from_json(const json& j);

/// {"members":[...]} plus "staircase":[[row,lo,hi],...] over grids.
json interval_to_json(const Interval& iv);
/// Revalidates against p; an incoming staircase field is ignored.
Interval interval_from_json(const json& j, const Poset& p);

/// Array of rows; entries are reduced into [0, p).
json matrix_to_json(const FpMatrix& m);
FpMatrix matrix_from_json(const json& j, int rows, int cols, fp_t p);

/// {"poset":...,"field":p,"dims":{"v":d,...},"maps":{"x->y":[[...]],...}}
json module_to_json(const PersistenceModule& m);
PersistenceModule module_from_json(const json& j);

/// {"source":...,"target":...,"components":{"v":[[...]],...}}
json morphism_to_json(const ModuleMorphism& f);

/// {"length":r,"table":[{"interval":...,"mults":[d0,...,dr]}],"checks":{...}};
/// the table lists intervals with a nonzero multiplicity at some step, in
/// interval order; checks is omitted when null.
json resolution_to_json(const IntervalResolution& r, const IntervalPoset& ip,
                        const ResolutionChecks* checks = nullptr);

/// {"c":[{"interval":...,"value":v},...],"delta":[...]}, every interval listed.
json profile_to_json(const CompressedProfile& prof, const IntervalPoset& ip);

/// {"field":p,"spaces":[...],"maps":[[[...]],x4]}
json zigzag_to_json(const ZigzagModule& z);

}  // namespace intres
