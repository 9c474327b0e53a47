#include "fibpow/curves.hpp"

namespace fibpow {

// Catalog of integral models. 20A2, 100A1 and 200B1 are printed models;
// the remaining conductor-200 classes were recovered by exhaustive
// search over minimal-form curves with discriminant +-2^a 5^b
// (tools/gen_catalog: Tate conductors, trace-fingerprint classes).
// Exactly five isogeny classes of conductor 200 exist; labels are fixed
// by the published anchors: 200B1 is the printed model, 200C1 is the
// class with j = 55296/5, 200D1 is the unique class not eliminated by
// S = {3}, and the A1/E1 pair (both j = 270, eliminated by S = {3})
// is ordered by coefficient size. Only trace data enters the pipeline,
// and traces are isogeny-class invariants, so any representative works.
const char* kBuiltinCatalogJson = R"JSON([
  {"label": "20A1", "a1": 0, "a2": 1, "a3": 0, "a4": 4, "a6": 4,
   "provenance": "conductor-20 partner of 20A2 (j = 21296/25, 2-isogenous, not isomorphic); from the discriminant search"},
  {"label": "20A2", "a1": 0, "a2": 1, "a3": 0, "a4": -1, "a6": 0,
   "provenance": "printed model Y^2 = X^3 + X^2 - X; conductor 20"},
  {"label": "100A1", "a1": 0, "a2": -1, "a3": 0, "a4": -33, "a6": 62,
   "provenance": "printed model Y^2 = X^3 - X^2 - 33X + 62; j = 16384/5"},
  {"label": "200A1", "a1": 0, "a2": 0, "a3": 0, "a4": 5, "a6": -10,
   "provenance": "conductor-200 class, j = 270, eliminated by S = {3}; search-derived, A/E order by coefficient size"},
  {"label": "200B1", "a1": 0, "a2": 1, "a3": 0, "a4": -3, "a6": -2,
   "provenance": "printed model Y^2 = X^3 + X^2 - 3X - 2; conductor 200"},
  {"label": "200C1", "a1": 0, "a2": 0, "a3": 0, "a4": -50, "a6": 125,
   "provenance": "conductor-200 class with j = 55296/5 (the published j pins the label); search-derived"},
  {"label": "200D1", "a1": 0, "a2": -1, "a3": 0, "a4": -83, "a6": -88,
   "provenance": "conductor-200 class not eliminated by S = {3} (needs 3,7,...,23), matching the published E^4; search-derived"},
  {"label": "200E1", "a1": 0, "a2": 0, "a3": 0, "a4": 125, "a6": -1250,
   "provenance": "conductor-200 class, j = 270 (5-twist of 200A1's class), eliminated by S = {3}; search-derived"}
])JSON";

} // namespace fibpow
