// JSON file formats: versioned schemas for groupoids, simplicial sets, track
// categories, natural systems, modules, double groupoids, two-track bundles,
// and cohomology reports.
#pragma once

#include <string>

#include "tcat/dblgpd.hpp"
#include "tcat/gpd.hpp"
#include "tcat/simp.hpp"
#include "tcat/track.hpp"
#include "tcat/twotrack.hpp"

// the vendored single-header json library
#include <json.hpp>

namespace tcat::io {

using json = nlohmann::json;

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// every loader checks the declared schema tag and validates the structure
std::string schema_of(const json& j);

json save_cat(const gpd::FinCat& c);           // gpd/v1 without inverses
json save_groupoid(const gpd::FinGroupoid& g); // gpd/v1
gpd::FinCat load_cat(const json& j);
gpd::FinGroupoid load_groupoid(const json& j);

json save_sset(const simp::TruncSSet& x);  // ssset/v1
simp::TruncSSet load_sset(const json& j);

json save_bisset(const simp::TruncBiSSet& w);  // bisset/v1
simp::TruncBiSSet load_bisset(const json& j);

json save_track(const track::TrackCategory& d);  // track/v1
track::TrackCategory load_track(const json& j);

json save_natsys(const track::TrackCategory& d, const track::NaturalSystem& k);  // natsys/v1
track::NaturalSystem load_natsys(const track::TrackCategory& d, const json& j);

json save_module(const track::TrackCategory& d, const track::TrackModule& m);  // module/v1
track::TrackModule load_module(const track::TrackCategory& d, const json& j);

json save_dgpd(const dblgpd::DoubleGroupoid& g);  // dgpd/v1
dblgpd::DoubleGroupoid load_dgpd(const json& j);

json save_dgpd_sym(const dblgpd::SymmetricPresentation& s);  // dgpd-sym/v1
dblgpd::SymmetricPresentation load_dgpd_sym(const json& j);

json save_twotrack(const twotrack::TwoTrackCategory& g);  // twotrack/v1
twotrack::TwoTrackCategory load_twotrack(const json& j);

// extension/v1: a two-track category with its prescribed homotopy track
// category and pi2 system, plus the identification tables
struct ExtensionBundle {
    twotrack::TwoTrackCategory g;
    track::TrackCategory d;
    track::NaturalSystem k;
    std::vector<int> cell_map;   // ho-cell -> d 1-cell
    std::vector<int> track_map;  // ho-track -> d track
    // per ho-cell, a matrix K_{ho cell} (pi2) -> K_{cell_map} (given fibers)
    std::vector<ablin::IntMatrix> fiber_iso;
};

json save_extension(const ExtensionBundle& b);
ExtensionBundle load_extension(const json& j);

// verifies the identifications: cell/track maps are a track isomorphism onto
// d, and the fiber isos carry pi2 onto k compatibly with all actions
std::vector<std::string> validate_extension(const ExtensionBundle& b);

json cohomology_report(const std::vector<ablin::FGAbGroup>& degrees);  // cohomology/v1

json load_file(const std::string& path);
void save_file(const std::string& path, const json& j);

}  // namespace tcat::io
