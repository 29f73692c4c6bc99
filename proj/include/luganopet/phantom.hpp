#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "luganopet/localize.hpp"
#include "luganopet/staging.hpp"
#include "luganopet/volume.hpp"

namespace luganopet {

/// Axis-aligned box or ellipsoid in world mm.
struct PhantomShape {
    enum class Kind { Box, Ellipsoid };
    Kind kind = Kind::Box;
    // Box: lo/hi corners. Ellipsoid: lo = center, hi = semi-axes.
    std::array<double, 3> lo{};
    std::array<double, 3> hi{};

    bool contains(const std::array<double, 3>& p) const;

    static PhantomShape box(double x0, double x1, double y0, double y1, double z0, double z1) {
        return {Kind::Box, {x0, y0, z0}, {x1, y1, z1}};
    }
    static PhantomShape ellipsoid(double cx, double cy, double cz, double rx, double ry,
                                  double rz) {
        return {Kind::Ellipsoid, {cx, cy, cz}, {rx, ry, rz}};
    }
};

struct LandmarkDef {
    std::string name;
    std::int32_t label = 0;
    double hu = 40.0;
    std::vector<PhantomShape> shapes;
};

struct PlantedLesion {
    enum class Target { Region, Organ, Extracorporeal };
    Target target = Target::Region;
    RegionId region = RegionId::WaldeyersRing;
    std::string organ;
    std::array<double, 3> center_mm{};
    double radius_mm = 6.0;
    double peak_suv = 8.0;
};

struct PhantomSpec {
    Grid3 grid;                         // PET grid
    std::optional<Grid3> anatomy_grid;  // CT + landmark grid (defaults to PET grid)
    std::uint64_t seed = 1;
    double background_suv = 0.5;        // soft tissue inside the body
    double liver_mean_suv = 1.5;
    double liver_std_suv = 0.15;
    double body_hu = 40.0;
    double air_hu = -1000.0;
    std::vector<PhantomShape> body;     // soft-tissue envelope
    std::vector<LandmarkDef> landmarks;
    std::vector<PlantedLesion> lesions;

    void validate() const;
};

/// The built-in stylized whole-body layout (128^3 at 4 mm, RAS) with the full
/// landmark inventory the default rule file references. No lesions.
PhantomSpec default_body();

/// Canonical lesion centers constructed to fall unambiguously inside each
/// region / organ of the default body.
std::array<double, 3> region_lesion_site(RegionId r);
double region_lesion_radius(RegionId r);
std::array<double, 3> organ_lesion_site(const std::string& organ);

/// Convenience: a lesion at the canonical site of its target.
PlantedLesion lesion_in_region(RegionId r, double peak_suv = 8.0);
PlantedLesion lesion_in_organ(const std::string& organ, double peak_suv = 8.0);
PlantedLesion extracorporeal_lesion(double peak_suv = 8.0);

struct PhantomOutput {
    ScalarVolume pet;        // on spec.grid
    ScalarVolume ct;         // on anatomy grid
    LabelVolume landmarks;   // on anatomy grid
    InvolvementProfile truth;
    StagingResult expected_staging;
};

/// Deterministic generation: same spec and seed give bit-identical volumes.
PhantomOutput generate(const PhantomSpec& spec);

/// Structured-text phantom description (same lexical family as the rule file).
PhantomSpec parse_phantom_spec(std::string_view text);

/// The default body as a spec file, with one example lesion block commented out.
std::string default_phantom_spec_text();

}  // namespace luganopet
