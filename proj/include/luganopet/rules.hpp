#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "luganopet/region.hpp"

namespace luganopet {

enum class HalfSpaceDir { AnteriorOf, PosteriorOf, LeftOf, RightOf, SuperiorOf, InferiorOf };
enum class HalfSpaceRef { Centroid, Face };

/// One node of a region-rule expression tree.
struct RuleExpr {
    enum class Kind {
        Landmark,      // voxels of a named landmark
        Union,         // lhs | rhs
        Intersect,     // lhs & rhs
        Subtract,      // lhs - rhs
        Dilate,        // lhs grown by radius_mm (Euclidean distance <= r)
        HalfSpace,     // half-space past a landmark's centroid or bbox face
        SlabBetween,   // axial gap between two landmarks' S-I extents
        MidlineSplit,  // half-space about a midline landmark's L-R centroid
    };

    Kind kind{};
    std::string name;    // Landmark/HalfSpace/MidlineSplit landmark; SlabBetween first landmark
    std::string name2;   // SlabBetween second landmark
    std::unique_ptr<RuleExpr> lhs, rhs;
    double radius_mm = 0.0;
    HalfSpaceDir dir{};
    HalfSpaceRef ref = HalfSpaceRef::Centroid;
    bool left_side = false;  // MidlineSplit
};

struct RegionRule {
    RegionId region{};
    int priority = 0;  // lower value wins voxel conflicts
    std::unique_ptr<RuleExpr> expr;
};

struct RuleSet {
    std::map<RegionId, RegionRule> rules;              // exactly one per region
    std::vector<std::string> landmark_inventory;       // optional declaration
    std::string source_hash;                           // fnv1a-64 of the rule text
};

/// Syntax or validation error with 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(col)),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

/// Parses a rule file. Requires exactly one rule per region (all 21); if the
/// file declares a `landmarks { ... }` inventory, every referenced landmark
/// must appear in it. Expression depth is limited to 32.
RuleSet parse_rules(std::string_view text);

/// FNV-1a 64-bit hash, hex-encoded; used for rule-file provenance.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace luganopet
