#pragma once

#include <optional>
#include <string>

#include "hslie/bicrossproduct.hpp"

namespace hslie {

/// On-disk description of an algebra with optional attached data. Scalars ride
/// as strings "p/q" (or "p") so exactness survives serialization. Parsing is
/// strict: unknown fields are rejected, with the JSON path in the message.
struct StructureFile {
    int schema_version = 1;
    std::size_t dim = 0;
    std::vector<std::string> basis;
    // sparse brackets: (i, j, {k: coefficient}) for i < j
    std::vector<std::tuple<std::size_t, std::size_t, Vec>> brackets;
    std::optional<std::vector<std::vector<Vec>>> connection;  // gamma[i][j]
    std::optional<Mat> metric;  // symmetric
    std::optional<Mat> omega;   // antisymmetric
    std::optional<Mat> J;
    std::optional<Mat> E;

    LieAlgebra algebra() const;
    Connection connection_on_algebra() const;  // throws if no connection block

    friend bool operator==(const StructureFile&, const StructureFile&) = default;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

StructureFile parse_structure(const std::string& json_text);
StructureFile load_structure(const std::string& path);
std::string serialize_structure(const StructureFile& s);

StructureFile structure_of(const LieAlgebra& L);
StructureFile structure_of(const HSStructure& hs);

/// Matched-pair input file: two factor blocks plus the gluing matrix.
struct MatchedPairFile {
    int schema_version = 1;
    StructureFile factor_u, factor_v;  // each must carry connection + omega
    Mat phi;
};

MatchedPairFile parse_matched_pair(const std::string& json_text);
MatchedPairFile load_matched_pair(const std::string& path);
std::string serialize_matched_pair(const MatchedPairFile& f);

MatchedPairSpec to_spec(const MatchedPairFile& f);

}  // namespace hslie
