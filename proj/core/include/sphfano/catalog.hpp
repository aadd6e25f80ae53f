#pragma once

/**
 * @file catalog.hpp
 * @brief Full catalog build, identifier assignment, table emission and verification.
 */

#include "sphfano/enumeration.hpp"
#include "sphfano/invariants.hpp"
#include "sphfano/registry.hpp"

#include <array>
#include <string>
#include <vector>

namespace sphfano::catalog {

struct EmbeddingRecord {
    std::string identifier;  // "d-r-n", or "computed-d-r-k" when the bundled map has no entry
    std::string family;
    registry::Params params;
    enumeration::CanonicalPolytope polytope;
    int dim = 0;
    int rank = 0;
    int pic = 0;
    long degree = 0;
    long fano_index = 0;
    invariants::KVerdict k_verdict;
    std::string group;
    std::string space_type;

    /// Barycenter on the boundary of the cone: reported as not KE, flagged for review.
    bool needs_audit() const { return k_verdict.value == invariants::KValue::SemistableNotStable; }

    friend bool operator==(const EmbeddingRecord& a, const EmbeddingRecord& b);
};

/// counts[rank][dim - 1]
using CountsGrid = std::array<std::array<int, 4>, 3>;

struct Catalog {
    std::vector<EmbeddingRecord> records;
    CountsGrid counts{};
    std::vector<std::string> warnings;
};

/// One row of the bundled identifier map.
struct MapEntry {
    std::string identifier;
    std::string family;
    registry::Params params;
    geometry::RationalPolytope polytope;
};

/// Parses and validates a map document: every polytope must pass check_reflexive,
/// and no identifier or (family, params, canonical polytope) key may repeat.
/// Throws ParseError, NotReflexive, MappingConflict.
std::vector<MapEntry> parse_identifier_map(const std::string& json_text);

/// The map compiled into the library.
const std::vector<MapEntry>& bundled_identifier_map();

/// Builds every record for the given dims (1..4) and ranks (0..2).
/// jobs > 1 spreads (family, params) pairs over worker threads; output is identical.
Catalog build_catalog(const std::vector<int>& dims, const std::vector<int>& ranks,
                      const enumeration::EnumConfig& cfg = {}, unsigned jobs = 1);

struct CountsTable {
    CountsGrid grid{};
    std::array<int, 4> column_totals{};  // rank <= 2, per dim
    int total = 0;
};

CountsTable counts_table(const Catalog& catalog);

struct Aggregates {
    int records = 0;
    int stable = 0;
    int not_stable = 0;
    int distinct_pic_degree = 0;
    int audit_flags = 0;
};

Aggregates aggregates(const Catalog& catalog, int dim);

struct Mismatch {
    std::string identifier;
    std::string field;
    std::string expected;
    std::string actual;
};

struct VerifyReport {
    int rows = 0;
    std::vector<Mismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
};

/// Expected CSV needs columns identifier, pic, degree, ke; group and type are
/// compared as strings when present, any other column is ignored.
/// Throws IoError, MalformedExpectedFile.
VerifyReport verify(const Catalog& catalog, const std::string& expected_csv_path);
VerifyReport verify_text(const Catalog& catalog, const std::string& csv_text);

enum class Format { Csv, Json };

std::string to_csv(const Catalog& catalog);
std::string to_json(const Catalog& catalog);
Catalog catalog_from_json(const std::string& text);

/// Throws IoError.
void emit(const Catalog& catalog, Format format, const std::string& path);

} // namespace sphfano::catalog
