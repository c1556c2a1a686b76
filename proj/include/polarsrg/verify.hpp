#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarsrg/construct.hpp"

namespace polarsrg {

struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotIntriguing : VerifyError {
    using VerifyError::VerifyError;
};
struct TooManyOrbits : VerifyError {
    using VerifyError::VerifyError;
};

enum class ReportType { positive, negative, degenerate, not_intriguing };

std::string report_type_name(ReportType t);

struct IntriguingReport {
    long long set_size = 0;
    std::optional<long long> h1;
    std::optional<long long> h2;
    bool is_intriguing = false;
    ReportType type = ReportType::not_intriguing;
    std::optional<bool> matches_expected;
    bool counting_identity_ok = false;

    struct Witness {
        int vertex = -1;
        long long count = 0;
        long long expected_count = 0;
    };
    std::optional<Witness> witness;
};

// |N(P) cap Y| for every P by bit-row intersection; intriguing iff the count
// is constant on Y and on its complement. The empty set reports (0,0) and
// the full set (k,k) by convention.
IntriguingReport check_intriguing(const Graph& g, const VertexSet& y);

// Exact integer verification that (h1-h2-k) j_Y + h2 j is an eigenvector of
// the adjacency matrix with eigenvalue h1-h2.
bool eigenvector_check(const Graph& g, const VertexSet& y, const IntriguingReport& report);

struct ScanHit {
    std::uint32_t mask = 0;
    std::vector<int> orbit_ids;
    IntriguingReport report;
};

// Checks every nonempty union of orbit subsets (mask order) up to
// max_subsets masks; |orbits| > 24 without a cap raises TooManyOrbits.
std::vector<ScanHit> orbit_union_scan(const Graph& g, const std::vector<VertexSet>& orbits,
                                      long long max_subsets = -1);

}  // namespace polarsrg
