#pragma once

#include "hmskit/bipoly.hpp"
#include "hmskit/curvesearch.hpp"
#include "hmskit/ellsurf.hpp"
#include "hmskit/igusa.hpp"
#include "hmskit/rmdetect.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hmskit {

inline constexpr int kSchemaVersion = 1;
inline const std::vector<long> kDiscriminants{5,  8,  12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44, 53,
                                              56, 57, 60, 61, 65, 69, 73, 76, 77, 85, 88, 89, 92, 93, 97};

// r = r_num / r_den, s = s_num / s_den in parameters (u) or (u, v);
// with a curve relation, v is tied to u by a monic quadratic in v.
struct Parametrization {
    std::vector<std::string> params;
    BiPoly r_num, r_den, s_num, s_den;
    std::optional<BiPoly> curve;
    std::string source;
};

struct BranchComponent {
    BiPoly factor;
    int multiplicity = 1;
    std::string meaning; // extra-I2 | fiber-promotion | section-divisibility
    std::vector<Parametrization> parametrizations;
};

struct PointRow {
    BigRational r, s;
    SexticForm sextic;
    bool disputed = false;
    std::string note;
};

struct IcMap {
    BiPoly I2, I4, I6, I10;
    std::string source;
    IgusaClebsch operator()(const BigRational &r, const BigRational &s) const;
    IgusaClebschFF eval(const FFElem &r, const FFElem &s) const;
};

struct TwistCandidates {
    std::vector<BiPoly> factors;
    std::vector<int> extra_II;
    long expected_C = 0;
    std::vector<int> expected_subset;
    std::string source;
};

struct ExpectedFiber {
    std::optional<QPoly> factor; // absent: the place at infinity
    std::string type;
};

struct EllipticModel {
    std::string name, variable;
    WeierstrassQt w;
    std::string source;
    std::vector<ExpectedFiber> fibers;
    std::map<std::string, int> fiber_summary;
    std::optional<int> chi;
    bool quartic_jacobian_of_cover = false;
};

struct NeronSeveri {
    std::vector<std::string> fiber_lattices;
    std::optional<LatticeGram> height_gram;
    std::optional<BigRational> height_det;
    int torsion = 1;
    BigRational expected_abs_disc;
    std::string source;
};

struct HeightTerm {
    std::string lattice;
    int component = 0;
};

struct SectionHeightRecord {
    int chi = 2, po = 0;
    std::vector<HeightTerm> contributions;
    BigRational expected;
    std::string source;
};

struct FamilySectionRecord {
    FamilySection section;
    BigRational height;
    std::string source;
};

struct HMSRecord {
    long D = 0;
    std::array<std::string, 2> coords;
    std::string surface_kind;
    BiPoly cover;
    std::string cover_source;
    std::vector<BranchComponent> branch_components;
    std::vector<PointRow> points;
    std::string points_source;
    std::optional<IcMap> ic_map;
    std::optional<TwistCandidates> twist_candidates;
    std::vector<EllipticModel> elliptic_models;
    std::optional<NeronSeveri> neron_severi;
    std::vector<SectionHeightRecord> section_heights;
    std::vector<FamilySectionRecord> family_sections;
};

struct Database {
    int schema_version = kSchemaVersion;
    std::vector<HMSRecord> records;
    const HMSRecord &at(long D) const;
};

Database load_database(const std::string &path);
Database parse_database(const std::string &json_text);
std::string serialize_database(const Database &db);
std::string serialize_record(const HMSRecord &rec);
// HMSKIT_DB if set, else the shipped file.
std::string default_database_path();

struct RMCheck {
    uint32_t p = 0;
    bool good = false;
    WeilData weil;
    bool irreducible = false;
    RMVerdict verdict;
};

struct RowReport {
    size_t index = 0;
    BigRational r, s;
    bool disputed = false;
    bool square_ok = false;
    std::optional<BigRational> z;
    BigRational value;
    bool ic_checked = false;
    bool ic_ok = false;
    std::optional<IgusaClebsch> ic_curve, ic_map;
    std::vector<RMCheck> rm;
    bool rm_ok() const;
    bool ok() const { return square_ok && (!ic_checked || ic_ok) && rm_ok(); }
};

// f_D(r, s) square check, invariant match when an ic_map is present, RM spot checks at good primes.
RowReport verify_point_row(const HMSRecord &rec, size_t row, const std::vector<uint32_t> &rm_primes = {});
RMCheck rm_spot_check(const HMSRecord &rec, const PointRow &row, uint32_t p);

struct BranchCheck {
    size_t component = 0, index = 0;
    bool ok = false;
    std::string source;
};

bool parametrization_annihilates(const BiPoly &factor, const Parametrization &par);
std::vector<BranchCheck> verify_branch(const HMSRecord &rec);

struct RecordReport {
    long D = 0;
    std::vector<RowReport> rows;
    std::vector<BranchCheck> branch;
    size_t rows_passed() const;
    size_t rows_quarantined() const;
    bool ok() const;
};

struct VerifyOptions {
    std::vector<uint32_t> rm_primes;
    unsigned threads = 1;
};

std::vector<RecordReport> verify_database(const Database &db, const std::vector<long> &discs, const VerifyOptions &opt);
std::string report_json(const std::vector<RecordReport> &reports);

struct TwistCandidate {
    long C = 0;
    std::vector<int> subset;
    friend bool operator==(const TwistCandidate &a, const TwistCandidate &b) {
        return a.C == b.C && a.subset == b.subset;
    }
};

struct TwistOptions {
    bool include_extra_II = true;
    std::optional<std::vector<int>> factor_indices; // restrict the candidate factor list
};

struct TwistResult {
    std::vector<TwistCandidate> survivors;
    size_t candidates = 0;
    size_t certified_points = 0;
    bool incomplete_separation = false;
};

// Squarefree C supported on -1 and the primes dividing 2D, ascending.
std::vector<long> twist_constants(long D);
TwistResult twist_search(const HMSRecord &rec, const std::vector<uint32_t> &primes,
                         const std::map<uint32_t, InvariantTable> &tables, const TwistOptions &opt = {});

} // namespace hmskit
