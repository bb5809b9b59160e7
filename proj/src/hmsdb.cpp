#include "hmskit/hmsdb.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#ifndef HMSKIT_DEFAULT_DB
#define HMSKIT_DEFAULT_DB "data/hms.json"
#endif

namespace hmskit {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &msg) { throw ParseError(path + ": " + msg); }

const json &req(const json &j, const std::string &key, const std::string &path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing field '" + key + "'");
    return *it;
}

std::string str(const json &j, const std::string &path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

long integer(const json &j, const std::string &path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long>();
}

BigRational rat(const json &j, const std::string &path) {
    if (j.is_number_integer()) return BigRational(j.get<long>());
    if (!j.is_string()) fail(path, "expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError &e) {
        fail(path, e.what());
    }
}

BiPoly bipoly(const json &j, const std::string &path) {
    if (!j.is_array()) fail(path, "expected a list of [i, j, coefficient] terms");
    std::vector<BiPoly::Term> terms;
    std::set<std::pair<long, long>> seen;
    for (size_t k = 0; k < j.size(); ++k) {
        std::string p = path + "[" + std::to_string(k) + "]";
        const json &t = j[k];
        if (!t.is_array() || t.size() != 3) fail(p, "expected [i, j, coefficient]");
        long a = integer(t[0], p + "[0]"), b = integer(t[1], p + "[1]");
        if (a < 0 || b < 0) fail(p, "negative exponent");
        if (!seen.insert({a, b}).second) fail(p, "duplicate monomial");
        BigRational c = rat(t[2], p + "[2]");
        if (sgn(c) == 0) fail(p, "stored zero coefficient");
        terms.emplace_back(int(a), int(b), c);
    }
    return BiPoly(terms);
}

QPoly qpoly(const json &j, const std::string &path) {
    if (!j.is_array()) fail(path, "expected a coefficient list");
    std::vector<BigRational> c;
    for (size_t k = 0; k < j.size(); ++k) c.push_back(rat(j[k], path + "[" + std::to_string(k) + "]"));
    return QPoly(std::move(c));
}

std::string opt_str(const json &j, const std::string &key) {
    auto it = j.find(key);
    return it != j.end() && it->is_string() ? it->get<std::string>() : std::string();
}

json to_json(const BigRational &q) { return q.get_str(); }

json to_json(const BiPoly &p) {
    json a = json::array();
    for (const auto &[i, j, c] : p.to_terms()) a.push_back(json::array({i, j, c.get_str()}));
    return a;
}

json to_json(const QPoly &p) {
    json a = json::array();
    for (const auto &c : p.coeffs()) a.push_back(c.get_str());
    return a;
}

FamilyPoly family_poly(const json &j, const std::string &path) {
    if (!j.is_array()) fail(path, "expected a list of [degree, terms]");
    FamilyPoly out;
    for (size_t k = 0; k < j.size(); ++k) {
        std::string p = path + "[" + std::to_string(k) + "]";
        if (!j[k].is_array() || j[k].size() != 2) fail(p, "expected [degree, terms]");
        out.emplace_back(int(integer(j[k][0], p + "[0]")), bipoly(j[k][1], p + "[1]"));
    }
    return out;
}

json to_json(const FamilyPoly &f) {
    json a = json::array();
    for (const auto &[d, c] : f) a.push_back(json::array({d, to_json(c)}));
    return a;
}

Parametrization parse_param(const json &j, const std::string &path) {
    Parametrization p;
    const json &names = req(j, "params", path);
    if (!names.is_array() || names.empty() || names.size() > 2) fail(path + ".params", "expected one or two names");
    for (const auto &n : names) p.params.push_back(str(n, path + ".params"));
    const json &r = req(j, "r", path), &s = req(j, "s", path);
    p.r_num = bipoly(req(r, "num", path + ".r"), path + ".r.num");
    p.r_den = bipoly(req(r, "den", path + ".r"), path + ".r.den");
    p.s_num = bipoly(req(s, "num", path + ".s"), path + ".s.num");
    p.s_den = bipoly(req(s, "den", path + ".s"), path + ".s.den");
    if (p.r_den.is_zero() || p.s_den.is_zero()) fail(path, "zero denominator");
    if (j.contains("curve")) {
        p.curve = bipoly(j["curve"], path + ".curve");
        if (p.curve->degree_s() != 2 || !(p.curve->s_coeff(2) == QPoly::constant(1)))
            fail(path + ".curve", "relation must be monic quadratic in the second parameter");
        if (p.params.size() != 2) fail(path, "curve relation needs two parameters");
    }
    p.source = opt_str(j, "source");
    return p;
}

json param_json(const Parametrization &p) {
    json j;
    j["params"] = p.params;
    j["r"] = {{"num", to_json(p.r_num)}, {"den", to_json(p.r_den)}};
    j["s"] = {{"num", to_json(p.s_num)}, {"den", to_json(p.s_den)}};
    if (p.curve) j["curve"] = to_json(*p.curve);
    j["source"] = p.source;
    return j;
}

HMSRecord parse_record(const json &j, const std::string &path) {
    HMSRecord r;
    r.D = integer(req(j, "D", path), path + ".D");
    const json &coords = req(j, "coords", path);
    if (!coords.is_array() || coords.size() != 2) fail(path + ".coords", "expected two names");
    r.coords = {str(coords[0], path + ".coords"), str(coords[1], path + ".coords")};
    r.surface_kind = str(req(j, "surface_kind", path), path + ".surface_kind");
    static const std::set<std::string> kinds{"rational", "K3", "honestly-elliptic", "general-type"};
    if (!kinds.count(r.surface_kind)) fail(path + ".surface_kind", "unknown kind '" + r.surface_kind + "'");
    const json &cover = req(j, "cover", path);
    r.cover = bipoly(req(cover, "terms", path + ".cover"), path + ".cover.terms");
    r.cover_source = opt_str(cover, "source");
    if (r.cover.is_zero()) fail(path + ".cover", "zero cover polynomial");
    BigRational content = r.cover.content();
    if (content.get_den() != 1 || !is_squarefree(content.get_num()))
        fail(path + ".cover", "content " + content.get_str() + " is not a squarefree integer");

    const json &comps = req(j, "branch_components", path);
    if (!comps.is_array()) fail(path + ".branch_components", "expected a list");
    static const std::set<std::string> meanings{"extra-I2", "fiber-promotion", "section-divisibility"};
    for (size_t k = 0; k < comps.size(); ++k) {
        std::string p = path + ".branch_components[" + std::to_string(k) + "]";
        BranchComponent c;
        c.factor = bipoly(req(comps[k], "factor", p), p + ".factor");
        c.multiplicity = int(integer(req(comps[k], "multiplicity", p), p + ".multiplicity"));
        c.meaning = str(req(comps[k], "meaning", p), p + ".meaning");
        if (!meanings.count(c.meaning)) fail(p + ".meaning", "unknown tag '" + c.meaning + "'");
        if (comps[k].contains("parametrizations")) {
            const json &ps = comps[k]["parametrizations"];
            for (size_t m = 0; m < ps.size(); ++m)
                c.parametrizations.push_back(parse_param(ps[m], p + ".parametrizations[" + std::to_string(m) + "]"));
        }
        r.branch_components.push_back(std::move(c));
    }

    const json &pts = req(j, "points", path);
    if (!pts.is_array()) fail(path + ".points", "expected a list");
    for (size_t k = 0; k < pts.size(); ++k) {
        std::string p = path + ".points[" + std::to_string(k) + "]";
        PointRow row;
        const json &c = req(pts[k], "coords", p);
        if (!c.is_array() || c.size() != 2) fail(p + ".coords", "expected two rationals");
        row.r = rat(c[0], p + ".coords[0]");
        row.s = rat(c[1], p + ".coords[1]");
        const json &sx = req(pts[k], "sextic", p);
        if (!sx.is_array() || sx.size() != 7) fail(p + ".sextic", "expected 7 coefficients f0..f6");
        for (int i = 0; i < 7; ++i) row.sextic[i] = rat(sx[i], p + ".sextic[" + std::to_string(i) + "]");
        row.disputed = pts[k].value("disputed", false);
        row.note = opt_str(pts[k], "note");
        r.points.push_back(std::move(row));
    }
    r.points_source = opt_str(j, "points_source");

    if (j.contains("ic_map")) {
        const json &m = j["ic_map"];
        std::string p = path + ".ic_map";
        IcMap ic;
        ic.I2 = bipoly(req(m, "I2", p), p + ".I2");
        ic.I4 = bipoly(req(m, "I4", p), p + ".I4");
        ic.I6 = bipoly(req(m, "I6", p), p + ".I6");
        ic.I10 = bipoly(req(m, "I10", p), p + ".I10");
        ic.source = opt_str(m, "source");
        r.ic_map = ic;
    }
    if (j.contains("twist_candidates")) {
        const json &t = j["twist_candidates"];
        std::string p = path + ".twist_candidates";
        TwistCandidates tc;
        const json &fs = req(t, "factors", p);
        for (size_t k = 0; k < fs.size(); ++k) tc.factors.push_back(bipoly(fs[k], p + ".factors[" + std::to_string(k) + "]"));
        for (const auto &x : t.value("extra_II", json::array())) tc.extra_II.push_back(int(integer(x, p + ".extra_II")));
        tc.expected_C = integer(req(t, "expected_C", p), p + ".expected_C");
        for (const auto &x : req(t, "expected_subset", p)) tc.expected_subset.push_back(int(integer(x, p + ".expected_subset")));
        for (int i : tc.extra_II)
            if (i < 0 || size_t(i) >= tc.factors.size()) fail(p + ".extra_II", "index out of range");
        for (int i : tc.expected_subset)
            if (i < 0 || size_t(i) >= tc.factors.size()) fail(p + ".expected_subset", "index out of range");
        tc.source = opt_str(t, "source");
        r.twist_candidates = tc;
    }
    if (j.contains("elliptic_models")) {
        const json &ms = j["elliptic_models"];
        for (size_t k = 0; k < ms.size(); ++k) {
            std::string p = path + ".elliptic_models[" + std::to_string(k) + "]";
            const json &m = ms[k];
            EllipticModel em;
            em.name = opt_str(m, "name");
            em.variable = opt_str(m, "variable");
            em.w.a1 = qpoly(req(m, "a1", p), p + ".a1");
            em.w.a2 = qpoly(req(m, "a2", p), p + ".a2");
            em.w.a3 = qpoly(req(m, "a3", p), p + ".a3");
            em.w.a4 = qpoly(req(m, "a4", p), p + ".a4");
            em.w.a6 = qpoly(req(m, "a6", p), p + ".a6");
            em.source = opt_str(m, "source");
            for (const auto &f : m.value("fibers", json::array())) {
                ExpectedFiber ef;
                const json &fac = req(f, "factor", p + ".fibers");
                if (!(fac.is_string() && fac.get<std::string>() == "infinity")) ef.factor = qpoly(fac, p + ".fibers.factor");
                ef.type = str(req(f, "type", p + ".fibers"), p + ".fibers.type");
                em.fibers.push_back(ef);
            }
            if (m.contains("fiber_summary"))
                for (auto &[k2, v] : m["fiber_summary"].items()) em.fiber_summary[k2] = int(integer(v, p + ".fiber_summary"));
            if (m.contains("chi")) em.chi = int(integer(m["chi"], p + ".chi"));
            em.quartic_jacobian_of_cover = m.value("quartic_jacobian_of_cover", false);
            r.elliptic_models.push_back(std::move(em));
        }
    }
    if (j.contains("neron_severi")) {
        const json &n = j["neron_severi"];
        std::string p = path + ".neron_severi";
        NeronSeveri ns;
        for (const auto &l : req(n, "fiber_lattices", p)) ns.fiber_lattices.push_back(str(l, p + ".fiber_lattices"));
        for (const auto &l : ns.fiber_lattices) {
            try {
                lattice_discriminant(l);
            } catch (const std::exception &e) {
                fail(p + ".fiber_lattices", e.what());
            }
        }
        if (n.contains("height_gram")) {
            LatticeGram g;
            for (const auto &row : n["height_gram"]) {
                std::vector<BigRational> rr;
                for (const auto &x : row) rr.push_back(rat(x, p + ".height_gram"));
                g.push_back(rr);
            }
            ns.height_gram = g;
        }
        if (n.contains("height_det")) ns.height_det = rat(n["height_det"], p + ".height_det");
        if (!ns.height_gram && !ns.height_det) fail(p, "needs height_gram or height_det");
        ns.torsion = int(integer(req(n, "torsion", p), p + ".torsion"));
        ns.expected_abs_disc = rat(req(n, "expected_abs_disc", p), p + ".expected_abs_disc");
        ns.source = opt_str(n, "source");
        r.neron_severi = ns;
    }
    if (j.contains("section_heights")) {
        for (const auto &h : j["section_heights"]) {
            std::string p = path + ".section_heights";
            SectionHeightRecord sh;
            sh.chi = int(integer(req(h, "chi", p), p + ".chi"));
            sh.po = int(integer(req(h, "po", p), p + ".po"));
            for (const auto &c : req(h, "contributions", p))
                sh.contributions.push_back({str(req(c, "lattice", p), p + ".lattice"), int(integer(req(c, "component", p), p + ".component"))});
            sh.expected = rat(req(h, "expected", p), p + ".expected");
            sh.source = opt_str(h, "source");
            r.section_heights.push_back(sh);
        }
    }
    if (j.contains("family_sections")) {
        for (const auto &f : j["family_sections"]) {
            std::string p = path + ".family_sections";
            FamilySectionRecord fs;
            fs.section.a4 = family_poly(req(f, "a4", p), p + ".a4");
            fs.section.a6 = family_poly(req(f, "a6", p), p + ".a6");
            fs.section.x = family_poly(req(f, "x", p), p + ".x");
            fs.section.y = family_poly(req(f, "y", p), p + ".y");
            fs.height = rat(req(f, "height", p), p + ".height");
            fs.source = opt_str(f, "source");
            r.family_sections.push_back(fs);
        }
    }
    return r;
}

json record_json(const HMSRecord &r) {
    json j;
    j["D"] = r.D;
    j["coords"] = {r.coords[0], r.coords[1]};
    j["surface_kind"] = r.surface_kind;
    j["cover"] = {{"terms", to_json(r.cover)}, {"source", r.cover_source}};
    json comps = json::array();
    for (const auto &c : r.branch_components) {
        json cj;
        cj["factor"] = to_json(c.factor);
        cj["multiplicity"] = c.multiplicity;
        cj["meaning"] = c.meaning;
        json ps = json::array();
        for (const auto &p : c.parametrizations) ps.push_back(param_json(p));
        cj["parametrizations"] = ps;
        comps.push_back(cj);
    }
    j["branch_components"] = comps;
    json pts = json::array();
    for (const auto &row : r.points) {
        json pj;
        pj["coords"] = {row.r.get_str(), row.s.get_str()};
        json sx = json::array();
        for (const auto &c : row.sextic) sx.push_back(c.get_str());
        pj["sextic"] = sx;
        if (row.disputed) pj["disputed"] = true;
        if (!row.note.empty()) pj["note"] = row.note;
        pts.push_back(pj);
    }
    j["points"] = pts;
    j["points_source"] = r.points_source;
    if (r.ic_map) {
        const auto &m = *r.ic_map;
        j["ic_map"] = {{"I2", to_json(m.I2)}, {"I4", to_json(m.I4)}, {"I6", to_json(m.I6)}, {"I10", to_json(m.I10)}, {"source", m.source}};
    }
    if (r.twist_candidates) {
        const auto &t = *r.twist_candidates;
        json fs = json::array();
        for (const auto &f : t.factors) fs.push_back(to_json(f));
        j["twist_candidates"] = {{"factors", fs}, {"extra_II", t.extra_II}, {"expected_C", t.expected_C},
                                 {"expected_subset", t.expected_subset}, {"source", t.source}};
    }
    if (!r.elliptic_models.empty()) {
        json ms = json::array();
        for (const auto &m : r.elliptic_models) {
            json mj;
            mj["name"] = m.name;
            mj["variable"] = m.variable;
            mj["a1"] = to_json(m.w.a1);
            mj["a2"] = to_json(m.w.a2);
            mj["a3"] = to_json(m.w.a3);
            mj["a4"] = to_json(m.w.a4);
            mj["a6"] = to_json(m.w.a6);
            mj["source"] = m.source;
            json fs = json::array();
            for (const auto &f : m.fibers)
                fs.push_back({{"factor", f.factor ? to_json(*f.factor) : json("infinity")}, {"type", f.type}});
            mj["fibers"] = fs;
            mj["fiber_summary"] = m.fiber_summary;
            if (m.chi) mj["chi"] = *m.chi;
            mj["quartic_jacobian_of_cover"] = m.quartic_jacobian_of_cover;
            ms.push_back(mj);
        }
        j["elliptic_models"] = ms;
    }
    if (r.neron_severi) {
        const auto &n = *r.neron_severi;
        json nj;
        nj["fiber_lattices"] = n.fiber_lattices;
        if (n.height_gram) {
            json g = json::array();
            for (const auto &row : *n.height_gram) {
                json rr = json::array();
                for (const auto &x : row) rr.push_back(x.get_str());
                g.push_back(rr);
            }
            nj["height_gram"] = g;
        }
        if (n.height_det) nj["height_det"] = n.height_det->get_str();
        nj["torsion"] = n.torsion;
        nj["expected_abs_disc"] = n.expected_abs_disc.get_str();
        nj["source"] = n.source;
        j["neron_severi"] = nj;
    }
    if (!r.section_heights.empty()) {
        json hs = json::array();
        for (const auto &h : r.section_heights) {
            json cs = json::array();
            for (const auto &c : h.contributions) cs.push_back({{"lattice", c.lattice}, {"component", c.component}});
            hs.push_back({{"chi", h.chi}, {"po", h.po}, {"contributions", cs}, {"expected", h.expected.get_str()}, {"source", h.source}});
        }
        j["section_heights"] = hs;
    }
    if (!r.family_sections.empty()) {
        json fs = json::array();
        for (const auto &f : r.family_sections)
            fs.push_back({{"a4", to_json(f.section.a4)}, {"a6", to_json(f.section.a6)}, {"x", to_json(f.section.x)},
                          {"y", to_json(f.section.y)}, {"height", f.height.get_str()}, {"source", f.source}});
        j["family_sections"] = fs;
    }
    return j;
}

} // namespace

const HMSRecord &Database::at(long D) const {
    for (const auto &r : records)
        if (r.D == D) return r;
    throw std::out_of_range("no record for D = " + std::to_string(D));
}

IgusaClebsch IcMap::operator()(const BigRational &r, const BigRational &s) const {
    return {I2(r, s), I4(r, s), I6(r, s), I10(r, s)};
}

IgusaClebschFF IcMap::eval(const FFElem &r, const FFElem &s) const {
    return {I2.eval(r, s), I4.eval(r, s), I6.eval(r, s), I10.eval(r, s)};
}

Database parse_database(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("database: ") + e.what());
    }
    Database db;
    db.schema_version = int(integer(req(j, "schema_version", "database"), "database.schema_version"));
    if (db.schema_version != kSchemaVersion)
        fail("database.schema_version", "expected " + std::to_string(kSchemaVersion) + ", found " + std::to_string(db.schema_version));
    const json &recs = req(j, "records", "database");
    if (!recs.is_array()) fail("database.records", "expected a list");
    std::set<long> seen;
    for (size_t k = 0; k < recs.size(); ++k) {
        HMSRecord r = parse_record(recs[k], "records[" + std::to_string(k) + "]");
        if (!seen.insert(r.D).second) fail("records[" + std::to_string(k) + "]", "duplicate D = " + std::to_string(r.D));
        db.records.push_back(std::move(r));
    }
    std::set<long> want(kDiscriminants.begin(), kDiscriminants.end());
    if (seen != want) fail("database.records", "expected exactly the 30 fundamental discriminants 1 < D < 100");
    return db;
}

Database load_database(const std::string &path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open database " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_database(ss.str());
}

std::string serialize_database(const Database &db) {
    json j;
    j["schema_version"] = db.schema_version;
    json recs = json::array();
    for (const auto &r : db.records) recs.push_back(record_json(r));
    j["records"] = recs;
    return j.dump(1);
}

std::string serialize_record(const HMSRecord &rec) { return record_json(rec).dump(1); }

std::string default_database_path() {
    const char *env = std::getenv("HMSKIT_DB");
    if (env && *env) return env;
    return HMSKIT_DEFAULT_DB;
}

bool RowReport::rm_ok() const {
    for (const auto &c : rm)
        if (c.good && c.irreducible && c.verdict.kind != RMVerdict::Kind::RM_over_Fp) return false;
    return true;
}

RMCheck rm_spot_check(const HMSRecord &rec, const PointRow &row, uint32_t p) {
    RMCheck c;
    c.p = p;
    if (!is_odd_prime(p) || rec.D % long(p) == 0) return c;
    for (const auto &x : row.sextic)
        if (x.get_den() % p == 0) return c;
    CurveFF curve = CurveFF::from_sextic(row.sextic, p);
    if (!has_good_reduction(curve)) return c;
    c.good = true;
    c.weil = weil_data(curve);
    c.irreducible = is_P_irreducible(c.weil);
    c.verdict = rm_test(c.weil, rec.D, c.irreducible);
    return c;
}

RowReport verify_point_row(const HMSRecord &rec, size_t idx, const std::vector<uint32_t> &rm_primes) {
    const PointRow &row = rec.points.at(idx);
    RowReport rep;
    rep.index = idx;
    rep.r = row.r;
    rep.s = row.s;
    rep.disputed = row.disputed;
    rep.value = rec.cover(row.r, row.s);
    if (sgn(rep.value) != 0) {
        rep.z = is_rational_square(rep.value);
        rep.square_ok = rep.z.has_value();
    }
    if (rec.ic_map) {
        rep.ic_checked = true;
        rep.ic_map = (*rec.ic_map)(row.r, row.s);
        try {
            rep.ic_curve = igusa_clebsch(row.sextic);
            rep.ic_ok = weighted_equal(*rep.ic_curve, *rep.ic_map);
        } catch (const std::exception &) {
            rep.ic_ok = false;
        }
    }
    for (uint32_t p : rm_primes) rep.rm.push_back(rm_spot_check(rec, row, p));
    return rep;
}

bool parametrization_annihilates(const BiPoly &factor, const Parametrization &par) {
    int da = std::max(0, factor.degree_r()), db = std::max(0, factor.degree_s());
    std::vector<BiPoly> rn{BiPoly::constant(1)}, rd{BiPoly::constant(1)}, sn{BiPoly::constant(1)}, sd{BiPoly::constant(1)};
    for (int i = 1; i <= da; ++i) {
        rn.push_back(rn.back() * par.r_num);
        rd.push_back(rd.back() * par.r_den);
    }
    for (int i = 1; i <= db; ++i) {
        sn.push_back(sn.back() * par.s_num);
        sd.push_back(sd.back() * par.s_den);
    }
    BiPoly N;
    for (const auto &[k, c] : factor.terms()) {
        auto [i, j] = k;
        N = N + rn[i] * rd[da - i] * sn[j] * sd[db - j] * c;
    }
    if (par.curve) N = N.reduce_mod_monic_quadratic_s(*par.curve);
    return N.is_zero();
}

std::vector<BranchCheck> verify_branch(const HMSRecord &rec) {
    std::vector<BranchCheck> out;
    for (size_t c = 0; c < rec.branch_components.size(); ++c) {
        const auto &comp = rec.branch_components[c];
        for (size_t k = 0; k < comp.parametrizations.size(); ++k) {
            BranchCheck b;
            b.component = c;
            b.index = k;
            b.source = comp.parametrizations[k].source;
            b.ok = parametrization_annihilates(comp.factor, comp.parametrizations[k]);
            out.push_back(b);
        }
    }
    return out;
}

size_t RecordReport::rows_passed() const {
    size_t n = 0;
    for (const auto &r : rows) n += r.ok() && !r.disputed;
    return n;
}

size_t RecordReport::rows_quarantined() const {
    size_t n = 0;
    for (const auto &r : rows) n += r.disputed;
    return n;
}

bool RecordReport::ok() const {
    for (const auto &r : rows)
        if (!r.disputed && !r.ok()) return false;
    for (const auto &b : branch)
        if (!b.ok) return false;
    return true;
}

std::vector<RecordReport> verify_database(const Database &db, const std::vector<long> &discs, const VerifyOptions &opt) {
    std::vector<const HMSRecord *> recs;
    if (discs.empty())
        for (const auto &r : db.records) recs.push_back(&r);
    else
        for (long D : discs) recs.push_back(&db.at(D));
    std::vector<RecordReport> out(recs.size());
    auto work = [&](size_t lo, size_t hi) {
        for (size_t k = lo; k < hi; ++k) {
            const HMSRecord &r = *recs[k];
            out[k].D = r.D;
            for (size_t i = 0; i < r.points.size(); ++i) out[k].rows.push_back(verify_point_row(r, i, opt.rm_primes));
            out[k].branch = verify_branch(r);
        }
    };
    unsigned T = std::max(1u, std::min<unsigned>(opt.threads, unsigned(recs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < T; ++t) pool.emplace_back(work, recs.size() * t / T, recs.size() * (t + 1) / T);
    work(0, recs.size() / T);
    for (auto &th : pool) th.join();
    return out;
}

std::string report_json(const std::vector<RecordReport> &reports) {
    json all = json::array();
    size_t rows = 0, passed = 0, quarantined = 0, branches = 0, branches_ok = 0;
    for (const auto &rep : reports) {
        json rj;
        rj["D"] = rep.D;
        json rowsj = json::array();
        for (const auto &r : rep.rows) {
            json x;
            x["index"] = r.index;
            x["coords"] = {r.r.get_str(), r.s.get_str()};
            x["square"] = r.square_ok;
            x["value"] = r.value.get_str();
            if (r.z) x["z"] = r.z->get_str();
            if (r.disputed) x["disputed"] = true;
            if (r.ic_checked) {
                json ic;
                ic["ok"] = r.ic_ok;
                if (r.ic_curve) ic["curve"] = {r.ic_curve->I2.get_str(), r.ic_curve->I4.get_str(), r.ic_curve->I6.get_str(), r.ic_curve->I10.get_str()};
                if (r.ic_map) ic["map"] = {r.ic_map->I2.get_str(), r.ic_map->I4.get_str(), r.ic_map->I6.get_str(), r.ic_map->I10.get_str()};
                x["invariants"] = ic;
            }
            json rm = json::array();
            for (const auto &c : r.rm) {
                json cj{{"p", c.p}, {"good", c.good}};
                if (c.good) {
                    cj["n1"] = c.weil.n1;
                    cj["n2"] = c.weil.n2;
                    cj["a"] = c.weil.a;
                    cj["b"] = c.weil.b;
                    cj["disc_Q"] = c.weil.disc_q();
                    cj["P_irreducible"] = c.irreducible;
                    cj["verdict"] = c.verdict.to_string();
                }
                rm.push_back(cj);
            }
            if (!r.rm.empty()) x["rm"] = rm;
            x["ok"] = r.ok();
            rowsj.push_back(x);
        }
        rj["rows"] = rowsj;
        json br = json::array();
        for (const auto &b : rep.branch) br.push_back({{"component", b.component}, {"index", b.index}, {"ok", b.ok}, {"source", b.source}});
        rj["branch"] = br;
        rj["rows_total"] = rep.rows.size();
        rj["rows_passed"] = rep.rows_passed();
        rj["rows_quarantined"] = rep.rows_quarantined();
        rj["ok"] = rep.ok();
        all.push_back(rj);
        rows += rep.rows.size();
        passed += rep.rows_passed();
        quarantined += rep.rows_quarantined();
        for (const auto &b : rep.branch) {
            ++branches;
            branches_ok += b.ok;
        }
    }
    json out;
    out["records"] = all;
    out["summary"] = {{"rows", rows}, {"rows_passed", passed}, {"rows_quarantined", quarantined},
                      {"parametrizations", branches}, {"parametrizations_ok", branches_ok}};
    return out.dump(1);
}

std::vector<long> twist_constants(long D) {
    std::vector<long> primes;
    long m = 2 * std::labs(D);
    for (long q = 2; q <= m; ++q) {
        if (m % q) continue;
        primes.push_back(q);
        while (m % q == 0) m /= q;
    }
    std::vector<long> gens{-1};
    gens.insert(gens.end(), primes.begin(), primes.end());
    std::vector<long> out;
    for (unsigned mask = 0; mask < (1u << gens.size()); ++mask) {
        long c = 1;
        for (size_t i = 0; i < gens.size(); ++i)
            if (mask >> i & 1) c *= gens[i];
        out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

TwistResult twist_search(const HMSRecord &rec, const std::vector<uint32_t> &primes,
                         const std::map<uint32_t, InvariantTable> &tables, const TwistOptions &opt) {
    if (!rec.ic_map || !rec.twist_candidates) throw std::invalid_argument("record lacks ic_map or twist candidates");
    const auto &tc = *rec.twist_candidates;
    std::vector<int> use;
    if (opt.factor_indices) {
        use = *opt.factor_indices;
    } else {
        for (int i = 0; i < int(tc.factors.size()); ++i) use.push_back(i);
    }
    if (!opt.include_extra_II)
        use.erase(std::remove_if(use.begin(), use.end(),
                                 [&](int i) { return std::find(tc.extra_II.begin(), tc.extra_II.end(), i) != tc.extra_II.end(); }),
                  use.end());
    for (int i : use)
        if (i < 0 || size_t(i) >= tc.factors.size()) throw std::invalid_argument("factor index out of range");

    std::vector<TwistCandidate> alive;
    for (long C : twist_constants(rec.D))
        for (unsigned mask = 1; mask < (1u << use.size()); ++mask) {
            TwistCandidate c;
            c.C = C;
            for (size_t i = 0; i < use.size(); ++i)
                if (mask >> i & 1) c.subset.push_back(use[i]);
            std::sort(c.subset.begin(), c.subset.end());
            alive.push_back(c);
        }
    TwistResult res;
    res.candidates = alive.size();

    std::vector<uint32_t> ps = primes;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (uint32_t p : ps) {
        if (!is_odd_prime(p) || rec.D % long(p) == 0) throw std::invalid_argument("prime " + std::to_string(p) + " is not odd and coprime to D");
        auto it = tables.find(p);
        if (it == tables.end()) throw std::invalid_argument("no invariant table for p = " + std::to_string(p));
        FiniteField F(p, 1);
        // Denominators must be units mod p.
        for (const BiPoly *b : {&rec.ic_map->I2, &rec.ic_map->I4, &rec.ic_map->I6, &rec.ic_map->I10}) b->reduce(F);
        for (int i : use) tc.factors[i].reduce(F);
        for (uint32_t x = 0; x < p; ++x) {
            for (uint32_t y = 0; y < p; ++y) {
                FFElem r = F.elem(x), s = F.elem(y);
                IgusaClebschFF ic = rec.ic_map->eval(r, s);
                if (ic.I10.is_zero()) continue;
                auto curve = curve_from_ic(ic, it->second);
                if (!curve) continue;
                bool certified = false;
                for (const CurveFF &c : {*curve, curve->twist()}) {
                    if (!has_good_reduction(c)) continue;
                    WeilData w = weil_data(c);
                    RMVerdict v = rm_test(w, rec.D);
                    if (v.kind == RMVerdict::Kind::RM_over_Fp && w.a != 0) certified = true;
                }
                if (!certified) continue;
                ++res.certified_points;
                std::map<int, FFElem> vals;
                for (int i : use) vals.emplace(i, tc.factors[i].eval(r, s));
                std::vector<TwistCandidate> keep;
                for (const auto &cand : alive) {
                    FFElem v = F.elem(cand.C);
                    for (int i : cand.subset) v *= vals.at(i);
                    if (quadratic_character(v) != -1) keep.push_back(cand);
                }
                alive.swap(keep);
            }
        }
    }
    if (alive.empty()) throw std::runtime_error("database/candidate inconsistency");
    res.survivors = alive;
    res.incomplete_separation = alive.size() > 1;
    return res;
}

} // namespace hmskit
