#include "hmskit/curvesearch.hpp"
#include "hmskit/ellsurf.hpp"
#include "hmskit/hmsdb.hpp"
#include "hmskit/igusa.hpp"
#include "hmskit/rmdetect.hpp"
#include "hmskit/shioda_inose.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace hmskit;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0, kExitFail = 1, kExitUsage = 2;

// Bad user input discovered after flag parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

std::vector<BigRational> parse_list(const std::vector<std::string> &xs) {
    std::vector<BigRational> out;
    for (const auto &x : xs) out.push_back(parse_rational(x));
    return out;
}

std::vector<uint32_t> parse_primes(const std::string &s) {
    std::vector<uint32_t> out;
    for (const auto &x : split(s, ',')) {
        long v;
        try {
            v = std::stol(x);
        } catch (const std::exception &) {
            throw UsageError("bad prime '" + x + "'");
        }
        if (!is_odd_prime(uint64_t(v < 0 ? 0 : v))) throw UsageError("not an odd prime: " + x);
        out.push_back(uint32_t(v));
    }
    return out;
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

void print(const json &j) { std::cout << j.dump(2) << "\n"; }

json ic_json(const IgusaClebsch &ic) {
    return {{"I2", ic.I2.get_str()}, {"I4", ic.I4.get_str()}, {"I6", ic.I6.get_str()}, {"I10", ic.I10.get_str()}};
}

json ic_json(const IgusaClebschFF &ic) { return {{"I2", ic.I2.a}, {"I4", ic.I4.a}, {"I6", ic.I6.a}, {"I10", ic.I10.a}}; }

json k3_json(const K3Model &m) {
    return {{"a", m.a.get_str()}, {"a'", m.a1.get_str()}, {"b''", m.b2.get_str()}, {"b", m.b.get_str()}, {"b'", m.b1.get_str()}};
}

json curve_json(const CurveFF &c) {
    json f = json::array();
    for (auto x : c.f) f.push_back(x);
    return {{"p", c.p}, {"f", f}, {"text", c.to_string()}};
}

uint32_t check_prime(long p) {
    if (p < 0 || !is_odd_prime(uint64_t(p))) throw UsageError("--prime must be an odd prime");
    return uint32_t(p);
}

WeierstrassQt model_from_file(const std::string &path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open model file " + path);
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
    auto get = [&](const char *k) {
        std::vector<std::string> cs;
        if (j.contains(k))
            for (const auto &x : j[k]) cs.push_back(x.is_string() ? x.get<std::string>() : x.dump());
        return qpoly_from_strings(cs);
    };
    return {get("a1"), get("a2"), get("a3"), get("a4"), get("a6")};
}

std::string table_path(const std::string &dir, uint32_t p) {
    return (std::filesystem::path(dir) / ("table_p" + std::to_string(p) + ".bin")).string();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"hmskit: genus-2 invariants, elliptic K3 models, RM detection and the Hilbert modular surface database"};
    app.require_subcommand(1);
    bool as_json = false;
    unsigned threads = default_threads();
    std::string db_path = default_database_path();

    auto add_common = [&](CLI::App *c) {
        c->add_flag("--json", as_json, "machine-readable JSON output");
    };

    // invariants
    std::string curve_s;
    bool normalize = false;
    long prime = 0;
    auto *inv = app.add_subcommand("invariants", "Igusa-Clebsch invariants of y^2 = f(x)");
    inv->add_option("--curve", curve_s, "coefficients f6,...,f0")->required();
    inv->add_option("--prime", prime, "reduce modulo this odd prime");
    inv->add_flag("--normalize", normalize, "canonical weighted representative over F_p (needs --prime)");
    add_common(inv);

    // k3
    std::vector<std::string> from_ic, to_ic;
    auto *k3 = app.add_subcommand("k3", "E8+E7 elliptic K3 model from invariants and back");
    auto *o_from = k3->add_option("--from-ic", from_ic, "I2 I4 I6 I10")->expected(4);
    auto *o_to = k3->add_option("--to-ic", to_ic, "a a' b'' b b'")->expected(5);
    o_from->excludes(o_to);
    add_common(k3);

    // fibers
    std::string model_file;
    long model_disc = 0;
    size_t model_index = 0;
    auto *fib = app.add_subcommand("fibers", "Kodaira fiber table of a Weierstrass model over Q(t)");
    auto *o_model = fib->add_option("--model", model_file, "JSON file with a1,a2,a3,a4,a6 coefficient lists (ascending)");
    auto *o_mdisc = fib->add_option("--disc", model_disc, "use a stored model of this record");
    fib->add_option("--index", model_index, "model index within the record");
    o_model->excludes(o_mdisc);
    add_common(fib);

    // height
    int chi = 2, po = 0;
    std::vector<std::string> contr;
    auto *hgt = app.add_subcommand("height", "section height 2chi + 2(P.O) - sum of fiber corrections");
    hgt->add_option("--chi", chi, "Euler characteristic of the surface")->required();
    hgt->add_option("--po", po, "intersection number with the zero section")->required();
    hgt->add_option("--contr", contr, "fiber correction terms (rationals)");
    add_common(hgt);

    // nsdisc
    std::string ns_fibers, ns_gram, ns_det;
    int torsion = 1;
    auto *nsd = app.add_subcommand("nsdisc", "Neron-Severi discriminant by Shioda-Tate");
    nsd->add_option("--fibers", ns_fibers, "root lattices, comma separated, e.g. A2,A2,E6")->required();
    auto *o_gram = nsd->add_option("--gram", ns_gram, "height Gram matrix, rows separated by ';', entries by ','");
    auto *o_det = nsd->add_option("--det", ns_det, "determinant of the height Gram matrix");
    o_gram->excludes(o_det);
    nsd->add_option("--torsion", torsion, "order of the torsion subgroup");
    add_common(nsd);

    // count
    int ext = 1;
    auto *cnt = app.add_subcommand("count", "number of points on the smooth model over F_p or F_{p^2}");
    cnt->add_option("--curve", curve_s, "coefficients f6,...,f0")->required();
    cnt->add_option("--prime", prime, "odd prime")->required();
    cnt->add_option("--ext", ext, "extension degree 1 or 2")->check(CLI::IsMember({1, 2}));
    add_common(cnt);

    // rm-test
    long disc = 0;
    auto *rmt = app.add_subcommand("rm-test", "Weil data and real multiplication verdict at one prime");
    rmt->add_option("--curve", curve_s, "coefficients f6,...,f0")->required();
    rmt->add_option("--prime", prime, "odd prime of good reduction")->required();
    rmt->add_option("--disc", disc, "fundamental discriminant D")->required();
    add_common(rmt);

    // mktable
    std::string out_path;
    bool reverse = false;
    auto *mkt = app.add_subcommand("mktable", "invariant table over F_p (p <= 13)");
    mkt->add_option("--prime", prime, "odd prime <= 13")->required();
    mkt->add_option("--out", out_path, "output file")->required();
    mkt->add_option("--threads", threads, "worker threads");
    mkt->add_flag("--reverse", reverse, "enumerate candidates in reverse order");
    add_common(mkt);

    // curve-from-ic
    std::string table_file, ic_s;
    auto *cfi = app.add_subcommand("curve-from-ic", "a curve over F_p with given invariants, from a table");
    cfi->add_option("--table", table_file, "table file written by mktable")->required();
    cfi->add_option("--ic", ic_s, "I2,I4,I6,I10 (rationals, reduced mod p)")->required();
    add_common(cfi);

    // show
    long show_disc = 0;
    auto *shw = app.add_subcommand("show", "print a database record");
    shw->add_option("--disc", show_disc, "fundamental discriminant")->required();
    shw->add_option("--db", db_path, "database file (default: HMSKIT_DB or the shipped file)");
    add_common(shw);

    // verify
    std::vector<long> verify_discs;
    std::string rm_primes_s;
    auto *ver = app.add_subcommand("verify", "verify database rows and branch parametrizations");
    ver->add_option("--disc", verify_discs, "restrict to these discriminants");
    ver->add_option("--rm-primes", rm_primes_s, "comma separated primes for RM spot checks");
    ver->add_option("--threads", threads, "worker threads");
    ver->add_option("--db", db_path, "database file (default: HMSKIT_DB or the shipped file)");
    add_common(ver);

    // twist-search
    std::string primes_s = "11,13", tables_dir;
    long twist_disc = 5;
    bool no_extra = false;
    auto *tws = app.add_subcommand("twist-search", "pin down the twist constant and factor subset of a cover");
    tws->add_option("--disc", twist_disc, "fundamental discriminant with stored candidates");
    tws->add_option("--primes", primes_s, "comma separated primes <= 13");
    tws->add_option("--tables", tables_dir, "directory of table_p<p>.bin files; missing tables are built and saved");
    tws->add_flag("--exclude-extra-II", no_extra, "drop factors that only give extra II fibers");
    tws->add_option("--threads", threads, "worker threads for table builds");
    tws->add_option("--db", db_path, "database file (default: HMSKIT_DB or the shipped file)");
    add_common(tws);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*inv) {
            SexticForm f = parse_sextic_desc(curve_s);
            if (normalize && !prime) throw UsageError("--normalize needs --prime");
            if (!prime) {
                IgusaClebsch ic = igusa_clebsch(f);
                if (as_json)
                    print(ic_json(ic));
                else
                    std::cout << "I2 = " << ic.I2 << "\nI4 = " << ic.I4 << "\nI6 = " << ic.I6 << "\nI10 = " << ic.I10 << "\n";
                return kExitOk;
            }
            FiniteField F(check_prime(prime), 1);
            IgusaClebschFF ic = igusa_clebsch(reduce_sextic(f, F));
            if (normalize) ic = canonical_rep(ic);
            if (as_json) {
                json j = ic_json(ic);
                j["p"] = prime;
                j["normalized"] = normalize;
                print(j);
            } else {
                std::cout << "(" << ic.I2.a << " : " << ic.I4.a << " : " << ic.I6.a << " : " << ic.I10.a << ") over F_" << prime
                          << (normalize ? " [canonical]" : "") << "\n";
            }
            return kExitOk;
        }
        if (*k3) {
            if (from_ic.empty() == to_ic.empty()) throw UsageError("give exactly one of --from-ic or --to-ic");
            if (!from_ic.empty()) {
                auto v = parse_list(from_ic);
                K3Model m = k3_from_ic({v[0], v[1], v[2], v[3]});
                if (as_json)
                    print(k3_json(m));
                else
                    std::cout << "a = " << m.a << "\na' = " << m.a1 << "\nb'' = " << m.b2 << "\nb = " << m.b << "\nb' = " << m.b1 << "\n";
            } else {
                auto v = parse_list(to_ic);
                IgusaClebsch ic = ic_from_k3({v[0], v[1], v[2], v[3], v[4]});
                if (as_json)
                    print(ic_json(ic));
                else
                    std::cout << "I2 = " << ic.I2 << "\nI4 = " << ic.I4 << "\nI6 = " << ic.I6 << "\nI10 = " << ic.I10 << "\n";
            }
            return kExitOk;
        }
        if (*fib) {
            WeierstrassQt w;
            if (!model_file.empty()) {
                w = model_from_file(model_file);
            } else if (model_disc) {
                Database db = load_database(db_path);
                const auto &ms = db.at(model_disc).elliptic_models;
                if (model_index >= ms.size()) throw UsageError("no stored model with that index");
                w = ms[model_index].w;
            } else {
                throw UsageError("give --model or --disc");
            }
            FiberTable t = kodaira_classify(w);
            if (as_json) {
                json fs = json::array();
                for (const auto &f : t.fibers)
                    fs.push_back({{"place", f.at_infinity ? "infinity" : to_string(f.place)},
                                  {"type", f.type},
                                  {"v", {f.v_c4, f.v_c6, f.v_delta}},
                                  {"lattice", f.lattice}});
                print({{"fibers", fs}, {"chi", t.chi}, {"deg_delta", t.deg_delta_min}});
            } else {
                for (const auto &f : t.fibers)
                    std::cout << (f.at_infinity ? std::string("t = infinity") : to_string(f.place) + " = 0") << "  " << f.type
                              << "  v(c4,c6,D) = (" << f.v_c4 << "," << f.v_c6 << "," << f.v_delta << ")  "
                              << (f.lattice.empty() ? "-" : f.lattice) << "\n";
                std::cout << "chi = " << t.chi << "\n";
            }
            return kExitOk;
        }
        if (*hgt) {
            BigRational h = section_height(chi, po, parse_list(contr));
            if (as_json)
                print({{"height", h.get_str()}});
            else
                std::cout << h << "\n";
            return kExitOk;
        }
        if (*nsd) {
            std::vector<std::string> lats;
            for (const auto &l : split(ns_fibers, ','))
                if (!l.empty()) lats.push_back(l);
            BigRational d;
            if (!ns_gram.empty()) {
                LatticeGram g;
                for (const auto &row : split(ns_gram, ';')) g.push_back(parse_list(split(row, ',')));
                for (const auto &row : g)
                    if (row.size() != g.size()) throw UsageError("Gram matrix must be square");
                d = shioda_tate_disc(lats, g, torsion);
            } else if (!ns_det.empty()) {
                d = shioda_tate_disc_from_det(lats, parse_rational(ns_det), torsion);
            } else {
                throw UsageError("give --gram or --det");
            }
            d = abs(d);
            if (as_json)
                print({{"abs_disc", d.get_str()}});
            else
                std::cout << d << "\n";
            return kExitOk;
        }
        if (*cnt) {
            CurveFF c = CurveFF::from_sextic(parse_sextic_desc(curve_s), check_prime(prime));
            int64_t n = count_points(c, ext);
            if (as_json)
                print({{"p", prime}, {"ext", ext}, {"count", n}});
            else
                std::cout << n << "\n";
            return kExitOk;
        }
        if (*rmt) {
            if (!is_fundamental_discriminant(disc)) throw UsageError("--disc must be a fundamental discriminant");
            CurveFF c = CurveFF::from_sextic(parse_sextic_desc(curve_s), check_prime(prime));
            WeilData w = weil_data(c);
            bool irr = is_P_irreducible(w);
            RMVerdict v = rm_test(w, disc, irr);
            if (as_json)
                print({{"n1", w.n1}, {"n2", w.n2}, {"a", w.a}, {"b", w.b}, {"disc_Q", w.disc_q()},
                       {"P_irreducible", irr}, {"verdict", v.to_string()}, {"reason", v.reason}});
            else
                std::cout << "n1 = " << w.n1 << "\nn2 = " << w.n2 << "\na = " << w.a << "\nb = " << w.b << "\ndisc(Q) = " << w.disc_q()
                          << "\nP irreducible: " << (irr ? "yes" : "no") << "\nverdict: " << v.to_string() << "\n";
            return kExitOk;
        }
        if (*mkt) {
            uint32_t p = check_prime(prime);
            if (p > kMaxTablePrime) throw UsageError("table prime must be <= 13");
            InvariantTable t = build_invariant_table(p, {reverse, threads});
            write_table(t, out_path);
            if (as_json)
                print({{"p", p}, {"entries", t.size()}, {"candidates", candidate_count(p)}, {"out", out_path}});
            else
                std::cout << "p = " << p << ": " << t.size() << " classes from " << candidate_count(p) << " candidates -> " << out_path << "\n";
            return kExitOk;
        }
        if (*cfi) {
            InvariantTable t = read_table(table_file);
            auto v = parse_list(split(ic_s, ','));
            if (v.size() != 4) throw UsageError("--ic needs four values");
            FiniteField F(t.p, 1);
            IgusaClebschFF ic{F.reduce(v[0]), F.reduce(v[1]), F.reduce(v[2]), F.reduce(v[3])};
            auto c = curve_from_ic(ic, t);
            if (as_json) {
                print(c ? curve_json(*c) : json{{"p", t.p}, {"found", false}});
            } else if (c) {
                std::cout << c->to_string() << "\n";
            } else {
                std::cout << "no curve with these invariants in the table\n";
            }
            return c ? kExitOk : kExitFail;
        }
        if (*shw) {
            Database db = load_database(db_path);
            const HMSRecord &r = db.at(show_disc);
            if (as_json) {
                std::cout << serialize_record(r) << "\n";
                return kExitOk;
            }
            std::cout << "D = " << r.D << " (" << r.surface_kind << ")\n";
            std::cout << "z^2 = " << r.cover.to_string(r.coords[0], r.coords[1]) << "\n";
            for (const auto &c : r.branch_components) {
                std::cout << "  branch: " << c.factor.to_string(r.coords[0], r.coords[1]) << "  [" << c.meaning << "]";
                if (!c.parametrizations.empty()) std::cout << "  " << c.parametrizations.size() << " parametrization(s)";
                std::cout << "\n";
            }
            std::cout << "points (" << r.points.size() << "):\n";
            for (const auto &p : r.points) std::cout << "  (" << p.r << ", " << p.s << ")" << (p.disputed ? "  disputed" : "") << "\n";
            if (r.ic_map) std::cout << "invariant map: I2 = " << r.ic_map->I2.to_string(r.coords[0], r.coords[1]) << ", ...\n";
            for (const auto &m : r.elliptic_models) std::cout << "elliptic model: " << m.name << "\n";
            return kExitOk;
        }
        if (*ver) {
            Database db = load_database(db_path);
            VerifyOptions opt;
            if (!rm_primes_s.empty()) opt.rm_primes = parse_primes(rm_primes_s);
            opt.threads = threads;
            for (long D : verify_discs)
                if (std::find(kDiscriminants.begin(), kDiscriminants.end(), D) == kDiscriminants.end())
                    throw UsageError("no record for D = " + std::to_string(D));
            auto reps = verify_database(db, verify_discs, opt);
            bool ok = true;
            for (const auto &r : reps) ok = ok && r.ok();
            if (as_json) {
                std::cout << report_json(reps) << "\n";
            } else {
                size_t rows = 0, passed = 0, br = 0, brok = 0;
                for (const auto &r : reps) {
                    size_t bok = 0;
                    for (const auto &b : r.branch) bok += b.ok;
                    std::cout << "D = " << r.D << ": " << r.rows_passed() << "/" << r.rows.size() << " rows pass";
                    if (r.rows_quarantined()) std::cout << " (" << r.rows_quarantined() << " quarantined)";
                    std::cout << ", " << bok << "/" << r.branch.size() << " parametrizations" << (r.ok() ? "" : "  FAIL") << "\n";
                    rows += r.rows.size();
                    passed += r.rows_passed();
                    br += r.branch.size();
                    brok += bok;
                }
                std::cout << "total: " << passed << "/" << rows << " rows, " << brok << "/" << br << " parametrizations\n";
            }
            return ok ? kExitOk : kExitFail;
        }
        if (*tws) {
            Database db = load_database(db_path);
            const HMSRecord &rec = db.at(twist_disc);
            auto primes = parse_primes(primes_s);
            std::map<uint32_t, InvariantTable> tables;
            for (uint32_t p : primes) {
                if (p > kMaxTablePrime) throw UsageError("table primes must be <= 13");
                std::string path = tables_dir.empty() ? std::string() : table_path(tables_dir, p);
                if (!path.empty() && std::filesystem::exists(path)) {
                    tables.emplace(p, read_table(path));
                    continue;
                }
                InvariantTable t = build_invariant_table(p, {false, threads});
                if (!path.empty()) {
                    std::filesystem::create_directories(tables_dir);
                    write_table(t, path);
                }
                tables.emplace(p, std::move(t));
            }
            TwistOptions opt;
            opt.include_extra_II = !no_extra;
            TwistResult res = twist_search(rec, primes, tables, opt);
            if (as_json) {
                json sv = json::array();
                for (const auto &c : res.survivors) sv.push_back({{"C", c.C}, {"subset", c.subset}});
                print({{"D", twist_disc}, {"survivors", sv}, {"candidates", res.candidates},
                       {"certified_points", res.certified_points}, {"incomplete_separation", res.incomplete_separation}});
            } else {
                std::cout << res.candidates << " candidates, " << res.certified_points << " certified points\n";
                for (const auto &c : res.survivors) {
                    std::cout << "survivor: C = " << c.C << ", factors {";
                    for (size_t i = 0; i < c.subset.size(); ++i) std::cout << (i ? ", " : "") << c.subset[i];
                    std::cout << "}\n";
                }
                if (res.incomplete_separation) std::cout << "incomplete separation: more primes needed\n";
            }
            return res.incomplete_separation ? kExitFail : kExitOk;
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
