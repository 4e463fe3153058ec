// quadlie: construct the small free nilpotent algebras, solve their
// invariant form spaces, quadratize forms, and re-verify the
// classification identities.  All arithmetic is exact; identical
// arguments and seeds produce byte-identical reports.

#include "quadlie/autgroup.hpp"
#include "quadlie/catalog.hpp"
#include "quadlie/invforms.hpp"
#include "quadlie/replay.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace quadlie;

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

struct Options {
    int d = 0, t = 0;
    std::string family;
    std::string params_path;
    std::string tag = "all";
    std::uint64_t seed = 0;
    bool json = false;
    std::string field = "R";
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QUADLIE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("QUADLIE_SEED", "not an unsigned integer");
        }
    }
    return 0;
}

Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    throw std::invalid_argument("expected a rational as \"p/q\" string or integer");
}

// A form is given either by --family plus optional parameters or by a
// full {"algebra":{"d","t"},"matrix"} file.
struct FormSpec {
    int d, t;
    QMatrix matrix;
    std::string describe; // for report headers
};

FormSpec resolve_form(const Options& opt) {
    FormSpec spec;
    if (!opt.family.empty()) {
        FamilyId id = family_from_string(opt.family);
        FamilyShape sh = family_shape(id);
        FamilyParams p;
        if (!opt.params_path.empty()) {
            json j = load_json_file(opt.params_path);
            if (j.contains("A1")) p.A1 = mat_from_json(j.at("A1"));
            if (j.contains("gamma")) p.gamma = rat_from_json(j.at("gamma"));
            if (j.contains("A2")) p.A2 = mat_from_json(j.at("A2"));
        }
        spec.d = sh.d;
        spec.t = sh.t;
        spec.matrix = family_form(id, p);
        spec.describe = "family " + family_to_string(id);
    } else if (!opt.params_path.empty()) {
        json j = load_json_file(opt.params_path);
        spec.d = j.at("algebra").at("d").get<int>();
        spec.t = j.at("algebra").at("t").get<int>();
        spec.matrix = mat_from_json(j.at("matrix"));
        spec.describe = "form from " + opt.params_path;
    } else {
        throw CLI::RequiredError("--family or --params");
    }
    if ((opt.d != 0 && opt.d != spec.d) || (opt.t != 0 && opt.t != spec.t))
        throw CLI::ValidationError("-d/-t", "conflict with the algebra the form lives on");
    return spec;
}

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

std::string form_entries_line(const QMatrix& m) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i; j < m.cols(); ++j)
            if (m.at(i, j) != 0) {
                if (!out.empty()) out += "  ";
                out += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                       ")=" + format_rational(m.at(i, j));
            }
    return out.empty() ? "0" : out;
}

std::string product_line(const StructureRow& row, const std::vector<std::string>& labels) {
    std::string rhs;
    if (row.c == 1)
        rhs = labels[row.k - 1];
    else if (row.c == -1)
        rhs = "-" + labels[row.k - 1];
    else
        rhs = format_rational(row.c) + "*" + labels[row.k - 1];
    return "[" + labels[row.i - 1] + "," + labels[row.j - 1] + "] = " + rhs;
}

ojson orbit_to_json(const OrbitRecord& r) {
    ojson j;
    j["rank"] = r.rank;
    j["kernel_dim"] = r.kernel_dim;
    j["pair_block_ranks"] = ojson::array();
    for (const auto& p : r.pair_block_ranks) j["pair_block_ranks"].push_back({p[0], p[1], p[2]});
    j["kernel_grade_profile"] = r.kernel_grade_profile;
    j["s2_block_rank"] = r.s2_block_rank;
    return j;
}

std::string orbit_line(const OrbitRecord& r) {
    std::string out = "rank " + std::to_string(r.rank) + ", kernel dim " +
                      std::to_string(r.kernel_dim) + ", pair ranks";
    for (const auto& p : r.pair_block_ranks)
        out += " (" + std::to_string(p[0]) + "," + std::to_string(p[1]) +
               ")=" + std::to_string(p[2]);
    out += ", kernel grade profile";
    for (int k : r.kernel_grade_profile) out += " " + std::to_string(k);
    out += ", S2 block rank " + std::to_string(r.s2_block_rank);
    return out;
}

int cmd_basis(const Options& opt) {
    FreeNilpotent alg(opt.d, opt.t);
    if (opt.json) {
        ojson j;
        j["command"] = "basis";
        j["algebra"] = algebra_to_json(alg);
        emit(j);
        return 0;
    }
    std::cout << "n_{" << opt.d << "," << opt.t << "}: dim " << alg.dim() << "\n";
    for (int i = 0; i < alg.dim(); ++i)
        std::cout << "  " << i + 1 << "\tgrade " << alg.grade(i) << "\t" << alg.word_name(i)
                  << "\n";
    return 0;
}

int cmd_dims(const Options& opt) {
    FreeNilpotent alg(opt.d, opt.t);
    std::vector<int> dims;
    for (int k = 1; k <= opt.t; ++k) dims.push_back(alg.grade_end(k) - alg.grade_begin(k));
    if (opt.json) {
        ojson j;
        j["command"] = "dims";
        j["d"] = opt.d;
        j["t"] = opt.t;
        j["graded_dims"] = dims;
        j["total"] = alg.dim();
        emit(j);
        return 0;
    }
    std::cout << "n_{" << opt.d << "," << opt.t << "}: graded dims";
    for (int k : dims) std::cout << " " << k;
    std::cout << ", total " << alg.dim() << "\n";
    return 0;
}

int cmd_invforms(const Options& opt) {
    FreeNilpotent alg(opt.d, opt.t);
    auto basis = invariant_form_space(alg);
    if (opt.json) {
        ojson j;
        j["command"] = "invforms";
        j["d"] = opt.d;
        j["t"] = opt.t;
        j["dimension"] = basis.size();
        j["basis"] = ojson::array();
        for (const auto& b : basis) j["basis"].push_back(mat_to_json(b));
        emit(j);
        return 0;
    }
    std::cout << "invariant symmetric forms on n_{" << opt.d << "," << opt.t << "}: dimension "
              << basis.size() << "\n";
    for (std::size_t i = 0; i < basis.size(); ++i)
        std::cout << "  b" << i + 1 << ": " << form_entries_line(basis[i]) << "\n";
    return 0;
}

// Shared by quadratize and verify: invariance, membership, and when
// both hold the quotient with its integrity checks.
struct FormAnalysis {
    FormSpec spec;
    bool invariant = false;
    MembershipResult membership;
    std::optional<QuadraticAlgebra> quotient;
    PropertyReport quad_report, orth_report;
    TypeNil tn{};

    bool all_pass() const {
        return invariant && membership.member && quotient && quad_report.all_pass() &&
               orth_report.all_pass();
    }
};

FormAnalysis analyze_form(const Options& opt) {
    FormAnalysis fa;
    fa.spec = resolve_form(opt);
    FreeNilpotent alg(fa.spec.d, fa.spec.t);
    fa.invariant = is_invariant(alg, fa.spec.matrix);
    if (!fa.invariant) return fa;
    fa.membership = sym0_membership(alg, fa.spec.matrix);
    if (!fa.membership.member) return fa;
    fa.quotient = quotient_quadratic(alg, fa.spec.matrix);
    fa.quad_report = verify_quadratic(*fa.quotient);
    fa.orth_report = orthogonality_check(*fa.quotient);
    fa.tn = type_and_nilindex(*fa.quotient);
    return fa;
}

ojson property_report_json(const PropertyReport& r) {
    ojson j = ojson::array();
    for (const auto& it : r.items) {
        ojson e;
        e["name"] = it.name;
        e["pass"] = it.pass;
        e["detail"] = it.detail;
        j.push_back(std::move(e));
    }
    return j;
}

ojson membership_json(const MembershipResult& m) {
    ojson j;
    j["member"] = m.member;
    j["kernel_in_derived"] = m.kernel_in_derived;
    j["top_not_contained"] = m.top_not_contained;
    j["reason"] = m.reason;
    j["witness"] = vec_to_json(m.witness);
    return j;
}

int report_form_analysis(const FormAnalysis& fa, const Options& opt, const char* command) {
    if (opt.json) {
        ojson j;
        j["command"] = command;
        j["source"] = {{"d", fa.spec.d}, {"t", fa.spec.t}, {"describe", fa.spec.describe}};
        j["source"]["matrix"] = mat_to_json(fa.spec.matrix);
        j["invariant"] = fa.invariant;
        if (fa.invariant) j["membership"] = membership_json(fa.membership);
        if (fa.quotient) {
            j["quotient"] = quadratic_to_json(*fa.quotient);
            j["verify_quadratic"] = property_report_json(fa.quad_report);
            j["orthogonality"] = property_report_json(fa.orth_report);
            j["type"] = fa.tn.type;
            j["nilindex"] = fa.tn.nilindex;
        }
        j["pass"] = fa.all_pass();
        emit(j);
        return fa.all_pass() ? 0 : kExitVerifyFail;
    }
    std::cout << command << " " << fa.spec.describe << " on n_{" << fa.spec.d << ","
              << fa.spec.t << "}\n";
    if (!fa.invariant) {
        std::cout << "  invariant: NO\n";
        return kExitVerifyFail;
    }
    std::cout << "  invariant: yes\n";
    std::cout << "  Sym0 membership: " << (fa.membership.member ? "yes" : "NO") << " ("
              << fa.membership.reason << ")\n";
    if (!fa.quotient) return kExitVerifyFail;
    const auto& q = *fa.quotient;
    std::cout << "  quotient: dim " << q.dim << ", type " << fa.tn.type << ", nilindex "
              << fa.tn.nilindex << "\n";
    for (const auto& row : q.products())
        std::cout << "    " << product_line(row, q.labels) << "\n";
    std::cout << "  form: " << form_entries_line(q.form) << "\n";
    for (const auto* rep : {&fa.quad_report, &fa.orth_report})
        for (const auto& it : rep->items)
            if (!it.pass) std::cout << "  FAIL " << it.name << ": " << it.detail << "\n";
    std::cout << "  verify_quadratic: " << (fa.quad_report.all_pass() ? "pass" : "FAIL")
              << ", orthogonality: " << (fa.orth_report.all_pass() ? "pass" : "FAIL") << "\n";
    return fa.all_pass() ? 0 : kExitVerifyFail;
}

int cmd_replay(const Options& opt) {
    std::vector<ReplayReport> reports;
    if (opt.tag == "all")
        reports = replay_all(opt.seed);
    else
        reports.push_back(replay_theorem(opt.tag, opt.seed));
    bool all = true;
    for (const auto& r : reports) all = all && r.all_pass();
    if (opt.json) {
        ojson j;
        j["command"] = "replay";
        j["tag"] = opt.tag;
        j["seed"] = opt.seed;
        j["samples_per_identity"] = kReplaySamples;
        j["reports"] = ojson::array();
        for (const auto& r : reports) j["reports"].push_back(replay_to_json(r));
        j["all_pass"] = all;
        emit(j);
        return all ? 0 : kExitVerifyFail;
    }
    int total = 0, passed = 0;
    for (const auto& r : reports) {
        std::cout << "replay " << r.tag << " (seed " << opt.seed << ")\n";
        for (const auto& it : r.items) {
            std::cout << "  [" << (it.pass ? "pass" : "FAIL") << "] " << it.name << ": "
                      << it.witness << "\n";
            ++total;
            passed += it.pass;
        }
    }
    std::cout << passed << "/" << total << " identities pass\n";
    return all ? 0 : kExitVerifyFail;
}

int cmd_catalog(const Options& opt) {
    std::string note;
    bool with_62 = true, with_twins = true;
    if (opt.field == "C") {
        with_62 = false;
        with_twins = false;
        note = "algebraically closed field: ranks classify, sign twins coincide, "
               "the additional real forms merge into the base list";
    } else if (opt.field == "R") {
        note = "real field: rank and signature classify; -neg twins are distinct "
               "isometry classes";
    } else if (opt.field == "Q") {
        note = "rational field: the real list below is still pairwise "
               "non-isomorphic, but gamma parameters split further into square "
               "classes; no completeness claim is made";
    } else {
        throw CLI::ValidationError("--field", "expected Q, R or C");
    }

    std::vector<std::string> labels;
    for (const auto& e : catalog()) {
        if (!with_62 && e.label.compare(0, 6, "Thm6.2") == 0) continue;
        labels.push_back(e.label);
        if (with_twins && e.real_sign_twin) labels.push_back(e.label + "-neg");
    }

    if (opt.json) {
        ojson j;
        j["command"] = "catalog";
        j["field"] = opt.field;
        j["note"] = note;
        j["entries"] = ojson::array();
        for (const auto& label : labels) {
            CatalogEntry e = classified_algebra(label);
            TypeNil tn = type_and_nilindex(e.algebra());
            ojson ej;
            ej["label"] = label;
            ej["dim"] = e.dim;
            ej["type"] = tn.type;
            ej["nilindex"] = tn.nilindex;
            ej["products"] = ojson::array();
            for (const auto& row : e.products)
                ej["products"].push_back({row.i, row.j, row.k, format_rational(row.c)});
            ej["form"] = mat_to_json(e.form);
            if (e.from_line)
                ej["source"] = {{"kind", "abelian_line"}};
            else {
                ej["source"] = {{"kind", "quotient"}, {"d", e.src_d}, {"t", e.src_t}};
                ej["source"]["form"] = mat_to_json(e.source_form);
            }
            j["entries"].push_back(std::move(ej));
        }
        emit(j);
        return 0;
    }
    std::cout << "catalog over " << opt.field << " (" << labels.size() << " entries)\n"
              << "  " << note << "\n";
    for (const auto& label : labels) {
        CatalogEntry e = classified_algebra(label);
        TypeNil tn = type_and_nilindex(e.algebra());
        std::cout << "  " << label << ": dim " << e.dim << ", type " << tn.type
                  << ", nilindex " << tn.nilindex;
        if (e.from_line)
            std::cout << ", abelian line";
        else
            std::cout << ", quotient of n_{" << e.src_d << "," << e.src_t << "}";
        std::cout << "\n";
        auto q = e.algebra();
        for (const auto& row : e.products)
            std::cout << "      " << product_line(row, q.labels) << "\n";
        std::cout << "      form: " << form_entries_line(e.form) << "\n";
    }
    return 0;
}

int cmd_act(const Options& opt) {
    FormSpec spec = resolve_form(opt);
    FreeNilpotent alg(spec.d, spec.t);
    std::mt19937_64 rng(opt.seed);
    Endo phi = random_automorphism(alg, rng);
    QMatrix acted = act_on_form(spec.matrix, phi);
    OrbitRecord before = orbit_invariants(alg, spec.matrix);
    OrbitRecord after = orbit_invariants(alg, acted);
    bool equal = before == after;
    if (opt.json) {
        ojson j;
        j["command"] = "act";
        j["seed"] = opt.seed;
        j["source"] = {{"d", spec.d}, {"t", spec.t}, {"describe", spec.describe}};
        j["source"]["matrix"] = mat_to_json(spec.matrix);
        j["automorphism"] = mat_to_json(phi.matrix);
        j["acted_form"] = mat_to_json(acted);
        j["orbit_record"] = orbit_to_json(before);
        j["acted_orbit_record"] = orbit_to_json(after);
        j["records_equal"] = equal;
        emit(j);
        return equal ? 0 : kExitVerifyFail;
    }
    std::cout << "act on " << spec.describe << " over n_{" << spec.d << "," << spec.t
              << "}, seed " << opt.seed << "\n";
    std::cout << "  orbit record:       " << orbit_line(before) << "\n";
    std::cout << "  after a random automorphism: " << orbit_line(after) << "\n";
    std::cout << "  records equal: " << (equal ? "yes" : "NO") << "\n";
    return equal ? 0 : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"exact toolkit for quadratic nilpotent Lie algebras"};
    app.require_subcommand(1);

    auto add_dt = [&](CLI::App* c, bool required) {
        auto* od = c->add_option("-d", opt.d, "number of generators");
        auto* ot = c->add_option("-t", opt.t, "nilpotency class");
        if (required) {
            od->required();
            ot->required();
        }
    };
    auto add_form_opts = [&](CLI::App* c) {
        c->add_option("--family", opt.family,
                      "family id (B21..B25, B31..B33, PHI23, PHI32)");
        c->add_option("--params", opt.params_path,
                      "JSON file: family parameters {\"A1\",\"gamma\",\"A2\"} or a "
                      "full form {\"algebra\":{\"d\",\"t\"},\"matrix\"}");
        add_dt(c, false);
    };
    auto add_json = [&](CLI::App* c) {
        c->add_flag("--json", opt.json, "machine-readable report");
    };
    auto add_seed = [&](CLI::App* c) {
        c->add_option("--seed", opt.seed, "RNG seed (falls back to QUADLIE_SEED, then 0)");
    };

    auto* basis = app.add_subcommand("basis", "Hall basis of n_{d,t}");
    add_dt(basis, true);
    add_json(basis);
    auto* dims = app.add_subcommand("dims", "graded dimensions of n_{d,t}");
    add_dt(dims, true);
    add_json(dims);
    auto* invforms = app.add_subcommand("invforms", "invariant symmetric form space");
    add_dt(invforms, true);
    add_json(invforms);
    auto* quadratize =
        app.add_subcommand("quadratize", "quotient a Sym0 form to its quadratic algebra");
    add_form_opts(quadratize);
    add_json(quadratize);
    auto* verify = app.add_subcommand("verify", "verify a form and its quotient end to end");
    add_form_opts(verify);
    add_json(verify);
    auto* replay =
        app.add_subcommand("replay", "re-verify the classification identities by tag");
    replay->add_option("--tag", opt.tag, "one of the documented tags, or \"all\"");
    add_seed(replay);
    add_json(replay);
    auto* catalog_cmd = app.add_subcommand("catalog", "list the classified algebras");
    catalog_cmd->add_option("--field", opt.field, "field mode: Q, R or C (default R)");
    add_json(catalog_cmd);
    auto* act = app.add_subcommand("act", "apply a seeded random automorphism to a form");
    add_form_opts(act);
    add_seed(act);
    add_json(act);

    std::string tag_help = "replay tags:";
    for (const auto& t : quadlie::replay_tags()) tag_help += " " + t;
    replay->footer(tag_help);

    try {
        opt.seed = default_seed();
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*basis) return cmd_basis(opt);
        if (*dims) return cmd_dims(opt);
        if (*invforms) return cmd_invforms(opt);
        if (*quadratize) return report_form_analysis(analyze_form(opt), opt, "quadratize");
        if (*verify) return report_form_analysis(analyze_form(opt), opt, "verify");
        if (*replay) return cmd_replay(opt);
        if (*catalog_cmd) return cmd_catalog(opt);
        if (*act) return cmd_act(opt);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
