#include "k3fib/report.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <functional>
#include <iostream>

using namespace k3fib;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IntLattice lattice_arg(const std::string& text) {
    if (!text.empty() && text.front() == '{') return parse_lattice_spec(lattice_spec_from_json(Json::parse(text)));
    return parse_lattice_spec(text);
}

// a path as given, or a shipped model name
std::string model_path(const std::string& p) {
    if (std::filesystem::exists(p)) return p;
    std::filesystem::path shipped = std::filesystem::path(K3FIB_DATA_DIR) / "data" / "models" / p;
    if (std::filesystem::exists(shipped)) return shipped.string();
    throw Error("model file not found: " + p);
}

std::vector<Int> torsion_arg(const std::string& text) {
    std::vector<Int> out;
    if (text.empty() || text == "0") return out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        long v = std::stol(part);
        if (v < 1) throw UsageError("torsion factors must be positive: " + text);
        if (v > 1) out.push_back(Int(v));
    }
    return out;
}

void print(const Report& r, const std::string& format) {
    if (format == "md") {
        if (r.command.rfind("kns run", 0) == 0) {
            std::cout << kns_markdown(r);
            return;
        }
        std::cout << "```json\n" << canonical_dump(r.to_json()) << "```\n";
        return;
    }
    std::cout << canonical_dump(r.to_json());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elliptic fibrations on K3 surfaces with a non-symplectic automorphism of order three"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "md"}));

    std::function<Report()> run;

    // lattice
    CLI::App* lattice = app.add_subcommand("lattice", "lattice invariants");
    lattice->require_subcommand(1);
    std::string lat_spec;
    CLI::App* disc = lattice->add_subcommand("disc", "discriminant group and form");
    disc->add_option("spec", lat_spec, "lattice spec such as U+U(3)+A2^3, or its JSON form")->required();
    disc->callback([&] {
        run = [&] {
            Report r;
            r.command = "lattice disc " + lat_spec;
            r.payload = disc_payload(lattice_arg(lat_spec));
            return r;
        };
    });
    std::string basis_text;
    CLI::App* comp = lattice->add_subcommand("complement", "orthogonal complement of a sublattice");
    comp->add_option("spec", lat_spec, "ambient lattice spec")->required();
    comp->add_option("--basis", basis_text, "JSON rows spanning the sublattice, ambient coordinates")->required();
    comp->callback([&] {
        run = [&] {
            Report r;
            r.command = "lattice complement " + lat_spec + " --basis " + basis_text;
            IntLattice l = lattice_arg(lat_spec);
            IMat b;
            for (const auto& row : Json::parse(basis_text)) {
                IVec v;
                for (const auto& x : row) v.push_back(Int(x.get<long>()));
                if (v.size() != l.rank()) throw Error("basis row of length " + std::to_string(v.size()) + " in a lattice of rank " + std::to_string(l.rank()));
                b.push_back(v);
            }
            Complement c = orthogonal_complement(l, b);
            Closure cl = primitive_closure(b);
            Json q = Json::array();
            for (const auto& f : cl.quotient) q.push_back(json_int(f));
            r.payload = Json{{"complement", lattice_payload(c.lattice)}, {"basis", json_mat(c.basis)}, {"saturation_quotient", q}};
            return r;
        };
    });

    // niemeier
    CLI::App* niemeier = app.add_subcommand("niemeier", "Niemeier lattices");
    niemeier->require_subcommand(1);
    CLI::App* nlist = niemeier->add_subcommand("list", "supported root types");
    nlist->callback([&] {
        run = [&] {
            Report r;
            r.command = "niemeier list";
            r.payload = Json{{"supported", supported_niemeier()}, {"with_e_component", e_type_niemeier()}};
            return r;
        };
    });
    std::string nroot;
    CLI::App* nverify = niemeier->add_subcommand("verify", "even, unimodular and rootless checks");
    nverify->add_option("roottype", nroot, "root type such as E6+D7+A11")->required();
    nverify->callback([&] {
        run = [&] {
            Report r;
            r.command = "niemeier verify " + nroot;
            NiemeierLattice n = niemeier_by_root_type(nroot);
            NiemeierReport v = verify(n);
            r.payload = niemeier_payload(n, v);
            if (!v.ok()) r.status = Status::Error;
            return r;
        };
    });

    // embed
    std::string source, target;
    bool show_complement = false, tabulated = false;
    CLI::App* embed = app.add_subcommand("embed", "primitive embeddings of sums of E8, E6 and A2");
    embed->add_option("--source", source, "source type such as A2^2");
    embed->add_option("--target", target, "an ADE component such as D10, or a Niemeier root type");
    embed->add_flag("--show-complement", show_complement, "include the orthogonal complement");
    embed->add_flag("--tabulated", tabulated, "audit every tabulated single-component complement");
    embed->callback([&] {
        if (tabulated) {
            run = [] { return complement_table_report(); };
            return;
        }
        if (source.empty() || target.empty()) throw UsageError("embed needs --source and --target, or --tabulated");
        run = [&] {
            Report r;
            r.command = "embed --source " + source + " --target " + target + (show_complement ? " --show-complement" : "");
            SummandCounts s = counts_of(parse_ade(source));
            AdeType t = parse_ade(target);
            if (t.comps.size() == 1 && t.rank_one.empty())
                r.payload = component_embedding_payload(s, t.comps[0], show_complement);
            else
                r.payload = niemeier_embedding_payload(s, niemeier_by_root_type(t), show_complement);
            return r;
        };
    });

    // kns
    CLI::App* kns = app.add_subcommand("kns", "Kneser-Nishiyama sweep");
    kns->require_subcommand(1);
    int surface_k = 0;
    CLI::App* krun = kns->add_subcommand("run", "fibration classes of one surface");
    krun->add_option("--surface", surface_k, "surface index")->required()->check(CLI::Range(1, 10));
    krun->callback([&] { run = [&] { return kns_report(surface_k); }; });

    // classify
    std::string ade_text, torsion_text;
    int mw_rank = 0;
    CLI::App* cls = app.add_subcommand("classify", "type 1 / type 2 classification of an ADE type");
    cls->add_option("--ade", ade_text, "ADE type such as E6^3")->required();
    cls->add_option("--mw-rank", mw_rank, "Mordell-Weil rank")->check(CLI::NonNegativeNumber);
    cls->add_option("--mw-torsion", torsion_text, "torsion invariant factors, comma separated");
    cls->callback([&] {
        std::vector<Int> tors = torsion_arg(torsion_text);
        run = [&, tors] {
            Report r;
            r.command = "classify --ade " + ade_text + " --mw-rank " + std::to_string(mw_rank) +
                        (torsion_text.empty() ? "" : " --mw-torsion " + torsion_text);
            r.payload = classification_payload(classify(parse_ade(ade_text), mw_rank, tors));
            return r;
        };
    });

    // tate
    std::string model_file, expect;
    CLI::App* tate = app.add_subcommand("tate", "Kodaira fibres of a Weierstrass model");
    tate->add_option("--model", model_file, "model JSON; shipped names such as e6.json also resolve")->required();
    tate->add_option("--expect", expect, "expected ADE type; a mismatch or Euler number other than 24 is a finding");
    tate->callback([&] {
        run = [&] {
            Report r;
            r.command = "tate --model " + model_file + (expect.empty() ? "" : " --expect " + expect);
            WeierstrassModel m = load_model(model_path(model_file));
            ModelAnalysis a = ade_of_model(m);
            r.payload = model_payload(a, m.var);
            if (!expect.empty()) {
                std::string want = parse_ade(expect).str();
                if (a.ade.str() != want) r.note("ADE type " + a.ade.str() + " differs from the expected " + want);
                if (a.euler != 24) r.note("Euler number " + std::to_string(a.euler) + ", not 24: not a K3 surface as written");
            }
            return r;
        };
    });

    // x3
    CLI::App* x3 = app.add_subcommand("x3", "divisor checks on the surface with the I18 cycle");
    x3->require_subcommand(1);
    x3->add_subcommand("verify", "fibration pairs, K-intersections and the sigma5 check")->callback([&] {
        run = [] { return x3_report(); };
    });
    x3->add_subcommand("config", "shipped intersection data")->callback([&] {
        run = [] {
            Report r;
            r.command = "x3 config";
            r.payload = curve_config_payload(x3_config());
            return r;
        };
    });

    // diff
    std::string expected_file, actual_file;
    CLI::App* diff = app.add_subcommand("diff", "compare a report with a golden file; exit 1 on differences");
    diff->add_option("expected", expected_file, "golden file")->required();
    diff->add_option("actual", actual_file, "report file")->required();
    diff->callback([&] {
        run = [&] {
            Report r;
            r.command = "diff";
            std::vector<std::string> d = golden_diff(read_json_file(expected_file), read_json_file(actual_file));
            r.payload = Json{{"equal", d.empty()}, {"differences", d}};
            if (!d.empty()) r.status = Status::Finding;
            return r;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    Report r;
    try {
        r = run();
    } catch (const std::exception& e) {
        r.command.clear();
        for (int i = 1; i < argc; ++i) r.command += (i > 1 ? " " : "") + std::string(argv[i]);
        r.status = Status::Error;
        r.payload = Json{{"error", e.what()}};
        r.diagnostics.push_back(e.what());
    }
    print(r, format);
    if (r.status == Status::Error) return 1;
    if (r.command == "diff" && !r.payload.at("equal").get<bool>()) return 1;
    return 0;
}
