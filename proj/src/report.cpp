#include "k3fib/report.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace k3fib {

Json json_int(const Int& z) {
    if (fits_int64(z)) return Json(static_cast<std::int64_t>(z));
    return Json(z.str());
}

Json json_rat(const Rat& r) { return Json(to_string(r)); }

Json json_mat(const IMat& m) {
    Json j = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(json_int(x));
        j.push_back(r);
    }
    return j;
}

std::string status_str(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::Error: return "error";
        case Status::Finding: return "finding";
    }
    return "error";
}

void Report::note(const std::string& finding) {
    diagnostics.push_back(finding);
    if (status == Status::Ok) status = Status::Finding;
}

Json Report::to_json() const {
    return Json{{"command", command}, {"status", status_str(status)}, {"payload", payload}, {"diagnostics", diagnostics}};
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

std::string lattice_spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("sum") || !j.at("sum").is_array()) throw Error("lattice JSON needs a \"sum\" array");
    std::string out;
    for (const auto& atom : j.at("sum")) {
        std::string sym = atom.at("sym").get<std::string>();
        std::string s = sym;
        if (sym != "U") s += std::to_string(atom.at("n").get<int>());
        if (atom.contains("scale") && atom.at("scale").get<long>() != 1)
            s += "(" + std::to_string(atom.at("scale").get<long>()) + ")";
        if (atom.contains("rep") && atom.at("rep").get<int>() != 1) s += "^" + std::to_string(atom.at("rep").get<int>());
        out += (out.empty() ? "" : "+") + s;
    }
    if (out.empty()) throw Error("empty lattice sum");
    return out;
}

Json disc_payload(const IntLattice& l) {
    DiscriminantLattice d = discriminant_lattice(l);
    DisplayGenerators g = display_generators(d);
    Json group = Json::array(), q = Json::array();
    for (const auto& o : g.orders) group.push_back(json_int(o));
    for (const auto& v : g.q) q.push_back(json_rat(v.value));
    return Json{{"rank", l.rank()}, {"det", json_int(l.det())}, {"group", group}, {"q", q}};
}

Json lattice_payload(const IntLattice& l) {
    Json j{{"rank", l.rank()}, {"det", json_int(l.det())}, {"gram", json_mat(l.gram)}};
    if (l.rank() > 0 && is_negative_definite(l.gram)) j["roottype"] = root_system(l.gram).type.str();
    return j;
}

Json niemeier_payload(const NiemeierLattice& n, const NiemeierReport& r) {
    return Json{{"roottype", n.name},
                {"order", n.order()},
                {"checks", {{"even", r.even}, {"unimodular", r.unimodular}, {"rootless", r.rootless}}},
                {"notes", r.notes}};
}

namespace {

Json complement_json(const ComplementInfo& c) {
    return Json{{"rank", c.lattice.rank()},
                {"det", json_int(c.lattice.det())},
                {"roottype", c.root_type.str()},
                {"minus6", c.minus6},
                {"gram", json_mat(c.lattice.gram)}};
}

std::string torsion_label(const std::vector<int>& t) {
    if (t.empty()) return "0";
    std::string s;
    for (int d : t) s += (s.empty() ? "Z/" : "+Z/") + std::to_string(d);
    return s;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
    return s;
}

}  // namespace

Json component_embedding_payload(const SummandCounts& source, const AdeComponent& target, bool show_complement) {
    IMat img = canonical_embedding(source, target);
    Json j{{"distribution", source.str() + "<" + target.str()}, {"image", json_mat(img)}};
    if (show_complement) j["complement"] = complement_json(component_complement(target, img));
    return j;
}

Json niemeier_embedding_payload(const SummandCounts& source, const NiemeierLattice& n, bool show_complement) {
    Json rows = Json::array();
    for (const auto& e : enumerate_embeddings(source, n)) {
        Json r{{"distribution", e.distribution}, {"minus6", e.minus6}};
        if (show_complement) {
            r["complement"] = Json{{"rank", e.m.lattice.rank()},
                                   {"det", json_int(e.m.lattice.det())},
                                   {"roottype", e.m.root_type.str()},
                                   {"gram", json_mat(e.m.lattice.gram)}};
        }
        rows.push_back(r);
    }
    return Json{{"source", source.str()}, {"target", n.name}, {"embeddings", rows}};
}

Json complement_audit_payload(const ComplementAudit& a) {
    Json j{{"row_id", a.row.id()},
           {"rank", a.computed.lattice.rank()},
           {"det", json_int(a.det)},
           {"roottype", a.computed.root_type.str()},
           {"minus6", a.computed.minus6},
           {"index", json_int(a.index)},
           {"index_identity", a.identity},
           {"matches_table", a.match()},
           {"gram", json_mat(a.computed.lattice.gram)}};
    Json disc = Json::array();
    for (const auto& f : nontrivial_factors(discriminant_lattice(a.computed.lattice).invariant_factors))
        disc.push_back(json_int(f));
    j["discriminant"] = disc;
    if (a.printed_det) {
        j["tabulated_gram"] = Json{{"gram", json_mat(*a.row.gram)},
                                   {"det", json_int(*a.printed_det)},
                                   {"index_identity", a.printed_identity},
                                   {"isometric", a.printed_isometric}};
    }
    return j;
}

Json fibration_row(const FibrationClass& f) {
    Json tors = Json::array();
    for (const auto& d : f.mw_torsion) tors.push_back(json_int(d));
    return Json{{"row_id", f.row_id},
                {"niemeier", f.niemeier},
                {"distribution", f.distribution},
                {"M", {{"rank", f.m_rank}, {"det", json_int(f.m_det)}, {"roottype", f.m_shape()}}},
                {"ade", f.ade.str()},
                {"mw", {{"rank", f.mw_rank}, {"torsion", tors}}}};
}

Json classification_payload(const Classification& c) {
    Json t1 = nullptr, t2 = nullptr;
    if (c.type1) {
        t1 = Json::array();
        for (const auto& f : *c.type1) t1.push_back(f.str());
    }
    if (c.type2) {
        Json orbits = Json::array();
        for (const auto& f : c.type2->orbits) orbits.push_back(f.str());
        t2 = Json{{"fa", c.type2->fa.str()},
                  {"fb", c.type2->fb.str()},
                  {"fa_down", c.type2->fa_down.str()},
                  {"fb_down", c.type2->fb_down.str()},
                  {"orbits", orbits},
                  {"rational_rank", c.type2->rational_rank}};
    }
    return Json{{"verdict", verdict_str(c.verdict)},
                {"witnesses", {{"type1_assignment", t1}, {"type2_split", t2}}},
                {"reasons", c.reasons}};
}

Json model_payload(const ModelAnalysis& m, char var) {
    auto val = [](int v) { return v < 0 ? Json(nullptr) : Json(v); };
    Json places = Json::array();
    for (const auto& p : m.places) {
        places.push_back(Json{{"place", p.place_str(var)},
                              {"degree", p.degree},
                              {"v4", val(p.minimal.c4)},
                              {"v6", val(p.minimal.c6)},
                              {"vD", p.minimal.disc},
                              {"raw", {{"v4", val(p.raw.c4)}, {"v6", val(p.raw.c6)}, {"vD", p.raw.disc}}},
                              {"kodaira", p.fibre.str()}});
    }
    return Json{{"places", places}, {"ade", m.ade.str()}, {"euler", m.euler}};
}

Json curve_config_payload(const CurveConfig& cfg) {
    Json curves = Json::object();
    for (const auto& [n, s] : cfg.self) curves[n] = s;
    Json meets = Json::array();
    for (const auto& [p, v] : cfg.meets)
        if (v != 0) meets.push_back(Json{p.first, p.second, v});
    Json blowups = Json::array();
    for (const auto& b : cfg.blowups) blowups.push_back(Json{{"name", b.name}, {"curves", b.curves}});
    Json fibres = Json::array();
    for (const auto& f : cfg.fibre_classes) fibres.push_back(divisor_str(f));
    return Json{{"curves", curves},
                {"meets", meets},
                {"fixed", std::vector<std::string>(cfg.fixed.begin(), cfg.fixed.end())},
                {"blowups", blowups},
                {"fibre_classes", fibres}};
}

Report kns_report(int k) {
    Report r;
    r.command = "kns run --surface " + std::to_string(k);
    std::vector<FibrationClass> rows = run_surface(k);
    Json jrows = Json::array();
    std::map<std::string, const FibrationClass*> by_id;
    for (const auto& f : rows) {
        jrows.push_back(fibration_row(f));
        by_id[f.row_id] = &f;
        if (f.row_id.find(".x") != std::string::npos) r.note("row " + f.row_id + " has no published counterpart");
        if (!f.admissible) r.note("row " + f.row_id + " is not admissible");
    }
    for (const auto& e : expected_block(k)) {
        auto it = by_id.find(e.row_id);
        if (it == by_id.end()) {
            r.note("row " + e.row_id + " (" + e.niemeier + ": " + join(e.distribution, ", ") + "; " + e.ade +
                   ") is published but no primitive embedding realises it");
            continue;
        }
        const FibrationClass& f = *it->second;
        std::vector<int> tors;
        for (const auto& d : f.mw_torsion) tors.push_back(static_cast<int>(d));
        if (f.ade.str() != e.ade) r.note("row " + e.row_id + " ADE type: computed " + f.ade.str() + ", published " + e.ade);
        if (f.mw_rank != e.mw_rank)
            r.note("row " + e.row_id + " MW rank: computed " + std::to_string(f.mw_rank) + ", published " +
                   std::to_string(e.mw_rank));
        if (tors != e.torsion)
            r.note("row " + e.row_id + " MW torsion: computed " + f.torsion_str() + ", published " + torsion_label(e.torsion));
        if (f.minus6 != e.minus6)
            r.note("row " + e.row_id + " (-6) summands: computed " + std::to_string(f.minus6) + ", published " +
                   std::to_string(e.minus6));
    }
    r.payload = Json{{"surface", k}, {"t0", select_T0(surface(k).tx_lattice()).t0.str()}, {"rows", jrows}};
    return r;
}

std::string kns_markdown(const Report& r) {
    std::ostringstream out;
    const Json& p = r.payload;
    out << "Surface " << p.at("surface").get<int>() << ", T0 = " << p.at("t0").get<std::string>() << "\n\n";
    out << "| No. | Niemeier | T0 distribution | M | ADE type | MW |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const auto& row : p.at("rows")) {
        std::vector<std::string> dist = row.at("distribution").get<std::vector<std::string>>();
        int rank = row.at("mw").at("rank").get<int>();
        std::string mw = rank == 0 ? "" : rank == 1 ? "Z" : "Z^" + std::to_string(rank);
        for (const auto& t : row.at("mw").at("torsion")) mw += (mw.empty() ? "Z/" : "+Z/") + t.dump();
        if (mw.empty()) mw = "0";
        out << "| " << row.at("row_id").get<std::string>() << " | " << row.at("niemeier").get<std::string>() << " | "
            << join(dist, ", ") << " | " << row.at("M").at("roottype").get<std::string>() << " | "
            << row.at("ade").get<std::string>() << " | " << mw << " |\n";
    }
    if (!r.diagnostics.empty()) {
        out << "\nFindings:\n";
        for (const auto& d : r.diagnostics) out << "- " << d << "\n";
    }
    return out.str();
}

Report complement_table_report() {
    Report r;
    r.command = "embed --tabulated";
    Json rows = Json::array();
    for (const auto& row : tabulated_complements()) {
        ComplementAudit a = audit_complement(row);
        rows.push_back(complement_audit_payload(a));
        if (!a.match()) {
            r.status = Status::Error;
            r.diagnostics.push_back("row " + row.id() + " does not match the tabulated complement");
        }
        if (a.finding()) {
            std::string why = a.printed_identity ? "is not isometric to the computed complement"
                                                 : "violates the index identity";
            r.note("row " + row.id() + ": tabulated Gram (|det| " + a.printed_det->str() + ") " + why +
                   "; computed complement has |det| " + a.det.str() + " and index " + a.index.str());
        }
    }
    r.payload = Json{{"rows", rows}};
    return r;
}

Report x3_report() {
    Report r;
    r.command = "x3 verify";
    CurveConfig cfg = x3_config();
    const QuotientData& q = x3_quotient();
    bool all = true;
    Json t4 = Json::array(), t5 = Json::array();
    for (const auto& f : x3_fibrations()) {
        std::string id = "L" + std::to_string(f.index);
        long ll = intersect(cfg, f.L, f.L), mm = intersect(cfg, f.M, f.M), lm = intersect(cfg, f.L, f.M);
        bool ok4 = ll == 0 && mm == -2 && lm == 1;
        t4.push_back(Json{{"row_id", id}, {"L2", ll}, {"M2", mm}, {"LM", lm}, {"fibre", f.root}, {"pass", ok4}});
        Json row{{"row_id", id}};
        bool ok5 = false;
        try {
            KIntersection k = k_intersection(cfg, q, f.L);
            bool literal = k.pushforward == q.expected_pushforward.at(f.index);
            ok5 = k.projection == q.expected_k.at(f.index) && k.dictionary == k.projection && literal;
            row.update(Json{{"projection", k.projection},
                            {"dictionary", k.dictionary},
                            {"expected_k", q.expected_k.at(f.index)},
                            {"pushforward", divisor_str(k.pushforward)},
                            {"literal_match", literal},
                            {"type", x3_type_str(classify_x3(f.index))}});
        } catch (const std::exception& e) {
            row["error"] = e.what();
        }
        row["pass"] = ok5;
        t5.push_back(row);
        all = all && ok4 && ok5;
    }
    Json selfs = Json::object();
    for (const auto& [up, img] : q.image) {
        long s = intersect_quotient(cfg, q, {{img.first, 1}}, {{img.first, 1}});
        selfs[img.first] = s;
    }
    bool selfs_ok = true;
    for (const auto& [up, img] : q.image) {
        const std::string& down = img.first;
        std::string prefix = down.rfind("EO", 0) == 0 ? "EO" : down.substr(0, down.find_first_of("0123456789"));
        auto it = q.expected_self.find(prefix);
        if (it == q.expected_self.end() || it->second != selfs[down].get<long>()) selfs_ok = false;
    }
    Sigma5Check s5 = sigma5_type3_check(three_iv_star_config());
    bool ok_s5 = s5.type3 && s5.l_sigma_l == 4;
    long fa = intersect_blowup(cfg, {{"Fa", 1}}, {{"Fa", 1}});
    r.payload = Json{{"fibration_pairs", t4},
                     {"k_intersections", t5},
                     {"quotient_self_intersections", selfs},
                     {"strict_transform_Fa2", fa},
                     {"sigma5", {{"L2", s5.l_sq}, {"M2", s5.m_sq}, {"LM", s5.l_m}, {"L_sigma5_L", s5.l_sigma_l}, {"type3", s5.type3}}},
                     {"pass", all && selfs_ok && ok_s5}};
    if (!(all && selfs_ok && ok_s5)) r.status = Status::Error;
    if (fa != -2)
        r.note("strict transform of Fa has self-intersection " + std::to_string(fa) +
               " (three blown-up points on a curve of square 0), matching EO^2 = -1; the value -2 would force EO^2 = -2/3");
    return r;
}

namespace {

bool keyed(const Json& a) {
    if (!a.is_array() || a.empty()) return false;
    for (const auto& e : a)
        if (!e.is_object() || !e.contains("row_id") || !e.at("row_id").is_string()) return false;
    return true;
}

void diff_rec(const Json& e, const Json& a, const std::string& path, std::vector<std::string>& out) {
    const std::string where = path.empty() ? "/" : path;
    if (e.type() != a.type() && !(e.is_number() && a.is_number())) {
        out.push_back(where + ": expected " + e.dump() + ", got " + a.dump());
        return;
    }
    if (e.is_object()) {
        for (const auto& [k, v] : e.items()) {
            if (!a.contains(k))
                out.push_back(path + "/" + k + ": missing");
            else
                diff_rec(v, a.at(k), path + "/" + k, out);
        }
        for (const auto& [k, v] : a.items())
            if (!e.contains(k)) out.push_back(path + "/" + k + ": unexpected");
        return;
    }
    if (e.is_array() && keyed(e) && (keyed(a) || a.empty())) {
        std::map<std::string, const Json*> ea, aa;
        for (const auto& x : e) ea[x.at("row_id").get<std::string>()] = &x;
        for (const auto& x : a) aa[x.at("row_id").get<std::string>()] = &x;
        for (const auto& [id, x] : ea) {
            auto it = aa.find(id);
            if (it == aa.end())
                out.push_back("row " + id + ": missing");
            else
                diff_rec(*x, *it->second, "row " + id, out);
        }
        for (const auto& [id, x] : aa)
            if (!ea.count(id)) out.push_back("row " + id + ": unexpected");
        return;
    }
    if (e.is_array()) {
        if (e.size() != a.size()) {
            out.push_back(where + ": expected " + e.dump() + ", got " + a.dump());
            return;
        }
        for (std::size_t i = 0; i < e.size(); ++i) diff_rec(e[i], a[i], path + "/" + std::to_string(i), out);
        return;
    }
    if (e != a) out.push_back(where + ": expected " + e.dump() + ", got " + a.dump());
}

}  // namespace

std::vector<std::string> golden_diff(const Json& expected, const Json& actual) {
    std::vector<std::string> out;
    diff_rec(expected, actual, "", out);
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("missing golden file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error("malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace k3fib
