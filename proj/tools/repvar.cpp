// repvar: command-line front end for the representation-variety toolkit.

#include "repvar/repvar.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace repvar;
using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kBudget = 3 };

struct Globals {
    bool json = false;
    bool timing = false;
    unsigned threads = 0;
    double budget = 0;
    std::size_t order_budget = kDefaultOrderBudget;

    EnumerationOptions enumeration() const {
        EnumerationOptions o;
        if (threads) o.threads = threads;
        if (budget > 0) o.budget = budget;
        return o;
    }
};

class UsageError : public Error {
public:
    using Error::Error;
};

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) { return std::stod(fmt12(v)); }

Json exact(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

Json exact(const Rational& v) {
    if (denominator(v) == 1) return exact(BigInt(numerator(v)));
    return v.str();
}

Json exact_function(const ExactClassFunction& f) {
    Json a = Json::array();
    for (const auto& v : f.values) a.push_back(exact(v));
    return a;
}

std::string join(const ExactClassFunction& f) {
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " " : "") + f[i].str();
    return s;
}

void emit(const Globals& g, const Json& j, const std::string& text) {
    if (g.json)
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text;
}

Method parse_method(const std::string& m) {
    if (m == "brute") return Method::Brute;
    if (m == "character") return Method::Character;
    throw UsageError("unknown method '" + m + "'");
}

std::vector<Method> methods_of(const std::string& m) {
    if (m == "both") return {Method::Brute, Method::Character};
    return {parse_method(m)};
}

/// The standard surface relator, if `p` is one.
std::optional<SurfaceKind> as_surface(const Presentation& p) {
    const std::size_t k = p.num_generators();
    if (k == 0 && p.num_relators() == 0) return SurfaceKind::orientable_genus(0);
    if (p.num_relators() != 1 || k == 0) return std::nullopt;
    if (k % 2 == 0 && p.relators[0] == orientable_surface_presentation(unsigned(k / 2)).relators[0])
        return SurfaceKind::orientable_genus(unsigned(k / 2));
    if (p.relators[0] == nonorientable_surface_presentation(unsigned(k)).relators[0]) return SurfaceKind::crosscaps(unsigned(k));
    return std::nullopt;
}

Presentation read_presentation(const std::string& inline_text, const std::string& file) {
    if (!inline_text.empty() && !file.empty()) throw UsageError("give either --presentation or --file, not both");
    if (!file.empty()) return load_presentation(file);
    if (inline_text.empty()) throw UsageError("a presentation is required (--presentation or --file)");
    return parse_presentation(inline_text);
}

Json report_json(const HomCountReport& r, const Globals& g) {
    Json j;
    j["method"] = method_name(r.method);
    j["count"] = exact(r.count);
    if (!r.terms.empty()) {
        Json terms = Json::array();
        for (const auto& t : r.terms)
            terms.push_back({{"irrep", t.irrep}, {"dim", t.dim}, {"fs", t.fs}, {"term", exact(t.value)}});
        j["terms"] = terms;
    }
    j["work"] = round12(r.work);
    if (g.timing) j["seconds"] = round12(r.seconds);
    return j;
}

std::string report_text(const HomCountReport& r, const Globals& g) {
    std::ostringstream os;
    os << method_name(r.method) << ' ' << r.count << '\n';
    for (const auto& t : r.terms)
        os << "  irrep " << t.irrep << " dim " << t.dim << " fs " << (t.fs > 0 ? "+" : "") << t.fs << " term "
           << t.value << '\n';
    if (g.timing) os << "  seconds " << fmt12(r.seconds) << '\n';
    return os.str();
}

/// Runs every requested method, prints the reports and MATCH/MISMATCH when there are two.
int compare_counts(const Globals& g, const FiniteGroup& grp, const std::string& what,
                   const std::vector<HomCountReport>& reports) {
    Json j;
    j["group"] = grp.name();
    j["order"] = grp.order();
    j["input"] = what;
    Json arr = Json::array();
    std::ostringstream os;
    os << "group " << grp.name() << " (order " << grp.order() << ")\n" << what << '\n';
    bool match = true;
    for (const auto& r : reports) {
        arr.push_back(report_json(r, g));
        os << report_text(r, g);
        match = match && r.count == reports.front().count;
    }
    j["results"] = arr;
    if (reports.size() > 1) {
        j["match"] = match;
        os << (match ? "MATCH" : "MISMATCH") << '\n';
    }
    emit(g, j, os.str());
    return match ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------

int cmd_group_info(const Globals& g, const std::string& spec, bool show_table, bool show_chartab, const std::string& format) {
    const auto grp = build_group(spec, g.order_budget);
    const auto& cd = grp.classes();
    std::optional<CharacterTable> t;
    if (show_chartab || format == "tsv") t = character_table(grp);
    if (format == "tsv") {
        std::cout << table_tsv(*t);
        return kOk;
    }
    Json j;
    j["group"] = grp.name();
    j["order"] = grp.order();
    j["identity"] = grp.label(grp.identity());
    Json classes = Json::array();
    for (std::size_t c = 0; c < cd.size(); ++c)
        classes.push_back({{"size", cd.class_sizes[c]}, {"representative", grp.label(cd.representatives[c])},
                           {"centralizer", centralizer_order(grp, cd.representatives[c])}});
    j["classes"] = classes;
    std::ostringstream os;
    os << "group " << grp.name() << "\norder " << grp.order() << "\nclasses " << cd.size() << '\n';
    for (std::size_t c = 0; c < cd.size(); ++c)
        os << "  class " << c << " size " << cd.class_sizes[c] << " rep " << grp.label(cd.representatives[c]) << '\n';
    if (t) {
        Json irreps = Json::array();
        for (std::size_t l = 0; l < t->num_irreps(); ++l) {
            Json values = Json::array();
            for (std::size_t c = 0; c < t->num_classes(); ++c) values.push_back(format_complex((*t)(l, c)));
            irreps.push_back({{"dim", t->dims[l]}, {"fs", t->fs[l]}, {"values", values}});
        }
        j["irreps"] = irreps;
        os << table_text(grp, *t);
    }
    if (show_table) {
        Json rows = Json::array();
        const auto tab = grp.table();
        for (std::size_t a = 0; a < grp.order(); ++a)
            rows.push_back(std::vector<element_t>(tab.begin() + std::ptrdiff_t(a * grp.order()),
                                                  tab.begin() + std::ptrdiff_t((a + 1) * grp.order())));
        j["table"] = rows;
        os << "table\n" << grp.table_text();
    }
    emit(g, j, os.str());
    return kOk;
}

int cmd_homcount(const Globals& g, const std::string& group, const Presentation& p, const std::string& method) {
    const auto grp = build_group(group, g.order_budget);
    std::vector<HomCountReport> reports;
    for (auto m : methods_of(method)) {
        if (m == Method::Brute) {
            reports.push_back(hom_count_brute(grp, p, g.enumeration()));
        } else {
            const auto s = as_surface(p);
            if (!s) throw UsageError("the character method needs a standard surface relator ([a1,b1]... or a1^2 a2^2 ...)");
            reports.push_back(surface_hom_count_character(grp, character_table(grp), *s));
        }
    }
    return compare_counts(g, grp, format_presentation(p), reports);
}

int cmd_surface(const Globals& g, const std::string& group, const SurfaceKind& s, const std::string& method,
                bool distribution) {
    const auto grp = build_group(group, g.order_budget);
    std::optional<CharacterTable> t;
    auto table = [&]() -> const CharacterTable& {
        if (!t) t = character_table(grp);
        return *t;
    };
    if (!distribution) {
        std::vector<HomCountReport> reports;
        for (auto m : methods_of(method))
            reports.push_back(m == Method::Brute ? hom_count_brute(grp, s.presentation(), g.enumeration())
                                                 : surface_hom_count_character(grp, table(), s));
        return compare_counts(g, grp, s.to_string(), reports);
    }
    Json j;
    j["group"] = grp.name();
    j["surface"] = s.to_string();
    std::ostringstream os;
    os << "group " << grp.name() << " (order " << grp.order() << ")\n" << s.to_string() << "\nclass sizes";
    Json sizes = Json::array();
    for (auto sz : grp.classes().class_sizes) {
        os << ' ' << sz;
        sizes.push_back(sz);
    }
    os << '\n';
    j["class_sizes"] = sizes;
    std::vector<ExactClassFunction> dists;
    Json arr = Json::array();
    for (auto m : methods_of(method)) {
        dists.push_back(m == Method::Brute ? surface_distribution_brute(grp, s, g.enumeration())
                                           : (s.orientable && s.genus == 0 ? delta_class_function(grp)
                                                                          : surface_distribution_character(table(), s)));
        arr.push_back({{"method", method_name(m)}, {"distribution", exact_function(dists.back())}});
        os << method_name(m) << ' ' << join(dists.back()) << '\n';
    }
    j["results"] = arr;
    bool match = true;
    for (const auto& d : dists) match = match && d == dists.front();
    if (dists.size() > 1) {
        j["match"] = match;
        os << (match ? "MATCH" : "MISMATCH") << '\n';
    }
    emit(g, j, os.str());
    return match ? kOk : kMismatch;
}

int cmd_volume_dist(const Globals& g, const std::string& group, const Presentation& p, const std::string& method) {
    const auto grp = build_group(group, g.order_budget);
    if (p.num_relators() != 1) throw UsageError("volume-dist needs exactly one relator");
    std::vector<ExactClassFunction> dists;
    Json j;
    j["group"] = grp.name();
    j["presentation"] = format_presentation(p);
    std::ostringstream os;
    os << "group " << grp.name() << " (order " << grp.order() << ")\n" << format_presentation(p) << "\nclass reps";
    Json reps = Json::array();
    for (auto r : grp.classes().representatives) {
        os << ' ' << grp.label(r);
        reps.push_back(grp.label(r));
    }
    os << '\n';
    j["class_representatives"] = reps;
    Json arr = Json::array();
    for (auto m : methods_of(method)) {
        if (m == Method::Brute) {
            dists.push_back(volume_distribution(grp, p, g.enumeration()));
        } else {
            const auto s = as_surface(p);
            if (!s) throw UsageError("the character method needs a standard surface relator");
            dists.push_back(surface_distribution_character(character_table(grp), *s));
        }
        arr.push_back({{"method", method_name(m)}, {"distribution", exact_function(dists.back())}});
        os << method_name(m) << ' ' << join(dists.back()) << '\n';
    }
    j["results"] = arr;
    bool match = true;
    for (const auto& d : dists) match = match && d == dists.front();
    if (dists.size() > 1) {
        j["match"] = match;
        os << (match ? "MATCH" : "MISMATCH") << '\n';
    }
    emit(g, j, os.str());
    return match ? kOk : kMismatch;
}

/// swap:J | conj:WORD | invert | multiply | add[:NAME] | delete:GENERATOR  (J is 1-based, J >= 2)
AcMove parse_move(const std::string& text, const Presentation& p) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon), arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "swap") {
        std::size_t j = 0;
        try {
            j = std::stoul(arg);
        } catch (const std::exception&) {
            throw UsageError("swap needs a relator number: swap:J");
        }
        if (j < 2) throw UsageError("swap:J exchanges q1 and qJ, J >= 2");
        return AcMove::swap(j - 1);
    }
    if (head == "conj") return AcMove::conjugate(parse_word(arg, p.generators));
    if (head == "invert" && arg.empty()) return AcMove::invert();
    if (head == "multiply" && arg.empty()) return AcMove::multiply();
    if (head == "add") return AcMove::add_generator(arg);
    if (head == "delete") {
        for (std::size_t i = 0; i < p.generators.size(); ++i)
            if (p.generators[i] == arg) return AcMove::delete_generator(i);
        throw UsageError("delete: no generator named '" + arg + "'");
    }
    throw UsageError("unknown move '" + text + "'");
}

int cmd_ac_apply(const Globals& g, const Presentation& start, const std::vector<std::string>& moves,
                 const std::string& group, bool check_inverse) {
    std::optional<FiniteGroup> grp;
    if (!group.empty()) grp = build_group(group, g.order_budget);
    Json steps = Json::array();
    std::ostringstream os;
    auto record = [&](const std::string& move, const Presentation& p) {
        Json s{{"move", move}, {"presentation", format_presentation(p)}};
        os << (move.empty() ? "start" : move) << " -> " << format_presentation(p);
        if (grp) {
            const auto c = hom_count_brute(*grp, p, g.enumeration()).count;
            s["count"] = exact(c);
            os << "  count " << c;
        }
        os << '\n';
        steps.push_back(s);
    };
    Presentation cur = start;
    record("", cur);
    std::vector<std::pair<Presentation, AcMove>> history;
    for (const auto& m : moves) {
        const auto move = parse_move(m, cur);
        const auto label = describe(move, cur.generators);
        history.emplace_back(cur, move);
        cur = apply_ac_move(cur, move);
        record(label, cur);
    }
    Json j{{"steps", steps}};
    bool ok = true;
    if (grp) {
        for (const auto& s : steps) ok = ok && s["count"] == steps[0]["count"];
        j["invariant"] = ok;
        os << (ok ? "INVARIANT" : "CHANGED") << '\n';
    }
    if (check_inverse) {
        Presentation back = cur;
        for (auto it = history.rbegin(); it != history.rend(); ++it)
            for (const auto& inv : inverse_moves(it->first, it->second)) back = apply_ac_move(back, inv);
        const bool round_trip = back == start;
        j["round_trip"] = round_trip;
        os << "inverse moves " << (round_trip ? "restore" : "do not restore") << " the start: " << format_presentation(back)
           << '\n';
        ok = ok && round_trip;
    }
    emit(g, j, os.str());
    return ok ? kOk : kMismatch;
}

int cmd_ac_fuzz(const Globals& g, const std::string& group, const Presentation& p, std::size_t sequences,
                std::size_t length, std::uint64_t seed) {
    const auto grp = build_group(group, g.order_budget);
    const auto rep = ac_fuzz(grp, p, sequences, length, seed, g.enumeration());
    Json j{{"group", grp.name()},        {"presentation", format_presentation(p)}, {"expected", exact(rep.expected)},
           {"sequences", rep.sequences}, {"moves", rep.moves_applied},          {"failures", rep.failures}};
    j["failing_orbits"] = rep.failing_orbits;
    std::ostringstream os;
    os << "group " << grp.name() << "\nstart " << format_presentation(p) << "\ncount " << rep.expected << "\nsequences "
       << rep.sequences << " moves " << rep.moves_applied << " failures " << rep.failures << '\n';
    for (const auto& f : rep.failing_orbits) os << "  " << f << '\n';
    os << (rep.failures ? "CHANGED" : "INVARIANT") << '\n';
    emit(g, j, os.str());
    return rep.failures ? kMismatch : kOk;
}

Json classification_json(const SurfaceClassification& c) {
    return {{"vertices", c.v}, {"edges", c.e}, {"faces", c.f}, {"euler_characteristic", c.chi},
            {"orientable", c.orientable}, {"surface", c.kind.to_string()}};
}

std::string classification_text(const SurfaceClassification& c) {
    std::ostringstream os;
    os << "v " << c.v << " e " << c.e << " f " << c.f << " chi " << c.chi << '\n'
       << (c.orientable ? "orientable" : "non-orientable") << '\n'
       << c.kind.to_string() << '\n';
    return os.str();
}

int cmd_mobius_classify(const Globals& g, const std::string& file) {
    const auto graph = load_graph(file);
    const auto c = classify_surface(graph);
    emit(g, classification_json(c), classification_text(c));
    return kOk;
}

int cmd_mobius_eval(const Globals& g, const std::string& file, const std::string& group, const std::string& method) {
    const auto graph = load_graph(file);
    const auto grp = build_group(group, g.order_budget);
    const auto c = classify_surface(graph);
    std::vector<std::string> names;
    if (method == "both")
        names = {"direct", "formula"};
    else if (method == "direct" || method == "formula")
        names = {method};
    else
        throw UsageError("unknown method '" + method + "' (direct, formula, both)");
    Json j{{"group", grp.name()}, {"surface", classification_json(c)}};
    Json arr = Json::array();
    std::ostringstream os;
    os << "group " << grp.name() << " (order " << grp.order() << ")\n" << classification_text(c);
    std::vector<BigInt> values;
    for (const auto& n : names) {
        values.push_back(n == "direct" ? evaluate_graph_direct(grp, graph, g.enumeration()).value
                                       : evaluate_graph_formula(grp, character_table(grp), graph));
        arr.push_back({{"method", n}, {"value", exact(values.back())}});
        os << n << ' ' << values.back() << '\n';
    }
    j["results"] = arr;
    bool match = true;
    for (const auto& v : values) match = match && v == values.front();
    if (values.size() > 1) {
        j["match"] = match;
        os << (match ? "MATCH" : "MISMATCH") << '\n';
    }
    emit(g, j, os.str());
    return match ? kOk : kMismatch;
}

int cmd_wzeta(const Globals& g, const std::string& family, unsigned n, std::optional<unsigned> genus,
              std::optional<unsigned> crosscaps, double tol, bool closed_form) {
    if (genus.has_value() == crosscaps.has_value()) throw UsageError("give exactly one of --genus and --crosscaps");
    const SurfaceKind s = genus ? SurfaceKind::orientable_genus(*genus) : SurfaceKind::crosscaps(*crosscaps);
    if (family == "torus") {
        const auto tv = torus_volume(n, s);
        Json j{{"family", "T^" + std::to_string(n)}, {"surface", s.to_string()}, {"expression", tv.expression},
               {"exponent", tv.exponent}, {"h1", tv.real_irreps}};
        std::ostringstream os;
        os << "family T^" << n << '\n' << s.to_string() << "\nvolume " << tv.expression << "\nh1 " << tv.real_irreps << '\n';
        emit(g, j, os.str());
        return kOk;
    }
    LieFamily fam;
    if (family == "su") {
        fam = LieFamily::su(n);
    } else if (family.size() > 2 && family.rfind("su", 0) == 0 &&
               family.find_first_not_of("0123456789", 2) == std::string::npos) {
        fam = LieFamily::su(static_cast<unsigned>(std::stoul(family.substr(2))));
    } else {
        throw UsageError("unknown family '" + family + "' (su2, su3, suN, su with --n, torus)");
    }
    SeriesResult r;
    if (s.orientable) {
        r = orientable_volume_ratio(fam, s.genus, tol);
    } else {
        if (fam.n != 2) throw UsageError("the cross-cap series is implemented for SU(2) only");
        r = closed_form ? su2_nonorientable_closed_form(s.genus, tol) : nonorientable_volume_ratio_su2(s.genus, tol);
    }
    const char* conv = r.conditionally_convergent ? "conditional" : "absolute";
    Json j{{"family", fam.name()},          {"surface", s.to_string()},        {"series", r.description},
           {"value", round12(r.value)},     {"cutoff", r.cutoff},              {"tail_bound", round12(r.tail_bound)},
           {"convergence", conv}};
    std::ostringstream os;
    os << "family " << fam.name() << '\n'
       << s.to_string() << '\n'
       << "series " << r.description << '\n'
       << "value " << fmt12(r.value) << '\n'
       << "cutoff " << r.cutoff << '\n'
       << "tail_bound " << fmt12(r.tail_bound) << '\n'
       << "convergence " << conv << '\n';
    emit(g, j, os.str());
    return kOk;
}

int cmd_verify(const Globals& g, const std::vector<int>& only) {
    VerifyOptions o;
    o.enumeration = g.enumeration();
    Json arr = Json::array();
    std::ostringstream os;
    bool all = true;
    for (int id : criterion_ids()) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto r = run_criterion(id, o);
        all = all && r.passed;
        Json c{{"criterion", r.id}, {"title", r.title}, {"passed", r.passed}, {"checks", r.checks}, {"failures", r.failures}};
        if (g.timing) c["seconds"] = round12(r.seconds);
        arr.push_back(c);
        os << "criterion " << r.id << ' ' << (r.passed ? "PASS" : "FAIL") << "  " << r.title << " (" << r.checks
           << " checks";
        if (g.timing) os << ", " << fmt12(r.seconds) << " s";
        os << ")\n";
        for (const auto& f : r.failures) os << "  " << f << '\n';
    }
    os << (all ? "ALL PASS" : "FAILURES") << '\n';
    emit(g, Json{{"criteria", arr}, {"passed", all}}, os.str());
    return all ? kOk : kMismatch;
}

int fail(const char* kind, const std::string& msg, int code) {
    std::cerr << "error[" << kind << "]: " << msg << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counting homomorphisms from surface groups into finite groups, Mobius graphs and Lie-group series"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "Structured JSON output");
    app.add_flag("--timing", g.timing, "Include wall-clock timings");
    app.add_option("--threads", g.threads, "Worker threads (default: MP_THREADS or all cores)")->check(CLI::PositiveNumber);
    app.add_option("--budget", g.budget, "Evaluation budget in relator-letter steps (default: MP_BUDGET or 1e9)")
        ->check(CLI::PositiveNumber);
    app.add_option("--order-budget", g.order_budget, "Largest group order to build")->check(CLI::PositiveNumber);

    // group info
    auto* group_cmd = app.add_subcommand("group", "Finite group queries");
    group_cmd->require_subcommand(1);
    auto* info = group_cmd->add_subcommand("info", "Order, conjugacy classes, character table");
    std::string info_spec, info_format = "text";
    bool info_table = false, info_chartab = false;
    info->add_option("spec", info_spec, "Zn, Dn, Sn, An, Q8, 'perm: (1 2)(3 4), ...', 'table: FILE'")->required();
    info->add_flag("--table", info_table, "Print the multiplication table");
    info->add_flag("--chartab", info_chartab, "Print the character table");
    info->add_option("--format", info_format, "text or tsv (character table only)")->check(CLI::IsMember({"text", "tsv"}));

    // homcount
    auto* hom = app.add_subcommand("homcount", "Count homomorphisms from a presented group");
    std::string hom_group, hom_pres, hom_file, hom_method = "brute";
    hom->add_option("--group", hom_group, "Target group")->required();
    auto* hp = hom->add_option("--presentation", hom_pres, "Presentation, e.g. '<a, b | [a, b]>'");
    hom->add_option("--file", hom_file, "Presentation file")->excludes(hp);
    hom->add_option("--method", hom_method, "brute, character or both")->check(CLI::IsMember({"brute", "character", "both"}));

    // volume-dist
    auto* vd = app.add_subcommand("volume-dist", "Fiber sizes of a single-relator presentation map per class");
    std::string vd_group, vd_pres, vd_file, vd_method = "brute";
    vd->add_option("--group", vd_group, "Target group")->required();
    auto* vp = vd->add_option("--presentation", vd_pres, "Presentation with one relator");
    vd->add_option("--file", vd_file, "Presentation file")->excludes(vp);
    vd->add_option("--method", vd_method, "brute, character or both")->check(CLI::IsMember({"brute", "character", "both"}));

    // surface
    auto* surf = app.add_subcommand("surface", "Homomorphisms from a closed surface group");
    std::string surf_group, surf_method = "character";
    std::optional<unsigned> surf_genus, surf_k;
    bool surf_dist = false;
    surf->add_option("--group", surf_group, "Target group")->required();
    auto* sg = surf->add_option("--genus", surf_genus, "Orientable genus g >= 0");
    auto* sk = surf->add_option("--crosscaps", surf_k, "Cross-cap genus k >= 1")->excludes(sg);
    sg->excludes(sk);
    surf->add_option("--method", surf_method, "brute, character or both")->check(CLI::IsMember({"brute", "character", "both"}));
    surf->add_flag("--distribution", surf_dist, "Full class distribution instead of the count");

    // ac
    auto* ac = app.add_subcommand("ac", "Andrews-Curtis moves");
    ac->require_subcommand(1);
    auto* ac_apply = ac->add_subcommand("apply", "Apply moves in order");
    std::string aa_pres, aa_file, aa_group;
    std::vector<std::string> aa_moves;
    bool aa_inverse = false;
    auto* ap = ac_apply->add_option("--presentation", aa_pres, "Start presentation");
    ac_apply->add_option("--file", aa_file, "Presentation file")->excludes(ap);
    ac_apply->add_option("--move", aa_moves, "swap:J, conj:WORD, invert, multiply, add[:NAME], delete:GEN")->required();
    ac_apply->add_option("--group", aa_group, "Report hom counts into this group after every move");
    ac_apply->add_flag("--check-inverse", aa_inverse, "Undo the moves and compare with the start");
    auto* ac_fz = ac->add_subcommand("fuzz", "Random move sequences; counts must not change");
    std::string af_pres, af_file, af_group;
    std::size_t af_sequences = 100, af_length = 8;
    std::uint64_t af_seed = 1;
    auto* afp = ac_fz->add_option("--presentation", af_pres, "Start presentation");
    ac_fz->add_option("--file", af_file, "Presentation file")->excludes(afp);
    ac_fz->add_option("--group", af_group, "Target group")->required();
    ac_fz->add_option("--sequences", af_sequences, "Number of sequences");
    ac_fz->add_option("--length", af_length, "Maximum sequence length");
    ac_fz->add_option("--seed", af_seed, "Random seed");

    // mobius
    auto* mob = app.add_subcommand("mobius", "Mobius graphs");
    mob->require_subcommand(1);
    auto* classify = mob->add_subcommand("classify", "Surface of a graph");
    std::string mc_file;
    classify->add_option("graph", mc_file, "Graph file")->required()->check(CLI::ExistingFile);
    auto* meval = mob->add_subcommand("eval", "Count admissible half-edge labelings");
    std::string me_file, me_group, me_method = "both";
    meval->add_option("graph", me_file, "Graph file")->required()->check(CLI::ExistingFile);
    meval->add_option("--group", me_group, "Target group")->required();
    meval->add_option("--method", me_method, "direct, formula or both")->check(CLI::IsMember({"direct", "formula", "both"}));

    // wzeta
    auto* wz = app.add_subcommand("wzeta", "Lie-group volume series");
    std::string wz_family = "su2";
    unsigned wz_n = 2;
    std::optional<unsigned> wz_genus, wz_k;
    double wz_tol = 1e-9;
    bool wz_closed = false;
    wz->add_option("--family", wz_family, "su2, su3, suN, su (with --n) or torus (with --n)");
    wz->add_option("--n", wz_n, "Rank parameter for su / torus");
    auto* wg = wz->add_option("--genus", wz_genus, "Orientable genus");
    auto* wk = wz->add_option("--crosscaps", wz_k, "Cross-cap genus")->excludes(wg);
    wg->excludes(wk);
    wz->add_option("--tol", wz_tol, "Target tail bound")->check(CLI::PositiveNumber);
    wz->add_flag("--closed-form", wz_closed, "Evaluate the cross-cap series through its zeta closed form");

    // verify-paper
    auto* ver = app.add_subcommand("verify-paper", "Run every acceptance check");
    std::vector<int> ver_only;
    ver->add_option("--criterion", ver_only, "Only these criteria (1-10)")->check(CLI::Range(1, 10));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), kUsage);
    }

    try {
        if (info->parsed()) return cmd_group_info(g, info_spec, info_table, info_chartab, info_format);
        if (hom->parsed()) return cmd_homcount(g, hom_group, read_presentation(hom_pres, hom_file), hom_method);
        if (vd->parsed()) return cmd_volume_dist(g, vd_group, read_presentation(vd_pres, vd_file), vd_method);
        if (surf->parsed()) {
            if (surf_genus.has_value() == surf_k.has_value()) throw UsageError("give exactly one of --genus and --crosscaps");
            const auto s = surf_genus ? SurfaceKind::orientable_genus(*surf_genus) : SurfaceKind::crosscaps(*surf_k);
            return cmd_surface(g, surf_group, s, surf_method, surf_dist);
        }
        if (ac_apply->parsed()) return cmd_ac_apply(g, read_presentation(aa_pres, aa_file), aa_moves, aa_group, aa_inverse);
        if (ac_fz->parsed())
            return cmd_ac_fuzz(g, af_group, read_presentation(af_pres, af_file), af_sequences, af_length, af_seed);
        if (classify->parsed()) return cmd_mobius_classify(g, mc_file);
        if (meval->parsed()) return cmd_mobius_eval(g, me_file, me_group, me_method);
        if (wz->parsed()) return cmd_wzeta(g, wz_family, wz_n, wz_genus, wz_k, wz_tol, wz_closed);
        if (ver->parsed()) return cmd_verify(g, ver_only);
    } catch (const BudgetExceeded& e) {
        return fail("budget", e.what(), kBudget);
    } catch (const UsageError& e) {
        return fail("usage", e.what(), kUsage);
    } catch (const ParseError& e) {
        return fail("parse", e.what(), kUsage);
    } catch (const DivergentSeries& e) {
        return fail("divergent", e.what(), kUsage);
    } catch (const InvalidInput& e) {
        return fail("input", e.what(), kUsage);
    } catch (const NumericValidationError& e) {
        return fail("numeric", e.what(), kMismatch);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), kMismatch);
    }
    return fail("usage", "no subcommand", kUsage);
}
