#include "nilform/cli.hpp"

#include "nilform/catalog.hpp"
#include "nilform/errors.hpp"
#include "nilform/formality.hpp"
#include "nilform/resonance.hpp"
#include "nilform/ring.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nilform::cli {

using Json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string input;
    std::string preset;
    std::optional<int> max_degree;
    int q = 1;
    std::size_t k = 1;
    std::optional<std::string> point;
    bool decide = false;
    int k_max = 2;
    std::uint64_t seed = 0;
    std::optional<std::string> complement;
    std::string format = "table";
    bool strict = false;
    bool representatives = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Rational json_rational(const Json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw ParseError("coefficient must be a rational string \"p\" or \"p/q\"");
}

Cdga load(const Options& o) {
    if (o.input.empty() == o.preset.empty()) throw CLI::ValidationError("exactly one of --input and --preset is required");
    if (!o.preset.empty()) return catalog::parse_preset(o.preset);
    return parse_input_document(read_file(o.input)).with_metadata({{"input", o.input}});
}

std::string source_name(const Cdga& c) {
    const auto& m = c.metadata();
    if (auto it = m.find("preset"); it != m.end()) return it->second;
    if (auto it = m.find("input"); it != m.end()) return it->second;
    return "";
}

Json echo(const Cdga& c) {
    Json gens = Json::array();
    Json diff = Json::object();
    const auto& alg = *c.algebra();
    for (std::size_t g = 0; g < alg.size(); ++g) {
        gens.push_back({{"name", alg.generator(g).name}, {"degree", alg.degree(g)}});
        if (!c.d(g).is_zero()) diff[alg.generator(g).name] = c.d(g).to_string();
    }
    return {{"source", source_name(c)}, {"generators", gens}, {"differential", diff}};
}

Json header(const Cdga& c, const std::string& command) {
    return {{"tool", {{"name", "nilform"}, {"version", NILFORM_VERSION}}}, {"command", command}, {"input", echo(c)}};
}

std::string verdict_cell(Verdict v) {
    switch (v) {
        case Verdict::CertifiedKFormal: return "formal";
        case Verdict::CertifiedNotKFormal: return "not formal";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

void print_banner(std::ostream& out, const Cdga& c, const std::string& command) {
    out << "nilform " << NILFORM_VERSION << "  " << command << "  " << source_name(c) << "\n";
    const auto& alg = *c.algebra();
    out << "generators:";
    for (std::size_t g = 0; g < alg.size(); ++g) out << " " << alg.generator(g).name;
    out << "\n";
    for (std::size_t g = 0; g < alg.size(); ++g)
        if (!c.d(g).is_zero()) out << "  d(" << alg.generator(g).name << ") = " << c.d(g).to_string() << "\n";
}

int cmd_cohomology(const Options& o, std::ostream& out) {
    const auto c = load(o);
    int top = 0;
    if (o.max_degree) top = *o.max_degree;
    else if (auto t = c.algebra()->top_degree()) top = *t;
    else throw CLI::ValidationError("--max-degree is required when the algebra has even generators");
    if (top < 0) throw CLI::ValidationError("--max-degree must be non-negative");

    Json report = header(c, "cohomology");
    Json betti = Json::array();
    Json reps = Json::object();
    for (int q = 0; q <= top; ++q) {
        const auto& h = c.cohomology(q);
        betti.push_back(h.dimension());
        if (o.representatives) {
            Json list = Json::array();
            for (const auto& r : h.representatives()) list.push_back(r.to_string());
            reps[std::to_string(q)] = list;
        }
    }
    report["cohomology"] = {{"max_degree", top}, {"betti", betti}};
    if (o.representatives) report["cohomology"]["representatives"] = reps;

    if (o.format == "json") {
        out << report.dump(2) << "\n";
        return Success;
    }
    print_banner(out, c, "cohomology");
    out << std::setw(4) << "q" << std::setw(8) << "b_q" << "\n";
    for (int q = 0; q <= top; ++q) {
        out << std::setw(4) << q << std::setw(8) << betti[q].get<std::size_t>() << "\n";
        if (o.representatives)
            for (const auto& r : reps[std::to_string(q)]) out << "        " << r.get<std::string>() << "\n";
    }
    return Success;
}

Json verdict_json(const RingPresentation& r, const TrivialityVerdict& v) {
    Json j = {{"verdict", to_string(v.kind)}};
    if (v.kind == Triviality::Witness) j["witness"] = point_to_string(r, v.witness);
    if (v.form) j["form"] = v.form->to_string();
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

int cmd_resonance(const Options& o, std::ostream& out) {
    const auto c = load(o);
    if (o.q < 0) throw CLI::ValidationError("--q must be non-negative");
    if (o.k < 1) throw CLI::ValidationError("--k must be at least 1");
    const int top = static_cast<int>(c.algebra()->size());
    const auto r = RingPresentation::from_cdga(c, std::min(std::max(o.q + 1, 2), std::max(top, 0)));
    SearchOptions search;
    search.seed = o.seed;

    Json report = header(c, "resonance");
    Json res = {{"q", o.q}, {"k", o.k}, {"classes", r.labels(1)}};
    if (o.point) {
        const auto w = parse_point(r, *o.point);
        const auto dim = mu_complex_dim(r, w, o.q);
        Json coords = Json::array();
        for (const auto& x : w) coords.push_back(to_string(x));
        res["point"] = {{"expression", point_to_string(r, w)}, {"coordinates", coords}, {"dimension", dim},
                        {"member", dim >= o.k}};
    }
    if (o.decide) {
        if (o.q == 1 && o.k == 1) {
            res["decision"] = verdict_json(r, decide_r11_trivial(r, search));
        } else {
            auto j = verdict_json(r, search_resonance_witness(r, o.q, o.k, search));
            j["notice"] = "sampling-only: exact decision is implemented for q = 1, k = 1";
            res["decision"] = j;
        }
    }
    report["resonance"] = res;

    if (o.format == "json") {
        out << report.dump(2) << "\n";
        return Success;
    }
    print_banner(out, c, "resonance");
    out << "H^1 classes:";
    for (const auto& l : r.labels(1)) out << " " << l;
    out << "\nq = " << o.q << ", k = " << o.k << "\n";
    if (o.point) {
        const auto& p = res["point"];
        out << "point " << p["expression"].get<std::string>() << ": dim H^" << o.q << "(H, w) = "
            << p["dimension"].get<std::size_t>() << ", member = " << (p["member"].get<bool>() ? "true" : "false")
            << "\n";
    }
    if (o.decide) {
        const auto& d = res["decision"];
        if (d.contains("notice")) out << "notice: " << d["notice"].get<std::string>() << "\n";
        out << "decision: " << d["verdict"].get<std::string>();
        if (d.contains("witness")) out << "  witness " << d["witness"].get<std::string>();
        out << "\n";
        if (d.contains("form")) out << "  form in K: " << d["form"].get<std::string>() << "\n";
        if (d.contains("note")) out << "  " << d["note"].get<std::string>() << "\n";
    }
    return Success;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_formality(const Options& o, std::ostream& out) {
    const auto c = load(o);
    if (o.k_max < 0) throw CLI::ValidationError("--k-max must be non-negative");
    FormalityOptions options;
    options.search.seed = o.seed;
    if (o.complement) options.complement = split_names(*o.complement);
    const auto rep = formality_report(c, o.k_max, options);

    Json report = header(c, "formality");
    Json verdicts = Json::array();
    for (int k = 0; k <= o.k_max; ++k) verdicts.push_back({{"k", k}, {"verdict", to_string(rep.verdicts[k])}});
    Json evidence = Json::array();
    for (const auto& e : rep.evidence) {
        Json j = {{"rule", e.rule}};
        j["k"] = e.k ? Json(*e.k) : Json(nullptr);
        j["direction"] = e.formal ? "formal" : "not formal";
        j["detail"] = e.detail;
        evidence.push_back(j);
    }
    Json f = {{"k_max", o.k_max}, {"verdicts", verdicts}};
    f["formal"] = rep.formal ? Json(*rep.formal ? "CertifiedFormal" : "CertifiedNotFormal") : Json("Inconclusive");
    f["best_formal"] = rep.best_formal() ? Json(*rep.best_formal()) : Json(nullptr);
    f["least_not_formal"] = rep.least_not_formal() ? Json(*rep.least_not_formal()) : Json(nullptr);
    f["evidence"] = evidence;
    f["notes"] = rep.notes;
    f["bound_exceeded"] = rep.bound_exceeded;
    report["formality"] = f;

    if (o.format == "json") {
        out << report.dump(2) << "\n";
    } else {
        print_banner(out, c, "formality");
        out << std::setw(4) << "k" << "  k-formal\n";
        for (int k = 0; k <= o.k_max; ++k) out << std::setw(4) << k << "  " << verdict_cell(rep.verdicts[k]) << "\n";
        out << "formal: " << f["formal"].get<std::string>() << "\n";
        out << "evidence:\n";
        for (const auto& e : rep.evidence) {
            out << "  [" << e.rule << "] ";
            if (e.k) out << (e.formal ? "" : "not ") << *e.k << "-formal";
            else out << (e.formal ? "formal" : "not formal");
            out << ": " << e.detail << "\n";
        }
        for (const auto& n : rep.notes) out << "note: " << n << "\n";
    }
    return o.strict && rep.bound_exceeded ? BoundExceeded : Success;
}

int cmd_preset_list(const Options& o, std::ostream& out) {
    if (o.format == "json") {
        Json list = Json::array();
        for (const auto& p : catalog::preset_list())
            list.push_back({{"name", p.name}, {"syntax", p.syntax}, {"description", p.description}});
        out << Json{{"presets", list}}.dump(2) << "\n";
        return Success;
    }
    for (const auto& p : catalog::preset_list())
        out << std::left << std::setw(46) << p.syntax << p.description << std::right << "\n";
    return Success;
}

void add_input_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--input", o.input, "JSON model definition");
    cmd->add_option("--preset", o.preset, "catalog model, e.g. heisenberg:2");
    cmd->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
}

}  // namespace

Cdga parse_input_document(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        std::vector<GeneratorSpec> gens;
        for (const auto& g : doc.at("generators")) gens.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>(), std::nullopt});
        const auto alg = Algebra::create(gens);
        std::vector<Multivector> d(alg->size(), Multivector(alg));
        std::vector<bool> seen(alg->size(), false);
        if (doc.contains("differential"))
            for (const auto& entry : doc.at("differential")) {
                const auto name = entry.at("generator").get<std::string>();
                const auto idx = alg->find(name);
                if (!idx) throw ParseError("differential given for unknown generator '" + name + "'");
                if (seen[*idx]) throw ParseError("differential of '" + name + "' given twice");
                seen[*idx] = true;
                for (const auto& term : entry.at("value")) {
                    Multivector m = Multivector::scalar(alg, json_rational(term.at("coeff")));
                    for (const auto& f : term.at("monomial")) {
                        const auto fname = f.get<std::string>();
                        if (!alg->find(fname)) throw ParseError("unknown generator '" + fname + "' in d(" + name + ")");
                        m = wedge(m, Multivector::generator(alg, fname));
                    }
                    d[*idx] += m;
                }
            }
        return Cdga::create(alg, std::move(d));
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed input document: ") + e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cohomology, resonance and partial formality of nilpotent Sullivan models", "nilform"};
    app.set_version_flag("--version", std::string(NILFORM_VERSION));
    app.require_subcommand(1);
    Options o;

    auto* coh = app.add_subcommand("cohomology", "Betti numbers and class representatives");
    add_input_options(coh, o);
    coh->add_option("--max-degree", o.max_degree, "highest degree to compute");
    coh->add_flag("--representatives", o.representatives, "list cocycle representatives");

    auto* res = app.add_subcommand("resonance", "resonance membership and triviality of R^1_1");
    add_input_options(res, o);
    res->add_option("--q", o.q, "cohomological degree");
    res->add_option("--k", o.k, "depth");
    res->add_option("--point", o.point, "degree-1 class, e.g. '2*x1 - 1/3*y1'");
    res->add_flag("--decide", o.decide, "decide triviality (exact for q = 1)");
    res->add_option("--seed", o.seed, "seed for sampled points");

    auto* form = app.add_subcommand("formality", "partial formality report");
    add_input_options(form, o);
    form->add_option("--k-max", o.k_max, "largest k to report");
    form->add_option("--seed", o.seed, "seed for sampled points");
    form->add_option("--complement", o.complement, "complement generators g1,g2,...");
    form->add_flag("--strict", o.strict, "exit 3 when a search bound was exceeded");

    auto* preset = app.add_subcommand("preset", "catalog of example models");
    preset->require_subcommand(1);
    auto* list = preset->add_subcommand("list", "list preset names and parameters");
    list->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (coh->parsed()) return cmd_cohomology(o, out);
        if (res->parsed()) return cmd_resonance(o, out);
        if (form->parsed()) return cmd_formality(o, out);
        return cmd_preset_list(o, out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Success : Usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return InvalidInput;
    }
}

}  // namespace nilform::cli
