#include "divfano/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "divfano/enumerate.hpp"
#include "divfano/monomial.hpp"
#include "divfano/stability.hpp"

namespace divfano::cli
{

namespace
{

struct io_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

Int parse_int(std::string_view tok, std::string_view what)
{
    const auto b = tok.find_first_not_of(' ');
    const auto e = tok.find_last_not_of(' ');
    if (b == std::string_view::npos)
        throw validation_error("empty " + std::string(what));
    tok = tok.substr(b, e - b + 1);
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw validation_error("not an integer " + std::string(what) + ": '" + std::string(tok) + "'");
    return v;
}

std::vector<int> parse_dims(const std::string &text)
{
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (tok.find_first_not_of(' ') != std::string::npos) {
            const Int d = parse_int(tok, "dimension");
            if (d < 1 || d > 4)
                throw validation_error("dimension must be in 1..4, got " + std::to_string(d));
            dims.push_back(static_cast<int>(d));
        }
    return dims;
}

const char *verdict_label(Verdict v)
{
    switch (v) {
    case Verdict::k_stable:
        return "K-stable";
    case Verdict::k_polystable:
        return "K-polystable";
    case Verdict::k_semistable:
        return "K-semistable";
    case Verdict::k_unstable:
        return "K-unstable";
    case Verdict::unknown:
        break;
    }
    return "unknown (no sufficient criterion applies)";
}

void write_output(const std::string &text, const std::string &path, std::ostream &out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw io_error("cannot open " + path + " for writing");
    f << text;
    if (!f)
        throw io_error("write to " + path + " failed");
}

SupportFile read_support(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open support file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw validation_error("support file " + path + ": " + e.what());
    }
    try {
        return support_from_json(j);
    } catch (const nlohmann::json::exception &e) {
        throw validation_error("support file " + path + ": " + e.what());
    }
}

void print_plan(const CoverPlan &p, std::ostream &out)
{
    for (const auto &s : p.steps) {
        out << "  " << to_string(s.kind) << " at index " << s.index << " (weight " << s.ambient_before.weight(s.index)
            << ") on " << s.ambient_before.str();
        if (s.monomial)
            out << " with " << s.monomial->str();
        out << '\n';
    }
    if (p.success)
        out << "cover plan found: " << p.cover_count() << " covers\n";
    else
        out << "no plan found: witness " << p.witness->str() << " at index " << *p.witness_index << " (weight "
            << p.failed_ambient->weight(*p.witness_index) << ") on " << p.failed_ambient->str() << '\n';
}

void print_report(const StabilityReport &r, std::ostream &out)
{
    out << "system: " << r.system.str() << '\n';
    out << "member: " << to_string(r.member_class) << '\n';
    out << "verdict: " << verdict_label(r.verdict) << '\n';
    if (r.alpha)
        out << "alpha >= " << r.alpha->value.str() << " (" << to_string(r.alpha->case_tag) << ")\n";
    else
        out << "alpha: no bound (no smooth cover)\n";
    if (r.aut_finite)
        out << "aut finite: " << (*r.aut_finite ? "yes" : "criterion silent") << '\n';
    out << "trace:\n";
    for (const auto &e : r.trace)
        out << "  " << e.criterion << ": " << e.conclusion << '\n';
}

EnumerationResult enumerate_dim(int dim, Int index, std::optional<Int> dmax)
{
    EnumerationQuery q;
    q.num_weights = dim + 2;
    q.index = index;
    q.d_max = dmax;
    return enumerate(q);
}

} // namespace

WeightSystem parse_weight_system(const std::string &text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw validation_error("weight system '" + text + "' is missing ':d'");
    if (text.find(':', colon + 1) != std::string::npos)
        throw validation_error("weight system '" + text + "' has more than one ':'");
    const Int d = parse_int(std::string_view(text).substr(colon + 1), "degree");
    if (d <= 0)
        throw validation_error("degree must be positive, got " + std::to_string(d));
    std::vector<Int> w;
    std::stringstream ss(text.substr(0, colon));
    std::string tok;
    while (std::getline(ss, tok, ','))
        w.push_back(parse_int(tok, "weight"));
    if (colon > 0 && text[colon - 1] == ',')
        throw validation_error("trailing ',' in weight system '" + text + "'");
    return WeightSystem{std::move(w), d};
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Fano weighted hypersurfaces with a_i | d: enumeration, alpha bounds, smooth covers, K-stability"};
    app.name("divfano");
    app.require_subcommand(1);

    int dim = 0;
    Int index = 1;
    std::optional<Int> dmax;
    std::string format = "tsv";
    std::string out_path;
    auto *enumerate_cmd = app.add_subcommand("enumerate", "list weight systems of a given dimension and index");
    enumerate_cmd->add_option("--dim", dim, "dimension of the hypersurface")->required()->check(CLI::Range(1, 4));
    enumerate_cmd->add_option("--index", index, "Fano index")->check(CLI::PositiveNumber);
    enumerate_cmd->add_option("--dmax", dmax, "degree bound");
    enumerate_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "tsv", "md"}));
    enumerate_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto *table1_cmd = app.add_subcommand("table1", "threefolds of index 1 as a markdown table");
    table1_cmd->add_option("--out", out_path);

    std::string ws_text;
    std::string member_text = "any";
    std::string support_path;
    bool strict = false;
    bool as_json = false;
    auto *analyze_cmd = app.add_subcommand("analyze", "K-stability report for one weight system");
    analyze_cmd->add_option("WS", ws_text, "weights and degree, a0,...,an:d")->required();
    analyze_cmd->add_option("--member", member_text)->check(CLI::IsMember({"fermat", "general", "any"}));
    analyze_cmd->add_option("--support", support_path, "support fixture (JSON)");
    analyze_cmd->add_flag("--strict", strict, "exit 3 when the verdict is unknown");
    analyze_cmd->add_flag("--json", as_json, "print the report as JSON");

    auto *alpha_cmd = app.add_subcommand("alpha", "alpha lower bound, using the universal cover plan");
    alpha_cmd->add_option("WS", ws_text)->required();

    auto *fermat_cmd = app.add_subcommand("fermat", "K-stability of the Fermat member");
    fermat_cmd->add_option("WS", ws_text)->required();

    std::optional<std::size_t> star_index;
    auto *star_cmd = app.add_subcommand("star-check", "check condition (star) on a support fixture");
    star_cmd->add_option("--support", support_path)->required();
    star_cmd->add_option("--index", star_index, "restrict to one variable (file column)");

    bool universal = false;
    auto *cover_cmd = app.add_subcommand("cover-plan", "iterated smooth-cover construction");
    cover_cmd->add_option("WS", ws_text)->required();
    auto *support_opt = cover_cmd->add_option("--support", support_path);
    cover_cmd->add_flag("--universal", universal, "plan valid for every member (default)")->excludes(support_opt);

    std::string dims_text = "2,3,4";
    auto *verify_cmd = app.add_subcommand("verify-lemmas", "batch check of the lct inequalities and the triple bound");
    verify_cmd->add_option("--dims", dims_text, "comma separated dimensions, empty for none")->expected(0, 1);

    auto *batch_cmd = app.add_subcommand("batch", "classify every system of one catalog");
    batch_cmd->add_option("--dim", dim)->required()->check(CLI::Range(1, 4));
    batch_cmd->add_option("--member", member_text)->check(CLI::IsMember({"fermat", "general", "any"}));
    batch_cmd->add_option("--out", out_path);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        if (enumerate_cmd->parsed() || table1_cmd->parsed()) {
            TableFormat tf = TableFormat::markdown;
            EnumerationResult r;
            if (table1_cmd->parsed())
                r = enumerate_dim(3, 1, std::nullopt);
            else {
                r = enumerate_dim(dim, index, dmax);
                tf = format == "json" ? TableFormat::json : format == "md" ? TableFormat::markdown : TableFormat::tsv;
            }
            write_output(render_table(r, tf), out_path, out);
            return exit_ok;
        }

        if (analyze_cmd->parsed()) {
            const WeightSystem ws = parse_weight_system(ws_text);
            std::optional<Support> support;
            if (!support_path.empty())
                support = read_support(support_path).support;
            const StabilityReport r = classify(ws, *member_class_from_string(member_text), support);
            if (as_json)
                out << to_json(r).dump(2) << '\n';
            else
                print_report(r, out);
            return strict && r.verdict == Verdict::unknown ? exit_unknown : exit_ok;
        }

        if (alpha_cmd->parsed()) {
            const WeightSystem ws = parse_weight_system(ws_text);
            const CoverPlan plan = plan_cover_universal(ws);
            const auto a = alpha_lower_bound(ws, plan.success);
            if (a)
                out << "alpha >= " << a->value.str() << " (" << to_string(a->case_tag) << ")\n";
            else
                out << "no bound: the cover procedure finds no plan valid for every member\n";
            return exit_ok;
        }

        if (fermat_cmd->parsed()) {
            const WeightSystem ws = parse_weight_system(ws_text);
            const FermatVerdict f = fermat_k_stability(ws);
            out << "system: " << ws.str() << '\n'
                << "verdict: " << verdict_label(f.verdict) << '\n'
                << "margin: " << f.margin << '\n'
                << "aut finite: " << (f.aut_finite ? "yes" : "criterion silent") << '\n';
            return exit_ok;
        }

        if (star_cmd->parsed()) {
            const SupportFile sf = read_support(support_path);
            std::optional<StarViolation> v;
            if (star_index) {
                const auto &col = sf.column;
                const auto it = std::find(col.begin(), col.end(), *star_index);
                if (it == col.end())
                    throw validation_error("--index " + std::to_string(*star_index) + " is out of range");
                const auto canonical = static_cast<std::size_t>(it - col.begin());
                if (auto m = star_condition_at(sf.support, canonical))
                    v = StarViolation{*m, canonical};
            } else
                v = star_condition(sf.support);
            if (!v) {
                out << "ok: condition holds\n";
                return exit_ok;
            }
            out << "violation: monomial " << sf.to_file_order(v->monomial).str() << " at index "
                << sf.file_index(v->index) << " (weight " << sf.support.ambient().weight(v->index) << ")\n";
            return exit_validation;
        }

        if (cover_cmd->parsed()) {
            const WeightSystem ws = parse_weight_system(ws_text);
            CoverPlan plan;
            if (!support_path.empty()) {
                const SupportFile sf = read_support(support_path);
                if (!(sf.support.ambient() == ws))
                    throw validation_error("support ambient " + sf.support.ambient().str() + " differs from "
                                           + ws.str());
                plan = plan_cover_for_support(sf.support);
            } else
                plan = plan_cover_universal(ws);
            print_plan(plan, out);
            return plan.success ? exit_ok : exit_validation;
        }

        if (verify_cmd->parsed()) {
            std::size_t violations = 0;
            for (int d : parse_dims(dims_text)) {
                const EnumerationResult r = enumerate_dim(d, 1, std::nullopt);
                std::size_t bad = 0;
                for (const auto &ws : r.systems) {
                    const InequalityReport rep = check_lemma_ineq(ws);
                    if (!rep.ok()) {
                        ++bad;
                        out << "  violation on " << ws.str() << '\n';
                    }
                }
                out << "dim " << d << ": " << r.systems.size() << " systems checked, " << bad << " violations\n";
                violations += bad;
            }
            const TripleMinimum tm = coprime_triple_minimum(30);
            out << "coprime triple minimum up to 30: " << tm.gap << " at (" << tm.triple[0] << ',' << tm.triple[1]
                << ',' << tm.triple[2] << ")\n";
            if (tm.gap != 48) {
                out << "triple minimum differs from 48\n";
                ++violations;
            }
            return violations == 0 ? exit_ok : exit_validation;
        }

        if (batch_cmd->parsed()) {
            const EnumerationResult r = enumerate_dim(dim, 1, std::nullopt);
            const BatchSummary s = batch_classify(r, *member_class_from_string(member_text));
            write_output(to_json(s).dump(2) + "\n", out_path, out);
            return exit_ok;
        }
    } catch (const io_error &e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::overflow_error &e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const catalog_error &e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    return exit_validation;
}

} // namespace divfano::cli
