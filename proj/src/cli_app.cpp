#include "freeze/cli_app.hpp"

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "freeze/construct.hpp"
#include "freeze/document.hpp"
#include "freeze/lattice.hpp"
#include "freeze/maps.hpp"
#include "freeze/verify.hpp"
#include "freeze/version.hpp"

namespace freeze {

namespace {

using nlohmann::json;

constexpr int kExitFrozen = 0;
constexpr int kExitNotFrozen = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

std::uint64_t default_budget() {
    if (const char* env = std::getenv("FREEZESET_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && end && *end == '\0') return v;
    }
    return VerifyOptions{}.node_budget;
}

struct CommonArgs {
    std::string image_file;
    std::string adjacency_override;
    bool json_output = false;
};

struct SearchArgs {
    std::uint64_t budget = default_budget();
    int threads = 1;
    std::vector<std::string> disabled_rules;

    VerifyOptions options() const {
        VerifyOptions opt;
        opt.node_budget = budget;
        opt.threads = threads;
        for (const auto& name : disabled_rules) {
            auto field = PruneRules::field_by_name(name);
            if (!field)
                throw std::invalid_argument("--no-prune: unknown rule \"" + name +
                                            "\" (expected arc, distance, geodesic, pulling, interior "
                                            "or mandatory)");
            opt.rules.*(*field) = false;
        }
        return opt;
    }
};

void add_common(CLI::App* cmd, CommonArgs& c) {
    cmd->add_option("image", c.image_file, "image document (JSON)")->required();
    cmd->add_option("--adjacency", c.adjacency_override, "override the document adjacency (c1, cN or u)");
    cmd->add_flag("--json", c.json_output, "machine-readable report");
}

void add_search(CLI::App* cmd, SearchArgs& s) {
    cmd->add_option("--budget", s.budget, "search node budget");
    cmd->add_option("--threads", s.threads, "parallel seed searches")->check(CLI::PositiveNumber);
    cmd->add_option("--no-prune", s.disabled_rules,
                    "disable a pruning rule (arc, distance, geodesic, pulling, interior, mandatory)");
}

DigitalImage build_image(const CommonArgs& c) {
    ImageDocument doc = load_image_document(c.image_file);
    std::optional<std::string> override_adjacency;
    if (!c.adjacency_override.empty()) override_adjacency = c.adjacency_override;
    return doc.build(override_adjacency);
}

std::string adjacency_label(const DigitalImage& X) {
    if (X.u() == 1) return "c1 (u=1)";
    if (X.u() == X.dim()) return "cN (u=" + std::to_string(X.u()) + ")";
    return "c" + std::to_string(X.u()) + " (u=" + std::to_string(X.u()) + ")";
}

json base_report(const char* command) {
    json out;
    out["tool"] = kToolName;
    out["version"] = kToolVersion;
    out["command"] = command;
    return out;
}

void print_witness_text(std::ostream& out, const SelfMap& f) {
    int moved = 0;
    for (int i = 0; i < f.image.size(); ++i)
        if (f.assignment[i] != i) ++moved;
    out << "witness moves " << moved << " of " << f.image.size() << " points:\n";
    for (int i = 0; i < f.image.size(); ++i) {
        if (f.assignment[i] != i)
            out << "  " << point_to_string(f.image.point_at(i)) << " -> "
                << point_to_string(f.image.point_at(f.assignment[i])) << "\n";
    }
}

void print_stats_text(std::ostream& out, const SearchStats& st) {
    out << "nodes: " << st.nodes << "  seeds: " << st.seeds_tried << "\n"
        << "pruned: arc " << st.arc_removed << ", distance " << st.distance_removed << ", geodesic "
        << st.geodesic_fixed << ", pulling " << st.pulling_removed << ", interior " << st.interior_fixed
        << "\n";
}

int cmd_info(const CommonArgs& c, std::ostream& out) {
    DigitalImage X = build_image(c);
    PointSet bd = boundary(X);
    PointSet mandatory = mandatory_points(X);
    bool connected = is_connected(X);
    if (c.json_output) {
        json r = base_report("info");
        r["points"] = X.size();
        r["dim"] = X.dim();
        r["adjacency"] = X.u();
        r["connected"] = connected;
        r["boundary_points"] = bd.size();
        r["mandatory_points"] = mandatory.size();
        out << r.dump(2) << "\n";
    } else {
        out << "points:           " << X.size() << "\n"
            << "dim:              " << X.dim() << "\n"
            << "adjacency:        " << adjacency_label(X) << "\n"
            << "connected:        " << (connected ? "yes" : "no") << "\n"
            << "boundary points:  " << bd.size() << "\n"
            << "mandatory points: " << mandatory.size() << "\n";
    }
    return kExitFrozen;
}

struct ConstructArgs {
    std::string method;
    std::string decomposition_file;
};

int cmd_construct(const CommonArgs& c, const ConstructArgs& a, std::ostream& out, std::ostream& err) {
    ImageDocument doc = load_image_document(c.image_file);
    std::optional<std::string> override_adjacency;
    if (!c.adjacency_override.empty()) override_adjacency = c.adjacency_override;
    DigitalImage X = doc.build(override_adjacency);

    CubeDecomposition D;
    if (!a.decomposition_file.empty()) {
        D = load_decomposition(a.decomposition_file, X.dim());
    } else if (doc.uses_cubes && doc.holes.empty()) {
        D.cubes = doc.cubes;
    } else {
        D = trivial_decomposition(X);
    }

    PointSet set;
    if (a.method == "corners") {
        if (X.u() != 1)
            err << "warning: method \"corners\" targets c1; the image uses u=" << X.u() << "\n";
        if (!validate_decomposition(X, D))
            throw std::invalid_argument("construct: cubes do not decompose the image");
        if (!is_connected(X.with_adjacency(1)))
            err << "warning: the image is not c1-connected; the corner union is emitted anyway\n";
        set = corner_union(D);
    } else if (a.method == "boundary") {
        if (X.u() != X.dim())
            err << "warning: method \"boundary\" targets cN; the image uses u=" << X.u() << "\n";
        if (!validate_decomposition(X, D))
            throw std::invalid_argument("construct: cubes do not decompose the image");
        if (!is_connected(X.with_adjacency(X.dim())))
            err << "warning: the image is not cN-connected; the boundary union is emitted anyway\n";
        set = boundary_union(D);
    } else if (a.method == "trivial") {
        set = corner_union(trivial_decomposition(X));
    } else {
        throw std::invalid_argument("construct: unknown method \"" + a.method +
                                    "\" (expected corners, boundary or trivial)");
    }

    if (c.json_output) {
        json r = base_report("construct");
        r["method"] = a.method;
        r["dim"] = X.dim();
        r["count"] = set.size();
        json arr = json::array();
        for (const auto& p : set) arr.push_back(p);
        r["set"] = std::move(arr);
        out << r.dump(2) << "\n";
    } else {
        out << point_set_to_json(set, X.dim()).dump(2) << "\n";
    }
    return kExitFrozen;
}

struct SetArg {
    std::string set_file;
};

int cmd_verify(const CommonArgs& c, const SetArg& s, const SearchArgs& search, std::ostream& out) {
    DigitalImage X = build_image(c);
    PointSet A = load_point_set(s.set_file, X.dim());
    for (const auto& p : A)
        if (!X.contains(p))
            throw std::invalid_argument("verify: set point " + point_to_string(p) +
                                        " is not in the image");
    VerifyOutcome r = verify_freezing(X, A, search.options());
    if (c.json_output) {
        json j = base_report("verify");
        j["status"] = r.frozen() ? "frozen" : "not_frozen";
        j["set_size"] = A.size();
        j["image_points"] = X.size();
        j["witness"] = r.witness ? selfmap_to_json(*r.witness) : json(nullptr);
        j["stats"] = stats_to_json(r.stats);
        out << j.dump(2) << "\n";
    } else {
        out << "status: " << (r.frozen() ? "frozen" : "not-frozen") << "\n";
        if (r.witness) print_witness_text(out, *r.witness);
        print_stats_text(out, r.stats);
    }
    return r.frozen() ? kExitFrozen : kExitNotFrozen;
}

int cmd_minimize(const CommonArgs& c, const SetArg& s, const SearchArgs& search, std::ostream& out,
                 std::ostream& err) {
    DigitalImage X = build_image(c);
    PointSet A = load_point_set(s.set_file, X.dim());
    for (const auto& p : A)
        if (!X.contains(p))
            throw std::invalid_argument("minimize: set point " + point_to_string(p) +
                                        " is not in the image");
    VerifyOptions opt = search.options();
    VerifyOutcome base = verify_freezing(X, A, opt);
    if (!base.frozen()) {
        if (c.json_output) {
            json j = base_report("minimize");
            j["status"] = "not_frozen";
            j["witness"] = selfmap_to_json(*base.witness);
            j["stats"] = stats_to_json(base.stats);
            out << j.dump(2) << "\n";
        } else {
            out << "status: not-frozen (input set does not freeze the image)\n";
            print_witness_text(out, *base.witness);
        }
        return kExitNotFrozen;
    }

    PointSet minimal = greedy_minimize(X, A, opt);
    MinimalityResult proof = is_minimal_freezing(X, minimal, opt);

    if (c.json_output) {
        json j = base_report("minimize");
        j["status"] = "frozen";
        j["dim"] = X.dim();
        j["input_size"] = A.size();
        j["count"] = minimal.size();
        json arr = json::array();
        for (const auto& p : minimal) arr.push_back(p);
        j["minimal_set"] = std::move(arr);
        json removed = json::array();
        for (const auto& p : A)
            if (!set_contains(minimal, p)) removed.push_back(p);
        j["removed"] = std::move(removed);
        json kept = json::array();
        for (const auto& rc : proof.removals) {
            json e;
            e["point"] = rc.removed;
            e["certificate"] = rc.certificate;
            e["witness"] = rc.outcome.witness ? selfmap_to_json(*rc.outcome.witness) : json(nullptr);
            kept.push_back(std::move(e));
        }
        j["kept"] = std::move(kept);
        out << j.dump(2) << "\n";
    } else {
        err << "kept " << minimal.size() << " of " << A.size() << " points; each survivor's removal has a witness\n";
        for (const auto& rc : proof.removals)
            err << "  " << point_to_string(rc.removed) << ": " << rc.certificate << "\n";
        out << point_set_to_json(minimal, X.dim()).dump(2) << "\n";
    }
    return kExitFrozen;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"freezing-set construction and verification for digital images"};
    app.name(kToolName);
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    CommonArgs info_c, construct_c, verify_c, minimize_c;
    ConstructArgs construct_a;
    SetArg verify_s, minimize_s;
    SearchArgs verify_search, minimize_search;

    CLI::App* info = app.add_subcommand("info", "image summary: size, adjacency, boundary, mandatory points");
    add_common(info, info_c);

    CLI::App* construct =
        app.add_subcommand("construct", "build a candidate freezing set from a cube decomposition");
    add_common(construct, construct_c);
    construct->add_option("--method", construct_a.method, "corners, boundary or trivial")->required();
    construct->add_option("--decomposition", construct_a.decomposition_file,
                          "cube decomposition file (JSON); defaults to the document cubes");

    CLI::App* verify = app.add_subcommand("verify", "decide whether a point set freezes the image");
    add_common(verify, verify_c);
    verify->add_option("set", verify_s.set_file, "candidate set (JSON)")->required();
    add_search(verify, verify_search);

    CLI::App* minimize = app.add_subcommand("minimize", "shrink a freezing set to an inclusion-minimal one");
    add_common(minimize, minimize_c);
    minimize->add_option("set", minimize_s.set_file, "frozen set (JSON)")->required();
    add_search(minimize, minimize_search);

    std::vector<const char*> argv;
    argv.push_back(kToolName);
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitFrozen;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kExitFrozen;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitFrozen;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (info->parsed()) return cmd_info(info_c, out);
        if (construct->parsed()) return cmd_construct(construct_c, construct_a, out, err);
        if (verify->parsed()) return cmd_verify(verify_c, verify_s, verify_search, out);
        if (minimize->parsed()) return cmd_minimize(minimize_c, minimize_s, minimize_search, out, err);
        err << "error: no command given\n";
        return kExitUsage;
    } catch (const BudgetExceededError& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace freeze
