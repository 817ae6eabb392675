#include "symtensor/projector.hpp"
#include "symtensor/report_io.hpp"
#include "symtensor/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace symtensor;

namespace {

constexpr int kExitName = 2;
constexpr int kExitQuadrature = 3;
constexpr int kExitInternal = 4;
constexpr int kExitInput = 5;

struct CliConfig {
    std::string space;
    std::string group;
    std::string axis;
    int order = 0;
    std::string format = "text";
    std::string input;
    std::string output;
    double tol = 0.0;
    std::vector<std::string> values;
    std::string rows = "all";
    bool dump = false;
};

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Name: return kExitName;
        case ErrorKind::Quadrature: return kExitQuadrature;
        case ErrorKind::Internal: return kExitInternal;
        default: return kExitInput;
    }
}

std::optional<Eigen::Vector3d> parse_axis(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::stringstream ss(s);
    std::string tok;
    std::vector<double> v;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw Error(ErrorKind::Input, "axis component '" + tok + "' is not a number");
        }
    }
    if (v.size() != 3) throw Error(ErrorKind::Input, "axis needs three comma-separated components");
    return Eigen::Vector3d(v[0], v[1], v[2]);
}

TolerancePolicy tolerance(const CliConfig& c) {
    TolerancePolicy t = TolerancePolicy::from_env();
    if (c.tol > 0.0) t.zero_tol = c.tol;
    t.validate();
    return t;
}

SymmetryGroup resolve_group(const CliConfig& c, const TensorSpace& s) {
    std::optional<int> order;
    if (c.order > 0) order = c.order;
    return group_from_name(c.group, s.n, parse_axis(c.axis), order);
}

void emit(const CliConfig& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.output);
    if (!f) throw Error(ErrorKind::Input, "cannot write '" + c.output + "'");
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Input, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cmd_dim(const CliConfig& c) {
    const TensorSpace s = space_from_name(c.space);
    const FixDimension fd = fix_dimension_detail(s, resolve_group(c, s));
    if (c.format == "json") {
        nlohmann::json j{{"space", s.name}, {"group", c.group}, {"dim", fd.dim}, {"raw", fd.raw},
                         {"residual", fd.residual}, {"degree", fd.degree}};
        emit(c, j.dump() + "\n");
    } else {
        emit(c, std::to_string(fd.dim) + "\n");
    }
    return 0;
}

int cmd_structure(const CliConfig& c) {
    const TensorSpace s = space_from_name(c.space);
    const StructureReport r = structure_report(s, resolve_group(c, s), tolerance(c));
    if (c.format == "json") emit(c, render_json(r));
    else if (c.format == "latex") emit(c, render_latex(r));
    else emit(c, render_text(r));
    return 0;
}

int cmd_project(const CliConfig& c) {
    TensorFile in = parse_tensor_json(read_file(c.input));
    const std::string space_name = c.space.empty() ? in.space : c.space;
    if (space_name.empty()) throw Error(ErrorKind::Input, "no space given on the command line or in the input header");
    const TensorSpace s = space_from_name(space_name);
    const SymmetryGroup g = resolve_group(c, s);
    const FlatTensor p = project(s, g, in.tensor);
    emit(c, tensor_to_json({s.name, p}));
    std::ostream& note = c.output.empty() ? std::cerr : std::cout;
    note << "invariance residual: " << invariance_residual(p, g) << "\n";
    return 0;
}

int cmd_moduli(const CliConfig& c) {
    std::map<std::string, double> values;
    for (const auto& kv : c.values) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Input, "expected LABEL=VALUE, got '" + kv + "'");
        try {
            values[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(ErrorKind::Input, "value in '" + kv + "' is not a number");
        }
    }
    const TensorSpace s = space_from_name("major3");
    const StructureReport r = structure_report(s, group_from_name("so3", 3), tolerance(c));
    const IsotropicModuli m = extract_isotropic_moduli(r, values);
    if (c.format == "json") {
        emit(c, nlohmann::json{{"lambda", m.lambda}, {"mu", m.mu}, {"mu_c", m.mu_c}}.dump() + "\n");
    } else {
        std::ostringstream os;
        os.precision(15);
        os << "lambda = " << m.lambda << "\nmu = " << m.mu << "\nmu_c = " << m.mu_c << "\n";
        emit(c, os.str());
    }
    return 0;
}

int cmd_maps(const CliConfig& c) {
    if (!c.dump) {
        std::ostringstream os;
        for (const auto& n : voigt_map_names()) os << n << "  " << voigt_map(n).description << "\n";
        emit(c, os.str());
        return 0;
    }
    emit(c, dump_maps_json());
    return 0;
}

int cmd_verify(const CliConfig& c) {
    const auto rows = run_reference_table(c.rows);
    int failed = 0;
    std::ostringstream os;
    for (const auto& r : rows) {
        os << (r.pass ? "PASS" : "FAIL") << "  [" << r.category << "] " << r.id << "  expected: " << r.expected
           << "  actual: " << r.actual << "\n";
        failed += r.pass ? 0 : 1;
    }
    os << rows.size() - static_cast<std::size_t>(failed) << "/" << rows.size() << " rows passed\n";
    emit(c, os.str());
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetry-adapted tensor spaces: fixed-subspace dimensions, projections and structure reports"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto add_target = [&](CLI::App* sub, bool space_required) {
        auto* opt = sub->add_option("--space", cfg.space, "tensor space (" + [] {
            std::string s;
            for (const auto& n : space_catalog_names()) s += (s.empty() ? "" : ", ") + n;
            return s;
        }() + ")");
        if (space_required) opt->required();
        sub->add_option("--group", cfg.group, "symmetry group, e.g. cubic, so3, o2-e3, d4")->required();
        sub->add_option("--axis", cfg.axis, "axis x,y,z for axial 3D groups");
        sub->add_option("--order", cfg.order, "order n for the zn / dn group names");
    };
    auto add_output = [&](CLI::App* sub, std::vector<std::string> formats) {
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(formats));
        sub->add_option("--output,-o", cfg.output, "write to a file instead of stdout");
        sub->add_option("--tol", cfg.tol, "zero tolerance override (also SYMTENSOR_TOL)");
    };

    auto* dim = app.add_subcommand("dim", "dimension of the fixed subspace");
    add_target(dim, true);
    add_output(dim, {"text", "json"});

    auto* structure = app.add_subcommand("structure", "matrix pattern of the invariant tensors");
    add_target(structure, true);
    add_output(structure, {"text", "json", "latex"});

    auto* proj = app.add_subcommand("project", "average a tensor over the group");
    add_target(proj, false);
    proj->add_option("--input,-i", cfg.input, "tensor JSON {n, k, space, coeffs}")->required();
    add_output(proj, {"json"});

    auto* moduli = app.add_subcommand("moduli", "lambda, mu, mu_c from isotropic major3 labels");
    moduli->add_option("--set", cfg.values, "LABEL=VALUE, repeatable (e.g. C12=1 C44=3 C45=1)")->required();
    add_output(moduli, {"text", "json"});

    auto* maps = app.add_subcommand("maps", "list the Voigt maps");
    maps->add_flag("--dump", cfg.dump, "print every slot table as JSON");
    maps->add_option("--output,-o", cfg.output, "write to a file instead of stdout");

    auto* verify = app.add_subcommand("verify-paper", "run the reference table");
    verify->add_option("--rows", cfg.rows, "all or a comma list of: dims, characters, structure, projector, haar, moduli, voigt");
    verify->add_option("--output,-o", cfg.output, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*dim) return cmd_dim(cfg);
        if (*structure) return cmd_structure(cfg);
        if (*proj) return cmd_project(cfg);
        if (*moduli) return cmd_moduli(cfg);
        if (*maps) return cmd_maps(cfg);
        if (*verify) return cmd_verify(cfg);
    } catch (const Error& e) {
        std::cerr << "symtensor: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "symtensor: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInput;
}
