#include "symtensor/report_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace symtensor {

using nlohmann::json;

namespace {

const char* kind_name(EntryKind k) {
    switch (k) {
        case EntryKind::Zero: return "zero";
        case EntryKind::Free: return "free";
        default: return "dependent";
    }
}

EntryKind kind_from(const std::string& s) {
    if (s == "zero") return EntryKind::Zero;
    if (s == "free") return EntryKind::Free;
    if (s == "dependent") return EntryKind::Dependent;
    throw Error(ErrorKind::Input, "unknown entry kind '" + s + "'");
}

json combo_json(const std::vector<ComboTerm>& combo) {
    json arr = json::array();
    for (const auto& t : combo) {
        arr.push_back({{"coefficient", t.coefficient}, {"text", t.text}, {"snapped", t.snapped}, {"label", t.label}});
    }
    return arr;
}

std::vector<ComboTerm> combo_from(const json& arr) {
    std::vector<ComboTerm> out;
    for (const auto& j : arr) {
        out.push_back({j.at("coefficient").get<double>(), j.at("text").get<std::string>(), j.at("snapped").get<bool>(),
                       j.at("label").get<std::string>()});
    }
    return out;
}

// "C12" -> "C_{12}", "G16_16" -> "G_{16,16}"
std::string latex_symbol(const std::string& label) {
    std::size_t i = 0;
    while (i < label.size() && !std::isdigit(static_cast<unsigned char>(label[i]))) ++i;
    std::string sub = label.substr(i);
    std::replace(sub.begin(), sub.end(), '_', ',');
    return "\\widetilde{" + label.substr(0, i) + "}_{" + sub + "}";
}

// "3√2/4" -> "\frac{3\sqrt{2}}{4}"
std::string latex_coefficient(std::string text) {
    std::string num = text, den;
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    const std::string root = "√";
    if (auto r = num.find(root); r != std::string::npos) {
        num = num.substr(0, r) + "\\sqrt{" + num.substr(r + root.size()) + "}";
    }
    return den.empty() ? num : "\\frac{" + num + "}{" + den + "}";
}

std::string latex_entry(const StructureEntry& e) {
    if (e.kind == EntryKind::Zero) return "0";
    if (e.kind == EntryKind::Free) return latex_symbol(e.label);
    if (!e.label.empty()) return (e.display.front() == '-' ? "-" : "") + latex_symbol(e.label);
    std::string s;
    for (std::size_t i = 0; i < e.combo.size(); ++i) {
        const auto& t = e.combo[i];
        const bool neg = t.coefficient < 0.0;
        if (i > 0) s += neg ? " - " : " + ";
        else if (neg) s += "-";
        std::string mag = t.text;
        if (!mag.empty() && mag.front() == '-') mag.erase(0, 1);
        if (mag != "1") s += latex_coefficient(mag) + " ";
        s += latex_symbol(t.label);
    }
    return s;
}

}  // namespace

std::string render_text(const StructureReport& r) {
    std::ostringstream os;
    os << "space: " << r.space << "\ngroup: " << r.group << "\ndim: " << r.dim << "\nshape: " << r.rows << "x"
       << r.cols << "\n\n";
    std::vector<std::size_t> width(static_cast<std::size_t>(r.cols), 1);
    for (const auto& row : r.entries)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].display.size());
    for (const auto& row : r.entries) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << "  ";
            const std::string& d = row[c].display;
            // UTF-8 multibyte coefficients make the padding approximate; labels are ASCII.
            os << std::string(width[c] - std::min(width[c], d.size()), ' ') << d;
        }
        os << "\n";
    }
    if (!r.constraints.empty()) {
        os << "\nconstraints:\n";
        for (const auto& c : r.constraints) os << "  " << c << "\n";
    }
    return os.str();
}

std::string render_json(const StructureReport& r) {
    json j;
    j["space"] = r.space;
    j["group"] = r.group;
    j["dim"] = r.dim;
    j["shape"] = {r.rows, r.cols};
    json rows = json::array();
    for (const auto& row : r.entries) {
        json jr = json::array();
        for (const auto& e : row) {
            json je{{"kind", kind_name(e.kind)}, {"display", e.display}};
            if (!e.label.empty()) je["label"] = e.label;
            if (e.kind == EntryKind::Dependent) je["combo"] = combo_json(e.combo);
            jr.push_back(std::move(je));
        }
        rows.push_back(std::move(jr));
    }
    j["entries"] = std::move(rows);
    j["free_labels"] = r.free_labels;
    json named = json::array();
    for (const auto& n : r.named) named.push_back({{"label", n.label}, {"combo", combo_json(n.combo)}});
    j["named"] = std::move(named);
    j["constraints"] = r.constraints;
    return j.dump(2) + "\n";
}

StructureReport report_from_json(const std::string& text) {
    StructureReport r;
    try {
        const json j = json::parse(text);
        r.space = j.at("space").get<std::string>();
        r.group = j.at("group").get<std::string>();
        r.dim = j.at("dim").get<int>();
        r.rows = j.at("shape").at(0).get<int>();
        r.cols = j.at("shape").at(1).get<int>();
        for (const auto& jr : j.at("entries")) {
            std::vector<StructureEntry> row;
            for (const auto& je : jr) {
                StructureEntry e;
                e.kind = kind_from(je.at("kind").get<std::string>());
                e.display = je.at("display").get<std::string>();
                if (je.contains("label")) e.label = je["label"].get<std::string>();
                if (je.contains("combo")) e.combo = combo_from(je["combo"]);
                row.push_back(std::move(e));
            }
            r.entries.push_back(std::move(row));
        }
        r.free_labels = j.at("free_labels").get<std::vector<std::string>>();
        for (const auto& jn : j.at("named")) r.named.push_back({jn.at("label").get<std::string>(), combo_from(jn.at("combo"))});
        r.constraints = j.at("constraints").get<std::vector<std::string>>();
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::Input, std::string("malformed report JSON: ") + ex.what());
    }
    return r;
}

std::string render_latex(const StructureReport& r) {
    const bool sym = r.rows == r.cols && rendering_for(r.space).symmetric;
    std::ostringstream os;
    os << "\\begin{pmatrix}\n";
    for (int i = 0; i < r.rows; ++i) {
        for (int c = 0; c < r.cols; ++c) {
            if (c) os << " & ";
            if (sym && c < i) {
                if (i == r.rows - 1 && c == 0) os << "\\mathrm{sym}";
                continue;
            }
            os << latex_entry(r.at(i, c));
        }
        os << (i + 1 < r.rows ? " \\\\\n" : "\n");
    }
    os << "\\end{pmatrix}\n";
    for (const auto& c : r.constraints) {
        std::string s;
        std::istringstream is(c);
        std::string tok;
        while (is >> tok) {
            if (!s.empty()) s += " ";
            const bool sym_tok = !tok.empty() && std::isalpha(static_cast<unsigned char>(tok.front()));
            s += sym_tok ? latex_symbol(tok) : (tok == "=" || tok == "+" || tok == "-") ? tok : latex_coefficient(tok);
        }
        os << "% " << c << "\n" << s << "\n";
    }
    return os.str();
}

TensorFile parse_tensor_json(const std::string& text) {
    TensorFile f;
    try {
        const json j = json::parse(text);
        const int n = j.at("n").get<int>();
        const int k = j.at("k").get<int>();
        if (n < 1 || n > 3 || k < 1 || k > 6) throw Error(ErrorKind::Input, "tensor header needs 1 <= n <= 3, 1 <= k <= 6");
        f.space = j.value("space", std::string{});
        const auto coeffs = j.at("coeffs").get<std::vector<double>>();
        if (static_cast<int>(coeffs.size()) != ipow(n, k)) {
            std::ostringstream os;
            os << "expected " << ipow(n, k) << " coefficients, got " << coeffs.size();
            throw Error(ErrorKind::Input, os.str());
        }
        f.tensor = FlatTensor::from(n, k, Eigen::Map<const Vector>(coeffs.data(), static_cast<Eigen::Index>(coeffs.size())));
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::Input, std::string("malformed tensor JSON: ") + ex.what());
    }
    return f;
}

std::string tensor_to_json(const TensorFile& f) {
    json j;
    j["n"] = f.tensor.n;
    j["k"] = f.tensor.k;
    if (!f.space.empty()) j["space"] = f.space;
    j["coeffs"] = std::vector<double>(f.tensor.coeffs.data(), f.tensor.coeffs.data() + f.tensor.coeffs.size());
    return j.dump() + "\n";
}

std::string dump_maps_json() {
    json out = json::object();
    for (const auto& name : voigt_map_names()) {
        const VoigtMap& m = voigt_map(name);
        json slots = json::array();
        for (int a = 0; a < m.size(); ++a) {
            const auto& s = m.slots[static_cast<std::size_t>(a)];
            json pats = json::array();
            for (const auto& p : s.pattern) {
                std::vector<int> one_based;
                for (int i : p) one_based.push_back(i + 1);
                pats.push_back(one_based);
            }
            slots.push_back({{"slot", a + 1}, {"tag", s.tag}, {"indices", pats}, {"forward_scale", s.forward_scale},
                             {"inverse_scale", s.inverse_scale}});
        }
        out[name] = {{"description", m.description}, {"n", m.n}, {"order", m.order}, {"slots", slots}};
    }
    json renderings = json::object();
    for (const auto& space : space_catalog_names()) {
        const Rendering& r = rendering_for(space);
        renderings[space] = {{"rows", r.row_map}, {"cols", r.col_map}, {"rows_read_trailing_indices", r.rows_trailing},
                             {"symmetric", r.symmetric}, {"label_prefix", r.label_prefix}};
    }
    return json{{"maps", out}, {"renderings", renderings}}.dump(2) + "\n";
}

}  // namespace symtensor
