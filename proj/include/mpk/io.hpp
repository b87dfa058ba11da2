#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kreinlanger.hpp"
#include "odesolve.hpp"

namespace mpk::io {

using json = nlohmann::json;

/// Malformed input: either JSON syntax (line/column set) or a schema
/// violation at a JSON pointer path.
class InputError : public std::runtime_error {
   public:
    InputError(const std::string& what, std::string path, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(what), path_(std::move(path)), line_(line), column_(column) {}
    const std::string& path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    std::string path_;
    std::size_t line_;
    std::size_t column_;
};

[[noreturn]] inline void bad(const std::string& path, const std::string& msg) {
    throw InputError((path.empty() ? std::string("/") : path) + ": " + msg, path);
}

// ---------------------------------------------------------------- scalars

inline json to_json(const GaussianRational& x) { return {{"re", rational_string(x.re())}, {"im", rational_string(x.im())}}; }

inline json to_json(const Complex& x) { return {{"re", x.real()}, {"im", x.imag()}, {"approx", true}}; }

inline mpq_class rational_from_json(const json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a rational string such as \"-3/4\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const MathError& e) {
        bad(path, e.what());
    }
}

/// Accepts "p/q" or {"re": "p/q", "im": "r/s"} with im optional.
inline GaussianRational gr_from_json(const json& j, const std::string& path) {
    if (j.is_string()) return GaussianRational(rational_from_json(j, path));
    if (!j.is_object()) bad(path, "expected a rational string or an object {\"re\", \"im\"}");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "re" && it.key() != "im") bad(path + "/" + it.key(), "unknown key");
    if (!j.contains("re")) bad(path, "missing \"re\"");
    mpq_class re = rational_from_json(j["re"], path + "/re");
    mpq_class im = j.contains("im") ? rational_from_json(j["im"], path + "/im") : mpq_class(0);
    return {re, im};
}

// ---------------------------------------------------------- polynomials

template <class F>
json to_json(const Poly<F>& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_json(c));
    return a;
}

inline PolyQ poly_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array of coefficients in ascending powers");
    std::vector<GaussianRational> c;
    for (std::size_t k = 0; k < j.size(); ++k) c.push_back(gr_from_json(j[k], path + "/" + std::to_string(k)));
    return PolyQ(std::move(c));
}

inline json to_json(const RatFun& f) { return {{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

template <class T>
json vec_to_json(const std::vector<T>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

template <class T>
json to_json(const Matrix<T>& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        a.push_back(row);
    }
    return a;
}

inline RatFun ratfun_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den")) bad(path, "expected {\"num\", \"den\"}");
    PolyQ den = poly_from_json(j["den"], path + "/den");
    if (den.is_zero()) bad(path + "/den", "zero denominator");
    return RatFun(poly_from_json(j["num"], path + "/num"), den);
}

template <class T, class Fn>
Matrix<T> grid_from_json(const json& j, const std::string& path, Fn elem, std::optional<std::size_t> rows = {},
                         std::optional<std::size_t> cols = {}) {
    if (!j.is_array()) bad(path, "expected an array of rows");
    if (rows && j.size() != *rows) bad(path, "expected " + std::to_string(*rows) + " rows, got " + std::to_string(j.size()));
    std::size_t r = j.size();
    std::size_t c = cols ? *cols : (r ? j[0].size() : 0);
    Matrix<T> m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        std::string rp = path + "/" + std::to_string(i);
        if (!j[i].is_array()) bad(rp, "expected a row array");
        if (j[i].size() != c) bad(rp, "expected " + std::to_string(c) + " entries, got " + std::to_string(j[i].size()));
        for (std::size_t k = 0; k < c; ++k) m(i, k) = elem(j[i][k], rp + "/" + std::to_string(k));
    }
    return m;
}

inline MatrixQ matrix_from_json(const json& j, const std::string& path, std::optional<std::size_t> rows = {},
                                std::optional<std::size_t> cols = {}) {
    return grid_from_json<GaussianRational>(j, path, gr_from_json, rows, cols);
}

inline MatPoly matpoly_from_json(const json& j, const std::string& path, std::optional<std::size_t> n = {}) {
    return grid_from_json<PolyQ>(j, path, poly_from_json, n, n);
}

inline MatRatFun matratfun_from_json(const json& j, const std::string& path) {
    return grid_from_json<RatFun>(j, path, ratfun_from_json);
}

// --------------------------------------------------------------- input

struct InputDocument {
    std::string name;
    std::string notes;
    MatPoly L;
    json extra;  // optional "diag_form" / "representation" for verification
};

inline const std::vector<std::string>& input_keys() {
    static const std::vector<std::string> keys{"n", "entries", "coefficients", "name", "notes", "diag_form", "representation"};
    return keys;
}

inline json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        std::size_t upto = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
        for (std::size_t k = 0; k < upto; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InputError("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what(),
                         "", line, column);
    }
}

inline InputDocument input_from_json(const json& j) {
    if (!j.is_object()) bad("", "top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& k = input_keys();
        if (std::find(k.begin(), k.end(), it.key()) == k.end()) bad("/" + it.key(), "unknown key");
    }
    if (!j.contains("n")) bad("", "missing \"n\"");
    if (!j["n"].is_number_integer() || j["n"].get<long>() < 1) bad("/n", "must be a positive integer");
    std::size_t n = j["n"].get<std::size_t>();
    bool has_e = j.contains("entries"), has_c = j.contains("coefficients");
    if (has_e == has_c) bad("", "exactly one of \"entries\" or \"coefficients\" is required");
    InputDocument doc;
    if (j.contains("name")) {
        if (!j["name"].is_string()) bad("/name", "must be a string");
        doc.name = j["name"].get<std::string>();
    }
    if (j.contains("notes")) {
        if (!j["notes"].is_string()) bad("/notes", "must be a string");
        doc.notes = j["notes"].get<std::string>();
    }
    if (has_e) {
        doc.L = matpoly_from_json(j["entries"], "/entries", n);
    } else {
        const json& c = j["coefficients"];
        if (!c.is_array() || c.empty()) bad("/coefficients", "expected a nonempty array of n x n matrices A_0, A_1, ...");
        std::vector<MatrixQ> as;
        for (std::size_t k = 0; k < c.size(); ++k) as.push_back(matrix_from_json(c[k], "/coefficients/" + std::to_string(k), n, n));
        doc.L = from_coefficient_matrices(as);
    }
    json extra = json::object();
    for (const char* k : {"diag_form", "representation"})
        if (j.contains(k)) extra[k] = j[k];
    doc.extra = extra;
    return doc;
}

inline InputDocument load_input(const std::string& text) { return input_from_json(parse_text(text)); }

inline json to_json(const InputDocument& d) {
    json j{{"n", d.L.rows()}, {"entries", to_json(d.L)}};
    if (!d.name.empty()) j["name"] = d.name;
    if (!d.notes.empty()) j["notes"] = d.notes;
    return j;
}

// ------------------------------------------------------------- results

inline json to_json(const RootSpec& r) {
    json j{{"exact", r.exact}, {"multiplicity", r.multiplicity}};
    j["value"] = r.exact ? to_json(r.value) : to_json(r.approx);
    return j;
}

inline json to_json(const ElementaryMove& m) {
    using K = ElementaryMove::Kind;
    json j{{"side", m.side == ElementaryMove::Side::Row ? "row" : "col"}, {"i", m.i}};
    switch (m.kind) {
        case K::Swap:
            j["kind"] = "swap";
            j["j"] = m.j;
            break;
        case K::Scale:
            j["kind"] = "scale";
            j["c"] = to_json(m.c);
            break;
        case K::AddMultiple:
            j["kind"] = "add_multiple";
            j["j"] = m.j;
            j["q"] = to_json(m.q);
            break;
    }
    return j;
}

inline ElementaryMove move_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("side") || !j.contains("kind") || !j.contains("i")) bad(path, "expected a move object");
    auto side = j["side"] == "row" ? ElementaryMove::Side::Row : ElementaryMove::Side::Col;
    std::size_t i = j["i"].get<std::size_t>();
    std::string kind = j["kind"].get<std::string>();
    if (kind == "swap") return ElementaryMove::swap(side, i, j.at("j").get<std::size_t>());
    if (kind == "scale") return ElementaryMove::scale(side, i, gr_from_json(j.at("c"), path + "/c"));
    if (kind == "add_multiple") return ElementaryMove::add_multiple(side, i, j.at("j").get<std::size_t>(), poly_from_json(j.at("q"), path + "/q"));
    bad(path + "/kind", "unknown move kind " + kind);
}

inline json to_json(const DiagForm& f) {
    json t = json::array();
    for (const auto& m : f.transcript) t.push_back(to_json(m));
    return {{"S", to_json(f.S)}, {"D", to_json(f.D)}, {"T", to_json(f.T)},
            {"detS", to_json(f.detS)}, {"detT", to_json(f.detT)}, {"transcript", t}};
}

inline DiagForm diagform_from_json(const json& j, const std::string& path, std::optional<std::size_t> n = {}) {
    if (!j.is_object()) bad(path, "expected an object with S, D, T");
    for (const char* k : {"S", "D", "T"})
        if (!j.contains(k)) bad(path, std::string("missing \"") + k + "\"");
    DiagForm f;
    f.S = matpoly_from_json(j["S"], path + "/S", n);
    f.D = matpoly_from_json(j["D"], path + "/D", n);
    f.T = matpoly_from_json(j["T"], path + "/T", n);
    if (j.contains("detS")) f.detS = gr_from_json(j["detS"], path + "/detS");
    if (j.contains("detT")) f.detT = gr_from_json(j["detT"], path + "/detT");
    if (j.contains("transcript")) {
        const json& t = j["transcript"];
        if (!t.is_array()) bad(path + "/transcript", "expected an array");
        for (std::size_t k = 0; k < t.size(); ++k) f.transcript.push_back(move_from_json(t[k], path + "/transcript/" + std::to_string(k)));
    }
    return f;
}

inline json to_json(const DiagCheck& c) {
    return {{"ok", c.ok()}, {"failed_check", std::string(to_string(c.failure))}, {"reason", c.reason}};
}

inline json to_json(const EigenTable& t) {
    json a = json::array();
    for (const auto& e : t.entries) {
        json cols = json::array();
        for (const auto& c : e.columns) cols.push_back({{"index", c.index}, {"order", c.order}});
        a.push_back({{"alpha", to_json(e.alpha)}, {"columns", cols}});
    }
    return a;
}

template <class F>
json to_json(const RootFunctionRecord<F>& r) {
    json chain = json::array();
    for (const auto& v : r.chain) chain.push_back(vec_to_json(v));
    return {{"alpha", to_json(r.alpha)}, {"index", r.index}, {"order", r.order},
            {"phi", vec_to_json(r.phi)}, {"chain", chain}, {"tail", vec_to_json(r.tail)}};
}

template <class F>
json to_json(const SolutionTerm<F>& u) {
    json coeffs = json::array();
    for (const auto& v : u.coeffs) coeffs.push_back(vec_to_json(v));
    std::vector<Poly<F>> p = term_polynomial(u);
    return {{"alpha", to_json(u.alpha)}, {"source_index", u.source_index}, {"coeffs", coeffs},
            {"polynomial", vec_to_json(p)}, {"expanded", render_expanded(u)}, {"chain_form", render_chain_form(u)}};
}

inline json to_json(const BlockSpec& b) {
    return {{"alpha", to_json(b.alpha)}, {"k", b.k}, {"sign", b.sign}, {"source_index", b.source_index}};
}

inline json to_json(const Representation& r) {
    json blocks = json::array();
    for (const auto& b : r.blocks) blocks.push_back(to_json(b));
    return {{"S_inf", to_json(r.S_inf)}, {"A", to_json(r.A)}, {"J", to_json(r.J)}, {"Gamma", to_json(r.Gamma)},
            {"Gamma_plus", to_json(r.Gamma_plus())}, {"kappa", r.kappa}, {"blocks", blocks}};
}

inline Representation representation_from_json(const json& j, const std::string& path, std::size_t n) {
    if (!j.is_object()) bad(path, "expected an object with A, J, Gamma");
    for (const char* k : {"A", "J", "Gamma"})
        if (!j.contains(k)) bad(path, std::string("missing \"") + k + "\"");
    Representation r;
    r.A = matrix_from_json(j["A"], path + "/A");
    std::size_t K = r.A.rows();
    if (r.A.cols() != K && K != 0) bad(path + "/A", "must be square");
    r.J = matrix_from_json(j["J"], path + "/J", K, K);
    r.Gamma = matrix_from_json(j["Gamma"], path + "/Gamma", K, n);
    r.S_inf = j.contains("S_inf") ? matrix_from_json(j["S_inf"], path + "/S_inf", n, n) : MatrixQ(n, n, GaussianRational(0));
    if (j.contains("kappa")) r.kappa = j["kappa"].get<std::size_t>();
    if (j.contains("blocks")) {
        const json& b = j["blocks"];
        if (!b.is_array()) bad(path + "/blocks", "expected an array");
        for (std::size_t k = 0; k < b.size(); ++k) {
            std::string p = path + "/blocks/" + std::to_string(k);
            if (!b[k].is_object() || !b[k].contains("alpha") || !b[k].contains("k") || !b[k].contains("sign"))
                bad(p, "expected {alpha, k, sign}");
            BlockSpec s;
            s.alpha = gr_from_json(b[k]["alpha"], p + "/alpha");
            s.k = b[k]["k"].get<std::size_t>();
            s.sign = b[k]["sign"].get<int>();
            if (b[k].contains("source_index")) s.source_index = b[k]["source_index"].get<std::size_t>();
            r.blocks.push_back(s);
        }
    }
    return r;
}

// ---------------------------------------------------------------- LaTeX

inline std::string latex(const GaussianRational& x) {
    auto q = [](const mpq_class& v) {
        if (v.get_den() == 1) return v.get_num().get_str();
        std::string s = sgn(v) < 0 ? "-" : "";
        mpz_class num = abs(v.get_num());
        return s + "\\frac{" + num.get_str() + "}{" + v.get_den().get_str() + "}";
    };
    if (x.is_real()) return q(x.re());
    std::string im = x.im() == 1 ? "i" : x.im() == -1 ? "-i" : q(x.im()) + "i";
    if (sgn(x.re()) == 0) return im;
    return "(" + q(x.re()) + (sgn(x.im()) > 0 ? "+" : "") + im + ")";
}

inline std::string latex(const PolyQ& p, const std::string& var = "z") {
    if (p.is_zero()) return "0";
    std::string s;
    for (int k = p.degree(); k >= 0; --k) {
        const GaussianRational& c = p.coeffs()[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        std::string mono = k == 0 ? "" : k == 1 ? var : var + "^{" + std::to_string(k) + "}";
        std::string cs = latex(c);
        bool neg = c.is_real() && sgn(c.re()) < 0;
        if (neg) cs = cs.substr(1);
        if (!s.empty()) s += neg ? " - " : " + ";
        else if (neg) s += "-";
        if (k == 0) s += cs;
        else if (cs == "1") s += mono;
        else s += cs + mono;
    }
    return s;
}

inline std::string latex(const RatFun& f) {
    if (f.is_polynomial()) return latex(f.num());
    return "\\frac{" + latex(f.num()) + "}{" + latex(f.den()) + "}";
}

template <class T>
std::string latex(const Matrix<T>& m) {
    std::string s = "\\begin{pmatrix}";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? " \\\\ " : " ";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " & " : "") + latex(m(i, j));
    }
    return s + " \\end{pmatrix}";
}

}  // namespace mpk::io
