#pragma once

#include <ostream>
#include <string>

#include "mpk/io.hpp"

namespace mpk::cli {

using io::json;

/// Process exit codes.
enum Exit : int {
    kOk = 0,
    kInputError = 1,
    kVerificationFailed = 2,
    kNotHermitian = 3,
    kDivergentAtInfinity = 4,
    kNonRealSpectrum = 5,
    kMathError = 6,
};

struct Flags {
    bool latex = false;
    bool verify = false;
    bool allow_numeric_roots = false;
};

inline int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotInvertible: return kVerificationFailed;
        case ErrorKind::NotHermitian: return kNotHermitian;
        case ErrorKind::DivergentAtInfinity: return kDivergentAtInfinity;
        case ErrorKind::NonRealSpectrum:
        case ErrorKind::NonExactSpectrum: return kNonRealSpectrum;
        default: return kMathError;
    }
}

namespace detail {

struct Failure {
    int code;
    std::string message;
};

inline json header(const std::string& cmd, const io::InputDocument& doc) {
    json j{{"command", cmd}, {"n", doc.L.rows()}};
    if (!doc.name.empty()) j["name"] = doc.name;
    return j;
}

inline void require_exact(const EigenTable& t, const Flags& f) {
    if (!t.all_exact() && !f.allow_numeric_roots)
        throw Failure{kMathError, "some eigenvalues are not in Q(i); rerun with --allow-numeric-roots for approximate values"};
}

inline json cmd_diagonalize(const io::InputDocument& doc, const Flags& f, int& code) {
    json out = header("diagonalize", doc);
    DiagForm form = diagonalize(doc.L);
    DiagCheck chk = verify_diag(doc.L, form);
    out["diag_form"] = io::to_json(form);
    out["verification"] = io::to_json(chk);
    if (f.latex) out["latex"] = {{"S", io::latex(form.S)}, {"D", io::latex(form.D)}, {"T", io::latex(form.T)}};
    if (!chk.ok()) code = kVerificationFailed;
    return out;
}

inline json cmd_spectrum(const io::InputDocument& doc, const Flags& f) {
    json out = header("spectrum", doc);
    auto rep = degree_report(doc.L);
    DiagForm form = diagonalize(doc.L);
    EigenTable t = eigen_table(form);
    require_exact(t, f);
    out["det"] = io::to_json(mat_det(doc.L));
    out["degrees"] = {{"det_degree", rep.det_degree}, {"nl", rep.nl}, {"monic", rep.monic},
                      {"max_minor_degree", rep.max_minor_degree}, {"convergent_at_infinity", rep.convergent_at_infinity},
                      {"degree_bound_holds", rep.degree_bound_holds}};
    json d = json::array();
    for (std::size_t i = 0; i < form.size(); ++i) d.push_back(io::to_json(form.d(i)));
    out["diagonal"] = d;
    out["eigenvalues"] = io::to_json(t);
    return out;
}

inline json cmd_jordan(const io::InputDocument& doc, const Flags& f) {
    json out = header("jordan", doc);
    DiagForm form = diagonalize(doc.L);
    CanonicalSystem cs = canonical_system(doc.L, form);
    require_exact(cs.table, f);
    json recs = json::array();
    for (const auto& r : cs.exact) {
        json j = io::to_json(r);
        auto pc = pole_cancellation(doc.L, r);
        auto chk = verify_chain(doc.L, r.alpha.value, r.chain);
        j["psi"] = io::vec_to_json(pc.psi);
        j["vanish_order"] = pc.vanish_order;
        j["chain_check"] = {{"valid_length", chk.valid_length}, {"maximal", chk.maximal}};
        recs.push_back(j);
    }
    for (const auto& r : cs.approx) {
        json j = io::to_json(r);
        auto chk = verify_chain(doc.L, r.alpha.approx, r.chain, 1e-9);
        j["chain_check"] = {{"valid_length", chk.valid_length}, {"maximal", chk.maximal}};
        recs.push_back(j);
    }
    out["eigenvalues"] = io::to_json(cs.table);
    out["records"] = recs;
    out["total_length"] = cs.total_length();
    return out;
}

inline json cmd_solve_ode(const io::InputDocument& doc, const Flags& f, int& code) {
    json out = header("solve-ode", doc);
    CanonicalSystem cs = canonical_system(doc.L);
    require_exact(cs.table, f);
    GeneralSolution g = general_solution(doc.L, cs);
    json terms = json::array();
    bool all_ok = true;
    auto emit = [&](const auto& t) {
        json j = io::to_json(t);
        if (f.latex) j["latex"] = render_latex(t);
        if (f.verify) {
            auto chk = verify_solution(doc.L, t);
            j["residual_zero"] = chk.ok;
            all_ok = all_ok && chk.ok;
        }
        terms.push_back(j);
    };
    for (const auto& t : g.exact) emit(t);
    for (const auto& t : g.approx) emit(t);
    out["dimension"] = g.dimension();
    out["independent"] = g.independent;
    out["terms"] = terms;
    if (!all_ok || !g.independent) code = kVerificationFailed;
    return out;
}

inline json cmd_represent(const io::InputDocument& doc, const Flags& f) {
    json out = header("represent", doc);
    RepresentResult r = represent(doc.L);
    out["degrees"] = {{"det_degree", r.report.degrees.det_degree}, {"nl", r.report.degrees.nl},
                      {"max_minor_degree", r.report.degrees.max_minor_degree}};
    out["representation"] = io::to_json(r.rep);
    json limits = json::array();
    for (const auto& e : r.per_eigenvalue) {
        std::size_t k = 0;
        for (const auto* rec : r.system.at(e.alpha))
            limits.push_back({{"alpha", io::to_json(e.alpha)}, {"index", rec->index}, {"order", rec->order},
                              {"limit", io::to_json(e.chain_limits[k++])}});
    }
    out["chain_limits"] = limits;
    json tops = json::array();
    for (const auto& t : top_residue_checks(r.Lhat, r.rep))
        tops.push_back({{"alpha", io::to_json(t.alpha)}, {"rank", t.rank}, {"ok", t.ok}});
    out["top_residues"] = tops;
    out["inverse_hat"] = io::to_json(r.Lhat);
    out["verification"] = {{"ok", true}};
    if (f.latex)
        out["latex"] = {{"A", io::latex(r.rep.A)}, {"J", io::latex(r.rep.J)}, {"Gamma", io::latex(r.rep.Gamma)},
                        {"S_inf", io::latex(r.rep.S_inf)}, {"inverse_hat", io::latex(r.Lhat)}};
    return out;
}

inline json cmd_verify(const io::InputDocument& doc, const Flags& f, int& code) {
    json out = header("verify", doc);
    std::size_t n = doc.L.rows();
    bool supplied = false, ok = true;
    if (doc.extra.contains("diag_form")) {
        supplied = true;
        DiagForm form = io::diagform_from_json(doc.extra["diag_form"], "/diag_form", n);
        DiagCheck chk = verify_diag(doc.L, form.S, form.D, form.T);
        out["diag_form"] = io::to_json(chk);
        ok = ok && chk.ok();
    }
    if (doc.extra.contains("representation")) {
        supplied = true;
        Representation rep = io::representation_from_json(doc.extra["representation"], "/representation", n);
        auto chk = verify_representation(inverse_hat(doc.L), rep);
        out["representation"] = {{"ok", chk.ok}, {"reason", chk.reason}};
        if (!chk.ok) out["representation"]["defect"] = io::to_json(chk.defect);
        ok = ok && chk.ok;
    }
    if (!supplied) {
        DiagForm form = diagonalize(doc.L);
        DiagCheck dchk = verify_diag(doc.L, form);
        out["diag_form"] = io::to_json(dchk);
        ok = ok && dchk.ok();
        CanonicalSystem cs = canonical_system(doc.L, form);
        require_exact(cs.table, f);
        bool chains = true;
        for (const auto& r : cs.exact) {
            auto c = verify_chain(doc.L, r.alpha.value, r.chain);
            chains = chains && c.valid_length == r.order && c.maximal;
        }
        out["chains"] = {{"ok", chains}};
        GeneralSolution g = general_solution(doc.L, cs);
        bool sol = g.independent;
        for (const auto& t : g.exact) sol = sol && verify_solution(doc.L, t).ok;
        for (const auto& t : g.approx) sol = sol && verify_solution(doc.L, t).ok;
        out["solutions"] = {{"ok", sol}, {"dimension", g.dimension()}};
        ok = ok && chains && sol;
    }
    out["ok"] = ok;
    if (!ok) code = kVerificationFailed;
    return out;
}

}  // namespace detail

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"diagonalize", "spectrum", "jordan", "solve-ode", "represent", "verify"};
    return c;
}

/// Runs one command on the text of an input document. Machine output goes to
/// `out`, diagnostics to `err`; the return value is the exit code.
inline int run(const std::string& cmd, const std::string& text, const Flags& flags, std::ostream& out, std::ostream& err) {
    int code = kOk;
    json result;
    try {
        io::InputDocument doc = io::load_input(text);
        if (cmd == "diagonalize") result = detail::cmd_diagonalize(doc, flags, code);
        else if (cmd == "spectrum") result = detail::cmd_spectrum(doc, flags);
        else if (cmd == "jordan") result = detail::cmd_jordan(doc, flags);
        else if (cmd == "solve-ode") result = detail::cmd_solve_ode(doc, flags, code);
        else if (cmd == "represent") result = detail::cmd_represent(doc, flags);
        else if (cmd == "verify") result = detail::cmd_verify(doc, flags, code);
        else {
            err << "error: unknown command " << cmd << "\n";
            return kInputError;
        }
    } catch (const io::InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const detail::Failure& e) {
        err << "error: " << e.message << "\n";
        return e.code;
    } catch (const MathError& e) {
        std::string msg = e.what();
        if (e.kind() == ErrorKind::NotInvertible) msg = "det L \xe2\x89\xa1 0: " + msg;
        err << "error [" << to_string(e.kind()) << "]: " << msg << "\n";
        return exit_code(e.kind());
    }
    out << result.dump(2) << "\n";
    if (code == kVerificationFailed) err << "verification failed\n";
    return code;
}

}  // namespace mpk::cli
