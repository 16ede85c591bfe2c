#include "eigsch/eigsch.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

using namespace eigsch;

namespace {

enum Exit { kOk = 0, kNegative = 1, kMalformed = 2 };

struct Options {
    std::string format = "json";
    std::string input = "-";
    int n = 0;
    int d = 0;
    int degree = 0;
    bool symmetric = false;
    bool curves = false;
    double tol = kSolverTolerance;
    int window = -1;
    std::uint64_t seed = 0;
    std::string point;
};

Json read_json(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path);
        if (!in) throw SchemaError("cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

bool text_mode(const Options& o) { return o.format == "text"; }

void emit(const Options& o, const Json& j, const std::string& text) {
    if (text_mode(o))
        std::cout << text;
    else
        std::cout << j.dump(2) << "\n";
}

std::string point_text(const ProjPoint& p) {
    std::ostringstream os;
    os << "(";
    if (const auto* r = std::get_if<RatPoint>(&p)) {
        for (std::size_t k = 0; k < r->coords.size(); ++k) os << (k ? " : " : "") << to_string(r->coords[k]);
    } else {
        const auto& c = std::get<ComplexPoint>(p).coords;
        for (std::size_t k = 0; k < c.size(); ++k) {
            os << (k ? " : " : "") << c[k].real();
            if (c[k].imag() != 0) os << (c[k].imag() < 0 ? "-" : "+") << std::abs(c[k].imag()) << "i";
        }
    }
    os << ")";
    return os.str();
}

std::string tuple_text(const DetTuple& f) {
    std::ostringstream os;
    for (auto [i, j] : index_pairs(f.n)) os << "f" << i << j << " = " << f.at(i, j).to_string() << "\n";
    return os.str();
}

std::string tensor_text(const PSTensor& t) {
    std::ostringstream os;
    for (int i = 0; i <= t.n; ++i) os << "g" << i << " = " << t.forms[static_cast<std::size_t>(i)].to_string() << "\n";
    return os.str();
}

std::string set_text(const EigenpointSet& s) {
    std::ostringstream os;
    os << s.size() << " eigenpoints\n";
    for (std::size_t k = 0; k < s.size(); ++k) {
        os << "  " << point_text(s.points[k]);
        if (s.multiplicity[k] > 1) os << "  multiplicity " << s.multiplicity[k];
        if (std::holds_alternative<ComplexPoint>(s.points[k]))
            os << "  residual " << s.residual[k] << (s.polished[k] ? "" : "  (unpolished)");
        os << "\n";
    }
    for (const auto& f : s.chart_failures) os << "  warning: " << f << "\n";
    return os.str();
}

std::vector<Rational> parse_point_option(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(parse_rational(item));
        } catch (const std::invalid_argument& e) {
            throw SchemaError(e.what());
        }
    }
    return out;
}

int cmd_generators(const Options& o) {
    auto t = tensor_from_json(read_json(o.input));
    auto f = std::visit([](const auto& x) { return determinantal_generators(x); }, t);
    emit(o, to_json(f), tuple_text(f));
    return kOk;
}

int cmd_check_equations(const Options& o) {
    Json in = read_json(o.input);
    Json out;
    std::ostringstream text;
    if (in.contains("minors")) {
        auto f = det_tuple_from_json(in);
        bool kz = koszul_check(f);
        bool dr = derham_check(f);
        out = Json{{"koszul", kz}, {"derham", dr}};
        text << "koszul: " << (kz ? "yes" : "no") << "\nde Rham: " << (dr ? "yes" : "no") << "\n";
        if (kz) {
            auto t = recover_partially_symmetric(f);
            out["tensor"] = to_json(*t);
            text << "recovered tensor:\n" << tensor_text(*t);
        }
        if (kz && dr) {
            auto s = recover_symmetric(f);
            out["symmetric_tensor"] = to_json(*s);
            text << "recovered form: " << s->f.to_string() << "\n";
        }
        emit(o, out, text.str());
        return kz ? kOk : kNegative;
    }
    // Unordered forms: search for a basis in which they become a tuple of minors.
    int n = detail::require_int(in, "n");
    int d = detail::require_int(in, "d");
    if (n < 1 || d < 2) throw SchemaError("need n >= 1 and d >= 2");
    const auto& forms = detail::require(in, "forms");
    if (!forms.is_array() || forms.size() != pair_count(n)) throw SchemaError("expected C(n+1,2) forms");
    std::vector<Poly> hs;
    for (const auto& h : forms) {
        hs.push_back(detail::parse_poly_field(h, n + 1));
        if (!hs.back().is_homogeneous_of_degree(d)) throw SchemaError("forms must be homogeneous of degree d");
    }
    auto res = basis_change_search(hs, o.symmetric, o.seed);
    out = Json{{"found", res.change.has_value()}, {"solution_dim", res.solution_dim}, {"exhaustive", res.exhaustive}};
    text << (res.change ? "basis found" : "no basis found") << " (solution space dim " << res.solution_dim
         << (res.exhaustive ? "" : ", sampled") << ")\n";
    if (res.change) {
        Json m = Json::array();
        for (std::size_t r = 0; r < res.change->m.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < res.change->m.cols(); ++c) row.push_back(to_string(res.change->m(r, c)));
            m.push_back(row);
        }
        out["matrix"] = m;
        out["tuple"] = to_json(res.change->f);
        auto t = recover_partially_symmetric(res.change->f);
        out["tensor"] = to_json(*t);
        text << tuple_text(res.change->f);
    }
    emit(o, out, text.str());
    return res.change ? kOk : kNegative;
}

int cmd_fit_points(const Options& o) {
    Json in = read_json(o.input);
    int d = o.degree > 0 ? o.degree : (in.contains("d") ? detail::require_int(in, "d") : 0);
    if (d < 2) throw SchemaError("degree d >= 2 required (--degree or field \"d\")");
    bool symmetric = o.symmetric || (in.contains("symmetric") && in.at("symmetric").is_boolean() && in.at("symmetric").get<bool>());
    std::vector<RatPoint> pts;
    for (const auto& p : points_from_json(in)) {
        if (!std::holds_alternative<RatPoint>(p)) throw SchemaError("fit-points needs exact coordinates");
        pts.push_back(std::get<RatPoint>(p));
    }
    auto res = detail::wrap([&] { return fit_tensor_to_points(pts, d, symmetric); });
    Json out = to_json(res);
    std::ostringstream text;
    text << (res.found ? "found" : "not found") << ": kernel dim " << res.kernel_dim << ", trivial dim " << res.trivial_dim << "\n";
    if (res.found) {
        auto t = std::visit(
            [](const auto& w) -> PSTensor {
                using W = std::decay_t<decltype(w)>;
                if constexpr (std::is_same_v<W, SymTensor>)
                    return gradient_tensor(w);
                else if constexpr (std::is_same_v<W, PSTensor>)
                    return w;
                else
                    throw std::logic_error("missing witness");
            },
            res.witness);
        bool zd = dimension_probe(determinantal_generators(t)).zero_dimensional;
        out["witness_zero_dimensional"] = zd;
        if (const auto* s = std::get_if<SymTensor>(&res.witness))
            text << "witness: " << s->f.to_string() << "\n";
        else
            text << "witness:\n" << tensor_text(t);
        text << "witness eigenscheme " << (zd ? "is" : "is not") << " 0-dimensional\n";
    }
    emit(o, out, text.str());
    return res.found ? kOk : kNegative;
}

int cmd_hilbert(const Options& o) {
    Json in = read_json(o.input);
    auto f = in.contains("minors") ? det_tuple_from_json(in)
                                   : determinantal_generators(as_partially_symmetric(tensor_from_json(in)));
    int window = o.window >= 0 ? o.window : default_hilbert_window(f.n, f.d);
    auto rows = compare_hilbert(f, window);
    bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.agree; });
    std::ostringstream text;
    text << "e  predicted  actual\n";
    for (const auto& r : rows) text << r.degree << "  " << r.predicted << "  " << r.actual << (r.agree ? "" : "  *") << "\n";
    emit(o, Json{{"n", f.n}, {"d", f.d}, {"w", w_count(f.n, f.d)}, {"agree", all}, {"table", to_json(rows)}}, text.str());
    return all ? kOk : kNegative;
}

int cmd_betti(const Options& o) {
    auto b = detail::wrap([&] { return predicted_betti(o.n, o.d); });
    std::ostringstream text;
    for (int i = 1; i <= b.n; ++i) {
        text << "F" << i << " =";
        bool first = true;
        for (const auto& e : b.at_index(i)) {
            text << (first ? " " : " + ") << "R(-" << e.twist << ")^" << e.multiplicity;
            first = false;
        }
        text << "\n";
    }
    emit(o, to_json(b), text.str());
    return kOk;
}

int cmd_solve(const Options& o) {
    auto t = as_partially_symmetric(tensor_from_json(read_json(o.input)));
    EigenpointSet s;
    try {
        if (t.n == 1)
            s = solve_eigenpoints_p1(t);
        else if (t.n == 2)
            s = solve_eigenpoints_p2(t, o.tol);
        else
            throw SchemaError("solve supports n = 1 and n = 2 only");
    } catch (const std::domain_error& e) {
        emit(o, Json{{"error", e.what()}}, std::string(e.what()) + "\n");
        return kNegative;
    }
    Json out = to_json(s);
    if (t.n == 2) out["expected"] = w_count(2, t.d);
    emit(o, out, set_text(s));
    return kOk;
}

int cmd_fermat(const Options& o) {
    auto s = detail::wrap([&] { return fermat_eigenpoints(o.n, o.d); });
    emit(o, to_json(s), set_text(s));
    return kOk;
}

int cmd_geometry(const Options& o) {
    Json in = read_json(o.input);
    int d = o.degree > 0 ? o.degree : (in.contains("d") ? detail::require_int(in, "d") : 0);
    if (d < 2) throw SchemaError("degree d >= 2 required (--degree or field \"d\")");
    auto pts = points_from_json(in);
    if (pts.size() < 2) throw SchemaError("at least two points required");
    ConfigReport r;
    detail::wrap([&] {
        if (std::holds_alternative<RatPoint>(pts.front())) {
            std::vector<RatPoint> v;
            for (const auto& p : pts) v.push_back(std::get<RatPoint>(p));
            r = collinearity_report(v, d);
            if (o.curves) {
                auto c = curve_incidence_report(v, d);
                r.curve_candidates = c.curve_candidates;
                r.curve_search_complete = c.curve_search_complete;
            }
        } else {
            std::vector<ComplexPoint> v;
            for (const auto& p : pts) v.push_back(std::get<ComplexPoint>(p));
            r = collinearity_report(v, d);
            if (o.curves) {
                auto c = curve_incidence_report(v, d);
                r.curve_candidates = c.curve_candidates;
                r.curve_search_complete = c.curve_search_complete;
            }
        }
        return 0;
    });
    std::ostringstream text;
    auto list = [&](const char* label, const std::vector<LineIncidence>& ls) {
        for (const auto& l : ls) {
            text << label;
            for (auto k : l.points) text << " " << k;
            text << "\n";
        }
    };
    list("violation: line through points", r.collinear_violations);
    list("sharp line through points", r.sharp_lines);
    for (const auto& c : r.curve_candidates) {
        text << "degree " << c.k << " curve " << c.curve << " through points";
        for (auto k : c.points) text << " " << k;
        text << " (irreducibility unchecked)\n";
    }
    if (!r.curve_search_complete) text << "curve search inconclusive: extension cap reached\n";
    text << r.collinear_violations.size() << " violations, " << r.sharp_lines.size() << " sharp lines";
    if (o.curves) text << ", " << r.curve_candidates.size() << " curve candidates";
    text << "\n";
    emit(o, to_json(r), text.str());
    return r.collinear_violations.empty() ? kOk : kNegative;
}

int cmd_laguerre(const Options& o) {
    auto t = as_partially_symmetric(tensor_from_json(read_json(o.input)));
    RatPoint p{parse_point_option(o.point)};
    if (static_cast<int>(p.coords.size()) != t.n + 1) throw SchemaError("--point needs n+1 coordinates");
    if (is_zero_vector(p)) throw SchemaError("--point is the zero vector");
    try {
        auto w = laguerre(t, p);
        std::size_t rk = rank_A_omega(w);
        Json out = to_json(w);
        out["rank_A_omega"] = rk;
        out["decomposable"] = is_decomposable(w);
        std::ostringstream text;
        text << "plucker:";
        for (const auto& c : w.coords) text << " " << c;
        text << "\nrank A_omega = " << rk << "\n";
        emit(o, out, text.str());
        return kOk;
    } catch (const Indeterminacy& e) {
        emit(o, Json{{"error", e.what()}}, std::string(e.what()) + "\n");
        return kNegative;
    }
}

int cmd_count(const Options& o) {
    auto w = detail::wrap([&] { return w_count(o.n, o.d); });
    emit(o, Json{{"w", w}}, std::to_string(w) + "\n");
    return kOk;
}

int cmd_random_tensor(const Options& o) {
    if (o.n < 1 || o.d < 2) throw SchemaError("need n >= 1 and d >= 2");
    TensorSampler s(o.seed);
    if (o.symmetric) {
        auto t = s.symmetric(o.n, o.d);
        emit(o, to_json(t), t.f.to_string() + "\n");
    } else {
        auto t = s.partially_symmetric(o.n, o.d);
        emit(o, to_json(t), tensor_text(t));
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenschemes of symmetric and partially symmetric tensors"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto input = [&](CLI::App* c) { c->add_option("input", o.input, "JSON input file, - for stdin"); };
    auto shape = [&](CLI::App* c) {
        c->add_option("n", o.n, "Projective dimension")->required();
        c->add_option("d", o.d, "Tensor order")->required();
    };

    std::map<CLI::App*, int (*)(const Options&)> handlers;
    auto sub = [&](const char* name, const char* help, int (*h)(const Options&)) {
        auto* c = app.add_subcommand(name, help);
        handlers[c] = h;
        return c;
    };

    input(sub("generators", "Determinantal generators of a tensor", cmd_generators));
    auto* ce = sub("check-equations", "Decide whether forms are eigenscheme equations", cmd_check_equations);
    input(ce);
    ce->add_flag("--symmetric", o.symmetric, "Basis search for a symmetric tensor");
    ce->add_option("--seed", o.seed, "Seed for the randomized basis search");
    auto* fp = sub("fit-points", "Find a tensor whose eigenscheme contains the points", cmd_fit_points);
    input(fp);
    fp->add_option("--degree", o.degree, "Tensor order d");
    fp->add_flag("--symmetric", o.symmetric, "Restrict to symmetric tensors");
    auto* hb = sub("hilbert", "Predicted and actual Hilbert function", cmd_hilbert);
    input(hb);
    hb->add_option("--window", o.window, "Largest degree compared");
    shape(sub("betti", "Predicted Betti table", cmd_betti));
    auto* so = sub("solve", "Eigenpoints of a tensor with n = 1 or n = 2", cmd_solve);
    input(so);
    so->add_option("--tol", o.tol, "Residual tolerance");
    shape(sub("fermat", "Eigenpoints of the Fermat form", cmd_fermat));
    auto* ge = sub("geometry", "Collinearity and curve incidence report", cmd_geometry);
    input(ge);
    ge->add_option("--degree", o.degree, "Tensor order d");
    ge->add_flag("--curves", o.curves, "Also search plane curves of degree 2..d-1");
    auto* la = sub("laguerre", "Laguerre map at a point", cmd_laguerre);
    input(la);
    la->add_option("--point", o.point, "Comma separated rational coordinates")->required();
    shape(sub("count", "Number of eigenpoints of a general tensor", cmd_count));
    auto* rt = sub("random-tensor", "Random tensor with small integer coefficients", cmd_random_tensor);
    shape(rt);
    rt->add_option("--seed", o.seed, "Random seed")->required();
    rt->add_flag("--symmetric", o.symmetric, "Symmetric tensor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kMalformed;
    }

    try {
        for (auto& [c, h] : handlers)
            if (c->parsed()) return h(o);
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNegative;
    }
    return kMalformed;
}
