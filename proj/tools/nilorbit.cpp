#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "nilorbit/catalog.hpp"
#include "nilorbit/errors.hpp"
#include "nilorbit/harmonic.hpp"
#include "nilorbit/io.hpp"
#include "nilorbit/orbits.hpp"
#include "nilorbit/stratification.hpp"

namespace {

using namespace nilorbit;

constexpr const char *kSchema = "nilorbit/1";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Output {
    bool compact = false;
    std::string path; // empty: stdout

    void emit(const Json &j) const {
        std::string text = compact ? j.dump() : j.dump(2);
        text.push_back('\n');
        if (path.empty()) {
            std::fwrite(text.data(), 1, text.size(), stdout);
        } else {
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw Error(ErrorKind::parse, "cannot open output file '" + path + "'");
            out << text;
        }
    }
};

Json index_set_json(const IndexSet &I) {
    Json arr = Json::array();
    for (const auto &[j, k] : I.pairs) arr.push_back(Json::array({j, k}));
    return arr;
}

Json rational_vector_json(const RatVector &v) {
    Json arr = Json::array();
    for (const auto &c : v) arr.push_back(c.str());
    return arr;
}

unsigned resolve_threads(unsigned flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char *env = std::getenv("NILORBIT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

struct CommonArgs {
    std::string spec;
    std::string beta;
    std::string l_str;

    std::optional<std::vector<Rational>> beta_values() const {
        if (beta.empty()) return std::nullopt;
        return parse_rational_list(beta);
    }
    AlgebraPtr algebra() const { return load_algebra(spec, beta_values()); }
    Covector covector(const AlgebraPtr &alg) const {
        auto coords = parse_rational_list(l_str);
        if (coords.size() != alg->dim())
            throw Error(ErrorKind::arity_mismatch,
                        "covector has " + std::to_string(coords.size()) +
                            " coordinates, algebra dimension is " +
                            std::to_string(alg->dim()));
        return Covector(alg, std::move(coords));
    }
};

Json trace_json(const LZTrace &trace) {
    Json steps = Json::array();
    for (const auto &s : trace.steps) {
        Json step;
        step["j"] = s.j_label;
        step["k"] = s.k_label;
        step["c"] = s.c.str();
        step["X"] = rational_vector_json(s.X.coords());
        step["Y"] = rational_vector_json(s.Y.coords());
        Json nb = Json::array();
        for (const auto &v : s.next_basis) nb.push_back(rational_vector_json(v.coords()));
        step["next_labels"] = s.next_labels;
        step["next_basis"] = std::move(nb);
        steps.push_back(std::move(step));
    }
    Json j;
    j["index_set"] = index_set_json(IndexSet{trace.index_pairs});
    j["orbit_dimension"] = 2 * trace.steps.size();
    j["steps"] = std::move(steps);
    j["polarization"] = subspace_to_json(trace.polarization);
    j["stabilizer"] = subspace_to_json(trace.stabilizer);
    return j;
}

int run(int argc, char **argv) {
    CLI::App app{"nilorbit: exact co-adjoint orbit machinery for nilpotent Lie algebras"};
    app.require_subcommand(1);

    Output out;
    unsigned threads_flag = 0;
    app.add_flag("--compact", out.compact, "compact JSON output");
    app.add_option("--out", out.path, "write JSON to a file instead of stdout");
    app.add_option("--threads", threads_flag,
                   "worker threads (default: NILORBIT_THREADS or hardware)");

    CommonArgs common;

    auto *validate = app.add_subcommand("validate", "validate an algebra definition");
    validate->add_option("spec", common.spec, "catalog:<name> or a definition file")->required();
    validate->add_option("--beta", common.beta, "family parameters (comma separated rationals)");

    auto *index = app.add_subcommand("index", "Ludwig-Zahir index and trace at a covector");
    index->add_option("spec", common.spec)->required();
    index->add_option("--l", common.l_str, "covector coordinates")->required();
    index->add_option("--beta", common.beta);

    auto *polarize = app.add_subcommand("polarize", "Vergne and Ludwig-Zahir polarizations");
    polarize->add_option("spec", common.spec)->required();
    polarize->add_option("--l", common.l_str)->required();
    polarize->add_option("--beta", common.beta);

    auto *layers = app.add_subcommand("layers", "sample-based layer enumeration");
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    layers->add_option("spec", common.spec)->required();
    layers->add_option("--samples", samples, "sample budget (default 100)");
    layers->add_option("--seed", seed, "PRNG seed (default 1)");
    layers->add_option("--beta", common.beta);

    auto *section = app.add_subcommand("section", "Pukanszky section representative");
    section->add_option("spec", common.spec)->required();
    section->add_option("--l", common.l_str)->required();
    section->add_option("--beta", common.beta);

    auto *sameorbit = app.add_subcommand("same-orbit", "decide co-adjoint orbit equality");
    std::string lp_str;
    sameorbit->add_option("spec", common.spec)->required();
    sameorbit->add_option("--l", common.l_str)->required();
    sameorbit->add_option("--lp", lp_str, "second covector")->required();
    sameorbit->add_option("--beta", common.beta);

    auto *chart = app.add_subcommand("chart", "orbit parametrization through a covector");
    chart->add_option("spec", common.spec)->required();
    chart->add_option("--l", common.l_str)->required();
    chart->add_option("--beta", common.beta);

    auto *pfaff = app.add_subcommand("pfaffian", "exact Pfaffian of the skew form at l");
    std::string labels_str;
    pfaff->add_option("spec", common.spec)->required();
    pfaff->add_option("--l", common.l_str)->required();
    pfaff->add_option("--labels", labels_str, "basis labels, e.g. \"1,2\"")->required();
    pfaff->add_option("--beta", common.beta);

    auto *catalog = app.add_subcommand("catalog", "list built-in algebras and families");

    auto *invert = app.add_subcommand("invert-h3", "Fourier inversion round trip on h3");
    std::string f_spec = "gaussian:0,0,0:1:0,0,0,1";
    std::string grid_str;
    std::string lambda_range;
    double tolerance = 0.0;
    int quad_panels = 8, quad_order = 20;
    invert->add_option("--f", f_spec, "test function (gaussian:cx,cy,cz:w:e1,e2,e3,c;...)");
    invert->add_option("--grid", grid_str, "sample points \"x,y,z;x,y,z;...\" (default 9-point grid)");
    invert->add_option("--lambda-range", lambda_range, "\"min,max\" for |lambda|");
    invert->add_option("--tolerance", tolerance, "error budget; fail if unreachable");
    invert->add_option("--panels", quad_panels, "quadrature panels per direction (default 8)");
    invert->add_option("--order", quad_order, "Gauss-Legendre order per panel (default 20)");

    // global flags are accepted after the subcommand too
    for (CLI::App *sc : {validate, index, polarize, layers, section, sameorbit, chart,
                         pfaff, catalog, invert})
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);
    unsigned threads = resolve_threads(threads_flag);

    Json j;
    j["schema"] = kSchema;

    if (validate->parsed()) {
        AlgebraOrFamily def = load_definition(common.spec);
        if (std::holds_alternative<VariableFamily>(def) && !common.beta.empty()) {
            auto alg = std::get<VariableFamily>(def).evaluate(*common.beta_values());
            def = alg;
        }
        if (std::holds_alternative<AlgebraPtr>(def)) {
            const auto &alg = *std::get<AlgebraPtr>(def);
            j["valid"] = true;
            j["name"] = alg.name();
            j["dim"] = alg.dim();
            j["nilpotency_class"] = alg.nilpotency_class();
            j["definition"] = algebra_to_json(alg);
        } else {
            const auto &fam = std::get<VariableFamily>(def);
            j["valid"] = true;
            j["name"] = fam.name();
            j["dim"] = fam.dim();
            j["params"] = fam.param_count();
            j["definition"] = family_to_json(fam);
        }
    } else if (index->parsed()) {
        auto alg = common.algebra();
        auto l = common.covector(alg);
        j["algebra"] = alg->name();
        j["l"] = covector_to_json(l);
        j.update(trace_json(ludwig_zahir(l)));
    } else if (polarize->parsed()) {
        auto alg = common.algebra();
        auto l = common.covector(alg);
        auto rep = crosscheck_polarizations(l);
        j["algebra"] = alg->name();
        j["l"] = covector_to_json(l);
        j["vergne"] = subspace_to_json(rep.vergne);
        j["ludwig_zahir"] = subspace_to_json(rep.lz_polarization);
        j["agree"] = rep.agree;
    } else if (layers->parsed()) {
        auto alg = common.algebra();
        auto found = enumerate_layers(alg, samples, seed, threads);
        j["algebra"] = alg->name();
        j["samples"] = samples;
        j["seed"] = seed;
        Json arr = Json::array();
        for (const auto &d : found) {
            Json e;
            e["index_set"] = index_set_json(d.index_set);
            e["witness"] = covector_to_json(d.witness);
            e["layer_polynomial"] = d.P.str();
            arr.push_back(std::move(e));
        }
        j["layers"] = std::move(arr);
        j["i_max"] = index_set_json(found.front().index_set);
    } else if (section->parsed()) {
        auto alg = common.algebra();
        auto l = common.covector(alg);
        auto sp = section_point(l);
        j["algebra"] = alg->name();
        j["l"] = covector_to_json(l);
        j["index_set"] = index_set_json(sp.I);
        j["section_point"] = covector_to_json(sp.l_section);
        Json params = Json::array();
        for (const auto &p : sp.schedule.params) params.push_back(p.str());
        j["schedule"] = std::move(params);
        Json applied = Json::array();
        for (const auto &a : sp.applied) {
            Json e;
            e["label"] = a.label;
            e["param"] = a.param.str();
            applied.push_back(std::move(e));
        }
        j["applied_flows"] = std::move(applied);
    } else if (sameorbit->parsed()) {
        auto alg = common.algebra();
        auto l = common.covector(alg);
        auto coords = parse_rational_list(lp_str);
        if (coords.size() != alg->dim())
            throw Error(ErrorKind::arity_mismatch, "--lp arity mismatch");
        Covector lp(alg, std::move(coords));
        j["algebra"] = alg->name();
        j["same_orbit"] = same_orbit(l, lp);
    } else if (chart->parsed()) {
        auto alg = common.algebra();
        auto l = common.covector(alg);
        auto ch = orbit_chart(alg, l);
        j["algebra"] = alg->name();
        j["l"] = covector_to_json(l);
        j["index_set"] = index_set_json(ch.I);
        j["z_labels"] = ch.z_labels;
        Json ps = Json::array();
        for (const auto &p : ch.p) ps.push_back(p.str());
        j["p"] = std::move(ps);
    } else if (pfaff->parsed()) {
        auto alg = common.algebra();
        auto l = common.covector(alg);
        auto labels = parse_label_list(labels_str);
        for (unsigned lab : labels)
            if (lab < 1 || lab > alg->dim())
                throw Error(ErrorKind::parse, "label out of range");
        auto form = skew_form(l, labels);
        j["algebra"] = alg->name();
        j["l"] = covector_to_json(l);
        j["labels"] = form.labels;
        j["pfaffian"] = pfaffian(form.matrix).str();
        j["determinant"] = form.matrix.determinant().str();
    } else if (catalog->parsed()) {
        Json arr = Json::array();
        for (const auto &e : catalog_entries()) {
            Json entry;
            entry["name"] = e.name;
            entry["dim"] = e.dim;
            entry["params"] = e.params;
            arr.push_back(std::move(entry));
        }
        j["entries"] = std::move(arr);
    } else if (invert->parsed()) {
        auto alg = catalog_algebra("h3");
        TestFunction f = TestFunction::parse(f_spec);

        std::vector<std::array<double, 3>> points;
        if (grid_str.empty()) {
            points = {{0, 0, 0},          {0.5, 0, 0},        {0, 0.5, 0},
                      {0, 0, 0.5},        {-0.4, 0.3, 0.2},   {0.3, -0.4, 0.1},
                      {0.2, 0.3, -0.4},   {-0.3, -0.2, -0.1}, {0.25, 0.25, 0.25}};
        } else {
            std::stringstream ss(grid_str);
            std::string tok;
            while (std::getline(ss, tok, ';')) {
                std::stringstream ts(tok);
                std::string c;
                std::vector<double> v;
                while (std::getline(ts, c, ',')) v.push_back(std::stod(c));
                if (v.size() != 3)
                    throw Error(ErrorKind::parse, "grid points need 3 coordinates");
                points.push_back({v[0], v[1], v[2]});
            }
            if (points.empty()) throw Error(ErrorKind::parse, "empty grid");
        }

        InversionConfig cfg;
        cfg.threads = threads;
        cfg.tolerance = tolerance;
        cfg.lambda_quad = cfg.u_quad = cfg.p2_quad = cfg.q_quad =
            QuadratureSpec{quad_panels, quad_order};
        if (!lambda_range.empty()) {
            auto r = parse_rational_list(lambda_range);
            if (r.size() != 2)
                throw Error(ErrorKind::parse, "--lambda-range needs \"min,max\"");
            cfg.lambda_min = r[0].to_double();
            cfg.lambda_max = r[1].to_double();
        }

        auto res = invert_h3(f, alg, points, cfg);
        j["f"] = f.str();
        j["kappa"] = fmt17(res.kappa);
        j["lambda_range"] = Json::array(
            {fmt17(cfg.lambda_min),
             fmt17(cfg.lambda_max > 0 ? cfg.lambda_max : f.freq_window())});
        Json samples_json = Json::array();
        for (const auto &s : res.samples) {
            Json e;
            e["g"] = Json::array({fmt17(s.g[0]), fmt17(s.g[1]), fmt17(s.g[2])});
            e["f"] = fmt17(s.f_value);
            e["rf_re"] = fmt17(s.rf.real());
            e["rf_im"] = fmt17(s.rf.imag());
            e["abs_error"] = fmt17(s.abs_error);
            samples_json.push_back(std::move(e));
        }
        j["samples"] = std::move(samples_json);
        Json q;
        q["panels"] = quad_panels;
        q["order"] = quad_order;
        q["error_estimate"] = fmt17(res.quad_error_estimate);
        q["truncation_bound"] = fmt17(res.truncation_bound);
        j["quadrature"] = std::move(q);
    }

    out.emit(j);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const Error &e) {
        Json j;
        j["schema"] = kSchema;
        Json err;
        err["kind"] = e.kind_name();
        err["message"] = e.what();
        j["error"] = std::move(err);
        std::cout << j.dump(2) << std::endl;
        return e.is_input_error() ? 2 : 3;
    } catch (const std::exception &e) {
        Json j;
        j["schema"] = kSchema;
        Json err;
        err["kind"] = "Internal";
        err["message"] = e.what();
        j["error"] = std::move(err);
        std::cout << j.dump(2) << std::endl;
        return 3;
    }
}
