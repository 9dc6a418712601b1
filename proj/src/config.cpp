#include "wentzell/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "wentzell/errors.hpp"

namespace wentzell {

using json = nlohmann::ordered_json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object())
        throw Error(ErrorKind::config_error, where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw Error(ErrorKind::config_error, "unknown key '" + it.key() + "' in " + where);
}

json scalar_to_json(const ScalarField& f) {
    if (f.is_constant()) return json(f.constant_value());
    if (f.is_expression()) return json{{"expr", f.expression_text()}};
    json t = json::array();
    for (int i = 0; i < f.table().size(); ++i) t.push_back(f.table()[i]);
    return json{{"per_cell", t}};
}

ScalarField scalar_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return ScalarField(j.get<double>());
    if (j.is_object()) {
        check_keys(j, {"expr", "per_cell"}, where);
        if (j.contains("expr")) return ScalarField::expression(j.at("expr").get<std::string>());
        if (j.contains("per_cell")) {
            const auto& arr = j.at("per_cell");
            Eigen::VectorXd v(arr.size());
            for (size_t i = 0; i < arr.size(); ++i) v[static_cast<int>(i)] = arr[i].get<double>();
            return ScalarField::per_cell(std::move(v));
        }
    }
    throw Error(ErrorKind::config_error,
                where + " must be a number, {\"expr\": ...} or {\"per_cell\": [...]}");
}

json matrix_to_json(const MatrixField& Q) {
    if (Q.is_isotropic()) return scalar_to_json(Q.isotropic());
    return json{{"qxx", scalar_to_json(Q.entry(0, 0))},
                {"qxy", scalar_to_json(Q.entry(0, 1))},
                {"qyy", scalar_to_json(Q.entry(1, 1))}};
}

MatrixField matrix_from_json(const json& j, const std::string& where) {
    if (j.is_object() && (j.contains("qxx") || j.contains("qxy") || j.contains("qyy"))) {
        check_keys(j, {"qxx", "qxy", "qyy"}, where);
        return MatrixField(scalar_from_json(j.at("qxx"), where + ".qxx"),
                           j.contains("qxy") ? scalar_from_json(j.at("qxy"), where + ".qxy")
                                             : ScalarField(0.0),
                           scalar_from_json(j.at("qyy"), where + ".qyy"));
    }
    return MatrixField(scalar_from_json(j, where));
}

}  // namespace

std::string RunConfig::to_json_text() const {
    json j;
    if (domain_type == "interval")
        j["domain"] = {{"type", "interval"}, {"a", a}, {"b", b}, {"n", n}};
    else
        j["domain"] = {{"type", "rectangle"}, {"lx", lx}, {"ly", ly}, {"nx", nx}, {"ny", ny}};
    j["coefficients"] = {{"Q", matrix_to_json(coefficients.Q)},
                         {"alpha", scalar_to_json(coefficients.alpha)},
                         {"beta", scalar_to_json(coefficients.beta)},
                         {"gamma", scalar_to_json(coefficients.gamma)},
                         {"delta", scalar_to_json(coefficients.delta)},
                         {"eta", coefficients.eta},
                         {"kappa_q", coefficients.kappa_q}};
    j["mode"] = mode;
    j["order_power"] = order_power;
    j["eigen_count"] = eigen_count;
    if (!t_explicit.empty())
        j["time_grid"] = {{"values", t_explicit}};
    else
        j["time_grid"] = {{"start", t_start}, {"stop", t_stop}, {"points", t_points},
                          {"spacing", t_spacing}};
    j["scheme"] = {{"type", scheme}, {"theta", theta}, {"dt", dt}, {"steps", steps}};
    j["initial"] = {{"u1", initial_u1}, {"u2", initial_u2}};
    j["output_dir"] = output_dir;
    j["seed"] = seed;
    j["plots"] = plots;
    return j.dump(2);
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::config_error, std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(j,
               {"domain", "coefficients", "mode", "order_power", "eigen_count", "time_grid",
                "scheme", "initial", "output_dir", "seed", "plots"},
               "config");
    RunConfig c;
    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        check_keys(d, {"type", "a", "b", "n", "lx", "ly", "nx", "ny"}, "domain");
        c.domain_type = d.value("type", "interval");
        if (c.domain_type != "interval" && c.domain_type != "rectangle")
            throw Error(ErrorKind::config_error, "domain.type must be interval or rectangle");
        c.a = d.value("a", c.a);
        c.b = d.value("b", c.b);
        c.n = d.value("n", c.n);
        c.lx = d.value("lx", c.lx);
        c.ly = d.value("ly", c.ly);
        c.nx = d.value("nx", c.nx);
        c.ny = d.value("ny", c.ny);
    }
    if (j.contains("coefficients")) {
        const auto& co = j.at("coefficients");
        check_keys(co, {"Q", "alpha", "beta", "gamma", "delta", "eta", "kappa_q"}, "coefficients");
        if (co.contains("Q")) c.coefficients.Q = matrix_from_json(co.at("Q"), "coefficients.Q");
        if (co.contains("alpha"))
            c.coefficients.alpha = scalar_from_json(co.at("alpha"), "coefficients.alpha");
        if (co.contains("beta"))
            c.coefficients.beta = scalar_from_json(co.at("beta"), "coefficients.beta");
        if (co.contains("gamma"))
            c.coefficients.gamma = scalar_from_json(co.at("gamma"), "coefficients.gamma");
        if (co.contains("delta"))
            c.coefficients.delta = scalar_from_json(co.at("delta"), "coefficients.delta");
        c.coefficients.eta = co.value("eta", c.coefficients.eta);
        c.coefficients.kappa_q = co.value("kappa_q", c.coefficients.kappa_q);
    }
    c.mode = j.value("mode", c.mode);
    if (c.mode != "lumped" && c.mode != "consistent" && c.mode != "auto")
        throw Error(ErrorKind::config_error, "mode must be lumped, consistent or auto");
    c.order_power = j.value("order_power", c.order_power);
    c.eigen_count = j.value("eigen_count", c.eigen_count);
    if (j.contains("time_grid")) {
        const auto& t = j.at("time_grid");
        check_keys(t, {"values", "start", "stop", "points", "spacing"}, "time_grid");
        if (t.contains("values")) {
            c.t_explicit.clear();
            for (const auto& v : t.at("values")) c.t_explicit.push_back(v.get<double>());
        } else {
            c.t_start = t.value("start", c.t_start);
            c.t_stop = t.value("stop", c.t_stop);
            c.t_points = t.value("points", c.t_points);
            c.t_spacing = t.value("spacing", c.t_spacing);
            if (c.t_spacing != "log" && c.t_spacing != "linear")
                throw Error(ErrorKind::config_error, "time_grid.spacing must be log or linear");
        }
    }
    if (j.contains("scheme")) {
        const auto& s = j.at("scheme");
        check_keys(s, {"type", "theta", "dt", "steps"}, "scheme");
        c.scheme = s.value("type", c.scheme);
        if (c.scheme != "spectral" && c.scheme != "theta")
            throw Error(ErrorKind::config_error, "scheme.type must be spectral or theta");
        c.theta = s.value("theta", c.theta);
        c.dt = s.value("dt", c.dt);
        c.steps = s.value("steps", c.steps);
    }
    if (j.contains("initial")) {
        const auto& ini = j.at("initial");
        check_keys(ini, {"u1", "u2"}, "initial");
        c.initial_u1 = ini.value("u1", c.initial_u1);
        c.initial_u2 = ini.value("u2", c.initial_u2);
    }
    c.output_dir = j.value("output_dir", c.output_dir);
    c.seed = j.value("seed", c.seed);
    c.plots = j.value("plots", c.plots);
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::io_error, "cannot read config file " + path);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

Mesh RunConfig::build_mesh() const {
    if (domain_type == "interval") return build_interval_mesh(a, b, n);
    return build_rectangle_mesh(lx, ly, nx, ny);
}

MassMode RunConfig::mass_mode(const Mesh& mesh) const {
    if (mode == "lumped") return MassMode::lumped;
    if (mode == "consistent") return MassMode::consistent;
    return default_mass_mode(mesh);
}

std::vector<double> RunConfig::time_grid() const {
    if (!t_explicit.empty()) return t_explicit;
    std::vector<double> ts(t_points);
    if (t_points == 1) {
        ts[0] = t_stop;
        return ts;
    }
    if (t_spacing == "linear") {
        for (int i = 0; i < t_points; ++i)
            ts[i] = t_start + (t_stop - t_start) * i / (t_points - 1);
    } else {
        if (!(t_start > 0.0))
            throw Error(ErrorKind::config_error, "log time grid requires start > 0");
        double r = std::log(t_stop / t_start);
        for (int i = 0; i < t_points; ++i)
            ts[i] = t_start * std::exp(r * i / (t_points - 1));
    }
    return ts;
}

}  // namespace wentzell
