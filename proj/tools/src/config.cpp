#include "wavetrap_cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <type_traits>

#include "wavetrap/error.hpp"

namespace wavetrap::cli {

using nlohmann::json;

namespace {

template <class F> void visit(Grid& s, F&& f) {
    f("lo", s.lo); f("hi", s.hi); f("count", s.count);
}
template <class F> void visit(ZonalSpec& s, F&& f) {
    f("kind", s.kind); f("center", s.center); f("halfwidth", s.halfwidth);
    f("amplitude", s.amplitude); f("scale", s.scale);
}
template <class F> void visit(CoriolisSpec& s, F&& f) {
    f("kind", s.kind); f("beta", s.beta); f("coefficients", s.coefficients);
}
template <class F> void visit(IntegratorSpec& s, F&& f) {
    f("abs_tol", s.abs_tol); f("rel_tol", s.rel_tol); f("xi2_cap", s.xi2_cap);
    f("max_steps", s.max_steps);
}
template <class F> void visit(QuadratureSpec& s, F&& f) {
    f("rel_tol", s.rel_tol); f("max_depth", s.max_depth);
}
template <class F> void visit(ClassifySpec& s, F&& f) {
    f("tol_sigma", s.tol_sigma); f("tol_deg", s.tol_deg); f("step", s.step);
}
template <class F> void visit(TraceSpec& s, F&& f) {
    f("point", s.point); f("horizon", s.horizon); f("sample_interval", s.sample_interval);
    f("mode", s.mode); f("backward", s.backward);
}
template <class F> void visit(ScanSpec& s, F&& f) {
    f("xi1", s.xi1); f("x2_0", s.x2_0); f("xi2_0", s.xi2_0);
}
template <class F> void visit(CritperSpec& s, F&& f) {
    f("tau", s.tau); f("xi1", s.xi1); f("x2_0", s.x2_0);
}
template <class F> void visit(LambdaSingSpec& s, F&& f) {
    f("x1", s.x1); f("xi1", s.xi1); f("position", s.position); f("horizon", s.horizon);
    f("sample_interval", s.sample_interval);
}
template <class F> void visit(LambdaPerSpec& s, F&& f) {
    f("xi1_lo", s.xi1_lo); f("xi1_hi", s.xi1_hi); f("samples", s.samples);
    f("root_width", s.root_width);
}
template <class F> void visit(SurfaceSpec& s, F&& f) {
    f("tau", s.tau); f("xi1", s.xi1); f("x2", s.x2);
}
template <class F> void visit(EigsSpec& s, F&& f) {
    f("eps", s.eps); f("n_max", s.n_max);
}
template <class F> void visit(DispersionSpec& s, F&& f) {
    f("eps", s.eps); f("n_max", s.n_max); f("xi1", s.xi1);
}
template <class F> void visit(ModesSpec& s, F&& f) {
    f("points", s.points); f("xi1_min", s.xi1_min); f("xi1_max", s.xi1_max);
    f("x2_range", s.x2_range); f("xi2_range", s.xi2_range);
}
template <class F> void visit(TransportSpec& s, F&& f) {
    f("mode", s.mode); f("trapped_circle", s.trapped_circle); f("x1", s.x1); f("xi1", s.xi1);
    f("x2", s.x2); f("xi2", s.xi2); f("count", s.count); f("times", s.times);
    f("mass_x1", s.mass_x1); f("mass_x2", s.mass_x2);
}
template <class F> void visit(RunConfig& s, F&& f) {
    f("zonal", s.zonal); f("coriolis", s.coriolis); f("integrator", s.integrator);
    f("quadrature", s.quadrature); f("classify", s.classify); f("trapped_tol", s.trapped_tol);
    f("output_dir", s.output_dir); f("threads", s.threads); f("seed", s.seed);
    f("trace", s.trace); f("points", s.points); f("scan", s.scan); f("critper", s.critper);
    f("lambda_sing", s.lambda_sing); f("lambda_per", s.lambda_per); f("surface", s.surface);
    f("eigs", s.eigs); f("dispersion", s.dispersion); f("modes", s.modes);
    f("transport", s.transport);
}

template <class T> struct is_std_array : std::false_type {};
template <class T, std::size_t N> struct is_std_array<std::array<T, N>> : std::true_type {};
template <class T> struct is_vector : std::false_type {};
template <class T> struct is_vector<std::vector<T>> : std::true_type {};

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

template <class T>
void read_value(const json& j, T& out, const std::string& path) {
    if constexpr (std::is_same_v<T, double>) {
        if (!j.is_number())
            bad(path, "expected a number");
        out = j.get<double>();
    } else if constexpr (std::is_same_v<T, bool>) {
        if (!j.is_boolean())
            bad(path, "expected true or false");
        out = j.get<bool>();
    } else if constexpr (std::is_unsigned_v<T>) {
        if (!j.is_number_unsigned())
            bad(path, "expected a non-negative integer");
        out = j.get<T>();
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!j.is_string())
            bad(path, "expected a string");
        out = j.get<std::string>();
    } else if constexpr (is_std_array<T>::value) {
        if (!j.is_array() || j.size() != out.size())
            bad(path, "expected an array of " + std::to_string(out.size()) + " numbers");
        for (std::size_t i = 0; i < out.size(); ++i)
            read_value(j[i], out[i], path + "[" + std::to_string(i) + "]");
    } else if constexpr (is_vector<T>::value) {
        if (!j.is_array())
            bad(path, "expected an array");
        out.clear();
        out.resize(j.size());
        for (std::size_t i = 0; i < j.size(); ++i)
            read_value(j[i], out[i], path + "[" + std::to_string(i) + "]");
    } else {
        if (!j.is_object())
            bad(path, "expected an object");
        std::set<std::string> known;
        visit(out, [&](const char* key, auto& field) {
            known.insert(key);
            if (auto it = j.find(key); it != j.end())
                read_value(*it, field, path.empty() ? key : path + "." + key);
        });
        for (const auto& item : j.items())
            if (!known.count(item.key()))
                bad(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
    }
}

template <class T>
json write_value(const T& v) {
    if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, std::string>) {
        return v;
    } else if constexpr (is_std_array<T>::value || is_vector<T>::value) {
        json arr = json::array();
        for (const auto& e : v)
            arr.push_back(write_value(e));
        return arr;
    } else {
        json obj = json::object();
        T copy = v;
        visit(copy, [&](const char* key, auto& field) { obj[key] = write_value(field); });
        return obj;
    }
}

void check(bool cond, const std::string& what) {
    if (!cond)
        throw ConfigError(what);
}

}  // namespace

RunConfig parse_config(const json& j) {
    RunConfig c;
    read_value(j, c, "");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& c) { return write_value(c); }

Mode parse_mode(const std::string& s) {
    if (s == "rossby")
        return Mode::Rossby;
    if (s == "poincare+")
        return Mode::PoincarePlus;
    if (s == "poincare-")
        return Mode::PoincareMinus;
    throw ConfigError("unknown mode '" + s + "' (rossby, poincare+, poincare-)");
}

Profiles build_profiles(const RunConfig& c) {
    try {
        Profiles p;
        if (c.zonal.kind == "zero")
            p.zonal = make_zero_zonal();
        else if (c.zonal.kind == "bump")
            p.zonal = make_bump(c.zonal.center, c.zonal.halfwidth, c.zonal.amplitude);
        else if (c.zonal.kind == "signed")
            p.zonal = make_signed_zonal(c.zonal.scale, c.zonal.halfwidth);
        else
            throw ConfigError("zonal.kind: unknown kind '" + c.zonal.kind + "'");
        if (c.coriolis.kind == "betaplane")
            p.coriolis = make_betaplane(c.coriolis.beta);
        else if (c.coriolis.kind == "polynomial")
            p.coriolis = make_polynomial_coriolis(c.coriolis.coefficients);
        else
            throw ConfigError("coriolis.kind: unknown kind '" + c.coriolis.kind + "'");
        return p;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

IntegrateOptions integrate_options(const RunConfig& c) {
    IntegrateOptions io;
    io.abs_tol = c.integrator.abs_tol;
    io.rel_tol = c.integrator.rel_tol;
    io.xi2_cap = c.integrator.xi2_cap;
    io.max_steps = c.integrator.max_steps;
    return io;
}

void validate(const RunConfig& c) {
    check(c.integrator.abs_tol > 0 && c.integrator.rel_tol > 0, "integrator tolerances must be > 0");
    check(c.integrator.xi2_cap > 0, "integrator.xi2_cap must be > 0");
    check(c.quadrature.rel_tol > 0, "quadrature.rel_tol must be > 0");
    check(c.classify.tol_sigma > 0 && c.classify.tol_deg > 0 && c.classify.step > 0,
          "classify tolerances must be > 0");
    check(c.trapped_tol > 0, "trapped_tol must be > 0");
    check(c.threads >= 1, "threads must be >= 1");
    check(!c.output_dir.empty(), "output_dir must not be empty");
    for (const Grid* g : {&c.scan.xi1, &c.scan.x2_0, &c.scan.xi2_0, &c.surface.x2, &c.dispersion.xi1})
        check(g->count >= 1 && g->lo <= g->hi, "grids need count >= 1 and lo <= hi");
    check(c.trace.horizon > 0 && c.trace.sample_interval >= 0, "trace horizon must be > 0");
    check(c.lambda_sing.horizon > 0 && c.lambda_sing.position > 0 && c.lambda_sing.position < 1,
          "lambda_sing needs horizon > 0 and 0 < position < 1");
    check(c.lambda_per.samples >= 2 && c.lambda_per.root_width > 0 &&
              c.lambda_per.xi1_lo < c.lambda_per.xi1_hi,
          "lambda_per needs samples >= 2, root_width > 0, xi1_lo < xi1_hi");
    check(c.eigs.eps > 0 && c.dispersion.eps > 0, "eps must be > 0");
    check(c.modes.points >= 1 && c.modes.xi1_min > 0 && c.modes.xi1_min <= c.modes.xi1_max,
          "modes needs points >= 1 and 0 < xi1_min <= xi1_max");
    check(c.transport.count >= 1, "transport.count must be >= 1");
    for (double t : c.transport.times)
        check(t >= 0, "transport.times must be >= 0");
    check(std::is_sorted(c.transport.times.begin(), c.transport.times.end()),
          "transport.times must be sorted");
    parse_mode(c.trace.mode);
    parse_mode(c.transport.mode);
    build_profiles(c);
}

}  // namespace wavetrap::cli
