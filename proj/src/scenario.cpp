#include "radreact/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <thread>

#include "radreact/diagnostics.hpp"

namespace radreact {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key)
{
    return prefix.empty() ? key : prefix + "." + key;
}

void require_object(const json& j, const std::string& where)
{
    if (!j.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
        if (!known) {
            throw ConfigError("unknown key '" + join(where, item.key()) + "'");
        }
    }
}

const json& member(const json& obj, const std::string& where, const char* key)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError("missing key '" + join(where, key) + "'");
    }
    return *it;
}

double number(const json& j, const std::string& where)
{
    if (!j.is_number()) {
        throw ConfigError(where + ": expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(where + ": must be finite");
    }
    return v;
}

double number_at(const json& obj, const std::string& where, const char* key)
{
    return number(member(obj, where, key), join(where, key));
}

template <std::size_t N>
std::array<double, N> numbers(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != N) {
        throw ConfigError(where + ": expected an array of " + std::to_string(N) + " numbers");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = number(j[i], where + "[" + std::to_string(i) + "]");
    }
    return out;
}

Vec3 vec3_at(const json& obj, const std::string& where, const char* key)
{
    const auto a = numbers<3>(member(obj, where, key), join(where, key));
    return {a[0], a[1], a[2]};
}

FieldConfig parse_field(const json& j, const std::string& where)
{
    require_object(j, where);
    const json& kind_j = member(j, where, "kind");
    if (!kind_j.is_string()) {
        throw ConfigError(join(where, "kind") + ": expected a string");
    }
    const std::string kind = kind_j.get<std::string>();
    FieldConfig cfg;
    if (kind == "uniform") {
        check_keys(j, where, {"kind", "e3", "b3"});
        cfg.kind = UniformField{vec3_at(j, where, "e3"), vec3_at(j, where, "b3")};
    } else if (kind == "penning_trap") {
        check_keys(j, where, {"kind", "b0", "v0_over_d2"});
        cfg.kind = PenningTrap{number_at(j, where, "b0"), number_at(j, where, "v0_over_d2")};
    } else if (kind == "gaussian_pulse") {
        check_keys(j, where, {"kind", "kappa", "width", "axis"});
        GaussianPulse p;
        p.kappa = number_at(j, where, "kappa");
        p.width = number_at(j, where, "width");
        if (j.contains("axis")) {
            p.axis = vec3_at(j, where, "axis");
        }
        cfg.kind = p;
    } else if (kind == "superposition") {
        check_keys(j, where, {"kind", "parts"});
        const json& parts = member(j, where, "parts");
        if (!parts.is_array()) {
            throw ConfigError(join(where, "parts") + ": expected an array");
        }
        Superposition s;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            s.parts.push_back(parse_field(parts[i], join(where, "parts") + "[" + std::to_string(i) + "]"));
        }
        cfg.kind = std::move(s);
    } else {
        throw ConfigError(join(where, "kind") + ": unknown field kind '" + kind + "'");
    }
    try {
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return cfg;
}

IntegratorConfig parse_integrator(const json& j)
{
    const std::string where = "integrator";
    require_object(j, where);
    check_keys(j, where, {"method", "dt", "rel_tol", "abs_tol", "renormalize", "max_steps", "runaway_factor"});
    IntegratorConfig c;
    if (j.contains("method")) {
        const json& m = j["method"];
        const std::string name = m.is_string() ? m.get<std::string>() : std::string{};
        if (name == "rk4_fixed") {
            c.method = StepMethod::RK4Fixed;
        } else if (name == "rkf45_adaptive") {
            c.method = StepMethod::RKF45Adaptive;
        } else {
            throw ConfigError("integrator.method: unknown method '" + m.dump() + "'");
        }
    }
    if (j.contains("dt")) c.dt = number_at(j, where, "dt");
    if (j.contains("rel_tol")) c.rel_tol = number_at(j, where, "rel_tol");
    if (j.contains("abs_tol")) c.abs_tol = number_at(j, where, "abs_tol");
    if (j.contains("renormalize")) {
        if (!j["renormalize"].is_boolean()) {
            throw ConfigError("integrator.renormalize: expected a boolean");
        }
        c.renormalize = j["renormalize"].get<bool>();
    }
    if (j.contains("max_steps")) {
        if (!j["max_steps"].is_number_integer() || j["max_steps"].get<long long>() <= 0) {
            throw ConfigError("integrator.max_steps: expected a positive integer");
        }
        c.max_steps = j["max_steps"].get<std::size_t>();
    }
    if (j.contains("runaway_factor")) c.runaway_factor = number_at(j, where, "runaway_factor");
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

OutputSpec parse_output(const json& j)
{
    const std::string where = "output";
    require_object(j, where);
    check_keys(j, where, {"path", "format", "every_n"});
    OutputSpec o;
    const json& path = member(j, where, "path");
    if (!path.is_string() || path.get<std::string>().empty()) {
        throw ConfigError("output.path: expected a non-empty string");
    }
    o.path = path.get<std::string>();
    if (j.contains("format")) {
        const json& f = j["format"];
        const std::string name = f.is_string() ? f.get<std::string>() : std::string{};
        if (name == "csv") {
            o.format = OutputFormat::Csv;
        } else if (name == "jsonl") {
            o.format = OutputFormat::Jsonl;
        } else {
            throw ConfigError("output.format: unknown format '" + f.dump() + "'");
        }
    }
    if (j.contains("every_n")) {
        if (!j["every_n"].is_number_integer() || j["every_n"].get<long long>() <= 0) {
            throw ConfigError("output.every_n: expected a positive integer");
        }
        o.every_n = j["every_n"].get<std::size_t>();
    }
    return o;
}

std::string output_row_value(double v) { return format_double(v); }

}  // namespace

ScenarioConfig parse_scenario(const json& doc)
{
    require_object(doc, "config");
    check_keys(doc, "", {"particle", "field", "eom", "initial", "integrator", "duration", "output"});
    ScenarioConfig cfg;

    const json& particle = member(doc, "", "particle");
    require_object(particle, "particle");
    check_keys(particle, "particle", {"mass", "charge", "a_max_override"});
    cfg.mass = number_at(particle, "particle", "mass");
    cfg.charge = number_at(particle, "particle", "charge");
    if (particle.contains("a_max_override") && !particle["a_max_override"].is_null()) {
        cfg.a_max_override = number_at(particle, "particle", "a_max_override");
    }
    try {
        (void)cfg.params();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("particle: ") + e.what());
    }

    cfg.field = parse_field(member(doc, "", "field"), "field");

    const json& eom = member(doc, "", "eom");
    const auto kind = eom.is_string() ? eom_kind_from_string(eom.get<std::string>()) : std::nullopt;
    if (!kind) {
        throw ConfigError("eom: unknown equation of motion " + eom.dump());
    }
    cfg.eom = *kind;

    const json& initial = member(doc, "", "initial");
    require_object(initial, "initial");
    check_keys(initial, "initial", {"position", "velocity3", "seed_acceleration3"});
    cfg.position = FourVector::from_components(numbers<4>(member(initial, "initial", "position"), "initial.position"));
    cfg.velocity3 = vec3_at(initial, "initial", "velocity3");
    if (!(dot(cfg.velocity3, cfg.velocity3) < 1.0)) {
        throw ConfigError("initial.velocity3: speed must be below 1");
    }
    if (initial.contains("seed_acceleration3")) {
        cfg.seed_acceleration3 = vec3_at(initial, "initial", "seed_acceleration3");
    }

    if (doc.contains("integrator")) {
        cfg.integrator = parse_integrator(doc["integrator"]);
    }
    cfg.duration = number_at(doc, "", "duration");
    if (!(cfg.duration > 0.0)) {
        throw ConfigError("duration: must be positive");
    }
    cfg.output = parse_output(member(doc, "", "output"));
    return cfg;
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

ScenarioConfig load_scenario(const std::filesystem::path& path) { return parse_scenario(read_json_file(path)); }

int exit_status_for(const Termination& t)
{
    switch (t.kind) {
    case Termination::Kind::Completed: return 0;
    case Termination::Kind::Runaway: return 2;
    case Termination::Kind::StepFailure:
    case Termination::Kind::DomainError: return 3;
    }
    return 3;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg)
{
    const ParticleParams params = cfg.params();
    const ParticleState initial =
        make_initial_state(cfg.position, cfg.velocity3, cfg.field, cfg.eom, params, cfg.seed_acceleration3);

    ScenarioResult r;
    r.trajectory = integrate(initial, cfg.field, cfg.eom, params, cfg.integrator, cfg.duration);
    r.energy_balance = energy_balance(r.trajectory, cfg.field, params, cfg.eom != EomKind::LorentzOnly);
    if (cfg.eom == EomKind::MaxAccelSecondOrder) {
        r.bound_check = acceleration_bound_check(r.trajectory, params);
    }
    for (const Sample& s : r.trajectory.samples) {
        r.max_accel = std::max(r.max_accel, std::sqrt(std::max(s.diag.a_sq, 0.0)));
    }
    r.exit_status = exit_status_for(r.trajectory.terminated_by);
    return r;
}

const std::vector<std::string>& csv_columns()
{
    static const std::vector<std::string> cols = {
        "tau",   "t",       "x",       "y",
        "z",     "ut",      "ux",      "uy",
        "uz",    "at_",     "ax",      "ay",
        "az",    "a_sq",    "eps",     "eps_dot",
        "g_norm_residual",  "kin2_residual",      "kin3_residual", "fl_sq",
        "radiated_power_t", "bound_margin",       "superluminal",  "beta2_sec6"};
    return cols;
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::size_t> rows_to_emit(const Trajectory& traj, std::size_t every_n)
{
    std::vector<std::size_t> rows;
    const std::size_t n = traj.samples.size();
    for (std::size_t i = 0; i < n; i += every_n) {
        rows.push_back(i);
    }
    if (n > 0 && rows.back() != n - 1) {
        rows.push_back(n - 1);
    }
    return rows;
}

std::vector<double> numeric_row(const Sample& s)
{
    const Jet3& j = s.jet;
    const DiagnosticsRecord& d = s.diag;
    return {s.tau, j.x.t, j.x.x, j.x.y, j.x.z, j.u.t, j.u.x, j.u.y, j.u.z, j.a.t, j.a.x, j.a.y, j.a.z,
            d.a_sq, d.eps, d.eps_dot, d.g_norm_residual, d.kin2_residual, d.kin3_residual, d.fl_sq,
            d.radiated_power_t, d.bound_margin};
}

}  // namespace

void write_csv(std::ostream& os, const Trajectory& traj, std::size_t every_n)
{
    const auto& cols = csv_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        os << (c ? "," : "") << cols[c];
    }
    os << '\n';
    for (std::size_t i : rows_to_emit(traj, std::max<std::size_t>(every_n, 1))) {
        const Sample& s = traj.samples[i];
        bool first = true;
        for (double v : numeric_row(s)) {
            os << (first ? "" : ",") << output_row_value(v);
            first = false;
        }
        os << ',' << (s.diag.superluminal ? 1 : 0) << ',';
        if (s.diag.beta2) {
            os << output_row_value(*s.diag.beta2);
        }
        os << '\n';
    }
}

void write_jsonl(std::ostream& os, const Trajectory& traj, std::size_t every_n)
{
    const auto& cols = csv_columns();
    for (std::size_t i : rows_to_emit(traj, std::max<std::size_t>(every_n, 1))) {
        const Sample& s = traj.samples[i];
        json row = json::object();
        const auto values = numeric_row(s);
        for (std::size_t c = 0; c < values.size(); ++c) {
            row[cols[c]] = values[c];
        }
        row["superluminal"] = s.diag.superluminal ? 1 : 0;
        row["beta2_sec6"] = s.diag.beta2 ? json(*s.diag.beta2) : json(nullptr);
        os << row.dump() << '\n';
    }
}

void write_output(const Trajectory& traj, const OutputSpec& spec)
{
    if (spec.path.has_parent_path()) {
        std::filesystem::create_directories(spec.path.parent_path());
    }
    std::ofstream out(spec.path);
    if (!out) {
        throw std::runtime_error("cannot write output file '" + spec.path.string() + "'");
    }
    if (spec.format == OutputFormat::Csv) {
        write_csv(out, traj, spec.every_n);
    } else {
        write_jsonl(out, traj, spec.every_n);
    }
}

std::string summary_line(const ScenarioResult& result)
{
    const Trajectory& t = result.trajectory;
    const double tau_final = t.samples.empty() ? 0.0 : t.samples.back().tau;
    std::ostringstream os;
    os << "terminated_by=" << to_string(t.terminated_by.kind) << " tau_final=" << format_double(tau_final)
       << " max_a=" << format_double(result.max_accel) << " energy_balance=" << format_double(result.energy_balance)
       << " bound_check=" << (result.bound_check ? (*result.bound_check ? "pass" : "FAIL") : "n/a");
    if (t.terminated_by.kind == Termination::Kind::Runaway) {
        os << " runaway_tau=" << format_double(t.terminated_by.tau);
    }
    return os.str();
}

void set_dot_path(json& doc, const std::string& dot_path, double value)
{
    if (dot_path.empty()) {
        throw ConfigError("sweep key is empty");
    }
    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = dot_path.find('.', start);
        const std::string part = dot_path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object() || !node->contains(part)) {
            throw ConfigError("sweep key '" + dot_path + "' does not address an existing field");
        }
        node = &(*node)[part];
        if (dot == std::string::npos) {
            break;
        }
        start = dot + 1;
    }
    if (!node->is_number() && !node->is_null()) {
        throw ConfigError("sweep key '" + dot_path + "' does not address a numeric field");
    }
    *node = value;
}

unsigned sweep_thread_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RADREACT_THREADS")) {
        unsigned cap = 0;
        const auto* end = env + std::char_traits<char>::length(env);
        if (std::from_chars(env, end, cap).ec == std::errc{} && cap > 0) {
            n = std::min(n, cap);
        }
    }
    return n;
}

std::vector<SweepEntry> run_sweep(const json& base, const std::string& key, const std::vector<double>& values,
                                  unsigned threads)
{
    if (values.empty()) {
        throw ConfigError("sweep: values list is empty");
    }
    // parse every variant up front so config errors surface before any run
    const ScenarioConfig base_cfg = parse_scenario(base);
    const auto& out = base_cfg.output.path;
    const std::filesystem::path dir = out.parent_path();
    const std::string stem = out.stem().string();
    const std::string ext = out.extension().string();

    std::vector<ScenarioConfig> configs;
    std::vector<SweepEntry> entries(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        json doc = base;
        set_dot_path(doc, key, values[i]);
        ScenarioConfig cfg = parse_scenario(doc);
        cfg.output.path = dir / (stem + "_" + std::to_string(i) + ext);
        entries[i].value = values[i];
        entries[i].output = cfg.output.path;
        configs.push_back(std::move(cfg));
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            const ScenarioResult r = run_scenario(configs[i]);
            write_output(r.trajectory, configs[i].output);
            entries[i].exit_status = r.exit_status;
            entries[i].terminated_by = std::string(to_string(r.trajectory.terminated_by.kind));
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t + 1 < n_threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();

    const std::filesystem::path index = dir / (stem + "_index.csv");
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
    }
    std::ofstream idx(index);
    if (!idx) {
        throw std::runtime_error("cannot write sweep index '" + index.string() + "'");
    }
    idx << "index,key,value,path,exit_status,terminated_by\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        idx << i << ',' << key << ',' << format_double(entries[i].value) << ',' << entries[i].output.string() << ','
            << entries[i].exit_status << ',' << entries[i].terminated_by << '\n';
    }
    return entries;
}

}  // namespace radreact
