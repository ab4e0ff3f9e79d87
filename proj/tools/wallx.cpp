// wallx: command-line driver for the wall-crossing checks, series and
// chamber tools. Every command produces one JSON document; the human
// table on stdout is rendered from that document alone.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wallx/wallx.hpp"

namespace {

using wallx::json;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInternal = 3 };

/// Raised while turning flags into a job; maps to the usage exit code.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Args {
    int kmax_walls = 3;
    int kmax_classify = 12;
    std::string theta;
    int k = 0;
    int dmax = 0;
    int tmax = 0;
    int d = 0;
    std::string wall;
    std::string i0 = "OX";
    std::string label;
    std::string kind;
    std::string chamber;
    long gamma_e = 1;
    int qmax = 2;
    int cap = wallx::kSignSearchCap;

    std::string backend = "auto";
    int points = 5;
    std::uint64_t seed = 42;
    int threshold = 4;
    std::vector<std::string> overrides;

    int threads = 0;
    std::string json_path;
    std::string csv_path;
    bool no_cache = false;
    bool verify_cache = false;
    bool timing = false;
};

struct Job {
    std::string command;
    json params;  ///< canonical; the cache key is derived from it
    bool tabular = false;  ///< has a coefficient table for --csv
    std::function<json()> compute;
};

// ---------------------------------------------------------------------------
// Flag validation

wallx::BackendPolicy backend_policy(const Args& a)
{
    wallx::BackendPolicy p;
    if (a.backend == "symbolic") p.mode = wallx::BackendPolicy::Mode::symbolic;
    else if (a.backend == "eval") p.mode = wallx::BackendPolicy::Mode::eval;
    else if (a.backend == "auto") p.mode = wallx::BackendPolicy::Mode::automatic;
    else throw UsageError("--backend must be symbolic, eval or auto");
    if (a.points < 1) throw UsageError("--points must be positive");
    if (a.threshold < 0) throw UsageError("--threshold must be nonnegative");
    p.points = a.points;
    p.seed = a.seed;
    p.threshold = a.threshold;
    return p;
}

json backend_params(const wallx::BackendPolicy& p)
{
    return {{"backend", p.name()}, {"points", p.points}, {"threshold", p.threshold}};
}

/// LABEL=+1 / LABEL=-1; labels contain '=' so the value follows the last one.
wallx::SignOverrides parse_overrides(const std::vector<std::string>& raw)
{
    wallx::SignOverrides ov;
    for (const auto& s : raw) {
        const auto eq = s.rfind('=');
        if (eq == std::string::npos) throw UsageError("--sign-override expects LABEL=+1 or LABEL=-1, got '" + s + "'");
        const std::string value = s.substr(eq + 1);
        int sign = 0;
        if (value == "+1" || value == "1") sign = 1;
        else if (value == "-1") sign = -1;
        else throw UsageError("--sign-override value must be +1 or -1, got '" + value + "'");
        const wallx::FixedPoint fp = wallx::fixed_point_from_label(s.substr(0, eq));
        ov[fp.label.to_string()] = sign;
    }
    return ov;
}

json overrides_json(const wallx::SignOverrides& ov)
{
    json j = json::object();
    for (const auto& [label, sign] : ov) j[label] = sign;
    return j;
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw UsageError(what);
}

// ---------------------------------------------------------------------------
// Documents

json series_coefficients(const wallx::RatSeries& s)
{
    json out = json::array();
    const bool qt = s.shape().has_q();
    for (const auto& [q, t, c] : s.nonzero_terms()) {
        json x;
        if (qt) x["q"] = q;
        x["t"] = t;
        x["degree"] = qt ? "q^" + std::to_string(q) + "*t^" + std::to_string(t) : std::to_string(t);
        x["expression"] = c.to_string();
        out.push_back(std::move(x));
    }
    return out;
}

json base_document(const std::string& command, const json& params, std::uint64_t seed)
{
    json j;
    j["command"] = command;
    j["params"] = params;
    j["seed"] = seed;
    return j;
}

void finish_document(json& j, bool pass)
{
    j["pass"] = pass;
    j["elapsed_ms"] = nullptr;
}

json walls_document(const json& params, int k_max, std::uint64_t seed)
{
    json j = base_document("walls", params, seed);
    json ws = json::array();
    for (const auto& w : wallx::walls_up_to(k_max)) {
        const wallx::WallObject obj = wallx::wall_object(w.label);
        json x;
        x["label"] = w.label.to_string();
        x["c0"] = w.c0;
        x["c1"] = w.c1;
        x["line"] = std::to_string(w.c0) + "*theta0 + " + std::to_string(w.c1) + "*theta1 = 0";
        x["condition"] = w.condition;
        x["object"] = obj.object;
        x["dimvec"] = {obj.dimvec.first, obj.dimvec.second};
        x["flop"] = obj.flop;
        ws.push_back(std::move(x));
    }
    j["count"] = ws.size();
    j["walls"] = std::move(ws);
    finish_document(j, true);
    return j;
}

json classify_document(const json& params, const wallx::Theta& th, int k_max, std::uint64_t seed)
{
    const wallx::Classification c = wallx::classify_theta(th, k_max);
    json j = base_document("classify", params, seed);
    json x;
    switch (c.kind) {
    case wallx::Classification::Kind::on_wall: x["kind"] = "on_wall"; break;
    case wallx::Classification::Kind::chamber: x["kind"] = "chamber"; break;
    case wallx::Classification::Kind::origin: x["kind"] = "origin"; break;
    }
    x["wall"] = c.wall ? json(c.wall->to_string()) : json(nullptr);
    x["chamber"] = c.chamber.empty() ? json(nullptr) : json(c.chamber);
    x["lower"] = c.lower ? json(c.lower->to_string()) : json(nullptr);
    x["upper"] = c.upper ? json(c.upper->to_string()) : json(nullptr);
    x["t"] = c.t ? json(wallx::rational_string(*c.t)) : json(nullptr);
    x["t_interval"] = c.t_interval ? json::array({c.t_interval->first, c.t_interval->second}) : json(nullptr);
    x["text"] = c.to_string();
    j["classification"] = std::move(x);
    j["primary_chamber"] = c.kind == wallx::Classification::Kind::origin
                               ? json(nullptr)
                               : json(wallx::to_string(wallx::primary_chamber(th)));
    finish_document(j, true);
    return j;
}

json contribution_document(const json& params, const wallx::FixedPoint& fp, std::uint64_t seed)
{
    json j = base_document("contribution", params, seed);
    j["label"] = fp.label.to_string();
    j["support"] = wallx::to_string(fp.support);
    j["chi"] = fp.chi;
    j["deg"] = fp.deg;
    j["sign_extra"] = fp.sign_extra;
    j["sign"] = fp.sign();
    j["sheaf"] = fp.sheaf.to_string();
    j["sqrt_class"] = wallx::sqrt_class(fp.sheaf).to_string();
    j["taut_class"] = wallx::taut_class(fp.sheaf).to_string();
    j["contribution"] = wallx::contribution(fp).to_string();
    finish_document(j, true);
    return j;
}

/// Signs on the degree-d plus fiber that make the numerator slot match the
/// binomial series times the minus fiber.
json signsearch_document(const json& params, int k, const wallx::I0& i0, int d, int points, std::uint64_t seed,
                         int cap)
{
    const wallx::FiberData f = wallx::fiber_data(k, i0, d);
    const wallx::RatSeries b = wallx::binom_series(wallx::m_over_lam3(k), wallx::TDirection::t, d);
    std::vector<wallx::RatFun> terms;
    for (int j = 0; j <= d; ++j) {
        const wallx::RatFun bj = b.coeff(j);
        if (!bj.is_zero()) terms.push_back(bj * wallx::sum_contributions(f.minus[d - j]));
    }
    const wallx::RatFun target = wallx::RatFun::sum(terms);
    const std::vector<wallx::FixedPoint> fps = wallx::fiber_plus(k, i0, d);
    const auto found = wallx::sign_search(fps, target, points, seed, cap);

    json j = base_document("signsearch", params, seed);
    j["target"] = target.to_string();
    j["fixed_points"] = fps.size();
    j["found"] = found.has_value();
    json pts = json::array();
    if (found) {
        for (std::size_t i = 0; i < fps.size(); ++i) {
            json x;
            x["label"] = fps[i].label.to_string();
            x["rule_sign"] = fps[i].sign();
            x["flip"] = (*found)[i];
            x["sign"] = fps[i].sign() * (*found)[i];
            pts.push_back(std::move(x));
        }
    }
    j["signs"] = found ? std::move(pts) : json(nullptr);
    finish_document(j, found.has_value());
    return j;
}

// ---------------------------------------------------------------------------
// Jobs

Job make_job(const std::string& command, const Args& a)
{
    Job job;
    job.command = command;
    json p;
    if (command == "walls") {
        require(a.kmax_walls >= 0, "--kmax must be nonnegative");
        p["kmax"] = a.kmax_walls;
        p["seed"] = a.seed;
        job.compute = [p, k = a.kmax_walls, s = a.seed] { return walls_document(p, k, s); };
    } else if (command == "classify") {
        require(a.kmax_classify >= 1, "--kmax must be at least 1");
        const wallx::Theta th = wallx::Theta::parse(a.theta);
        p["theta"] = th.to_string();
        p["kmax"] = a.kmax_classify;
        p["seed"] = a.seed;
        job.compute = [p, th, k = a.kmax_classify, s = a.seed] { return classify_document(p, th, k, s); };
    } else if (command == "js") {
        require(a.k >= 1, "--k must be at least 1");
        require(a.dmax >= 1, "--dmax must be at least 1");
        const auto policy = backend_policy(a);
        const auto ov = parse_overrides(a.overrides);
        p = {{"k", a.k}, {"dmax", a.dmax}};
        p.update(backend_params(policy));
        p["seed"] = a.seed;
        p["sign_overrides"] = overrides_json(ov);
        job.tabular = true;
        job.compute = [k = a.k, dmax = a.dmax, policy, ov] { return wallx::check_js(k, dmax, policy, ov).to_json(); };
    } else if (command == "wallcross") {
        const wallx::WallLabel w = wallx::WallLabel::parse(a.wall);
        if (w.family != wallx::WallFamily::Lmm)
            throw UsageError("wallcross is implemented on the Lmm walls only, got " + w.to_string());
        const wallx::I0 i0 = wallx::I0::parse(a.i0);
        wallx::detail::require_supported(w.k, i0);
        require(a.tmax >= 1, "--tmax must be at least 1");
        const auto policy = backend_policy(a);
        const auto ov = parse_overrides(a.overrides);
        p = {{"wall", w.to_string()}, {"i0", i0.to_string()}, {"tmax", a.tmax}};
        p.update(backend_params(policy));
        p["seed"] = a.seed;
        p["sign_overrides"] = overrides_json(ov);
        job.tabular = true;
        job.compute = [k = w.k, i0, t = a.tmax, policy, ov] {
            return wallx::check_wallcross(k, i0, t, policy, ov).to_json();
        };
    } else if (command == "dimred" || command == "insertion-free") {
        require(a.k >= 1, "--k must be at least 1");
        require(a.dmax >= 1, "--dmax must be at least 1");
        p = {{"k", a.k}, {"dmax", a.dmax}, {"seed", a.seed}};
        job.tabular = true;
        if (command == "dimred")
            job.compute = [k = a.k, d = a.dmax] { return wallx::check_dimred(k, d).to_json(); };
        else
            job.compute = [k = a.k, d = a.dmax] { return wallx::check_insertion_free(k, d).to_json(); };
    } else if (command == "series") {
        job.tabular = true;
        p["kind"] = a.kind;
        std::function<wallx::RatSeries()> make;
        if (a.kind == "PT" || a.kind == "NC" || a.kind == "MacMahon") {
            require(a.qmax >= 0, "--qmax must be nonnegative");
            const auto kind = a.kind == "PT"   ? wallx::ProductKind::PT
                              : a.kind == "NC" ? wallx::ProductKind::NC
                                               : wallx::ProductKind::MacMahon;
            p["qmax"] = a.qmax;
            make = [kind, q = a.qmax] { return wallx::product_series(kind, q); };
        } else if (a.kind == "primary") {
            require(a.qmax >= 0, "--qmax must be nonnegative");
            wallx::PrimaryChamber ch;
            if (!a.theta.empty()) {
                require(a.chamber.empty(), "give either --chamber or --theta");
                ch = wallx::primary_chamber(wallx::Theta::parse(a.theta));
            } else if (a.chamber == "I") ch = wallx::PrimaryChamber::I;
            else if (a.chamber == "II_III") ch = wallx::PrimaryChamber::II_III;
            else if (a.chamber == "IV") ch = wallx::PrimaryChamber::IV;
            else if (a.chamber == "other") ch = wallx::PrimaryChamber::other;
            else throw UsageError("--chamber must be I, II_III, IV or other (or pass --theta)");
            p["chamber"] = wallx::to_string(ch);
            p["gammaE"] = a.gamma_e;
            p["qmax"] = a.qmax;
            make = [ch, g = a.gamma_e, q = a.qmax] { return wallx::primary_series(ch, g, q); };
        } else if (a.kind == "binom") {
            require(a.k >= 1, "--k must be at least 1");
            require(a.tmax >= 0, "--tmax must be nonnegative");
            p["k"] = a.k;
            p["tmax"] = a.tmax;
            make = [k = a.k, t = a.tmax] {
                return wallx::binom_series(wallx::m_over_lam3(k), wallx::TDirection::t, t);
            };
        } else {
            throw UsageError("--kind must be PT, NC, MacMahon, primary or binom");
        }
        p["seed"] = a.seed;
        job.compute = [p, make, s = a.seed] {
            json j = base_document("series", p, s);
            j["coefficients"] = series_coefficients(make());
            finish_document(j, true);
            return j;
        };
    } else if (command == "contribution") {
        const wallx::FixedPoint fp = wallx::fixed_point_from_label(a.label);
        p = {{"label", fp.label.to_string()}, {"seed", a.seed}};
        job.compute = [p, fp, s = a.seed] { return contribution_document(p, fp, s); };
    } else if (command == "signsearch") {
        const wallx::WallLabel w = wallx::WallLabel::parse(a.wall);
        if (w.family != wallx::WallFamily::Lmm)
            throw UsageError("signsearch is implemented on the Lmm walls only, got " + w.to_string());
        const wallx::I0 i0 = wallx::I0::parse(a.i0);
        wallx::detail::require_supported(w.k, i0);
        require(a.d >= 0, "--d must be nonnegative");
        require(a.points >= 1, "--points must be positive");
        require(a.cap >= 0, "--cap must be nonnegative");
        p = {{"wall", w.to_string()}, {"i0", i0.to_string()}, {"d", a.d}, {"points", a.points},
             {"cap", a.cap}, {"seed", a.seed}};
        job.compute = [p, k = w.k, i0, d = a.d, n = a.points, s = a.seed, cap = a.cap] {
            return signsearch_document(p, k, i0, d, n, s, cap);
        };
    }
    job.params = std::move(p);
    return job;
}

// ---------------------------------------------------------------------------
// Rendering

std::string number_text(const json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

void render_human(const json& doc, std::ostream& out)
{
    const std::string command = doc["command"];
    out << "wallx " << command << "  params " << doc["params"].dump() << "  seed " << doc["seed"].dump() << "\n";
    if (doc.contains("degrees")) {
        for (const auto& r : doc["degrees"]) {
            out << "  d=" << r["d"].dump() << "  " << number_text(r["backend"]);
            if (!r["points"].is_null()) out << "(" << r["points"].dump() << " points)";
            out << "  " << number_text(r["verdict"]) << "\n"
                << "    lhs: " << number_text(r["lhs"]) << "\n"
                << "    rhs: " << number_text(r["rhs"]) << "\n";
        }
        if (!doc["sz_bound"].is_null()) out << "  sz_bound " << doc["sz_bound"].dump() << "\n";
        for (const auto& n : doc["notes"]) out << "  note: " << number_text(n) << "\n";
    } else if (command == "walls") {
        out << "  " << doc["count"].dump() << " walls\n";
        for (const auto& w : doc["walls"]) {
            out << "  " << number_text(w["label"]) << "  " << number_text(w["line"]) << "  (" << number_text(w["condition"])
                << ")  " << number_text(w["object"]) << "  dimvec (" << w["dimvec"][0].dump() << ","
                << w["dimvec"][1].dump() << ")" << (w["flop"].get<bool>() ? " flop" : "") << "\n";
        }
    } else if (command == "classify") {
        out << "  " << number_text(doc["classification"]["text"]) << "\n";
        if (!doc["primary_chamber"].is_null()) out << "  primary chamber " << number_text(doc["primary_chamber"]) << "\n";
    } else if (command == "series") {
        for (const auto& c : doc["coefficients"])
            out << "  [" << number_text(c["degree"]) << "]  " << number_text(c["expression"]) << "\n";
    } else if (command == "contribution") {
        for (const char* key : {"label", "support", "chi", "deg", "sign_extra", "sign", "sheaf", "sqrt_class",
                                "taut_class", "contribution"})
            out << "  " << key << ": " << number_text(doc[key]) << "\n";
    } else if (command == "signsearch") {
        out << "  target: " << number_text(doc["target"]) << "\n"
            << "  fixed points: " << doc["fixed_points"].dump() << "\n";
        if (doc["signs"].is_null()) out << "  no sign vector found\n";
        else
            for (const auto& s : doc["signs"])
                out << "  " << number_text(s["label"]) << "  sign " << s["sign"].dump() << " (rule " << s["rule_sign"].dump()
                    << ", flip " << s["flip"].dump() << ")\n";
    }
    if (!doc["elapsed_ms"].is_null()) out << "  elapsed_ms " << doc["elapsed_ms"].dump() << "\n";
    out << (doc["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void write_csv(const json& doc, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "degree,expression\n";
    if (doc.contains("degrees"))
        for (const auto& r : doc["degrees"]) out << r["d"].dump() << "," << csv_field(r["lhs"]) << "\n";
    if (doc.contains("coefficients"))
        for (const auto& c : doc["coefficients"]) out << csv_field(c["degree"]) << "," << csv_field(c["expression"]) << "\n";
}

// ---------------------------------------------------------------------------

/// Reports echo the canonical parameters, which include the seed and any
/// sign overrides.
json compute(const Job& job)
{
    json doc = job.compute();
    doc["params"] = job.params;
    return doc;
}

int run(const Job& job, const Args& a)
{
    if (!a.csv_path.empty() && !job.tabular) throw UsageError("--csv applies to commands with coefficient tables");
    if (a.no_cache && a.verify_cache) throw UsageError("--verify-cache needs the cache; drop --no-cache");
    wallx::set_thread_count(a.threads > 0 ? a.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));

    const auto start = std::chrono::steady_clock::now();
    json doc;
    bool have = false;
    std::optional<wallx::Cache> cache;
    std::string key;
    if (!a.no_cache) {
        cache = wallx::Cache::from_env();
        key = wallx::Cache::key(job.command, job.params.dump());
        std::string warning;
        if (auto hit = cache->get(key, &warning)) {
            try {
                doc = json::parse(*hit);
                have = true;
            } catch (const json::parse_error&) {
                warning = "cache entry " + key + " ignored: not a JSON document";
            }
            if (have && a.verify_cache) {
                const std::string fresh = compute(job).dump(2);
                if (fresh != *hit) {
                    std::cerr << "wallx: cache entry " << key << " differs from a recomputation\n";
                    return kInternal;
                }
                std::cerr << "wallx: cache entry " << key << " verified\n";
            }
        }
        if (!warning.empty()) std::cerr << "wallx: warning: " << warning << "; recomputing\n";
    }
    if (!have) {
        doc = compute(job);
        if (cache) cache->put(key, doc.dump(2));
    }
    if (a.timing) {
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        doc["elapsed_ms"] = std::round(ms * 1000.0) / 1000.0;
    }

    if (!a.json_path.empty()) {
        std::ofstream out(a.json_path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + a.json_path);
        out << doc.dump(2) << "\n";
    }
    if (!a.csv_path.empty()) write_csv(doc, a.csv_path);
    render_human(doc, std::cout);
    return doc["pass"].get<bool>() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"wallx: wall-crossing checks for tautological invariants of the local resolved conifold"};
    app.require_subcommand(1, 1);
    Args a;

    auto common = [&](CLI::App* s) {
        s->add_option("--seed", a.seed, "seed of the evaluation point stream")->capture_default_str();
        s->add_option("--threads", a.threads, "worker threads (0: hardware concurrency)");
        s->add_option("--json", a.json_path, "write the JSON report to PATH");
        s->add_option("--csv", a.csv_path, "write the coefficient table to PATH");
        s->add_flag("--no-cache", a.no_cache, "neither read nor write the cache");
        s->add_flag("--verify-cache", a.verify_cache, "recompute cache hits and compare bytes");
        s->add_flag("--timing", a.timing, "record elapsed_ms in the report");
    };
    auto backend = [&](CLI::App* s) {
        s->add_option("--backend", a.backend, "symbolic | eval | auto")->capture_default_str();
        s->add_option("--points", a.points, "evaluation points per degree")->capture_default_str();
        s->add_option("--threshold", a.threshold, "auto: symbolic up to this degree")->capture_default_str();
        s->add_option("--sign-override", a.overrides, "LABEL=+1|-1, multiplies that fixed point's contribution");
    };

    auto* walls = app.add_subcommand("walls", "list the walls up to index kmax");
    walls->add_option("--kmax", a.kmax_walls)->capture_default_str();
    common(walls);

    auto* classify = app.add_subcommand("classify", "locate a stability parameter in the wall picture");
    classify->add_option("--theta", a.theta, "theta0,theta1 as rationals p/q or decimals")->required()->allow_extra_args(false);
    classify->add_option("--kmax", a.kmax_classify)->capture_default_str();
    common(classify);

    auto* js = app.add_subcommand("js", "joyce-song identity for O_X on the wall Lmm:k");
    js->add_option("--k", a.k)->required();
    js->add_option("--dmax", a.dmax)->required();
    backend(js);
    common(js);

    auto* wc = app.add_subcommand("wallcross", "wall-crossing quotient against the binomial series");
    wc->add_option("--wall", a.wall, "Lmm:k")->required();
    wc->add_option("--i0", a.i0, "OX | IlP1:l | IP1")->capture_default_str();
    wc->add_option("--tmax", a.tmax)->required();
    backend(wc);
    common(wc);

    auto* dimred = app.add_subcommand("dimred", "dimensional reduction of the JS sum at m = lam3");
    dimred->add_option("--k", a.k)->required();
    dimred->add_option("--dmax", a.dmax)->required();
    common(dimred);

    auto* ins = app.add_subcommand("insertion-free", "JS sum without the tautological insertion");
    ins->add_option("--k", a.k)->required();
    ins->add_option("--dmax", a.dmax)->required();
    common(ins);

    auto* series = app.add_subcommand("series", "reference generating series");
    series->add_option("--kind", a.kind, "PT | NC | MacMahon | primary | binom")->required();
    series->add_option("--qmax", a.qmax)->capture_default_str();
    series->add_option("--chamber", a.chamber, "I | II_III | IV | other");
    series->add_option("--theta", a.theta, "picks the chamber from theta0,theta1");
    series->add_option("--gammaE", a.gamma_e)->capture_default_str();
    series->add_option("--k", a.k, "binom: exponent k*m/lam3");
    series->add_option("--tmax", a.tmax, "binom: truncation order");
    common(series);

    auto* contrib = app.add_subcommand("contribution", "contribution of one labelled fixed point");
    contrib->add_option("--label", a.label)->required();
    common(contrib);

    auto* ss = app.add_subcommand("signsearch", "brute-force signs on a plus fiber");
    ss->add_option("--wall", a.wall, "Lmm:k")->required();
    ss->add_option("--i0", a.i0)->capture_default_str();
    ss->add_option("--d", a.d)->required();
    ss->add_option("--points", a.points)->capture_default_str();
    ss->add_option("--cap", a.cap, "largest fiber searched")->capture_default_str();
    common(ss);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    Job job;
    try {
        job = make_job(command, a);
    } catch (const std::exception& e) {
        std::cerr << "wallx: " << e.what() << "\n";
        return kUsage;
    }
    try {
        return run(job, a);
    } catch (const UsageError& e) {
        std::cerr << "wallx: " << e.what() << "\n";
        return kUsage;
    } catch (const wallx::Inconclusive& e) {
        std::cerr << "wallx: inconclusive: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "wallx: error: " << e.what() << "\n";
        return kInternal;
    }
}
