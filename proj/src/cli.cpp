#include "polymod/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "polymod/complex.hpp"
#include "polymod/fiber.hpp"
#include "polymod/json_format.hpp"
#include "polymod/lorentz.hpp"
#include "polymod/moduli.hpp"
#include "polymod/parallel.hpp"

namespace polymod {

using nlohmann::json;

// ---------------------------------------------------------------- config

void RunConfig::validate() const {
    if (!(tol_sum > 0.0) || !(tol_ideal > 0.0) || !(tol > 0.0)) {
        throw Error(ErrorCode::BadInput, "tolerances must be positive");
    }
    if (jobs < 1) throw Error(ErrorCode::BadInput, "jobs must be at least 1");
    if (format != "json" && format != "csv") {
        throw Error(ErrorCode::UnknownFormat, "format must be json or csv");
    }
}

RunConfig merge_config(const json& doc, RunConfig base) {
    if (!doc.is_object()) throw Error(ErrorCode::BadInput, "config must be a JSON object");
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "tol_sum") {
                base.tol_sum = value.get<double>();
            } else if (key == "tol_ideal") {
                base.tol_ideal = value.get<double>();
            } else if (key == "tol") {
                base.tol = value.get<double>();
            } else if (key == "samples") {
                base.samples = value.get<std::uint64_t>();
            } else if (key == "seed") {
                base.seed = value.get<std::uint64_t>();
            } else if (key == "format") {
                base.format = value.get<std::string>();
            } else if (key == "jobs") {
                base.jobs = value.get<int>();
            } else {
                throw Error(ErrorCode::BadInput, "unknown config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadInput, std::string("config: ") + e.what());
    }
    return base;
}

// ---------------------------------------------------------- angle parser

namespace {

class AngleParser {
public:
    explicit AngleParser(std::string_view text) : s_(text) {}

    double run() {
        const double v = expr();
        skip();
        if (pos_ != s_.size()) fail();
        return v;
    }

private:
    [[noreturn]] void fail() const {
        throw Error(ErrorCode::BadInput, "cannot parse angle '" + std::string(s_) + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool eat_pi() {
        skip();
        if (s_.substr(pos_, 2) == "pi") {
            pos_ += 2;
            return true;
        }
        return false;
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) {
                v += term();
            } else if (eat('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    double term() {
        double v = factor();
        for (;;) {
            if (eat('*')) {
                v *= factor();
            } else if (eat('/')) {
                v /= factor();
            } else {
                return v;
            }
        }
    }

    double factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        if (eat('(')) {
            const double v = expr();
            if (!eat(')')) fail();
            return v;
        }
        if (eat_pi()) return kPi;
        skip();
        double v = 0.0;
        // from_chars ignores the locale.
        const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc{} || ptr == s_.data() + pos_) fail();
        const auto used = static_cast<std::size_t>(ptr - (s_.data() + pos_));
        pos_ += used;
        // "2pi" reads as 2 * pi.
        if (eat_pi()) return v * kPi;
        return v;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            out.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    out.push_back(current);
    return out;
}

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

}  // namespace

double parse_angle(std::string_view text) {
    const double v = AngleParser(text).run();
    if (!std::isfinite(v)) throw Error(ErrorCode::BadInput, "angle is not finite");
    return v;
}

std::vector<double> parse_angle_list(std::string_view text) {
    std::vector<double> out;
    for (const auto& field : split(text, ',')) out.push_back(parse_angle(trim(field)));
    return out;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NoIntersection: return 3;
        case ErrorCode::InconsistentPair: return 4;
        case ErrorCode::NotEqualWeight: return 5;
        case ErrorCode::SignatureMismatch:
        case ErrorCode::RouteDisagreement:
        case ErrorCode::NegativeRatio:
        case ErrorCode::PairingFailure: return 1;
        default: return 2;
    }
}

// ------------------------------------------------------------ commands

namespace {

json header(const char* schema) {
    return {{"schema", schema}, {"version", std::string(library_version())}};
}

json error_doc(const Error& e) {
    json doc = header("polymod-error/1");
    doc["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.message()}, {"indices", e.indices()}};
    return doc;
}

json to_json(const WeightVector& theta) {
    return std::vector<double>(theta.values().begin(), theta.values().end());
}

WeightVector read_theta(const std::string& text, int n, double tol_sum) {
    if (trim(text) == "equal") return equal_weight(n);
    const auto raw = parse_angle_list(text);
    if (static_cast<int>(raw.size()) != n) {
        throw Error(ErrorCode::BadInput, "expected " + std::to_string(n) + " angles, got " + std::to_string(raw.size()));
    }
    return validate_weight(raw, tol_sum);
}

void require_n(int n) {
    if (n != 5 && n != 6) throw Error(ErrorCode::OutOfRange, "--n must be 5 or 6");
}

std::string face_name(const Label& label, int f) {
    return "(" + std::to_string(label.at(f)) + std::to_string(label.at(f + 1)) + ")";
}

json forward_doc(int n, const WeightVector& theta, const Label& label, double tol_ideal) {
    json doc = header("polymod-forward/1");
    doc["n"] = n;
    doc["label"] = label.str();
    doc["theta"] = to_json(theta);
    if (n == 5) {
        const auto s = psi5(theta, label);
        doc["shape"] = {{"P", s.P}, {"Q", s.Q}};
        doc["valid"] = s.valid();
        const auto sides = pentagon_side_lengths(s);
        json arr = json::array();
        for (std::size_t k = 0; k < sides.size(); ++k) {
            arr.push_back({{"face", face_name(label, kPentagonSideFacets[k])}, {"length", sides[k]}});
        }
        doc["sides"] = arr;
    } else {
        const auto s = psi6(theta, label);
        doc["shape"] = {{"P", s.P}, {"Q", s.Q}, {"R", s.R}};
        doc["reduced"] = s.reduced();
        const auto cls = classify_hexahedron(s, tol_ideal);
        json faces = json::array();
        for (int f = 0; f < 6; ++f) {
            const auto& face = cls.faces[static_cast<std::size_t>(f)];
            faces.push_back({{"face", face_name(label, f)},
                             {"finite_vertices", face.finite_vertices},
                             {"ideal_vertices", face.ideal_vertices},
                             {"kind", to_string(face.kind)}});
        }
        doc["classification"] = {{"type", cls.type}, {"signs", cls.signs}, {"ideal", cls.ideal}, {"faces", faces}};
        doc["triple_sum_signs"] = triple_sum_signs(theta, label, tol_ideal);
    }
    return doc;
}

std::vector<double> read_shape(const std::string& text, int n) {
    const auto v = parse_angle_list(text);
    if (static_cast<int>(v.size()) != n - 3) {
        throw Error(ErrorCode::BadInput, "a shape has " + std::to_string(n - 3) + " components");
    }
    return v;
}

json invert_doc(int n, const std::string& shape1, const std::string& shape2, double tol) {
    const auto a = read_shape(shape1, n);
    const auto b = read_shape(shape2, n);
    const Inversion inv = (n == 5) ? invert5({a[0], a[1]}, {b[0], b[1]}, tol)
                                   : invert6({a[0], a[1], a[2]}, {b[0], b[1], b[2]}, tol);
    json doc = header("polymod-invert/1");
    doc["n"] = n;
    doc["w"] = {inv.w.real(), inv.w.imag()};
    doc["theta"] = to_json(inv.theta);
    doc["residual"] = inv.residual;
    doc["labels"] = {inversion_label_first(n).str(), inversion_label_second(n).str()};
    return doc;
}

// -------------------------------------------------------------- verify

struct Outcome {
    double error = 0.0;
    std::string reason;
};

struct SuiteResult {
    std::string suite;
    int n = 0;
    std::uint64_t samples = 0;
    double max_error = 0.0;
    std::uint64_t failure_count = 0;
    json failures = json::array();
    json checks = json::array();
};

constexpr std::size_t kListedFailures = 20;

template <typename Trial>
SuiteResult run_trials(const std::string& suite, int n, const RunConfig& cfg, Trial trial) {
    std::vector<Outcome> outcomes(cfg.samples);
    std::vector<std::vector<double>> thetas(cfg.samples);
    const auto labels = enumerate_labels(n);
    parallel_for(cfg.samples, cfg.jobs, [&](std::size_t t) {
        const auto theta = sample_weight(n, stream_seed(cfg.seed, t));
        thetas[t].assign(theta.values().begin(), theta.values().end());
        const Label& label = labels[t % labels.size()];
        try {
            outcomes[t] = trial(theta, label);
        } catch (const Error& e) {
            outcomes[t] = {std::numeric_limits<double>::infinity(),
                           std::string(to_string(e.code())) + ": " + e.message()};
        }
    });
    SuiteResult r{suite, n, cfg.samples};
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        const auto& o = outcomes[t];
        if (std::isfinite(o.error)) r.max_error = std::max(r.max_error, o.error);
        const bool failed = !o.reason.empty() || !(o.error <= cfg.tol);
        if (!failed) continue;
        ++r.failure_count;
        if (r.failures.size() < kListedFailures) {
            r.failures.push_back({{"trial", t},
                                  {"label", labels[t % labels.size()].str()},
                                  {"theta", thetas[t]},
                                  {"error", o.error},
                                  {"reason", o.reason.empty() ? "error above tolerance" : o.reason}});
        }
    }
    return r;
}

SuiteResult suite_roundtrip(int n, const RunConfig& cfg) {
    const auto rep = verify_injectivity(n, cfg.samples, cfg.seed, cfg.tol, cfg.jobs);
    SuiteResult r{"roundtrip", n, cfg.samples, rep.max_error, rep.failures.size()};
    for (const auto& f : rep.failures) {
        if (r.failures.size() >= kListedFailures) break;
        r.failures.push_back({{"trial", f.trial}, {"theta", f.theta}, {"error", f.error}, {"reason", f.reason}});
    }
    return r;
}

std::vector<std::array<int, 2>> orthogonal_pairs(int n) {
    std::vector<std::array<int, 2>> pairs;
    for (int j = 0; j < n; ++j) pairs.push_back({j, (j + 2) % n});
    if (n == 6) {
        for (int j = 0; j < 3; ++j) pairs.push_back({j, j + 3});
    }
    return pairs;
}

std::vector<std::vector<int>> finite_corners(int n) {
    if (n == 5) return {{0, 2}, {1, 3}, {2, 4}, {0, 3}, {1, 4}};
    return {{0, 2, 4}, {1, 3, 5}};
}

SuiteResult suite_orthogonality(int n, const RunConfig& cfg) {
    return run_trials("orthogonality", n, cfg, [&](const WeightVector& theta, const Label& label) -> Outcome {
        const auto model = LorentzModel::build(theta, label);
        double worst = 0.0;
        for (const auto& [j, k] : orthogonal_pairs(n)) {
            worst = std::max(worst, std::abs(dihedral_angle(model, j, k, cfg.tol_ideal) - kPi / 2.0));
        }
        for (const auto& corner : finite_corners(n)) {
            const auto p = klein_point(model, model.vertex(corner), cfg.tol_ideal);
            if (p.ideal || !(p.norm() < 1.0)) return {worst, "corner is not a finite point"};
        }
        return {worst, ""};
    });
}

SuiteResult suite_signature(int n, const RunConfig& cfg) {
    return run_trials("signature", n, cfg, [&](const WeightVector& theta, const Label& label) -> Outcome {
        const auto model = LorentzModel::build(theta, label);
        const auto sig = model.signature();
        if (sig.positive != 1 || sig.negative != n - 3 || sig.zero != 0) return {0.0, "wrong signature"};
        return {0.0, ""};
    });
}

SuiteResult suite_crossroute(int n, const RunConfig& cfg) {
    return run_trials("crossroute", n, cfg, [&](const WeightVector& theta, const Label& label) -> Outcome {
        return {route_discrepancy(theta, label), ""};
    });
}

SuiteResult suite_complex(int n, const RunConfig& cfg) {
    // Geometry at random weights: glued pentagon edges have equal length;
    // singular edges appear exactly where a consecutive triple is short.
    SuiteResult r = run_trials("complex", n, cfg, [&](const WeightVector& theta, const Label&) -> Outcome {
        const auto cx = build_complex(theta);
        if (n == 5) {
            const auto lengths = pentagon_edge_lengths(cx);
            double worst = 0.0;
            for (const auto& p : cx.pairings()) {
                worst = std::max(worst, std::abs(lengths[static_cast<std::size_t>(p.a.cell)][static_cast<std::size_t>(p.a.face)] -
                                                 lengths[static_cast<std::size_t>(p.b.cell)][static_cast<std::size_t>(p.b.face)]));
            }
            return {worst, ""};
        }
        std::size_t short_triples = 0;
        for (int a = 1; a <= 6; ++a)
            for (int b = a + 1; b <= 6; ++b)
                for (int c = b + 1; c <= 6; ++c)
                    if (theta.of(a) + theta.of(b) + theta.of(c) < kPi - kDefaultTolIdeal) ++short_triples;
        const auto edges = singular_edges(cx);
        // Each short triple is one symbol in 3 cyclic arrangements of the rest.
        if (edges.size() != 3 * short_triples) return {0.0, "singular edge count does not match the short triples"};
        for (const auto& e : edges) {
            if (e.incidences.size() != 6) return {0.0, "singular edge class is not of size 6"};
            for (const auto& i : e.incidences) {
                if (!(i.dihedral > 0.0 && i.dihedral < kPi)) return {0.0, "dihedral angle outside (0, pi)"};
            }
        }
        return {0.0, ""};
    });

    auto check = [&](const std::string& name, long long value, long long expected) {
        r.checks.push_back({{"name", name}, {"value", value}, {"expected", expected}});
        if (value != expected) ++r.failure_count;
    };
    const auto cx = build_complex(equal_weight(n));
    check("cells", static_cast<long long>(cx.cells().size()), n == 5 ? 12 : 60);
    check("pairings", static_cast<long long>(cx.pairings().size()), n == 5 ? 30 : 180);
    if (n == 5) {
        const auto e = euler_counts(cx);
        check("V", e.V, 15);
        check("E", e.E, 30);
        check("F", e.F, 12);
        check("chi", e.chi, -3);
    } else {
        const auto cusps = cusp_classes(cx, cfg.tol_ideal);
        check("cusp_classes", static_cast<long long>(cusps.classes.size()), 10);
        check("cusp_incidences", cusps.incidences, 180);
        long long off = 0;
        for (const auto& c : cusps.classes) off += (c.cells.size() != 18);
        check("cusp_classes_not_of_size_18", off, 0);
        check("finite_vertex_classes", static_cast<long long>(cx.vertex_classes().size()), 15);
        check("singular_edges_at_equal_weight", static_cast<long long>(singular_edges(cx).size()), 0);
    }
    long long odd = 0;
    for (const auto& c : cx.corner_classes()) odd += (c.incidences.size() != 4);
    check("corner_classes_not_of_size_4", odd, 0);
    return r;
}

json suite_json(const SuiteResult& r, double tol) {
    json doc = {{"suite", r.suite},     {"n", r.n},
                {"samples", r.samples}, {"tol", tol},
                {"max_error", r.max_error}, {"failure_count", r.failure_count},
                {"failures", r.failures}, {"ok", r.failure_count == 0}};
    if (!r.checks.empty()) doc["checks"] = r.checks;
    return doc;
}

// --------------------------------------------------------------- sweep

struct SweepRow {
    std::size_t line = 0;
    std::vector<double> raw;
};

std::string csv_double(double v) { return format_double(v); }

}  // namespace

// ------------------------------------------------------------- driver

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moduli of planar polygons with prescribed angles: forward maps, inversion, glued complexes"};
    app.name("polymod");
    app.require_subcommand(1);

    int n = 0;
    std::string theta_text = "equal";
    std::string label_text;
    std::string shape1, shape2;
    std::string report = "euler";
    std::string suite = "all";
    std::string input_path, out_path;
    double tol_sum = 0.0, tol_ideal = 0.0, tol = 0.0;
    std::uint64_t samples = 0, seed = 0;
    std::string format;
    int jobs = 0;

    auto add_common = [&](CLI::App* sub) {
        std::vector<CLI::Option*> opts;
        opts.push_back(sub->add_option("--tol-sum", tol_sum, "tolerance on the angle sum"));
        opts.push_back(sub->add_option("--tol-ideal", tol_ideal, "width of the ideal band"));
        opts.push_back(sub->add_option("--tol", tol, "round-trip / agreement tolerance"));
        opts.push_back(sub->add_option("--samples", samples, "number of random weights"));
        opts.push_back(sub->add_option("--seed", seed, "random seed"));
        opts.push_back(sub->add_option("--format", format, "json or csv"));
        opts.push_back(sub->add_option("--jobs", jobs, "worker threads"));
        return opts;
    };

    auto* fwd = app.add_subcommand("forward", "shape of the polyhedron of one label");
    fwd->add_option("--n", n, "5 or 6")->required();
    fwd->add_option("--theta", theta_text, "comma-separated angles, or 'equal'");
    fwd->add_option("--label", label_text, "e.g. 12345")->required();
    const auto fwd_opts = add_common(fwd);

    auto* inv = app.add_subcommand("invert", "recover the weight from the two designated shapes");
    inv->add_option("--n", n, "5 or 6")->required();
    inv->add_option("--shape1", shape1, "shape for <12345> / <123456>")->required();
    inv->add_option("--shape2", shape2, "shape for <21435> / <214356>")->required();
    const auto inv_opts = add_common(inv);

    auto* cpx = app.add_subcommand("complex", "reports on the glued complex");
    cpx->add_option("--n", n, "5 or 6")->required();
    cpx->add_option("--theta", theta_text, "comma-separated angles, or 'equal'");
    cpx->add_option("--report", report, "euler, cusps, pairings, singular or adjacency");
    const auto cpx_opts = add_common(cpx);

    auto* ver = app.add_subcommand("verify", "randomized invariant suites");
    ver->add_option("--suite", suite, "roundtrip, orthogonality, signature, crossroute, complex or all");
    ver->add_option("--n", n, "5 or 6 (default: both)");
    const auto ver_opts = add_common(ver);

    auto* swp = app.add_subcommand("sweep", "forward map over a CSV of weights");
    swp->add_option("--n", n, "5 or 6")->required();
    swp->add_option("--input", input_path, "CSV, one weight per row")->required();
    swp->add_option("--label", label_text, "e.g. 123456")->required();
    swp->add_option("--out", out_path, "output CSV (default: stdout)");
    const auto swp_opts = add_common(swp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "polymod: " << e.what() << "\n";
        out << dump_json(error_doc(Error(ErrorCode::BadInput, e.what())));
        return 2;
    }

    try {
        RunConfig cfg;
        if (const char* path = std::getenv("POLYMOD_CONFIG"); path != nullptr && *path != '\0') {
            std::ifstream in(path);
            if (!in) throw Error(ErrorCode::BadInput, std::string("cannot read config ") + path);
            json doc;
            try {
                doc = json::parse(in);
            } catch (const json::exception& e) {
                throw Error(ErrorCode::BadInput, std::string("config is not valid JSON: ") + e.what());
            }
            cfg = merge_config(doc, cfg);
        }
        const std::vector<CLI::Option*>* opts = &fwd_opts;
        if (inv->parsed()) opts = &inv_opts;
        if (cpx->parsed()) opts = &cpx_opts;
        if (ver->parsed()) opts = &ver_opts;
        if (swp->parsed()) opts = &swp_opts;
        const auto given = [&](std::size_t i) { return (*opts)[i]->count() > 0; };
        if (given(0)) cfg.tol_sum = tol_sum;
        if (given(1)) cfg.tol_ideal = tol_ideal;
        if (given(2)) cfg.tol = tol;
        if (given(3)) cfg.samples = samples;
        if (given(4)) cfg.seed = seed;
        if (given(5)) cfg.format = format;
        if (given(6)) cfg.jobs = jobs;
        cfg.validate();

        if (fwd->parsed()) {
            require_n(n);
            const auto label = Label::parse(label_text);
            if (label.n() != n) throw Error(ErrorCode::BadInput, "label length does not match --n");
            out << dump_json(forward_doc(n, read_theta(theta_text, n, cfg.tol_sum), label, cfg.tol_ideal));
            return 0;
        }

        if (inv->parsed()) {
            require_n(n);
            out << dump_json(invert_doc(n, shape1, shape2, cfg.tol));
            return 0;
        }

        if (cpx->parsed()) {
            require_n(n);
            const auto complex = build_complex(read_theta(theta_text, n, cfg.tol_sum));
            if (report == "adjacency") {
                out << export_adjacency(complex, cfg.format);
                return 0;
            }
            if (report == "pairings" && cfg.format == "csv") {
                out << "cell_a,label_a,face_a,cell_b,label_b,face_b,key\n";
                for (const auto& p : complex.pairings()) {
                    out << p.a.cell << ',' << complex.cells()[static_cast<std::size_t>(p.a.cell)].str() << ','
                        << p.a.face << ',' << p.b.cell << ','
                        << complex.cells()[static_cast<std::size_t>(p.b.cell)].str() << ',' << p.b.face << ",\""
                        << p.key.str() << "\"\n";
                }
                return 0;
            }
            json doc = header("polymod-complex/1");
            doc["n"] = n;
            doc["report"] = report;
            doc["theta"] = to_json(complex.theta());
            if (report == "euler") {
                const auto e = euler_counts(complex);
                doc["V"] = e.V;
                doc["E"] = e.E;
                doc["F"] = e.F;
                doc["chi"] = e.chi;
            } else if (report == "cusps") {
                const auto table = cusp_classes(complex, cfg.tol_ideal);
                doc["classes"] = table.classes.size();
                doc["incidences"] = table.incidences;
                json rows = json::array();
                for (const auto& c : table.classes) {
                    json labels = json::array();
                    for (int cell : c.cells) labels.push_back(complex.cells()[static_cast<std::size_t>(cell)].str());
                    rows.push_back({{"partition", c.partition}, {"labels", labels}, {"size", c.cells.size()}});
                }
                doc["cusps"] = rows;
            } else if (report == "pairings") {
                json rows = json::array();
                for (const auto& p : complex.pairings()) {
                    rows.push_back({{"a", {{"cell", p.a.cell},
                                           {"label", complex.cells()[static_cast<std::size_t>(p.a.cell)].str()},
                                           {"face", p.a.face}}},
                                    {"b", {{"cell", p.b.cell},
                                           {"label", complex.cells()[static_cast<std::size_t>(p.b.cell)].str()},
                                           {"face", p.b.face}}},
                                    {"key", p.key.str()}});
                }
                doc["count"] = rows.size();
                doc["pairings"] = rows;
            } else if (report == "singular") {
                json rows = json::array();
                for (const auto& s : singular_edges(complex)) {
                    json inc = json::array();
                    for (const auto& i : s.incidences) {
                        inc.push_back({{"label", complex.cells()[static_cast<std::size_t>(i.cell)].str()},
                                       {"facets", i.facets},
                                       {"dihedral", i.dihedral}});
                    }
                    rows.push_back({{"key", s.key.str()}, {"triple", s.triple}, {"cone_angle", s.cone_angle},
                                    {"incidences", inc}});
                }
                doc["count"] = rows.size();
                doc["singular_edges"] = rows;
            } else {
                throw Error(ErrorCode::BadInput, "unknown report '" + report + "'");
            }
            out << dump_json(doc);
            return 0;
        }

        if (ver->parsed()) {
            static const std::vector<std::string> all = {"roundtrip", "orthogonality", "signature", "crossroute",
                                                         "complex"};
            std::vector<std::string> suites;
            if (suite == "all") {
                suites = all;
            } else if (std::find(all.begin(), all.end(), suite) != all.end()) {
                suites = {suite};
            } else {
                throw Error(ErrorCode::BadInput, "unknown suite '" + suite + "'");
            }
            std::vector<int> ns = {5, 6};
            if (n != 0) {
                require_n(n);
                ns = {n};
            }
            json results = json::array();
            std::uint64_t failures = 0;
            for (const auto& s : suites) {
                for (int k : ns) {
                    SuiteResult r;
                    if (s == "roundtrip") r = suite_roundtrip(k, cfg);
                    if (s == "orthogonality") r = suite_orthogonality(k, cfg);
                    if (s == "signature") r = suite_signature(k, cfg);
                    if (s == "crossroute") r = suite_crossroute(k, cfg);
                    if (s == "complex") r = suite_complex(k, cfg);
                    failures += r.failure_count;
                    results.push_back(suite_json(r, cfg.tol));
                }
            }
            json doc = header("polymod-verify/1");
            doc["suite"] = suite;
            doc["samples"] = cfg.samples;
            doc["seed"] = cfg.seed;
            doc["tol"] = cfg.tol;
            doc["results"] = results;
            doc["failure_count"] = failures;
            doc["ok"] = failures == 0;
            out << dump_json(doc);
            return failures == 0 ? 0 : 1;
        }

        if (swp->parsed()) {
            require_n(n);
            const auto label = Label::parse(label_text);
            if (label.n() != n) throw Error(ErrorCode::BadInput, "label length does not match --n");
            std::ifstream in(input_path);
            if (!in) throw Error(ErrorCode::BadInput, "cannot read " + input_path);

            std::vector<SweepRow> rows;
            std::string line;
            std::size_t line_no = 0;
            while (std::getline(in, line)) {
                ++line_no;
                const std::string t = trim(line);
                if (t.empty() || t.front() == '#') continue;
                try {
                    rows.push_back({line_no, parse_angle_list(t)});
                } catch (const Error& e) {
                    // A non-numeric first line is a header.
                    if (rows.empty() && line_no == 1) continue;
                    err << "row " << line_no << ": " << to_string(e.code()) << ": " << e.message() << "\n";
                }
            }

            struct Result {
                std::string csv;
                std::string diagnostic;
            };
            std::vector<Result> results(rows.size());
            parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
                const auto& row = rows[i];
                try {
                    if (static_cast<int>(row.raw.size()) != n) {
                        throw Error(ErrorCode::BadInput, "expected " + std::to_string(n) + " angles");
                    }
                    const auto theta = validate_weight(row.raw, cfg.tol_sum);
                    std::ostringstream s;
                    s << row.line;
                    for (double v : theta.values()) s << ',' << csv_double(v);
                    if (n == 5) {
                        const auto shape = psi5(theta, label);
                        s << ',' << csv_double(shape.P) << ',' << csv_double(shape.Q) << ',' << (shape.valid() ? 1 : 0);
                    } else {
                        const auto shape = psi6(theta, label);
                        const auto cls = classify_hexahedron(shape, cfg.tol_ideal);
                        const auto sums = triple_sum_signs(theta, label, cfg.tol_ideal);
                        s << ',' << csv_double(shape.P) << ',' << csv_double(shape.Q) << ',' << csv_double(shape.R)
                          << ',' << cls.type;
                        for (int v : cls.signs) s << ',' << v;
                        for (int v : sums) s << ',' << v;
                    }
                    s << '\n';
                    results[i].csv = s.str();
                } catch (const Error& e) {
                    std::ostringstream d;
                    d << "row " << row.line << ": " << to_string(e.code()) << ": " << e.message() << "\n";
                    results[i].diagnostic = d.str();
                }
            });

            std::ostringstream body;
            body << "row";
            for (int i = 1; i <= n; ++i) body << ",theta_" << i;
            if (n == 5) {
                body << ",P,Q,valid\n";
            } else {
                body << ",P,Q,R,type,sign_P,sign_Q,sign_R,sum_sign_P,sum_sign_Q,sum_sign_R\n";
            }
            for (const auto& r : results) {
                body << r.csv;
                err << r.diagnostic;
            }
            if (out_path.empty()) {
                out << body.str();
            } else {
                std::ofstream file(out_path, std::ios::binary);
                if (!file) throw Error(ErrorCode::BadInput, "cannot write " + out_path);
                file << body.str();
            }
            return 0;
        }
    } catch (const Error& e) {
        err << "polymod: " << to_string(e.code()) << ": " << e.message() << "\n";
        out << dump_json(error_doc(e));
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "polymod: internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv = {"polymod"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace polymod
