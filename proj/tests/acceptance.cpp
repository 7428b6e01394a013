// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "polymod/cli.hpp"
#include "polymod/complex.hpp"
#include "polymod/fiber.hpp"
#include "polymod/json_format.hpp"
#include "polymod/lorentz.hpp"
#include "polymod/moduli.hpp"

using namespace polymod;

namespace {

constexpr std::uint64_t kSeed = 20240917;

std::vector<double> raw(const WeightVector& w) { return {w.values().begin(), w.values().end()}; }

double max_gap(const WeightVector& a, const WeightVector& b) {
    double worst = 0.0;
    for (int i = 1; i <= a.n(); ++i) worst = std::max(worst, std::abs(a.of(i) - b.of(i)));
    return worst;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ------------------------------------------------------------ 1 and 2

Verdict round_trip(int n) {
    Verdict v;
    const auto first = inversion_label_first(n);
    const auto second = inversion_label_second(n);
    double worst = 0.0, oracle_gap = 0.0;
    int failures = 0, corrupted = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const auto theta = sample_weight(n, stream_seed(kSeed, t));
        try {
            WeightVector back = theta;
            if (n == 5) {
                const auto s1 = psi5(theta, first);
                const auto s2 = psi5(theta, second);
                const auto o1 = oracle::psi5(raw(theta), first.word());
                const auto o2 = oracle::psi5(raw(theta), second.word());
                oracle_gap = std::max({oracle_gap, rel(s1.P, o1[0]), rel(s1.Q, o1[1]), rel(s2.P, o2[0]), rel(s2.Q, o2[1])});
                back = invert5(s1, s2).theta;
            } else {
                const auto s1 = psi6(theta, first);
                auto s2 = psi6(theta, second);
                const auto o1 = oracle::psi6(raw(theta), first.word());
                const auto o2 = oracle::psi6(raw(theta), second.word());
                oracle_gap = std::max({oracle_gap, rel(s1.P, o1[0]), rel(s1.Q, o1[1]), rel(s1.R, o1[2]),
                                       rel(s2.P, o2[0]), rel(s2.Q, o2[1]), rel(s2.R, o2[2])});
                back = invert6(s1, s2).theta;
                // R never enters the circles; the check after inversion must
                // catch a corrupted R on either side.
                const auto again = psi6(back, second);
                if (std::abs(again.R - s2.R) > 1e-9) v.fail("R of the second shape not reproduced");
                if (t % 10 == 0) {
                    s2.R *= 1.0 + 1e-3;
                    try {
                        invert6(s1, s2);
                        v.fail("corrupted R accepted at trial " + std::to_string(t));
                    } catch (const Error& e) {
                        if (e.code() != ErrorCode::InconsistentPair) v.fail("corrupted R gave " + std::string(to_string(e.code())));
                        ++corrupted;
                    }
                }
            }
            worst = std::max(worst, max_gap(back, theta));
        } catch (const Error& e) {
            ++failures;
            v.fail("trial " + std::to_string(t) + ": " + e.what());
        }
    }
    if (!(worst < 1e-9)) v.fail("max error " + fmt("%.3g", worst));
    if (!(oracle_gap < 1e-9)) v.fail("forward map disagrees with the law-of-sines oracle by " + fmt("%.3g", oracle_gap));
    if (v.pass) {
        v.detail = "1000 trials, 0 failures, max |theta - theta'| = " + fmt("%.3g", worst) +
                   ", forward vs oracle " + fmt("%.3g", oracle_gap);
        if (n == 6) v.detail += ", " + std::to_string(corrupted) + " corrupted-R pairs rejected";
    }
    (void)failures;
    return v;
}

// ------------------------------------------------------------------- 3

Verdict constants() {
    Verdict v;
    const auto s6 = psi6(equal_weight(6), Label::parse("123456"));
    double e6 = 0.0;
    for (double x : s6.values()) e6 = std::max(e6, std::abs(x - 1.0));
    const double target = oracle::regular_right_pentagon_intercept();
    const auto s5 = psi5(equal_weight(5), Label::parse("12345"));
    const double e5 = std::max(std::abs(s5.P - target), std::abs(s5.Q - target));
    if (!(e6 < 1e-9)) v.fail("psi6 off (1,1,1) by " + fmt("%.3g", e6));
    if (!(e5 < 1e-9)) v.fail("psi5 off the regular right pentagon by " + fmt("%.3g", e5));
    if (std::abs(target - 0.7861514) > 1e-7) v.fail("oracle value drifted");
    if (v.pass) {
        v.detail = "psi6 = (1,1,1) within " + fmt("%.3g", e6) + "; psi5 = " + fmt("%.10f", s5.P) +
                   " (tanh arccosh phi) within " + fmt("%.3g", e5);
    }
    return v;
}

// ------------------------------------------------------------------- 4

Verdict sign_rule() {
    Verdict v;
    const auto label = Label::parse("123456");
    int checked = 0, banded = 0;
    auto check = [&](const WeightVector& theta, const std::string& what) {
        const auto sums = triple_sum_signs(theta, label, 1e-9);
        const auto shape = psi6(theta, label);
        const auto params = shape.sign_triple(1e-6);
        ++checked;
        for (int k = 0; k < 3; ++k) banded += (sums[static_cast<std::size_t>(k)] == 0);
        if (sums != params) v.fail("sign mismatch at " + what);
    };
    for (std::uint64_t t = 0; t < 1000; ++t) check(sample_weight(6, stream_seed(kSeed + 4, t)), "random trial " + std::to_string(t));
    // Weights on the walls: rescale so that chosen triples sum to pi.
    const std::array<std::array<int, 3>, 3> triples = {{{5, 6, 1}, {1, 2, 3}, {3, 4, 5}}};
    for (std::uint64_t t = 0; t < 300; ++t) {
        auto th = raw(sample_weight(6, stream_seed(kSeed + 5, t)));
        const auto& tri = triples[t % 3];
        double s = 0.0;
        for (int m : tri) s += th[static_cast<std::size_t>(m - 1)];
        for (int m = 1; m <= 6; ++m) {
            const bool in = std::find(tri.begin(), tri.end(), m) != tri.end();
            th[static_cast<std::size_t>(m - 1)] *= in ? kPi / s : kPi / (kTwoPi - s);
        }
        try {
            check(validate_weight(th, 1e-12), "wall trial " + std::to_string(t));
        } catch (const Error&) {
            // Rescaling left the weight domain; not a test case.
        }
    }
    if (banded < 100) v.fail("too few zero-band cases (" + std::to_string(banded) + ")");
    if (v.pass) {
        v.detail = std::to_string(checked) + " weights (1000 random + walls), " + std::to_string(banded) +
                   " zero-band components, all signs agree";
    }
    return v;
}

// ------------------------------------------------------------------- 5

Verdict routes() {
    Verdict v;
    double worst = 0.0;
    for (int n : {5, 6}) {
        const auto labels = enumerate_labels(n);
        for (std::uint64_t t = 0; t < 500; ++t) {
            const auto theta = sample_weight(n, stream_seed(kSeed + 6, t));
            const auto& label = labels[t % labels.size()];
            const auto lorentz = axis_intercepts(LorentzModel::build(theta, label));
            std::vector<double> planar;
            if (n == 5) {
                const auto s = psi5_planar(theta, label);
                planar = {s.P, s.Q};
            } else {
                const auto s = psi6_planar(theta, label);
                planar = {s.P, s.Q, s.R};
            }
            for (std::size_t k = 0; k < planar.size(); ++k) worst = std::max(worst, rel(planar[k], lorentz[k]));
        }
    }
    if (!(worst < 1e-9)) v.fail("relative gap " + fmt("%.3g", worst));
    if (v.pass) v.detail = "500 weights each for n = 5, 6 over all labels; max relative gap " + fmt("%.3g", worst);
    return v;
}

// ------------------------------------------------------------------- 6

Verdict lorentz_invariants() {
    Verdict v;
    double worst = 0.0, oracle_worst = 0.0;
    int models = 0;
    for (int n : {5, 6}) {
        const auto labels = enumerate_labels(n);
        std::vector<std::array<int, 2>> pairs;
        for (int j = 0; j < n; ++j) pairs.push_back({j, (j + 2) % n});
        if (n == 6)
            for (int j = 0; j < 3; ++j) pairs.push_back({j, j + 3});
        const std::vector<std::vector<int>> corners =
            n == 5 ? std::vector<std::vector<int>>{{0, 2}, {1, 3}, {2, 4}, {3, 0}, {4, 1}}
                   : std::vector<std::vector<int>>{{0, 2, 4}, {1, 3, 5}};
        for (std::uint64_t t = 0; t < 500; ++t) {
            const auto theta = sample_weight(n, stream_seed(kSeed + 7, t));
            const auto& label = labels[t % labels.size()];
            const auto m = LorentzModel::build(theta, label);
            ++models;
            if (!(m.signature() == Signature{1, n - 3, 0})) v.fail("signature at trial " + std::to_string(t));
            const auto form = oracle::area_form(raw(theta), label.word());
            if (oracle::signature(form.gram) != std::array<int, 2>{1, n - 3}) v.fail("oracle signature at trial " + std::to_string(t));
            for (const auto& [j, k] : pairs) {
                worst = std::max(worst, std::abs(dihedral_angle(m, j, k) - kPi / 2));
                oracle_worst = std::max(oracle_worst, std::abs(oracle::facet_pairing(form, j, k)));
            }
            // Every corner is a finite point where all its facets meet at right angles.
            for (const auto& c : corners) {
                const auto p = klein_point(m, m.vertex(c));
                if (p.ideal || !(p.norm() < 1.0)) v.fail("corner not finite at trial " + std::to_string(t));
                for (std::size_t a = 0; a < c.size(); ++a)
                    for (std::size_t b = a + 1; b < c.size(); ++b)
                        worst = std::max(worst, std::abs(dihedral_angle(m, c[a], c[b]) - kPi / 2));
            }
        }
    }
    if (!(worst < 1e-9)) v.fail("orthogonality off by " + fmt("%.3g", worst));
    if (!(oracle_worst < 1e-9)) v.fail("oracle orthogonality off by " + fmt("%.3g", oracle_worst));
    if (v.pass) {
        v.detail = std::to_string(models) + " models with signature (1, n-3); right angles within " +
                   fmt("%.3g", worst) + " (oracle pairing " + fmt("%.3g", oracle_worst) + ")";
    }
    return v;
}

// ------------------------------------------------------------------- 7

Verdict combinatorics() {
    Verdict v;
    const auto c5 = build_complex(equal_weight(5));
    const auto e = euler_counts(c5);
    if (e.F != 12 || e.E != 30 || e.V != 15 || e.chi != -3) v.fail("n = 5 counts");
    const auto c6 = build_complex(equal_weight(6));
    if (c6.cells().size() != 60) v.fail("cell count");
    if (c6.pairings().size() != 180) v.fail("pairing count");
    const auto cusps = cusp_classes(c6);
    if (cusps.classes.size() != 10) v.fail("cusp count " + std::to_string(cusps.classes.size()));
    std::set<std::vector<int>> seen;
    for (const auto& cls : cusps.classes) {
        seen.insert(cls.partition[0]);
        std::set<std::vector<int>> labels;
        for (int c : cls.cells) labels.insert(c6.cells()[static_cast<std::size_t>(c)].word());
        if (labels.size() != 18) v.fail("class of size " + std::to_string(labels.size()));
        if (labels != oracle::labels_with_consecutive(6, cls.partition[0])) v.fail("class differs from the brute-force label set");
    }
    // Splits of {1..6} into two triples, named by the triple containing 1.
    std::set<std::vector<int>> splits;
    for (int a = 2; a <= 6; ++a)
        for (int b = a + 1; b <= 6; ++b) splits.insert({1, a, b});
    if (seen != splits) v.fail("cusps are not in bijection with the triple splits");
    if (v.pass) v.detail = "F=12 E=30 V=15 chi=-3; 60 cells, 180 pairings, 10 cusps x 18 labels matching the splits";
    return v;
}

// ------------------------------------------------------------------- 8

Verdict fiber() {
    Verdict v;
    double worst = 0.0, closest = 1e9;
    int pairs = 0, halvings = 0;
    std::vector<WeightVector> produced;
    for (std::uint64_t t = 0; t < 100; ++t) {
        const int n = t % 2 == 0 ? 5 : 6;
        const auto theta = sample_weight(n, stream_seed(kSeed + 8, t));
        const auto label = inversion_label_first(n);
        const Complex w0 = fiber_point(theta, label);
        std::mt19937_64 engine(stream_seed(kSeed + 9, t));
        Complex delta{(uniform01(engine) - 0.5) * 0.2 * w0.imag(), (uniform01(engine) - 0.5) * 0.2 * w0.imag()};

        auto lift = [&](Complex w) {
            return n == 5 ? fiber_theta5(psi5(theta, label), w, label) : fiber_theta6(psi6(theta, label), w, label);
        };
        auto shape_gap = [&](const WeightVector& th) {
            if (n == 5) {
                const auto a = psi5(theta, label), b = psi5(th, label);
                return std::max(std::abs(a.P - b.P), std::abs(a.Q - b.Q));
            }
            const auto a = psi6(theta, label), b = psi6(th, label);
            return std::max({std::abs(a.P - b.P), std::abs(a.Q - b.Q), std::abs(a.R - b.R)});
        };

        const auto at_w0 = lift(w0);
        worst = std::max({worst, shape_gap(at_w0), max_gap(at_w0, theta)});
        ++pairs;
        // Perturbed fiber point, pulled back toward w0 until the slid
        // polygon is convex again.
        std::optional<WeightVector> moved;
        for (int k = 0; k < 40 && !moved; ++k) {
            try {
                moved = lift(w0 + delta);
            } catch (const Error&) {
                delta *= 0.5;
                ++halvings;
            }
        }
        if (!moved) {
            v.fail("no admissible perturbation at trial " + std::to_string(t));
            continue;
        }
        worst = std::max(worst, shape_gap(*moved));
        ++pairs;
        closest = std::min(closest, max_gap(*moved, at_w0));
        produced.push_back(at_w0);
        produced.push_back(*moved);
    }
    for (std::size_t i = 0; i < produced.size(); ++i)
        for (std::size_t j = i + 1; j < produced.size(); ++j)
            if (produced[i].n() == produced[j].n()) closest = std::min(closest, max_gap(produced[i], produced[j]));
    if (!(worst < 1e-9)) v.fail("shape not reproduced, gap " + fmt("%.3g", worst));
    if (!(closest > 0.0)) v.fail("two fiber points gave the same weight");
    if (v.pass) {
        v.detail = std::to_string(pairs) + " (shape, w) pairs, max shape gap " + fmt("%.3g", worst) +
                   ", min weight separation " + fmt("%.3g", closest) + ", " + std::to_string(halvings) +
                   " re-projections";
    }
    return v;
}

// ------------------------------------------------------------------- 9

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Verdict determinism() {
    Verdict v;
    auto run = [](const std::vector<std::string>& args, int& code) {
        std::ostringstream out, err;
        code = run_cli(args, out, err);
        return out.str();
    };
    int code = 0;
    std::vector<std::string> verify_outputs;
    for (const char* jobs : {"1", "1", "2", "4"}) {
        verify_outputs.push_back(run({"verify", "--suite", "all", "--samples", "100", "--seed", "31", "--jobs", jobs}, code));
        if (code != 0) v.fail("verify exited " + std::to_string(code));
    }
    for (const auto& o : verify_outputs)
        if (o != verify_outputs.front()) v.fail("verify output depends on the run or on --jobs");

    const auto dir = std::filesystem::temp_directory_path() / "polymod_acceptance";
    std::filesystem::create_directories(dir);
    const auto input = dir / "thetas.csv";
    {
        std::ofstream f(input);
        f << "theta_1,theta_2,theta_3,theta_4,theta_5,theta_6\n";
        for (std::uint64_t t = 0; t < 100; ++t) {
            const auto th = sample_weight(6, stream_seed(kSeed + 10, t));
            for (int i = 1; i <= 6; ++i) f << (i > 1 ? "," : "") << format_double(th.of(i));
            f << "\n";
        }
    }
    std::vector<std::string> sweeps;
    int index = 0;
    for (const char* jobs : {"1", "1", "2", "4"}) {
        const auto out = dir / ("shapes_" + std::to_string(index++) + ".csv");
        run({"sweep", "--n", "6", "--input", input.string(), "--label", "123456", "--out", out.string(), "--jobs", jobs}, code);
        if (code != 0) v.fail("sweep exited " + std::to_string(code));
        sweeps.push_back(slurp(out));
    }
    for (const auto& s : sweeps)
        if (s != sweeps.front()) v.fail("sweep output depends on the run or on --jobs");
    if (std::count(sweeps.front().begin(), sweeps.front().end(), '\n') != 101) v.fail("sweep row count");
    if (v.pass) {
        v.detail = "verify (" + std::to_string(verify_outputs.front().size()) + " bytes) and sweep (" +
                   std::to_string(sweeps.front().size()) + " bytes) identical over 2 runs and jobs 1, 2, 4";
    }
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"n=5 forward/invert round trip", [] { return round_trip(5); }},
        {"n=6 forward/invert round trip with R check", [] { return round_trip(6); }},
        {"equal-weight constants", constants},
        {"sign rule incl. zero band", sign_rule},
        {"planar vs Lorentzian routes", routes},
        {"signature and right angles", lorentz_invariants},
        {"exact complex combinatorics", combinatorics},
        {"fiber property", fiber},
        {"determinism of verify and sweep", determinism},
    };
    int failed = 0;
    int k = 0;
    for (const auto& [name, check] : criteria) {
        ++k;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d (%s): %s [%.2fs]\n", v.pass ? "PASS" : "FAIL", k, name, v.detail.c_str(), secs);
        failed += !v.pass;
    }
    std::fflush(stdout);
    return failed;
}
