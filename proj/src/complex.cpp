#include "polymod/complex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "polymod/error.hpp"
#include "polymod/json_format.hpp"
#include "polymod/lorentz.hpp"
#include "polymod/moduli.hpp"

namespace polymod {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
        return i;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

template <typename Key>
struct Site {
    int cell;
    std::vector<int> facets;  // sorted
    Key key;
};

// Glues sites across paired faces: a site of cell c containing facet f is
// identified with the site of the partner cell that contains the partner
// facet and carries the same key. Returns the classes as sorted lists of
// site indices, ordered by their smallest member.
template <typename Key>
std::vector<std::vector<std::size_t>> glue(const GluedComplex& complex, const std::vector<Site<Key>>& sites) {
    std::map<std::pair<int, int>, std::vector<std::size_t>> by_facet;
    for (std::size_t s = 0; s < sites.size(); ++s) {
        for (int f : sites[s].facets) by_facet[{sites[s].cell, f}].push_back(s);
    }
    UnionFind uf(sites.size());
    for (std::size_t s = 0; s < sites.size(); ++s) {
        for (int f : sites[s].facets) {
            const FaceSlot other = complex.partner({sites[s].cell, f});
            const auto it = by_facet.find({other.cell, other.face});
            bool found = false;
            if (it != by_facet.end()) {
                for (std::size_t t : it->second) {
                    if (sites[t].key == sites[s].key) {
                        uf.unite(s, t);
                        found = true;
                        break;
                    }
                }
            }
            if (!found) {
                throw Error(ErrorCode::PairingFailure, "no matching corner across a glued face",
                            {sites[s].cell, f});
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t s = 0; s < sites.size(); ++s) classes[uf.find(s)].push_back(s);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : classes) out.push_back(std::move(members));
    return out;
}

std::vector<OrbitClass> corner_orbits(const GluedComplex& complex, const std::vector<std::vector<int>>& patterns) {
    const int n = complex.n();
    std::vector<Site<DegenerateConfig>> sites;
    for (int c = 0; c < static_cast<int>(complex.cells().size()); ++c) {
        const Label& label = complex.cells()[static_cast<std::size_t>(c)];
        for (const auto& pattern : patterns) {
            for (int j = 0; j < n; ++j) {
                std::vector<int> facets;
                for (int offset : pattern) facets.push_back((j + offset) % n);
                std::sort(facets.begin(), facets.end());
                if (std::any_of(sites.begin(), sites.end(),
                                [&](const auto& s) { return s.cell == c && s.facets == facets; })) {
                    continue;  // (j, j+3) and (j+3, j) are the same corner
                }
                sites.push_back({c, facets, facets_config(label, facets)});
            }
        }
    }
    std::vector<OrbitClass> out;
    for (const auto& members : glue(complex, sites)) {
        OrbitClass cls{sites[members.front()].key, {}};
        for (std::size_t s : members) {
            if (sites[s].key != cls.key) {
                throw Error(ErrorCode::PairingFailure, "one orbit carries two configurations");
            }
            cls.incidences.push_back({sites[s].cell, sites[s].facets});
        }
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].key == out[i - 1].key) {
            throw Error(ErrorCode::PairingFailure, "a configuration splits into several orbits");
        }
    }
    return out;
}

bool all_triples_straight(const WeightVector& theta, double tol) {
    const int n = theta.n();
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c)
                if (std::abs(theta.of(a) + theta.of(b) + theta.of(c) - kPi) > tol) return false;
    return true;
}

}  // namespace

FaceSlot GluedComplex::partner(FaceSlot slot) const {
    const std::size_t idx = static_cast<std::size_t>(slot.cell) * static_cast<std::size_t>(n()) +
                            static_cast<std::size_t>(slot.face);
    if (slot.cell < 0 || slot.face < 0 || slot.face >= n() || idx >= partner_.size()) {
        throw Error(ErrorCode::OutOfRange, "face slot out of range", {slot.cell, slot.face});
    }
    return partner_[idx];
}

DegenerateConfig GluedComplex::face_key(FaceSlot slot) const {
    if (slot.cell < 0 || slot.cell >= static_cast<int>(cells_.size())) {
        throw Error(ErrorCode::OutOfRange, "cell index out of range", {slot.cell});
    }
    return face_config(cells_[static_cast<std::size_t>(slot.cell)], slot.face);
}

GluedComplex build_complex(const WeightVector& theta) {
    const int n = theta.n();
    if (n != 5 && n != 6) throw Error(ErrorCode::OutOfRange, "only n = 5 and n = 6 are supported");
    GluedComplex complex(theta);
    complex.cells_ = enumerate_labels(n);

    std::map<DegenerateConfig, std::vector<FaceSlot>> slots;
    for (int c = 0; c < static_cast<int>(complex.cells_.size()); ++c) {
        for (int f = 0; f < n; ++f) slots[face_config(complex.cells_[static_cast<std::size_t>(c)], f)].push_back({c, f});
    }
    complex.partner_.resize(complex.cells_.size() * static_cast<std::size_t>(n));
    for (auto& [key, list] : slots) {
        if (list.size() != 2 || list[0].cell == list[1].cell) {
            throw Error(ErrorCode::PairingFailure, "face " + key.str() + " is not shared by exactly two cells");
        }
        std::sort(list.begin(), list.end());
        complex.pairings_.push_back({list[0], list[1], key});
        complex.partner_[static_cast<std::size_t>(list[0].cell * n + list[0].face)] = list[1];
        complex.partner_[static_cast<std::size_t>(list[1].cell * n + list[1].face)] = list[0];
    }
    std::sort(complex.pairings_.begin(), complex.pairings_.end(),
              [](const Pairing& a, const Pairing& b) { return std::tie(a.a, a.b) < std::tie(b.a, b.b); });

    if (n == 5) {
        complex.corners_ = corner_orbits(complex, {{0, 2}});
    } else {
        complex.corners_ = corner_orbits(complex, {{0, 2}, {0, 3}});
        complex.vertices_ = corner_orbits(complex, {{0, 2, 4}});
    }
    return complex;
}

EulerCounts euler_counts(const GluedComplex& complex) {
    if (complex.n() != 5) throw Error(ErrorCode::OutOfRange, "Euler counts are for the n = 5 surface");
    EulerCounts c;
    c.V = static_cast<int>(complex.corner_classes().size());
    c.E = static_cast<int>(complex.pairings().size());
    c.F = static_cast<int>(complex.cells().size());
    c.chi = c.V - c.E + c.F;
    return c;
}

int euler_characteristic(const GluedComplex& complex) { return euler_counts(complex).chi; }

CuspTable cusp_classes(const GluedComplex& complex, double tol_ideal) {
    if (complex.n() != 6) throw Error(ErrorCode::OutOfRange, "cusps are counted for n = 6");
    if (!all_triples_straight(complex.theta(), tol_ideal)) {
        throw Error(ErrorCode::NotEqualWeight, "cusp classes need every triple of angles to sum to pi");
    }
    using Partition = std::array<std::vector<int>, 2>;
    std::vector<Site<Partition>> sites;
    for (int c = 0; c < static_cast<int>(complex.cells().size()); ++c) {
        const Label& label = complex.cells()[static_cast<std::size_t>(c)];
        for (int start : {4, 0, 2}) {
            std::vector<int> inside, outside;
            for (int k = 0; k < 6; ++k) (k < 3 ? inside : outside).push_back(label.at(start + k));
            std::sort(inside.begin(), inside.end());
            std::sort(outside.begin(), outside.end());
            Partition key = inside.front() == 1 ? Partition{inside, outside} : Partition{outside, inside};
            // Facets whose two marks stay on one side of the partition.
            std::vector<int> facets;
            for (int j : {start, start + 1, start + 3, start + 4}) facets.push_back(j % 6);
            std::sort(facets.begin(), facets.end());
            sites.push_back({c, facets, key});
        }
    }
    CuspTable table;
    table.incidences = static_cast<int>(sites.size());
    for (const auto& members : glue(complex, sites)) {
        CuspClass cls{sites[members.front()].key, {}};
        for (std::size_t s : members) {
            if (sites[s].key != cls.partition) {
                throw Error(ErrorCode::PairingFailure, "one cusp carries two partitions");
            }
            cls.cells.push_back(sites[s].cell);
        }
        std::sort(cls.cells.begin(), cls.cells.end());
        table.classes.push_back(std::move(cls));
    }
    std::sort(table.classes.begin(), table.classes.end(),
              [](const auto& a, const auto& b) { return a.partition < b.partition; });
    return table;
}

std::vector<SingularEdgeClass> singular_edges(const GluedComplex& complex) {
    if (complex.n() != 6) throw Error(ErrorCode::OutOfRange, "singular edges are for n = 6");
    const auto& theta = complex.theta();
    std::vector<Site<DegenerateConfig>> sites;
    for (int c = 0; c < static_cast<int>(complex.cells().size()); ++c) {
        const Label& label = complex.cells()[static_cast<std::size_t>(c)];
        for (int j = 0; j < 6; ++j) {
            const double sum = theta.of(label.at(j)) + theta.of(label.at(j + 1)) + theta.of(label.at(j + 2));
            if (!(sum < kPi - kDefaultTolIdeal)) continue;
            std::vector<int> facets{j, (j + 1) % 6};
            std::sort(facets.begin(), facets.end());
            sites.push_back({c, facets, facets_config(label, facets)});
        }
    }
    // A consecutive pair exists in one cell iff it exists in all cells with
    // the same key (the triple sum only depends on the key), so gluing only
    // ever finds partners among the collected sites.
    std::map<int, LorentzModel> models;
    auto model_of = [&](int cell) -> const LorentzModel& {
        auto it = models.find(cell);
        if (it == models.end()) {
            it = models.emplace(cell, LorentzModel::build(theta, complex.cells()[static_cast<std::size_t>(cell)])).first;
        }
        return it->second;
    };
    std::vector<SingularEdgeClass> out;
    for (const auto& members : glue(complex, sites)) {
        SingularEdgeClass cls;
        cls.key = sites[members.front()].key;
        for (const auto& symbol : cls.key.symbols()) {
            if (symbol.size() == 3) cls.triple = symbol;
        }
        for (std::size_t s : members) {
            const auto& site = sites[s];
            // Keep the cyclic order (j, j+1) of the pair.
            std::array<int, 2> pair{site.facets[0], site.facets[1]};
            if (pair[0] == 0 && pair[1] == 5) pair = {5, 0};
            const double angle = dihedral_angle(model_of(site.cell), pair[0], pair[1]);
            cls.incidences.push_back({site.cell, pair, angle});
            cls.cone_angle += angle;
        }
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    return out;
}

std::vector<std::array<double, 5>> pentagon_edge_lengths(const GluedComplex& complex) {
    if (complex.n() != 5) throw Error(ErrorCode::OutOfRange, "pentagon edges are for n = 5");
    std::vector<std::array<double, 5>> out;
    for (const auto& label : complex.cells()) {
        const auto sides = pentagon_side_lengths(psi5(complex.theta(), label));
        std::array<double, 5> by_facet{};
        for (std::size_t k = 0; k < 5; ++k) by_facet[static_cast<std::size_t>(kPentagonSideFacets[k])] = sides[k];
        out.push_back(by_facet);
    }
    return out;
}

std::string export_adjacency(const GluedComplex& complex, std::string_view format) {
    const int n = complex.n();
    if (format == "json") {
        nlohmann::json doc;
        doc["schema"] = "polymod-complex/1";
        doc["version"] = std::string(library_version());
        doc["n"] = n;
        doc["theta"] = std::vector<double>(complex.theta().values().begin(), complex.theta().values().end());
        nlohmann::json cells = nlohmann::json::array();
        for (int c = 0; c < static_cast<int>(complex.cells().size()); ++c) {
            nlohmann::json faces = nlohmann::json::array();
            for (int f = 0; f < n; ++f) {
                const FaceSlot other = complex.partner({c, f});
                faces.push_back({{"face", f},
                                 {"key", complex.face_key({c, f}).str()},
                                 {"partner_cell", other.cell},
                                 {"partner_face", other.face}});
            }
            cells.push_back({{"index", c},
                             {"label", complex.cells()[static_cast<std::size_t>(c)].str()},
                             {"faces", faces}});
        }
        doc["cells"] = cells;
        auto orbit_json = [](const std::vector<OrbitClass>& classes) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& cls : classes) {
                nlohmann::json inc = nlohmann::json::array();
                for (const auto& i : cls.incidences) inc.push_back({{"cell", i.cell}, {"facets", i.facets}});
                arr.push_back({{"key", cls.key.str()}, {"incidences", inc}});
            }
            return arr;
        };
        doc["corner_classes"] = orbit_json(complex.corner_classes());
        if (n == 5) {
            const auto e = euler_counts(complex);
            doc["euler"] = {{"V", e.V}, {"E", e.E}, {"F", e.F}, {"chi", e.chi}};
        } else {
            doc["vertex_classes"] = orbit_json(complex.vertex_classes());
            nlohmann::json sing = nlohmann::json::array();
            for (const auto& cls : singular_edges(complex)) {
                nlohmann::json inc = nlohmann::json::array();
                for (const auto& i : cls.incidences) {
                    inc.push_back({{"cell", i.cell}, {"facets", i.facets}, {"dihedral", i.dihedral}});
                }
                sing.push_back({{"key", cls.key.str()},
                                {"triple", cls.triple},
                                {"cone_angle", cls.cone_angle},
                                {"incidences", inc}});
            }
            doc["singular_edges"] = sing;
        }
        return dump_json(doc);
    }
    if (format == "csv") {
        std::ostringstream out;
        out << "kind,cell,face,partner_cell,partner_face,key\n";
        for (const auto& p : complex.pairings()) {
            out << "pairing," << p.a.cell << ',' << p.a.face << ',' << p.b.cell << ',' << p.b.face << ",\""
                << p.key.str() << "\"\n";
        }
        auto orbit_rows = [&](const char* kind, const std::vector<OrbitClass>& classes) {
            for (const auto& cls : classes) {
                for (const auto& i : cls.incidences) {
                    std::string facets;
                    for (int f : i.facets) facets += (facets.empty() ? "" : " ") + std::to_string(f);
                    out << kind << ',' << i.cell << ",\"" << facets << "\",,,\"" << cls.key.str() << "\"\n";
                }
            }
        };
        orbit_rows("corner", complex.corner_classes());
        orbit_rows("vertex", complex.vertex_classes());
        return out.str();
    }
    throw Error(ErrorCode::UnknownFormat, "unknown export format '" + std::string(format) + "'");
}

}  // namespace polymod
