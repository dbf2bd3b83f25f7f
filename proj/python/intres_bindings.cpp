#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "intres/approx.hpp"
#include "intres/artrans.hpp"
#include "intres/errors.hpp"
#include "intres/json_io.hpp"
#include "intres/ladder.hpp"
#include "intres/module.hpp"
#include "intres/poset.hpp"
#include "intres/testkit.hpp"

namespace py = pybind11;
using namespace intres;

namespace {

// The bound Poset class exposes no mutators, so sharing the const-built
// instances through a non-const holder is safe.
std::shared_ptr<Poset> share(std::shared_ptr<const Poset> p) {
    return std::const_pointer_cast<Poset>(std::move(p));
}

std::vector<std::vector<int>> matrix_rows(const FpMatrix& a) {
    std::vector<std::vector<int>> out(a.rows(), std::vector<int>(a.cols()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out[i][j] = int(a(i, j));
    return out;
}

FpMatrix matrix_from_rows(const std::vector<std::vector<long long>>& rows, int nrows, int ncols,
                          fp_t p) {
    if (int(rows.size()) != nrows) throw std::invalid_argument("matrix has wrong row count");
    FpOps ops(p);
    FpMatrix a(nrows, ncols, p);
    for (int i = 0; i < nrows; ++i) {
        if (int(rows[i].size()) != ncols) throw std::invalid_argument("matrix has ragged rows");
        for (int j = 0; j < ncols; ++j) {
            long long v = rows[i][j] % (long long)p;
            if (v < 0) v += p;
            a.set(i, j, fp_t(v));
        }
    }
    return a;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(e.what());
    }
}

std::string int_list(const std::vector<int>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(xs[i]);
    }
    return s;
}

}  // namespace

PYBIND11_MODULE(_intres, m) {
    m.doc() = "interval resolutions of persistence modules over finite posets";

    py::register_exception<depth_exceeded>(m, "DepthExceeded", PyExc_RuntimeError);
    py::register_exception<join_missing>(m, "JoinMissing", PyExc_RuntimeError);
    py::register_exception<internal_inconsistency>(m, "InternalInconsistency", PyExc_RuntimeError);

    py::class_<Poset, std::shared_ptr<Poset>>(m, "Poset")
        .def_property_readonly("size", &Poset::size)
        .def_property_readonly("names", [](const Poset& p) { return p.names; })
        .def_property_readonly("hasse_edges", [](const Poset& p) { return p.hasse_edges; })
        .def_property_readonly("is_grid", &Poset::is_grid)
        .def_property_readonly("grid_shape",
                               [](const Poset& p) { return std::make_pair(p.grid_m, p.grid_n); })
        .def("leq", &Poset::leq, py::arg("a"), py::arg("b"))
        .def("vertex_at", &Poset::vertex_at, py::arg("i"), py::arg("j"))
        .def("coords", &Poset::coords, py::arg("v"))
        .def("opposite", [](const Poset& p) { return share(p.opposite()); })
        .def("to_json", [](const Poset& p) { return poset_to_json(p).dump(2); })
        .def("__len__", &Poset::size)
        .def("__repr__", [](const Poset& p) {
            if (p.is_grid())
                return "Poset(grid " + std::to_string(p.grid_m) + "x" + std::to_string(p.grid_n) +
                       ")";
            return "Poset(" + std::to_string(p.size()) + " elements)";
        });

    m.def("grid", [](int m_, int n_) { return share(make_grid(m_, n_)); }, py::arg("m"),
          py::arg("n"));
    m.def("chain", [](int n) { return share(make_chain(n)); }, py::arg("n"));
    m.def("poset_from_hasse",
          [](const std::vector<std::string>& elements,
             const std::vector<std::pair<int, int>>& edges) {
              return share(make_poset_from_hasse(elements, edges));
          },
          py::arg("elements"), py::arg("edges"));
    m.def("zigzag", [] { return share(zigzag_poset()); });
    m.def("poset_from_json", [](const std::string& text) {
        return share(poset_from_json(parse_json(text)));
    }, py::arg("text"));

    py::class_<Interval>(m, "Interval")
        .def_property_readonly("members", [](const Interval& iv) { return iv.members; })
        .def_property_readonly("staircase",
                               [](const Interval& iv) {
                                   std::vector<std::tuple<int, int, int>> out;
                                   for (const auto& s : iv.staircase)
                                       out.emplace_back(s.row, s.lo, s.hi);
                                   return out;
                               })
        .def("to_json", [](const Interval& iv) { return interval_to_json(iv).dump(2); })
        .def("__eq__", [](const Interval& a, const Interval& b) { return a.members == b.members; },
             py::is_operator())
        .def("__len__", [](const Interval& iv) { return iv.members.size(); })
        .def("__repr__",
             [](const Interval& iv) { return "Interval([" + int_list(iv.members) + "])"; });

    m.def("interval",
          [](const std::shared_ptr<Poset>& p, std::vector<int> members) {
              return make_interval(*p, std::move(members));
          },
          py::arg("poset"), py::arg("members"));
    m.def("interval_from_json",
          [](const std::string& text, const std::shared_ptr<Poset>& p) {
              return interval_from_json(parse_json(text), *p);
          },
          py::arg("text"), py::arg("poset"));
    m.def("zigzag_range", &zigzag_range, py::arg("lo"), py::arg("hi"));
    m.def("oracle_intervals",
          [](const std::shared_ptr<Poset>& p) { return oracle_intervals(*p); }, py::arg("poset"));

    py::class_<IntervalPoset>(m, "IntervalPoset")
        .def(py::init([](std::shared_ptr<Poset> p) { return IntervalPoset(std::move(p)); }),
             py::arg("poset"))
        .def_property_readonly("poset",
                               [](const IntervalPoset& ip) { return share(ip.poset_ptr()); })
        .def_property_readonly("size", &IntervalPoset::size)
        .def("at", &IntervalPoset::at, py::arg("idx"))
        .def("index_of", &IntervalPoset::index_of, py::arg("members"))
        .def("contained_in", &IntervalPoset::contained_in, py::arg("i"), py::arg("j"))
        .def("covers_of", &IntervalPoset::covers_of, py::arg("idx"))
        .def("join", &IntervalPoset::join, py::arg("idxs"))
        .def("__len__", &IntervalPoset::size)
        .def("__getitem__",
             [](const IntervalPoset& ip, int idx) {
                 if (idx < 0 || idx >= ip.size()) throw py::index_error();
                 return ip.at(idx);
             })
        .def("__repr__", [](const IntervalPoset& ip) {
            return "IntervalPoset(" + std::to_string(ip.size()) + " intervals)";
        });

    py::class_<PersistenceModule>(m, "Module")
        .def_property_readonly("field", &PersistenceModule::field)
        .def_property_readonly("dims", [](const PersistenceModule& mod) { return mod.dims(); })
        .def_property_readonly("total_dim", &PersistenceModule::total_dim)
        .def_property_readonly("poset",
                               [](const PersistenceModule& mod) { return share(mod.poset_ptr()); })
        .def("dim", &PersistenceModule::dim, py::arg("v"))
        .def("is_zero", &PersistenceModule::is_zero)
        .def("arrow",
             [](const PersistenceModule& mod, int x, int y) {
                 return matrix_rows(mod.arrow(x, y));
             },
             py::arg("x"), py::arg("y"))
        .def("map_between",
             [](const PersistenceModule& mod, int x, int y) {
                 return matrix_rows(mod.map_between(x, y));
             },
             py::arg("x"), py::arg("y"))
        .def("to_json", [](const PersistenceModule& mod) { return module_to_json(mod).dump(2); })
        .def("__repr__", [](const PersistenceModule& mod) {
            return "Module(F" + std::to_string(mod.field()) + ", dims=[" + int_list(mod.dims()) +
                   "])";
        });

    m.def("module",
          [](const std::shared_ptr<Poset>& p, fp_t field, std::vector<int> dims,
             const std::vector<std::vector<std::vector<long long>>>& arrows) {
              const auto& edges = p->hasse_edges;
              if (arrows.size() != edges.size())
                  throw std::invalid_argument("one matrix per Hasse edge expected");
              std::vector<FpMatrix> mats;
              mats.reserve(arrows.size());
              for (std::size_t e = 0; e < arrows.size(); ++e) {
                  auto [x, y] = edges[e];
                  mats.push_back(matrix_from_rows(arrows[e], dims[y], dims[x], field));
              }
              return PersistenceModule(p, field, std::move(dims), std::move(mats));
          },
          py::arg("poset"), py::arg("field"), py::arg("dims"), py::arg("arrows"),
          "Build a module from per-edge matrices listed in Hasse edge order.");
    m.def("module_from_json",
          [](const std::string& text) { return module_from_json(parse_json(text)); },
          py::arg("text"));
    m.def("zero_module",
          [](const std::shared_ptr<Poset>& p, fp_t field) { return zero_module(p, field); },
          py::arg("poset"), py::arg("field"));
    m.def("interval_module",
          [](const std::shared_ptr<Poset>& p, fp_t field, const Interval& iv) {
              return interval_module(p, field, iv);
          },
          py::arg("poset"), py::arg("field"), py::arg("interval"));
    m.def("projective",
          [](const std::shared_ptr<Poset>& p, fp_t field, int x) {
              return projective_at(p, field, x);
          },
          py::arg("poset"), py::arg("field"), py::arg("x"));
    m.def("injective",
          [](const std::shared_ptr<Poset>& p, fp_t field, int x) {
              return injective_at(p, field, x);
          },
          py::arg("poset"), py::arg("field"), py::arg("x"));
    m.def("direct_sum",
          [](const std::shared_ptr<Poset>& p, fp_t field,
             const std::vector<PersistenceModule>& ms) { return direct_sum(p, field, ms); },
          py::arg("poset"), py::arg("field"), py::arg("summands"));
    m.def("scramble", &scramble, py::arg("module"), py::arg("seed"));
    m.def("check_commutativity", &check_commutativity, py::arg("module"));
    m.def("hom_dim",
          [](const PersistenceModule& a, const PersistenceModule& b) {
              py::gil_scoped_release nogil;
              return hom_basis(a, b).dimension();
          },
          py::arg("source"), py::arg("target"));

    py::class_<ResolutionChecks>(m, "ResolutionChecks")
        .def_readonly("surjective", &ResolutionChecks::surjective)
        .def_readonly("exact", &ResolutionChecks::exact)
        .def_readonly("approximation", &ResolutionChecks::approximation)
        .def("all", &ResolutionChecks::all)
        .def("__repr__", [](const ResolutionChecks& c) {
            return std::string("ResolutionChecks(surjective=") + (c.surjective ? "True" : "False") +
                   ", exact=" + (c.exact ? "True" : "False") +
                   ", approximation=" + (c.approximation ? "True" : "False") + ")";
        });

    py::class_<IntervalResolution>(m, "Resolution")
        .def_property_readonly("length", &IntervalResolution::length)
        .def("table", &IntervalResolution::table)
        .def("multiplicities",
             [](const IntervalResolution& r, int step) {
                 if (step < 0 || step >= int(r.steps.size())) throw py::index_error();
                 return r.steps[step].multiplicities;
             },
             py::arg("step"))
        .def("euler", [](const IntervalResolution& r) { return euler_profile(r); })
        .def("to_json",
             [](const IntervalResolution& r, const IntervalPoset& ip) {
                 return resolution_to_json(r, ip).dump(2);
             },
             py::arg("intervals"))
        .def("__repr__", [](const IntervalResolution& r) {
            return "Resolution(length=" + std::to_string(r.length()) + ")";
        });

    m.def("resolve",
          [](const PersistenceModule& mod, const IntervalPoset& ip, int max_depth) {
              py::gil_scoped_release nogil;
              return interval_resolution(mod, ip, max_depth);
          },
          py::arg("module"), py::arg("intervals"), py::arg("max_depth") = -1);
    m.def("verify_resolution",
          [](const PersistenceModule& mod, const IntervalResolution& r, const IntervalPoset& ip) {
              py::gil_scoped_release nogil;
              return ResolutionEngine(ip).verify(mod, r);
          },
          py::arg("module"), py::arg("resolution"), py::arg("intervals"));
    m.def("interval_dimension",
          [](const PersistenceModule& mod, const IntervalPoset& ip) {
              py::gil_scoped_release nogil;
              return interval_dimension(mod, ip);
          },
          py::arg("module"), py::arg("intervals"));

    m.def("top_dims", &top_dims, py::arg("module"));
    m.def("transpose",
          [](const PersistenceModule& mod) {
              py::gil_scoped_release nogil;
              return transpose(mod);
          },
          py::arg("module"));
    m.def("dual",
          [](const PersistenceModule& mod) {
              py::gil_scoped_release nogil;
              return dual(mod);
          },
          py::arg("module"));
    m.def("tau",
          [](const PersistenceModule& mod) {
              py::gil_scoped_release nogil;
              return tau(mod);
          },
          py::arg("module"));
    m.def("tau_inverse",
          [](const PersistenceModule& mod) {
              py::gil_scoped_release nogil;
              return tau_inverse(mod);
          },
          py::arg("module"));

    py::class_<TranslateSweep>(m, "TranslateSweep")
        .def_readonly("tau_lengths", &TranslateSweep::tau_lengths)
        .def_readonly("mirrored_lengths", &TranslateSweep::mirrored_lengths);

    m.def("translate_sweep",
          [](const IntervalPoset& ip, fp_t field, int jobs, int max_depth) {
              py::gil_scoped_release nogil;
              return translate_sweep(ip, field, jobs, max_depth);
          },
          py::arg("intervals"), py::arg("field"), py::arg("jobs") = 1,
          py::arg("max_depth") = -1);
    m.def("intgldim",
          [](const IntervalPoset& ip, fp_t field, int jobs, int max_depth) {
              py::gil_scoped_release nogil;
              return intgldim(ip, field, jobs, max_depth);
          },
          py::arg("intervals"), py::arg("field"), py::arg("jobs") = 1,
          py::arg("max_depth") = -1);

    py::class_<XiMorphism>(m, "XiMorphism")
        .def_property_readonly("vertex_images",
                               [](const XiMorphism& f) { return f.vertex_images; })
        .def_property_readonly("arrow_images",
                               [](const XiMorphism& f) { return f.arrow_images; });
    m.def("xi",
          [](const Interval& iv, const std::shared_ptr<Poset>& p) { return xi(iv, *p); },
          py::arg("interval"), py::arg("ladder"));

    py::class_<ZigzagModule>(m, "ZigzagModule")
        .def_readonly("field", &ZigzagModule::field)
        .def_property_readonly("spaces", [](const ZigzagModule& z) { return z.spaces; })
        .def("map", [](const ZigzagModule& z, int t) { return matrix_rows(z.maps.at(t)); },
             py::arg("arrow"))
        .def("as_module", &ZigzagModule::as_module)
        .def("is_zero", &ZigzagModule::is_zero)
        .def("to_json", [](const ZigzagModule& z) { return zigzag_to_json(z).dump(2); })
        .def("__repr__", [](const ZigzagModule& z) {
            return "ZigzagModule(spaces=[" +
                   int_list(std::vector<int>(z.spaces.begin(), z.spaces.end())) + "])";
        });

    m.def("compress", &compress, py::arg("module"), py::arg("interval"));
    m.def("zigzag_top_multiplicity", &zigzag_top_multiplicity, py::arg("zigzag_module"));
    m.def("compressed_multiplicity",
          [](const PersistenceModule& mod, const Interval& iv) {
              py::gil_scoped_release nogil;
              return compressed_multiplicity(mod, iv);
          },
          py::arg("module"), py::arg("interval"));

    py::class_<CompressedProfile>(m, "CompressedProfile")
        .def_readonly("c", &CompressedProfile::c)
        .def_readonly("delta", &CompressedProfile::delta);

    m.def("interval_approximation_delta",
          [](const PersistenceModule& mod, const IntervalPoset& ip, int jobs) {
              py::gil_scoped_release nogil;
              return interval_approximation_delta(mod, ip, jobs);
          },
          py::arg("module"), py::arg("intervals"), py::arg("jobs") = 1);
    m.def("profile_to_json",
          [](const CompressedProfile& prof, const IntervalPoset& ip) {
              return profile_to_json(prof, ip).dump(2);
          },
          py::arg("profile"), py::arg("intervals"));

    py::class_<PlantedModule>(m, "PlantedModule")
        .def_readonly("multiplicities", &PlantedModule::multiplicities)
        .def_readonly("module", &PlantedModule::module)
        .def_readonly("seed", &PlantedModule::seed);

    m.def("plant",
          [](const IntervalPoset& ip, fp_t field, int budget, std::uint64_t seed) {
              return plant(ip, field, budget, seed);
          },
          py::arg("intervals"), py::arg("field"), py::arg("budget"), py::arg("seed"));
    m.def("random_module_perturbed",
          [](const std::shared_ptr<Poset>& p, fp_t field, int dim_budget, std::uint64_t seed) {
              return random_module_perturbed(p, field, dim_budget, seed);
          },
          py::arg("grid"), py::arg("field"), py::arg("dim_budget"), py::arg("seed"));
    m.def("random_submodule", &random_submodule, py::arg("module"), py::arg("seed"));
}
