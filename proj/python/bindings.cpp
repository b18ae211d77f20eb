#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "dtuna/enhance.hpp"
#include "dtuna/evolve.hpp"
#include "dtuna/filters.hpp"
#include "dtuna/harness/benchmark.hpp"
#include "dtuna/harness/png_io.hpp"
#include "dtuna/quality.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace dtuna;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using F64Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ImageU8 to_u8(const U8Array& arr) {
    if (arr.ndim() != 3 || arr.shape(2) != 3) throw InvalidArgument("expected a (height, width, 3) uint8 array");
    const auto h = static_cast<int>(arr.shape(0));
    const auto w = static_cast<int>(arr.shape(1));
    std::vector<std::uint8_t> data(arr.data(), arr.data() + arr.size());
    return ImageU8(w, h, std::move(data));
}

U8Array from_u8(const ImageU8& img) {
    U8Array out({img.height, img.width, 3});
    std::memcpy(out.mutable_data(), img.data.data(), img.data.size());
    return out;
}

ImageF to_f64(const F64Array& arr) {
    if (arr.ndim() != 3 || arr.shape(2) != 3) throw InvalidArgument("expected a (height, width, 3) float array");
    ImageF img(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)), 3);
    std::memcpy(img.data.data(), arr.data(), img.data.size() * sizeof(double));
    return img;
}

F64Array from_f64(const ImageF& img) {
    F64Array out({img.height, img.width, img.channels});
    std::memcpy(out.mutable_data(), img.data.data(), img.data.size() * sizeof(double));
    return out;
}

ChannelF to_plane(const F64Array& arr) {
    if (arr.ndim() != 2) throw InvalidArgument("expected a (height, width) float array");
    ChannelF c(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
    std::memcpy(c.data.data(), arr.data(), c.data.size() * sizeof(double));
    return c;
}

F64Array from_plane(const ChannelF& c) {
    F64Array out({c.height, c.width});
    std::memcpy(out.mutable_data(), c.data.data(), c.data.size() * sizeof(double));
    return out;
}

py::dict degeneracy_dict(const Degeneracy& d) {
    return py::dict("dichotomy"_a = d.dichotomy, "restored"_a = d.restored, "blend"_a = d.blend);
}

ParamBounds to_bounds(const std::vector<std::pair<double, double>>& pairs) {
    ParamBounds b;
    for (const auto& [lo, hi] : pairs) b.intervals.push_back({lo, hi});
    return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dichotomy-function low-light enhancement and GA parameter tuning";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    // Images are exchanged as (height, width, 3) arrays: uint8 for 8-bit, float64 on [0,1].
    m.def("normalize_u8", [](const U8Array& a) { return from_f64(normalize_u8(to_u8(a))); });
    m.def("denormalize", [](const F64Array& a) { return from_u8(denormalize(to_f64(a))); });
    m.def("gamma_correct", [](const F64Array& a, double g) { return from_f64(gamma_correct(to_f64(a), g)); });
    m.def("rgb_to_hsv", [](const F64Array& a) {
        const auto hsv = rgb_to_hsv(to_f64(a));
        return py::make_tuple(from_plane(hsv.h), from_plane(hsv.s), from_plane(hsv.v));
    });
    m.def("hsv_to_rgb", [](const F64Array& h, const F64Array& s, const F64Array& v) {
        return from_f64(hsv_to_rgb(to_plane(h), to_plane(s), to_plane(v)));
    });
    m.def("minmax_normalize", [](const F64Array& c) {
        const auto r = minmax_normalize(to_plane(c));
        return py::make_tuple(from_plane(r.value), r.degenerate);
    });

    m.def("dichotomy", [](const F64Array& v, double g) { return from_plane(dichotomy(to_plane(v), g)); }, "v"_a,
          "gamma"_a);
    m.def("dichotomy_enhance", [](const F64Array& img, double g) {
        const auto r = dichotomy_enhance(to_f64(img), g);
        return py::make_tuple(from_f64(r.image), degeneracy_dict(r.degeneracy));
    }, "image"_a, "gamma"_a);
    m.def("dichotomy_filter_enhance", [](const F64Array& img, double g, double sigma) {
        const auto r = dichotomy_filter_enhance(to_f64(img), g, sigma);
        return py::make_tuple(from_f64(r.image), degeneracy_dict(r.degeneracy));
    }, "image"_a, "gamma"_a, "sigma"_a = 1.0);

    py::class_<TunaParams>(m, "TunaParams")
        .def(py::init<>())
        .def(py::init([](double a, double b, double c, double d, double e, double gamma, double gamma1) {
                 return TunaParams{a, b, c, d, e, gamma, gamma1};
             }),
             "a"_a, "b"_a, "c"_a, "d"_a, "e"_a, "gamma"_a, "gamma1"_a)
        .def_readwrite("a", &TunaParams::a)
        .def_readwrite("b", &TunaParams::b)
        .def_readwrite("c", &TunaParams::c)
        .def_readwrite("d", &TunaParams::d)
        .def_readwrite("e", &TunaParams::e)
        .def_readwrite("gamma", &TunaParams::gamma)
        .def_readwrite("gamma1", &TunaParams::gamma1)
        .def("to_list", [](const TunaParams& p) {
            const auto arr = p.to_array();
            return std::vector<double>(arr.begin(), arr.end());
        })
        .def("__repr__", [](const TunaParams& p) {
            return "TunaParams(a=" + std::to_string(p.a) + ", b=" + std::to_string(p.b) + ", c=" + std::to_string(p.c) +
                   ", d=" + std::to_string(p.d) + ", e=" + std::to_string(p.e) + ", gamma=" + std::to_string(p.gamma) +
                   ", gamma1=" + std::to_string(p.gamma1) + ")";
        });

    m.def("tuna_enhance", [](const U8Array& img, const TunaParams& p, int radius, double epsilon, bool ycbcr) {
        const TunaSettings s{{radius, epsilon}, ycbcr ? FilterSpace::YCbCr : FilterSpace::Rgb};
        const auto r = tuna_enhance(to_u8(img), p, s);
        return py::make_tuple(from_u8(r.image), degeneracy_dict(r.degeneracy));
    }, "image"_a, "params"_a, "guided_radius"_a = 8, "guided_epsilon"_a = 0.01, "ycbcr"_a = false);

    m.def("apply_method", [](const std::string& method, const U8Array& img, const std::vector<double>& genes,
                             int radius, double epsilon, double sigma) {
        const PipelineSettings s{{radius, epsilon}, sigma};
        return from_u8(apply_method(parse_method(method), to_u8(img), genes, s).image);
    }, "method"_a, "image"_a, "params"_a, "guided_radius"_a = 8, "guided_epsilon"_a = 0.01, "sigma"_a = 1.0);

    m.def("gaussian_blur", [](const F64Array& c, double sigma) { return from_plane(gaussian_blur(to_plane(c), sigma)); });
    m.def("guided_filter", [](const F64Array& p, const F64Array& guide, int radius, double epsilon) {
        return from_plane(guided_filter(to_plane(p), to_plane(guide), {radius, epsilon}));
    }, "p"_a, "guide"_a, "radius"_a = 8, "epsilon"_a = 0.01);

    m.def("psnr", [](const F64Array& a, const F64Array& b) { return psnr(to_f64(a), to_f64(b)); });
    m.def("ssim", [](const F64Array& a, const F64Array& b) { return ssim(to_f64(a), to_f64(b)); });
    m.def("loe", [](const F64Array& original, const F64Array& enhanced) {
        return loe(to_f64(original), to_f64(enhanced));
    }, "original"_a, "enhanced"_a);
    m.def("fitness", &fitness, "psnr"_a, "ssim"_a);

    m.def("sbx_crossover", &sbx_crossover, "p1"_a, "p2"_a, "u"_a, "eta_x"_a = 2.0);
    m.def("poly_mutation", &poly_mutation, "p"_a, "low"_a, "up"_a, "u"_a, "eta_m"_a = 25.0);

    py::class_<GAConfig>(m, "GAConfig")
        .def(py::init<>())
        .def_readwrite("population_size", &GAConfig::population_size)
        .def_readwrite("generations", &GAConfig::generations)
        .def_readwrite("runs", &GAConfig::runs)
        .def_readwrite("eta_x", &GAConfig::eta_x)
        .def_readwrite("eta_m", &GAConfig::eta_m)
        .def_readwrite("crossover_rate", &GAConfig::crossover_rate)
        .def_readwrite("mutation_rate", &GAConfig::mutation_rate)
        .def_readwrite("tournament_size", &GAConfig::tournament_size)
        .def_readwrite("elite_count", &GAConfig::elite_count)
        .def_readwrite("rng_seed", &GAConfig::rng_seed)
        .def_readwrite("workers", &GAConfig::workers);

    py::class_<EvolveResult>(m, "EvolveResult")
        .def_property_readonly("best_genes", [](const EvolveResult& r) { return r.best.genes; })
        .def_readonly("best_fitness", &EvolveResult::best_fitness)
        .def_readonly("fitness_trace", &EvolveResult::fitness_trace)
        .def_readonly("evaluations", &EvolveResult::evaluations)
        .def_readonly("nan_evaluations", &EvolveResult::nan_evaluations);

    m.def("evolve", [](const std::function<double(std::vector<double>)>& fn,
                       const std::vector<std::pair<double, double>>& bounds, const GAConfig& cfg) {
        GAConfig serial = cfg;
        serial.workers = 1;  // Python callables hold the GIL
        const FitnessFn eval = [&](std::span<const double> g) { return fn(std::vector<double>(g.begin(), g.end())); };
        return evolve(eval, to_bounds(bounds), serial);
    }, "fitness"_a, "bounds"_a, "config"_a = GAConfig{});

    py::class_<OptimizeResult>(m, "OptimizeResult")
        .def_property_readonly("params", [](const OptimizeResult& r) { return r.best.best.genes; })
        .def_property_readonly("fitness", [](const OptimizeResult& r) { return r.best.best_fitness; })
        .def_readonly("best", &OptimizeResult::best)
        .def_readonly("best_run", &OptimizeResult::best_run)
        .def_readonly("run_best_fitness", &OptimizeResult::run_best_fitness)
        .def_readonly("evaluations", &OptimizeResult::evaluations)
        .def_readonly("psnr", &OptimizeResult::psnr)
        .def_readonly("ssim", &OptimizeResult::ssim);

    m.def("optimize_image", [](const U8Array& low, const U8Array& ref, const std::string& method, const GAConfig& cfg) {
        const ImageU8 l = to_u8(low);
        const ImageU8 r = to_u8(ref);
        const Method mth = parse_method(method);
        py::gil_scoped_release release;
        return optimize_image(l, r, mth, cfg);
    }, "low"_a, "reference"_a, "method"_a = "tuna", "config"_a = GAConfig{});

    m.def("synth_darken", [](const U8Array& ref, double g, std::uint64_t seed, double noise) {
        return from_u8(synth_darken(to_u8(ref), g, seed, noise));
    }, "reference"_a, "gamma_dark"_a = 3.0, "seed"_a = 0, "noise_sigma"_a = 0.0);
    m.def("synthetic_scene", [](int w, int h, std::uint64_t seed) { return from_u8(synthetic_scene(w, h, seed)); },
          "width"_a, "height"_a, "seed"_a = 1);

    m.def("read_png", [](const std::filesystem::path& p) { return from_u8(read_png(p)); });
    m.def("write_png", [](const std::filesystem::path& p, const U8Array& img) { write_png(p, to_u8(img)); });

    m.def("run_benchmark", [](const std::filesystem::path& dataset, const std::string& method, const GAConfig& cfg,
                              std::optional<std::vector<double>> params, std::size_t workers, bool record_timing) {
        RunConfig rc;
        rc.dataset = dataset;
        rc.method = parse_method(method);
        rc.ga = cfg;
        rc.workers = workers;
        rc.record_timing = record_timing;
        if (params) {
            rc.use_ga = false;
            rc.fixed_params = *params;
        }
        BenchReport report;
        {
            py::gil_scoped_release release;
            report = run_benchmark(rc);
        }
        return py::make_tuple(to_csv(report), report.failures());
    }, "dataset"_a, "method"_a = "tuna", "config"_a = GAConfig{}, "params"_a = py::none(), "workers"_a = 1,
       "record_timing"_a = true);
}
