#pragma once

#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affine.hpp"
#include "eigen.hpp"
#include "invest.hpp"
#include "matrix.hpp"
#include "measure.hpp"
#include "render.hpp"
#include "scene.hpp"

namespace ratla::cli {

enum class Mode { exact, floating };

struct CliConfig {
    Mode mode = Mode::exact;
    unsigned precision = 2;
    std::optional<std::string> output;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 1;
inline constexpr int exit_infeasible = 2;

namespace detail {

inline std::string format_scalar(const Scalar& s, const CliConfig& cfg) {
    return cfg.mode == Mode::exact ? s.to_string() : s.to_decimal(cfg.precision);
}

inline std::string format_matrix(const Matrix& m, const CliConfig& cfg) {
    if (cfg.mode == Mode::exact) return m.to_string();
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ';';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += format_scalar(m(i, j), cfg);
        }
    }
    return out;
}

inline std::string format_vector(const Vector& v, const CliConfig& cfg, const std::string& label = {}) {
    std::string out = label + "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_scalar(v[i], cfg);
    }
    return out + ")";
}

inline std::string format_double(double v, unsigned precision) {
    return Scalar::from_double(v).to_decimal(precision);
}

inline std::vector<Scalar> parse_list(const std::string& text) {
    std::vector<Scalar> out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        out.push_back(parse_scalar(std::string_view(text).substr(start, comma == std::string::npos ? comma : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

inline std::string eigen_report(const Matrix& a, const CliConfig& cfg) {
    std::string out;
    const auto poly = char_poly(a);
    out += "characteristic polynomial: " + poly.poly.to_string() + "\n";
    if (cfg.mode == Mode::floating) {
        auto roots = float_eigenvalues(a);
        for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
            if (it->is_real) {
                out += "eigenvalue " + format_double(it->real, cfg.precision) + "\n";
            } else {
                out += "complex eigenvalue " + format_double(it->real, cfg.precision) +
                       (it->imag < 0 ? " - " : " + ") + format_double(std::fabs(it->imag), cfg.precision) + "i\n";
            }
        }
        return out;
    }
    const auto spectrum = eigen_decompose(a);
    for (const auto& pair : spectrum.pairs) {
        out += "eigenvalue " + pair.eigenvalue.to_string(6) + " (";
        if (!pair.eigenvalue.exact) out += "approximate, ";
        out += "algebraic multiplicity " + std::to_string(pair.algebraic_multiplicity) + "):";
        for (const auto& v : pair.basis) {
            if (pair.eigenvalue.exact) {
                out += " " + format_vector(v, cfg);
            } else {
                CliConfig approx = cfg;
                approx.mode = Mode::floating;
                approx.precision = 6;
                out += " " + format_vector(v, approx);
            }
        }
        out += "\n";
    }
    for (const auto& r : spectrum.complex_roots) {
        if (r.imag < 0) continue;
        out += "complex eigenvalues " + format_double(r.real, 6) + " +/- " + format_double(r.imag, 6) + "i\n";
    }
    return out;
}

inline std::string invest_report(const InvestmentModel& model, const Allocation& alloc, std::size_t years,
                                 const CliConfig& cfg) {
    const auto after = evolve(model, alloc.amounts, years);
    std::string out;
    for (std::size_t i = 0; i < model.size(); ++i) {
        out += model.sectors[i].name + ": " + format_scalar(alloc.amounts[i], cfg) + " → " +
               format_scalar(after[i], cfg) + "\n";
    }
    out += "growth rate: " + format_scalar(alloc.growth_rate, cfg) + " per year\n";
    return out;
}

template <std::size_t N>
std::string transform_points(const Transform<N>& t, const std::vector<std::string>& points, const CliConfig& cfg) {
    std::string out;
    for (const auto& text : points) {
        auto image = t.apply(parse_point<N>(text));
        out += format_vector(Vector(image.coords.begin(), image.coords.end()), cfg, image.label) + "\n";
    }
    return out;
}

}  // namespace detail

/**
 * Runs one subcommand. Results go to `out` (or the --output file), diagnostics
 * to `err`. Returns 0 on success, 1 on input errors, 2 when no feasible or
 * exact answer exists.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact rational linear algebra: products, determinants, areas and volumes, eigen analysis, "
                 "investment growth, affine transforms and SVG figures",
                 "ratla"};
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig cfg;
    bool floating = false;
    int precision = 2;
    std::string output;
    app.add_flag("--float", floating, "Approximate decimal output instead of exact fractions");
    app.add_option("--precision", precision, "Decimal places for reports")->check(CLI::NonNegativeNumber);
    app.add_option("-o,--output", output, "Write the result to a file instead of standard output");

    std::string mat_a;
    std::string mat_b;
    auto* matmul = app.add_subcommand("matmul", "Row-by-column product of two matrices \"a,b;c,d\"");
    matmul->add_option("A", mat_a)->required();
    matmul->add_option("B", mat_b)->required();

    auto* det_cmd = app.add_subcommand("det", "Determinant of a square matrix of order at most 4");
    det_cmd->add_option("A", mat_a)->required();

    std::string figure;
    std::string input_form = "vertices";
    std::vector<std::string> points;
    auto* area = app.add_subcommand("area", "Area of a triangle or parallelogram");
    area->add_option("figure", figure)->required()->check(CLI::IsMember({"triangle", "parallelogram"}));
    area->add_option("points", points, "[vectors|vertices] followed by points \"(x,y)\"")->required();

    auto* volume = app.add_subcommand("volume", "Volume of the parallelepiped spanned by three vectors");
    volume->add_option("vectors", points, "[parallelepiped] followed by three points \"(x,y,z)\"")->required();

    auto* tetvolume = app.add_subcommand("tetvolume", "Volume of the tetrahedron with four given vertices");
    tetvolume->add_option("vertices", points)->required()->expected(4);

    auto* eigen = app.add_subcommand("eigen", "Characteristic polynomial, eigenvalues and eigenspaces");
    eigen->add_option("A", mat_a)->required();

    std::string growth;
    std::string transition;
    std::string budget;
    std::string names;
    std::size_t years = 1;
    auto* invest = app.add_subcommand("invest", "Proportional-growth allocation of a budget across sectors");
    auto* growth_opt = invest->add_option("--growth", growth, "Growth factors per sector, e.g. 4,2,2/3");
    auto* matrix_opt = invest->add_option("--matrix", transition, "Transition matrix \"a,b;c,d\" instead of --growth");
    growth_opt->excludes(matrix_opt);
    invest->add_option("--budget", budget, "Budget to allocate")->required();
    invest->add_option("--years", years, "Years to evolve the allocation");
    invest->add_option("--names", names, "Sector names, comma separated");

    std::string kind;
    auto* transform = app.add_subcommand("transform", "Apply a translation, rotation or xy-reflection to points");
    transform->add_option("kind", kind)->required()->check(CLI::IsMember({"translate", "rotate", "reflectxy"}));
    transform->add_option("args", points, "Parameter (vector or angle) then points")->required();

    std::string scene_path;
    auto* render = app.add_subcommand("render", "Render a scene file to SVG");
    render->add_option("scene", scene_path)->required();

    std::vector<std::string> argv_tail(args.rbegin(), args.rend());
    try {
        app.parse(argv_tail);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return exit_input_error;
    }
    cfg.mode = floating ? Mode::floating : Mode::exact;
    cfg.precision = static_cast<unsigned>(precision);
    if (!output.empty()) cfg.output = output;

    std::string result;
    std::string side_output;  // measurement lines of `render`
    try {
        if (matmul->parsed()) {
            result = detail::format_matrix(mat_mul(parse_matrix(mat_a), parse_matrix(mat_b)), cfg) + "\n";
        } else if (det_cmd->parsed()) {
            result = detail::format_scalar(det(parse_matrix(mat_a)), cfg) + "\n";
        } else if (area->parsed()) {
            std::vector<std::string> pts = points;
            if (!pts.empty() && (pts.front() == "vectors" || pts.front() == "vertices")) {
                input_form = pts.front();
                pts.erase(pts.begin());
            }
            MeasureResult r;
            if (figure == "parallelogram" && input_form == "vectors") {
                if (pts.size() != 2) throw parse_error("parallelogram from vectors needs 2 points");
                r = parallelogram_area_from_vectors(parse_point<2>(pts[0]), parse_point<2>(pts[1]));
            } else {
                if (figure == "triangle" && input_form == "vectors") {
                    throw parse_error("triangle area takes vertices");
                }
                if (pts.size() != 3) throw parse_error(figure + " from vertices needs 3 points");
                auto a = parse_point<2>(pts[0]);
                auto b = parse_point<2>(pts[1]);
                auto c = parse_point<2>(pts[2]);
                r = figure == "triangle" ? triangle_area(a, b, c) : parallelogram_area_from_vertices(a, b, c);
            }
            result = detail::format_scalar(r.value, cfg) + "\n";
        } else if (volume->parsed()) {
            std::vector<std::string> pts = points;
            if (!pts.empty() && pts.front() == "parallelepiped") pts.erase(pts.begin());
            if (pts.size() != 3) throw parse_error("parallelepiped volume needs 3 vectors");
            auto r = parallelepiped_volume(parse_point<3>(pts[0]), parse_point<3>(pts[1]), parse_point<3>(pts[2]));
            result = detail::format_scalar(r.value, cfg) + "\n";
        } else if (tetvolume->parsed()) {
            auto r = tetrahedron_volume(parse_point<3>(points[0]), parse_point<3>(points[1]),
                                        parse_point<3>(points[2]), parse_point<3>(points[3]));
            result = detail::format_scalar(r.value, cfg) + "\n";
        } else if (eigen->parsed()) {
            result = detail::eigen_report(parse_matrix(mat_a), cfg);
        } else if (invest->parsed()) {
            if (growth.empty() && transition.empty()) throw parse_error("invest needs --growth or --matrix");
            auto model = [&]() -> InvestmentModel {
                if (!growth.empty()) return build_transition(detail::parse_list(growth));
                auto m = parse_matrix(transition);
                if (m.rows() != m.cols()) throw shape_error("transition matrix must be square");
                std::vector<SectorSpec> sectors;
                for (std::size_t i = 0; i < m.rows(); ++i) sectors.push_back({std::string(1, char('A' + i % 26)), 0});
                return {std::move(sectors), std::move(m)};
            }();
            auto sector_names = names.empty() ? std::vector<std::string>{} : detail::split_names(names);
            if (!sector_names.empty() && sector_names.size() != model.size()) {
                throw parse_error("--names lists " + std::to_string(sector_names.size()) + " sectors, the model has " +
                                  std::to_string(model.size()));
            }
            for (std::size_t i = 0; i < sector_names.size(); ++i) model.sectors[i].name = sector_names[i];
            auto alloc = optimal_allocation(model, parse_scalar(budget));
            result = detail::invest_report(model, alloc, years, cfg);
        } else if (transform->parsed()) {
            std::vector<std::string> pts = points;
            std::string param;
            if (kind != "reflectxy") {
                if (pts.empty()) throw parse_error(kind + " needs a parameter");
                param = pts.front();
                pts.erase(pts.begin());
            }
            if (pts.empty()) throw parse_error("no points to transform");
            const auto dim = parse_vertex(pts.front()).coords.size();
            if (dim == 2) {
                if (kind == "reflectxy") throw shape_error("reflectxy is 3D only");
                Transform2 t = kind == "translate" ? Transform2::translation(parse_point<2>(param).coords)
                                                   : Transform2::rotation(Angle::parse(param));
                result = detail::transform_points(t, pts, cfg);
            } else if (dim == 3) {
                Transform3 t = kind == "translate" ? Transform3::translation(parse_point<3>(param).coords)
                               : kind == "rotate"  ? Transform3::rotation(Angle::parse(param))
                                                   : Transform3::reflection_xy();
                result = detail::transform_points(t, pts, cfg);
            } else {
                throw shape_error("points must have 2 or 3 coordinates");
            }
        } else if (render->parsed()) {
            std::ifstream in(scene_path, std::ios::binary);
            if (!in) throw parse_error("cannot read scene file '" + scene_path + "'");
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            auto scene = parse_scene(text);
            result = emit_svg(layout_project(scene));
            for (const auto& line : scene_measurements(scene)) side_output += line + "\n";
        }
    } catch (const no_feasible_allocation& e) {
        err << "infeasible: " << e.what() << "\n";
        return exit_infeasible;
    } catch (const exactness_unavailable& e) {
        err << "infeasible: " << e.what() << "\n";
        return exit_infeasible;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }

    if (cfg.output) {
        std::ofstream file(*cfg.output, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << *cfg.output << "'\n";
            return exit_input_error;
        }
        file << result;
        out << side_output;
    } else {
        out << result;
        err << side_output;
    }
    return exit_ok;
}

/// argv-style entry point; argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace ratla::cli
