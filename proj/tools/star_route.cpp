#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "star/commands.hpp"

namespace {

void add_solver_flags(CLI::App* cmd, star::SolveArgs& args, std::string& mode) {
    cmd->add_option("--n1", args.n1, "base cell side (default: longest bounding-box side / 8)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", args.epsilon, "target accuracy in (0, 2*n1*sqrt(2)] (default: 0.01 * n1)");
    cmd->add_option("--mode", mode, "weighted candidate evaluation: full or anchored")
        ->check(CLI::IsMember({"full", "anchored"}));
    cmd->add_flag("--handoff", args.handoff, "finish with Weiszfeld once the refinement square has uniform weight");
    cmd->add_option("--samples", args.samples_per_axis, "weight samples per cell axis")->check(CLI::PositiveNumber);
    cmd->add_option("--route-refine", args.route_refine, "routing lattice pitch = n1 / this (weighted scenes)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", args.threads, "worker threads (0: STAR_ROUTE_THREADS, else 1)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Star-topology facility location over weighted regions and polygonal obstacles.\n"
                 "Sites on a shared cell edge or corner snap to the lowest row-major cell index."};
    app.require_subcommand(1);

    std::string scene_path;
    std::string mode = "full";
    star::SolveArgs args;
    std::optional<std::string> out_path, svg_path;
    std::optional<double> resolution;
    std::string manifold_svg;

    auto* hull = app.add_subcommand("hull", "print the scene's convex hull (CCW) as JSON");
    hull->add_option("scene", scene_path, "scene JSON")->required();

    auto* solve = app.add_subcommand("solve", "locate the hub and write the result JSON");
    solve->add_option("scene", scene_path, "scene JSON")->required();
    add_solver_flags(solve, args, mode);
    solve->add_option("--out", out_path, "result file (default: stdout)");
    solve->add_option("--svg", svg_path, "also render the solution as SVG");

    auto* verify = app.add_subcommand("verify", "compare the solver against a dense-lattice brute force");
    verify->add_option("scene", scene_path, "scene JSON")->required();
    add_solver_flags(verify, args, mode);
    verify->add_option("--resolution", resolution, "oracle lattice pitch (default: n1 / 8)")->check(CLI::PositiveNumber);

    auto* manifold = app.add_subcommand("manifold", "render the objective over the hull's bounding box");
    manifold->add_option("scene", scene_path, "scene JSON")->required();
    add_solver_flags(manifold, args, mode);
    manifold->add_option("--resolution", resolution, "raster cell side (default: n1 / 8)")->check(CLI::PositiveNumber);
    manifold->add_option("--svg", manifold_svg, "output SVG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    args.mode = *star::parse_mode(mode);

    if (hull->parsed()) return star::cmd_hull(scene_path, std::cout, std::cerr);
    if (solve->parsed()) return star::cmd_solve(scene_path, args, out_path, svg_path, std::cout, std::cerr);
    if (verify->parsed()) return star::cmd_verify(scene_path, args, resolution, std::cout, std::cerr);
    return star::cmd_manifold(scene_path, args, resolution, manifold_svg, std::cout, std::cerr);
}
