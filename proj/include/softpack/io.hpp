#pragma once

#include "softpack/gauge2d.hpp"
#include "softpack/lat3d.hpp"
#include "softpack/soft2d.hpp"
#include "softpack/tess2d.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace softpack {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// Body JSON: {"vertices": [[x,y], ...], "threefold": bool}. Every body
// invariant is checked; the first violation is reported as InvalidBody.
ConvexBody2D parse_body(const std::string& json_text);
// Preset name (euclid, hexagon, square, dodecagon) or path to a body file.
ConvexBody2D load_body(const std::string& spec);
std::string body_json(const ConvexBody2D& body);

// Config JSON: {"body": <preset | path | inline body>, "centers": [[x,y], ...],
// "window": [xmin, ymin, xmax, ymax]}. Relative body paths are resolved
// against `base_dir`.
PackingConfig2D parse_config(const std::string& json_text,
                             const std::filesystem::path& base_dir = {});
PackingConfig2D load_config(const std::filesystem::path& path);
std::string config_json(const PackingConfig2D& config);

// Lattice JSON: {"basis": [[..],[..],[..]]} with the rows being the basis
// vectors. Presets: fcc, bcc, cubic.
Lattice3D parse_lattice(const std::string& json_text);
Lattice3D load_lattice(const std::string& spec);

// 2D lattice: preset "tri" (triangular, scaled to minimal gauge vector 2;
// the reference lattice at θ = 0 for threefold bodies), "square", or a path
// to {"basis": [[ux,uy],[vx,vy]]}.
Lattice2D load_lattice2d(const std::string& spec, const ConvexBody2D& body);

// Typed-vertex export of all three decompositions.
std::string tessellation_json(const Tessellation2D& tess);

struct SvgOptions {
  bool circumdisks = true;
  bool separating_sides = true;
  bool bridges = true;
  double soft_lambda = -1.0;  // draw the soft bodies when >= 0
};

// Static rendering: solid cell edges, dotted circumdisks, dashed separating
// sides (blue) and dashed bridges (red).
std::string tessellation_svg(const Tessellation2D& tess, const SvgOptions& options = {});

// %.12g, the number format of every CSV output.
std::string format_number(double value);
std::string csv_row(const std::vector<std::string>& cells);

// "a:b:n" → n evenly spaced values from a to b inclusive; a single number
// gives one value.
std::vector<double> parse_range(const std::string& text);

}  // namespace softpack
