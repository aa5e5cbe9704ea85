#include "softpack/io.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace softpack {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, ErrorKind kind, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(kind, std::string(what) + " is not valid JSON: " + e.what());
  }
}

Vec2 to_vec2(const json& j, ErrorKind kind, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(kind, where + " must be a pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json from_vec2(const Vec2& p) { return json::array({p.x(), p.y()}); }

ConvexBody2D body_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw Error(ErrorKind::InvalidBody, "body needs a \"vertices\" array");
  }
  std::vector<Vec2> vertices;
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    vertices.push_back(to_vec2(j["vertices"][i], ErrorKind::InvalidBody,
                               "vertex " + std::to_string(i)));
  }
  bool threefold = false;
  if (j.contains("threefold")) {
    if (!j["threefold"].is_boolean()) throw Error(ErrorKind::InvalidBody, "\"threefold\" must be a boolean");
    threefold = j["threefold"].get<bool>();
  }
  return ConvexBody2D(std::move(vertices), threefold);
}

std::optional<ConvexBody2D> body_preset(const std::string& name) {
  if (name == "euclid" || name == "euclidean") return ConvexBody2D::euclidean();
  if (name == "hexagon") return ConvexBody2D::hexagon();
  if (name == "square") return ConvexBody2D::square();
  if (name == "dodecagon") return ConvexBody2D::regular(12);
  return std::nullopt;
}

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string svg_points(const Polygon& poly) {
  std::string out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) out += ' ';
    out += svg_num(poly[i].x()) + "," + svg_num(poly[i].y());
  }
  return out;
}

std::string svg_line(const Vec2& p, const Vec2& q, const char* cls) {
  return "<line class=\"" + std::string(cls) + "\" x1=\"" + svg_num(p.x()) + "\" y1=\"" +
         svg_num(p.y()) + "\" x2=\"" + svg_num(q.x()) + "\" y2=\"" + svg_num(q.y()) + "\"/>\n";
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path.string());
  out << content;
}

ConvexBody2D parse_body(const std::string& json_text) {
  return body_from_json(parse_json(json_text, ErrorKind::InvalidBody, "body file"));
}

ConvexBody2D load_body(const std::string& spec) {
  if (auto preset = body_preset(spec)) return *preset;
  return parse_body(read_file(spec));
}

std::string body_json(const ConvexBody2D& body) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : body.vertices()) j["vertices"].push_back(from_vec2(v));
  j["threefold"] = body.threefold();
  return j.dump(2) + "\n";
}

PackingConfig2D parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  const json j = parse_json(json_text, ErrorKind::InvalidConfig, "config file");
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");
  for (const char* key : {"body", "centers", "window"}) {
    if (!j.contains(key)) throw Error(ErrorKind::InvalidConfig, std::string("config needs \"") + key + "\"");
  }
  const json& jb = j["body"];
  std::optional<ConvexBody2D> body;
  if (jb.is_string()) {
    const std::string spec = jb.get<std::string>();
    body = body_preset(spec);
    if (!body) {
      std::filesystem::path p(spec);
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      body = parse_body(read_file(p));
    }
  } else {
    body = body_from_json(jb);
  }
  const json& jw = j["window"];
  if (!jw.is_array() || jw.size() != 4) {
    throw Error(ErrorKind::InvalidConfig, "\"window\" must be [xmin, ymin, xmax, ymax]");
  }
  for (const auto& x : jw) {
    if (!x.is_number()) throw Error(ErrorKind::InvalidConfig, "\"window\" entries must be numbers");
  }
  const Rect window{jw[0].get<double>(), jw[1].get<double>(), jw[2].get<double>(), jw[3].get<double>()};
  if (window.empty()) throw Error(ErrorKind::InvalidConfig, "\"window\" is empty");
  if (!j["centers"].is_array()) throw Error(ErrorKind::InvalidConfig, "\"centers\" must be an array");
  PackingConfig2D config{{}, *body, window};
  for (std::size_t i = 0; i < j["centers"].size(); ++i) {
    config.centers.push_back(to_vec2(j["centers"][i], ErrorKind::InvalidConfig, "center " + std::to_string(i)));
  }
  config.validate();
  return config;
}

PackingConfig2D load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

std::string config_json(const PackingConfig2D& config) {
  json j;
  j["body"] = json::parse(body_json(config.body));
  j["centers"] = json::array();
  for (const auto& c : config.centers) j["centers"].push_back(from_vec2(c));
  j["window"] = {config.window.xmin, config.window.ymin, config.window.xmax, config.window.ymax};
  return j.dump(2) + "\n";
}

Lattice3D parse_lattice(const std::string& json_text) {
  const json j = parse_json(json_text, ErrorKind::InvalidInput, "lattice file");
  if (!j.is_object() || !j.contains("basis") || !j["basis"].is_array() || j["basis"].size() != 3) {
    throw Error(ErrorKind::InvalidInput, "lattice needs \"basis\": three 3-vectors");
  }
  Mat3 b;
  for (int i = 0; i < 3; ++i) {
    const json& row = j["basis"][i];
    if (!row.is_array() || row.size() != 3) {
      throw Error(ErrorKind::InvalidInput, "basis vector " + std::to_string(i) + " must have 3 entries");
    }
    for (int k = 0; k < 3; ++k) {
      if (!row[k].is_number()) throw Error(ErrorKind::InvalidInput, "basis entries must be numbers");
      b(k, i) = row[k].get<double>();
    }
  }
  return Lattice3D::from_basis(b);
}

Lattice3D load_lattice(const std::string& spec) {
  if (spec == "fcc") return Lattice3D::fcc();
  if (spec == "bcc") return Lattice3D::bcc();
  if (spec == "cubic") return Lattice3D::cubic();
  return parse_lattice(read_file(spec));
}

Lattice2D load_lattice2d(const std::string& spec, const ConvexBody2D& body) {
  Lattice2D lat;
  if (spec == "tri" || spec == "triangular") {
    if (body.threefold()) return reference_lattice(body, 0.0);
    lat = {Vec2(1.0, 0.0), Vec2(0.5, 0.5 * std::sqrt(3.0))};
  } else if (spec == "square") {
    lat = {Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
  } else {
    const json j = parse_json(read_file(spec), ErrorKind::InvalidInput, "lattice file");
    if (!j.is_object() || !j.contains("basis") || !j["basis"].is_array() || j["basis"].size() != 2) {
      throw Error(ErrorKind::InvalidInput, "2D lattice needs \"basis\": two 2-vectors");
    }
    return {to_vec2(j["basis"][0], ErrorKind::InvalidInput, "basis vector 0"),
            to_vec2(j["basis"][1], ErrorKind::InvalidInput, "basis vector 1")};
  }
  const double s = 2.0 / min_gauge_vector(lat, body);
  return {s * lat.u, s * lat.v};
}

std::string tessellation_json(const Tessellation2D& tess) {
  json j;
  j["body"] = json::parse(body_json(tess.config.body));
  j["window"] = {tess.config.window.xmin, tess.config.window.ymin, tess.config.window.xmax,
                 tess.config.window.ymax};
  j["jittered"] = tess.delaunay.jittered;
  j["centers"] = json::array();
  for (const auto& p : tess.delaunay.points) j["centers"].push_back(from_vec2(p));

  std::map<int, json> separating;
  for (const auto& br : tess.molnar.bridges) separating[br.cell] = {br.id0, br.id1};
  j["delaunay"] = json::array();
  for (std::size_t f = 0; f < tess.delaunay.cells.size(); ++f) {
    const auto& cell = tess.delaunay.cells[f];
    json jc;
    jc["ids"] = cell.ids;
    jc["circumcenter"] = from_vec2(cell.circumdisk.center);
    jc["circumradius"] = cell.circumdisk.radius;
    const auto it = separating.find(static_cast<int>(f));
    jc["separating_side"] = it == separating.end() ? json(nullptr) : it->second;
    j["delaunay"].push_back(std::move(jc));
  }
  j["molnar"] = json::array();
  for (const auto& cell : tess.molnar.cells) {
    json jc;
    jc["delaunay_index"] = cell.delaunay_index;
    jc["vertices"] = json::array();
    for (const auto& v : cell.boundary) {
      json jv;
      jv["point"] = from_vec2(v.point);
      jv["type"] = v.kind == VertexKind::Center ? "center" : "bridge_apex";
      jv[v.kind == VertexKind::Center ? "center" : "delaunay_cell"] = v.id;
      jc["vertices"].push_back(std::move(jv));
    }
    j["molnar"].push_back(std::move(jc));
  }
  j["bridges"] = json::array();
  for (const auto& br : tess.molnar.bridges) {
    j["bridges"].push_back({{"delaunay_cell", br.cell},
                            {"ids", {br.id0, br.id1}},
                            {"apex", from_vec2(br.apex)}});
  }
  j["refined"] = json::array();
  for (const auto& rc : tess.refined) {
    j["refined"].push_back({{"a", from_vec2(rc.a)},
                            {"b", from_vec2(rc.b)},
                            {"c", from_vec2(rc.c)},
                            {"cprime", from_vec2(rc.cprime)},
                            {"a_id", rc.a_id},
                            {"b_id", rc.b_id},
                            {"delaunay_cell", rc.delaunay_index},
                            {"cprime_type", rc.cprime_is_midpoint ? "midpoint" : "circumcenter"}});
  }
  return j.dump(2) + "\n";
}

std::string tessellation_svg(const Tessellation2D& tess, const SvgOptions& options) {
  const Rect& w = tess.config.window;
  const double size = std::max(w.width(), w.height());
  const double stroke = size / 600.0;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\""
     << static_cast<int>(std::lround(800.0 * w.height() / w.width())) << "\" viewBox=\""
     << svg_num(w.xmin) << ' ' << svg_num(-w.ymax) << ' ' << svg_num(w.width()) << ' '
     << svg_num(w.height()) << "\">\n"
     << "<style>\n"
     << "  .cell-edge { fill: none; stroke: #000; stroke-width: " << svg_num(stroke) << "; }\n"
     << "  .circumdisk { fill: none; stroke: #555; stroke-width: " << svg_num(stroke)
     << "; stroke-dasharray: " << svg_num(stroke) << ' ' << svg_num(3.0 * stroke) << "; }\n"
     << "  .separating-side { stroke: #1f4fd1; stroke-width: " << svg_num(stroke)
     << "; stroke-dasharray: " << svg_num(6.0 * stroke) << ' ' << svg_num(4.0 * stroke) << "; }\n"
     << "  .bridge { stroke: #d12f1f; stroke-width: " << svg_num(1.5 * stroke)
     << "; stroke-dasharray: " << svg_num(6.0 * stroke) << ' ' << svg_num(4.0 * stroke) << "; }\n"
     << "  .soft-body { fill: #8fbf8f; fill-opacity: 0.25; stroke: none; }\n"
     << "  .center { fill: #000; }\n"
     << "</style>\n"
     << "<g transform=\"scale(1,-1)\">\n";
  if (options.soft_lambda >= 0.0) {
    os << "<g class=\"soft-bodies\">\n";
    for (const auto& c : tess.delaunay.points) {
      os << "<polygon class=\"soft-body\" points=\""
         << svg_points(tess.config.body.homothet(c, 1.0 + options.soft_lambda)) << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "<g class=\"cells\">\n";
  for (const auto& cell : tess.molnar.cells) {
    os << "<polygon class=\"cell-edge\" points=\"" << svg_points(cell.polygon()) << "\"/>\n";
  }
  os << "</g>\n";
  if (options.circumdisks) {
    os << "<g class=\"circumdisks\">\n";
    for (const auto& cell : tess.delaunay.cells) {
      os << "<polygon class=\"circumdisk\" points=\""
         << svg_points(tess.config.body.homothet(cell.circumdisk.center, cell.circumdisk.radius))
         << "\"/>\n";
    }
    os << "</g>\n";
  }
  if (options.separating_sides) {
    os << "<g class=\"separating-sides\">\n";
    for (const auto& br : tess.molnar.bridges) os << svg_line(br.p0, br.p1, "separating-side");
    os << "</g>\n";
  }
  if (options.bridges) {
    os << "<g class=\"bridges\">\n";
    for (const auto& br : tess.molnar.bridges) {
      os << svg_line(br.p0, br.apex, "bridge") << svg_line(br.apex, br.p1, "bridge");
    }
    os << "</g>\n";
  }
  os << "<g class=\"centers\">\n";
  for (const auto& c : tess.delaunay.points) {
    os << "<circle class=\"center\" cx=\"" << svg_num(c.x()) << "\" cy=\"" << svg_num(c.y())
       << "\" r=\"" << svg_num(2.0 * stroke) << "\"/>\n";
  }
  os << "</g>\n</g>\n</svg>\n";
  return os.str();
}

std::string format_number(double value) {
  if (std::isnan(value)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      out += '"';
      for (char ch : c) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    } else {
      out += c;
    }
  }
  out += "\r\n";
  return out;
}

std::vector<double> parse_range(const std::string& text) {
  const auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidInput, "bad number \"" + s + "\" in range \"" + text + "\"");
    }
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() == 1) return {number(parts[0])};
  if (parts.size() != 3) throw Error(ErrorKind::InvalidInput, "range must be start:stop:count, got \"" + text + "\"");
  const double a = number(parts[0]);
  const double b = number(parts[1]);
  const double n = number(parts[2]);
  if (n < 1 || n != std::floor(n) || n > 1e7) {
    throw Error(ErrorKind::InvalidInput, "range count must be a positive integer, got \"" + parts[2] + "\"");
  }
  const int count = static_cast<int>(n);
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
  return out;
}

}  // namespace softpack
