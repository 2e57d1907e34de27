#include "syzkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "syzkit/parse.hpp"

namespace syzkit {

namespace {

Rational rational_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");
  const Json& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw std::invalid_argument(std::string("key '") + key + "' must be a rational string or an integer");
}

Json qvector_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

}  // namespace

Json to_json(const NovikovSeries& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms())
    terms.push_back({{"exponent", to_string(t.exponent)}, {"re", to_string(t.coeff.re())}, {"im", to_string(t.coeff.im())}});
  return {{"truncation", to_string(s.truncation())}, {"terms", terms}, {"text", to_string(s)}};
}

NovikovSeries series_from_json(const Json& j) {
  if (j.is_string()) return parse_series(j.get<std::string>());
  if (!j.is_object()) throw std::invalid_argument("series must be a string or an object");
  Rational trunc = j.contains("truncation") ? rational_field(j, "truncation") : Rational(kDefaultTruncation);
  std::vector<NovikovSeries::Term> terms;
  for (const auto& t : j.at("terms")) {
    GaussianRational c(rational_field(t, "re"), t.contains("im") ? rational_field(t, "im") : Rational(0));
    terms.push_back({rational_field(t, "exponent"), c});
  }
  return NovikovSeries::from_terms(std::move(terms), trunc);
}

Json to_json(const LaurentNov& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exponent", e}, {"coeff", to_json(c)}});
  return {{"vars", f.vars()}, {"truncation", to_string(f.truncation())}, {"text", to_string(f)}, {"terms", terms}};
}

LaurentNov laurent_from_json(const Json& j) {
  auto vars = j.at("vars").get<std::vector<std::string>>();
  Rational trunc = j.contains("truncation") ? rational_field(j, "truncation") : Rational(kDefaultTruncation);
  if (j.contains("terms")) {
    LaurentNov f(vars, trunc);
    for (const auto& t : j.at("terms")) {
      auto e = t.at("exponent").get<std::vector<long>>();
      if (e.size() != vars.size()) throw std::invalid_argument("exponent length does not match vars");
      f.add_term(e, series_from_json(t.at("coeff")).with_truncation(trunc));
    }
    return f;
  }
  return parse_laurent(j.at("text").get<std::string>(), vars, trunc);
}

Json to_json(const Valuation& v) {
  if (v.is_infinite()) return nullptr;
  return to_string(v.value());
}

Json to_json(const CriticalPoint& p) {
  Json coords = Json::array(), vals = Json::array();
  for (const auto& c : p.coords) coords.push_back(to_json(c));
  for (const auto& v : p.leading_valuation) vals.push_back(to_json(v));
  return {{"coordinates", coords},
          {"leading_valuation", vals},
          {"residual_valuation", to_json(p.residual)},
          {"critical_value", to_json(p.critical_value)},
          {"nondegenerate", p.nondegenerate}};
}

Json to_json(const TropicalComplex& t) {
  Json verts = Json::array(), edges = Json::array(), chambers = Json::array(), cells = Json::array();
  for (const auto& v : t.vertices) verts.push_back(qvector_json(v));
  for (const auto& e : t.edges) {
    Json je{{"from", e.from}, {"labels", {e.labels.first, e.labels.second}}};
    if (e.to) je["to"] = *e.to;
    else je["direction"] = qvector_json(e.direction);
    edges.push_back(je);
  }
  for (const auto& c : t.chambers) chambers.push_back({{"label", c.label}, {"sample", qvector_json(c.sample)}});
  for (const auto& c : t.subdivision.cells) cells.push_back(c);
  return {{"dim", t.dim},
          {"vertices", verts},
          {"edges", edges},
          {"bounded_edges", t.bounded_edge_count()},
          {"chambers", chambers},
          {"subdivision_cells", cells},
          {"subdivision_vertices", t.subdivision.vertices}};
}

Json to_json(const RankTable& t) {
  Json rows = Json::array();
  for (const auto& [name, g] : t.rows) rows.push_back({{"row", name}, {"graded", g}});
  return {{"label", t.label}, {"rows", rows}, {"metadata", t.metadata}};
}

namespace {

struct View {
  double x0, x1, y0, y1;
  SvgStyle s;
  double sx(double x) const { return s.margin + (x - x0) / (x1 - x0) * (s.width - 2 * s.margin); }
  double sy(double y) const { return s.height - s.margin - (y - y0) / (y1 - y0) * (s.height - 2 * s.margin); }
};

View fit(std::vector<std::pair<double, double>> pts, const SvgStyle& style) {
  if (pts.empty()) pts.push_back({0, 0});
  double x0 = pts[0].first, x1 = x0, y0 = pts[0].second, y1 = y0;
  for (auto [x, y] : pts) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  double span = std::max({x1 - x0, y1 - y0, 1.0});
  double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
  double half = 0.65 * span + 0.5;
  return {cx - half, cx + half, cy - half, cy + half, style};
}

void header(std::ostream& os, const SvgStyle& s) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << s.width << "\" height=\"" << s.height
     << "\" viewBox=\"0 0 " << s.width << ' ' << s.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<clipPath id=\"view\"><rect x=\"" << s.margin << "\" y=\"" << s.margin << "\" width=\""
     << s.width - 2 * s.margin << "\" height=\"" << s.height - 2 * s.margin << "\"/></clipPath>\n";
}

}  // namespace

void write_tropical_svg(std::ostream& os, const TropicalComplex& trop, const AmoebaSample* amoeba, const SvgStyle& style) {
  if (trop.dim < 1 || trop.dim > 2) throw std::invalid_argument("write_tropical_svg: dimension must be 1 or 2");
  auto pt = [&](const QVector& v) { return std::pair<double, double>{to_double(v[0]), trop.dim == 2 ? to_double(v[1]) : 0.0}; };
  std::vector<std::pair<double, double>> all;
  for (const auto& v : trop.vertices) all.push_back(pt(v));
  for (const auto& c : trop.chambers) all.push_back(pt(c.sample));
  View view = fit(all, style);
  os << std::setprecision(6);
  header(os, style);
  os << "<g clip-path=\"url(#view)\">\n";
  if (amoeba) {
    os << "<g fill=\"#7aa6d6\" fill-opacity=\"0.5\">\n";
    for (const auto& p : amoeba->points) {
      double y = amoeba->dim == 2 ? p[1] : 0.0;
      os << "<circle cx=\"" << view.sx(p[0]) << "\" cy=\"" << view.sy(y) << "\" r=\"1.2\"/>\n";
    }
    os << "</g>\n";
  }
  if (trop.dim == 2) {
    double reach = 4 * (view.x1 - view.x0);
    os << "<g stroke=\"black\" stroke-width=\"1.5\">\n";
    for (const auto& e : trop.edges) {
      auto [ax, ay] = pt(trop.vertices[static_cast<std::size_t>(e.from)]);
      double bx, by;
      if (e.to) {
        std::tie(bx, by) = pt(trop.vertices[static_cast<std::size_t>(*e.to)]);
      } else {
        double dx = to_double(e.direction[0]), dy = to_double(e.direction[1]);
        double n = std::hypot(dx, dy);
        bx = ax + reach * dx / n;
        by = ay + reach * dy / n;
      }
      os << "<line x1=\"" << view.sx(ax) << "\" y1=\"" << view.sy(ay) << "\" x2=\"" << view.sx(bx) << "\" y2=\""
         << view.sy(by) << "\"/>\n";
    }
    os << "</g>\n";
  } else {
    os << "<line x1=\"" << view.sx(view.x0) << "\" y1=\"" << view.sy(0) << "\" x2=\"" << view.sx(view.x1)
       << "\" y2=\"" << view.sy(0) << "\" stroke=\"#999\"/>\n";
  }
  for (const auto& v : trop.vertices) {
    auto [x, y] = pt(v);
    os << "<circle cx=\"" << view.sx(x) << "\" cy=\"" << view.sy(y) << "\" r=\"3\" fill=\"black\"/>\n";
  }
  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#b03030\">\n";
  for (const auto& c : trop.chambers) {
    auto [x, y] = pt(c.sample);
    std::ostringstream label;
    const auto& a = trop.subdivision.points[static_cast<std::size_t>(c.label)];
    for (std::size_t i = 0; i < a.size(); ++i) label << (i ? "," : "(") << a[i];
    label << ")";
    os << "<text x=\"" << view.sx(x) << "\" y=\"" << view.sy(y) - (trop.dim == 1 ? 8 : 0) << "\">" << label.str()
       << "</text>\n";
  }
  os << "</g>\n</g>\n</svg>\n";
}

void write_fibration_base_svg(std::ostream& os, const ModelSpace& space, const SingularRays& rays,
                              const std::vector<double>& log_radii, const SvgStyle& style) {
  std::vector<std::pair<double, double>> all{{0, 0}};
  for (const auto& r : space.roots) all.push_back({r.real(), r.imag()});
  for (double lr : log_radii) {
    double r = std::exp(lr);
    all.push_back({r, r});
    all.push_back({-r, -r});
  }
  View view = fit(all, style);
  os << std::setprecision(6);
  header(os, style);
  os << "<g clip-path=\"url(#view)\">\n";
  os << "<line x1=\"" << view.sx(view.x0) << "\" y1=\"" << view.sy(0) << "\" x2=\"" << view.sx(view.x1) << "\" y2=\""
     << view.sy(0) << "\" stroke=\"#ccc\"/>\n";
  os << "<line x1=\"" << view.sx(0) << "\" y1=\"" << view.sy(view.y0) << "\" x2=\"" << view.sx(0) << "\" y2=\""
     << view.sy(view.y1) << "\" stroke=\"#ccc\"/>\n";
  double scale = (view.s.width - 2 * view.s.margin) / (view.x1 - view.x0);
  for (double lr : log_radii)
    os << "<circle cx=\"" << view.sx(0) << "\" cy=\"" << view.sy(0) << "\" r=\"" << std::exp(lr) * scale
       << "\" fill=\"none\" stroke=\"#7aa6d6\" stroke-dasharray=\"4 3\"/>\n";
  double reach = 4 * (view.x1 - view.x0);
  for (const auto& ray : rays.rays) {
    const auto& r = space.roots[ray.root];
    double a = std::arg(r);
    os << "<line x1=\"" << view.sx(r.real()) << "\" y1=\"" << view.sy(r.imag()) << "\" x2=\""
       << view.sx(r.real() + reach * std::cos(a)) << "\" y2=\"" << view.sy(r.imag() + reach * std::sin(a))
       << "\" stroke=\"#b03030\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& r : space.roots)
    os << "<circle cx=\"" << view.sx(r.real()) << "\" cy=\"" << view.sy(r.imag()) << "\" r=\"3.5\" fill=\"black\"/>\n";
  os << "</g>\n<text x=\"" << view.s.margin << "\" y=\"" << view.s.margin - 8
     << "\" font-family=\"sans-serif\" font-size=\"12\">" << space.name() << "</text>\n</svg>\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

void write_rank_table_csv(std::ostream& os, const RankTable& t) {
  for (const auto& [k, v] : t.metadata) os << "# " << k << '=' << v << '\n';
  std::size_t width = 0;
  for (const auto& [name, g] : t.rows) width = std::max(width, g.size());
  os << "label,row";
  for (std::size_t d = 0; d < width; ++d) os << ",deg" << d;
  os << '\n';
  for (const auto& [name, g] : t.rows) {
    os << csv_field(t.label) << ',' << csv_field(name);
    for (std::size_t d = 0; d < width; ++d) os << ',' << (d < g.size() ? g[d] : 0);
    os << '\n';
  }
}

}  // namespace syzkit
