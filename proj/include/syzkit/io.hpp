#pragma once

// Serialization: JSON for series and polynomials, standalone SVG plots, CSV rank tables.

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "syzkit/amoeba.hpp"
#include "syzkit/fibration.hpp"
#include "syzkit/floer.hpp"
#include "syzkit/laurent.hpp"
#include "syzkit/tropical.hpp"

namespace syzkit {

using Json = nlohmann::json;

/// {"truncation": "10", "terms": [{"exponent": "1/2", "re": "-1", "im": "0"}, ...]}
Json to_json(const NovikovSeries& s);
NovikovSeries series_from_json(const Json& j);

/// {"vars": [...], "truncation": "10", "text": "...", "terms": [{"exponent": [..], "coeff": series}, ...]}
Json to_json(const LaurentNov& f);
LaurentNov laurent_from_json(const Json& j);

Json to_json(const Valuation& v);  // null for infinity
Json to_json(const CriticalPoint& p);
Json to_json(const TropicalComplex& t);
Json to_json(const RankTable& t);

struct SvgStyle {
  double width = 480;
  double height = 480;
  double margin = 24;
};

/// Tropical curve in R^2 (rays clipped to the view box), optionally with amoeba points.
void write_tropical_svg(std::ostream& os, const TropicalComplex& trop, const AmoebaSample* amoeba = nullptr,
                        const SvgStyle& style = {});

/// The x-plane of a Milnor fiber: roots, singular rays, and the sampled |x| circles.
void write_fibration_base_svg(std::ostream& os, const ModelSpace& space, const SingularRays& rays,
                              const std::vector<double>& log_radii = {}, const SvgStyle& style = {});

/// label,row,deg0,deg1,... with metadata as leading "# key=value" lines.
void write_rank_table_csv(std::ostream& os, const RankTable& t);

}  // namespace syzkit
