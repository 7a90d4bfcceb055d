#pragma once

// JSON and Graphviz renderings of the library's structures.

#include <string>

#include <json.hpp>

#include "curvelab/carrousel_geom.hpp"
#include "curvelab/carrousel_tree.hpp"
#include "curvelab/contact.hpp"
#include "curvelab/probe.hpp"
#include "curvelab/projection.hpp"
#include "curvelab/splice.hpp"

namespace curvelab {

using Json = nlohmann::ordered_json;

// Integers outside the int64 range are emitted as decimal strings.
Json json_integer(const BigInt& v);
Json json_rational(const Rational& r);  // [num, den]
Json json_extended(const ExtendedRational& q);  // [num, den] or "inf"
// Floats rounded to 6 significant digits.
Json json_float(double v);

Json to_json(const QMap& q);
Json to_json(const CarrouselTree& t);
Json to_json(const EggersTree& t);
Json to_json(const SpliceDiagram& d);
Json to_json(const GenericityVerdict& v);
Json to_json(const PieceDecomposition& d);
Json to_json(const QMapEstimate& e, const std::vector<Sheet>& sheets);
Json to_json(const RatioStats& s);

std::string to_dot(const CarrouselTree& t);
std::string to_dot(const EggersTree& t);
std::string to_dot(const SpliceDiagram& d);

}  // namespace curvelab
