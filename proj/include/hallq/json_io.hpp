#pragma once

#include <json.hpp>

#include "hallq/algelem.hpp"
#include "hallq/doubles.hpp"
#include "hallq/report.hpp"
#include "hallq/symfun.hpp"

namespace hallq {

using json = nlohmann::json; // std::map-backed: keys serialize sorted

json to_json(const Rational& r);
json to_json(const Scalar& s);
json to_json(const ObjLabel& o);
json to_json(const KClass& k);
json to_json(const AlgElem& e);
json to_json(const TensorElem& e);
json to_json(const SymFn& f);
json to_json(const Report& r);
json to_json(const DoubleElem& e);

ObjLabel objlabel_from_json(const json& j, int q);

} // namespace hallq
