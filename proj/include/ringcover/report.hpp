#ifndef RINGCOVER_REPORT_HPP_
#define RINGCOVER_REPORT_HPP_

// JSON reports. Every report has the shape
//   {"spec": ..., "ring": {"order", "char", "commutative"}, "result": ...,
//    "witness": ... (optional), "timing": {"seconds": ...}}
// Elements are written as coordinate arrays over the additive basis.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cover.hpp"
#include "element_set.hpp"
#include "ring.hpp"

namespace ringcover {

using Json = nlohmann::ordered_json;

inline Json ring_json(RingTable const& r) {
  return Json{{"order", r.order()}, {"char", r.characteristic()}, {"commutative", r.is_commutative()}};
}

inline Json element_json(RingTable const& r, Element x) { return Json(r.coords(x)); }

inline Json set_json(RingTable const& r, ElementSet const& s) {
  Json out = Json::array();
  s.for_each([&](Element x) { out.push_back(element_json(r, x)); });
  return out;
}

inline Json sets_json(RingTable const& r, std::vector<ElementSet> const& sets) {
  Json out = Json::array();
  for (auto const& s : sets) out.push_back(set_json(r, s));
  return out;
}

inline Json sigma_json(Sigma const& s) {
  return s.coverable() ? Json(s.value()) : Json("NotCoverable");
}

inline Json make_report(std::string const& spec, RingTable const& r, Json result,
                        std::optional<Json> witness, double seconds) {
  Json j;
  j["spec"] = spec;
  j["ring"] = ring_json(r);
  j["result"] = std::move(result);
  if (witness) j["witness"] = std::move(*witness);
  j["timing"] = Json{{"seconds", seconds}};
  return j;
}

}  // namespace ringcover

#endif  // RINGCOVER_REPORT_HPP_
