#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "partage/errors.hpp"
#include "partage/estate.hpp"
#include "partage/ratio.hpp"

// JSON interchange. Estates come in as
//   {"legitimate": int, "mistresses": [{"children": int, "fraction": "p/q"}]}
// and breakdowns go out with every number as an exact lowest-terms string;
// decimals never cross this boundary.

namespace partage {

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& doc, const std::string& key,
                                           const std::string& where) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw ValidationError(Errc::MalformedDocument, where + ": missing field '" + key + "'");
  }
  return *it;
}

inline Count count_field(const nlohmann::json& value, const std::string& field) {
  if (!value.is_number_integer()) {
    throw ValidationError(Errc::MalformedDocument, field + ": expected an integer");
  }
  return value.get<Count>();
}

}  // namespace detail

// Shape check and field extraction only; domain bounds are validate()'s job.
struct EstateSpecFields {
  Count legitimate = 0;
  std::vector<Mistress> mistresses;
};

inline EstateSpecFields estate_fields_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ValidationError(Errc::MalformedDocument, "estate document: expected a JSON object");
  }
  EstateSpecFields fields;
  fields.legitimate =
      detail::count_field(detail::require_field(doc, "legitimate", "estate document"),
                          "legitimate");
  if (const auto it = doc.find("mistresses"); it != doc.end()) {
    if (!it->is_array()) {
      throw ValidationError(Errc::MalformedDocument, "mistresses: expected an array");
    }
    fields.mistresses.reserve(it->size());
    for (std::size_t i = 0; i < it->size(); ++i) {
      const nlohmann::json& entry = (*it)[i];
      const std::string field = "mistresses[" + std::to_string(i) + "]";
      if (!entry.is_object()) {
        throw ValidationError(Errc::MalformedDocument, field + ": expected an object");
      }
      const Count children = detail::count_field(
          detail::require_field(entry, "children", field), field + ".children");
      const nlohmann::json& fraction = detail::require_field(entry, "fraction", field);
      if (!fraction.is_string()) {
        throw ValidationError(Errc::MalformedDocument,
                              field + ".fraction: expected a \"p/q\" string");
      }
      fields.mistresses.push_back(Mistress{children, Ratio::parse(fraction.get<std::string>())});
    }
  }
  return fields;
}

inline FamilyComposition estate_from_json(const nlohmann::json& doc) {
  EstateSpecFields fields = estate_fields_from_json(doc);
  return validate(fields.legitimate, std::move(fields.mistresses));
}

inline nlohmann::json estate_to_json(const FamilyComposition& f) {
  nlohmann::json mistresses = nlohmann::json::array();
  for (const Mistress& m : f.mistresses) {
    mistresses.push_back({{"children", m.children}, {"fraction", m.fraction.str()}});
  }
  return {{"legitimate", f.legitimate}, {"mistresses", std::move(mistresses)}};
}

inline nlohmann::json breakdown_to_json(const FamilyComposition& f, const ShareBreakdown& b,
                                        Method method) {
  nlohmann::json shares = nlohmann::json::array();
  nlohmann::json class_totals = nlohmann::json::array();
  for (std::size_t i = 0; i < f.mistresses.size(); ++i) {
    if (b.illegitimate_shares[i]) {
      shares.push_back(b.illegitimate_shares[i]->str());
      class_totals.push_back((Ratio(f.mistresses[i].children) * *b.illegitimate_shares[i]).str());
    } else {
      shares.push_back(nullptr);
      class_totals.push_back(Ratio(0).str());
    }
  }
  return {
      {"legitimate_share", b.legitimate_share.str()},
      {"illegitimate_shares", std::move(shares)},
      {"per_class_totals",
       {{"legitimate", (Ratio(f.legitimate) * b.legitimate_share).str()},
        {"mistresses", std::move(class_totals)}}},
      {"total", b.total_distributed.str()},
      {"method", to_string(method)},
  };
}

}  // namespace partage
