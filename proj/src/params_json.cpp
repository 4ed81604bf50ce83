#include "lstlp/params_json.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "lstlp/errors.hpp"

namespace lstlp {

namespace {

constexpr std::array<std::string_view, 8> kKeys = {"g",   "sigma", "r",         "m",
                                                   "rho", "p0",    "fee_cap_k", "token_kind"};

double number_at(const nlohmann::json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw InvalidParams(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

ModelParams params_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidParams("params document must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw InvalidParams("unknown key \"" + key + "\" in params document");
    }
  }
  for (auto key : kKeys) {
    if (!doc.contains(std::string(key))) {
      throw InvalidParams("missing key \"" + std::string(key) + "\" in params document");
    }
  }
  const auto& kind = doc.at("token_kind");
  if (!kind.is_string()) throw InvalidParams("\"token_kind\" must be a string");

  return ModelParams(MarketInputs{.g = number_at(doc, "g"),
                                  .sigma = number_at(doc, "sigma"),
                                  .r = number_at(doc, "r"),
                                  .m = number_at(doc, "m"),
                                  .rho = number_at(doc, "rho"),
                                  .p0 = number_at(doc, "p0"),
                                  .fee_cap_k = number_at(doc, "fee_cap_k"),
                                  .token_kind = parse_token_kind(kind.get<std::string>())});
}

ModelParams params_from_json_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidParams(std::string("malformed params JSON: ") + e.what());
  }
  return params_from_json(doc);
}

ModelParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open params file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_json_text(buf.str());
}

nlohmann::json params_to_json(const ModelParams& p) {
  return {{"g", p.g()},     {"sigma", p.sigma()}, {"r", p.r()},
          {"m", p.m()},     {"rho", p.rho()},     {"p0", p.p0()},
          {"fee_cap_k", p.fee_cap_k()}, {"token_kind", std::string(to_string(p.token_kind()))}};
}

}  // namespace lstlp
