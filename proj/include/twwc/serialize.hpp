#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "twwc/channel.hpp"
#include "twwc/exponents.hpp"
#include "twwc/linear_system.hpp"
#include "twwc/region.hpp"
#include "twwc/simulator.hpp"

namespace twwc {

// Insertion-ordered JSON keeps serialized output deterministic.
using Json = nlohmann::ordered_json;

// Floating-point output contract: 12 significant digits everywhere, in both
// JSON and CSV; non-finite values serialize as the strings "inf"/"-inf"/"nan".
std::string fmt12(double v);
double round12(double v);
Json jnum(double v);

Json load_json_file(const std::string& path);          // ValidationError on parse failure
void atomic_write(const std::string& path, const std::string& content);

// ---- channel / law / type parsing -----------------------------------------

// A parsed "channel" object: exactly one of the three kinds.
struct ChannelInput {
  std::optional<ChannelTensor> tensor;
  std::optional<AdditiveChannelSpec> additive;
  std::optional<GaussianChannelSpec> gaussian;

  bool is_gaussian() const { return gaussian.has_value(); }
  // Dense tensor view (additive specs are expanded); gaussian throws.
  ChannelTensor as_tensor() const;
};

ChannelInput parse_channel(const Json& j);
JointInputLaw parse_law(const Json& j);
JointType parse_joint_type(const Json& j, int n);
CostSpec parse_cost(const Json& j);
RateTuple parse_rates(const Json& j);

// ---- artifact serialization ------------------------------------------------

// bits=true divides nat-denominated fields by ln 2 at output time only.
Json region_to_json(const RateRegion2D& r, bool bits = false);
std::string region_to_csv(const RateRegion2D& r, bool bits = false);

Json exponent_report_to_json(const ExponentReport& rep, bool bits = false);
std::string exponent_report_to_csv(const ExponentReport& rep, bool bits = false);

Json sim_result_to_json(const SimResult& res, std::uint64_t seed, bool bits = false);
std::string sim_result_to_csv(const SimResult& res, bool bits = false);

Json verify_report_to_json(const VerifyReport& rep, bool bits = false);
std::string verify_report_to_csv(const VerifyReport& rep, bool bits = false);

// ---- linear systems ---------------------------------------------------------

// {"vars":[...], "inequalities":[{"coef":{var:number|string},
//  "sense":"<"|"<="|">"|">=", "rhs":number|string}], "eliminate":[...]}
// Exact mode engages when every coefficient parses as a rational (integers,
// "p/q", or short decimal strings); otherwise doubles with 1e-9 tolerance.
struct ParsedSystem {
  bool exact = false;
  LinearSystem rational_sys;
  LinearSystemD double_sys;
  std::vector<std::string> eliminate;
};
ParsedSystem parse_linear_system(const Json& j);
Json linear_system_to_json(const LinearSystem& sys);
Json linear_system_to_json(const LinearSystemD& sys);

}  // namespace twwc
