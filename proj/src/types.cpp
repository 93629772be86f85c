#include "bullyguard/types.hpp"

#include <stdexcept>

namespace bullyguard {

SchemaId schema_from_name(const std::string& name) {
  if (name == "PREDICTOR_V1") return SchemaId::PredictorV1;
  if (name == "MAIN_V1") return SchemaId::MainV1;
  throw std::invalid_argument("unknown feature schema: " + name);
}

}  // namespace bullyguard
