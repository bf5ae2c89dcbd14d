#pragma once

#include "sll/eep.hpp"
#include "sll/kron.hpp"
#include "sll/pinv_closure.hpp"
#include "sll/resistance.hpp"
#include "sll/spectral.hpp"

#include <json.hpp>

namespace sll {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "sll/1";

Json to_json(const Matrix& m);
Json to_json(const Vector& v);
Json to_json(const std::vector<Complex>& values);
Json to_json(const Spectrum& s);
Json to_json(const StructuralFlags& f);
Json to_json(const PFCertificate& c);
Json to_json(const EEPCertificate& c);
Json to_json(const PinvIdentities& id);
Json to_json(const ClosureReport& r);
Json to_json(const KronResult& r);
Json to_json(const KronTheoremReport& r);
Json to_json(const ResistanceReport& r);

std::string_view to_string(StabilityLinkage linkage);
std::string_view to_string(ResistanceGate gate);

}  // namespace sll
